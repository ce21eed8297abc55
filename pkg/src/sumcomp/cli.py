"""Command-line interface.

Exit codes: 0 when every check passes, 1 on a verification failure (the
failing report is dumped as JSON to stderr, or to ``--out``), 2 on usage
errors.  All output is deterministic for a given command line and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Any, Sequence

from .algebra import (
    check_algebra_axioms,
    check_braided_induction,
    check_f_intertwines,
    check_mu_cocycle_condition,
    check_quotient_identification,
    check_rep_axioms,
    induce,
    is_local,
    lattice_algebra,
    locality_report,
)
from .errors import NotConstantOnWindow, SumCompError
from .lattice_voa import (
    associator_via_chain,
    compare_with_reference,
    rep0_simples,
    rep0_tables,
    verify_output_coherence,
)
from .monoidal import COMPLETION_AXIOMS, check_completion_coherence
from .pointed import check_base_coherence, cocycle_k, cyclic_data, heisenberg_data, lattice_reference_data
from .report import Report

OUT_DIR_ENV = "SUMCOMP_OUT_DIR"
BASE_AXIOMS = ("pentagon", "hexagon", "balancing", "triangle")


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _out_path(arg: str | None) -> Path | None:
    if arg is None:
        return None
    p = Path(arg)
    if not p.is_absolute() and os.environ.get(OUT_DIR_ENV):
        p = Path(os.environ[OUT_DIR_ENV]) / p
    return p


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=str)


def _emit(text: str, out: Path | None):
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text if text.endswith("\n") else text + "\n")


def _finish(reports: Sequence[Report], args, extra: dict | None = None) -> int:
    """Print the combined result; dump failures; return the exit code."""
    passed = all(r.passed for r in reports)
    payload = {"passed": passed, "reports": [r.to_json_obj() for r in reports]}
    if extra:
        payload.update(extra)
    text = _dumps(payload)
    out = _out_path(getattr(args, "out", None))
    if passed:
        _emit(text, out)
        return 0
    if out is not None:
        _emit(text, out)
    else:
        sys.stdout.write("\n".join(r.summary() for r in reports) + "\n")
        sys.stderr.write(text + "\n")
    return 1


# ---------------------------------------------------------------- commands


def cmd_tables(args) -> int:
    T = rep0_tables(args.N, args.d)
    out = _out_path(args.out)
    if args.format == "json":
        _emit(T.to_json(indent=2), out)
    elif args.format == "md":
        _emit(T.to_markdown(), out)
    else:
        docs = T.to_csv()
        target = out or (Path(os.environ[OUT_DIR_ENV]) if os.environ.get(OUT_DIR_ENV) else None)
        if target is None:
            sys.stdout.write("".join(f"# {name}.csv\n{text}" for name, text in docs.items()))
        else:
            target.mkdir(parents=True, exist_ok=True)
            for name, text in docs.items():
                (target / f"{name}.csv").write_text(text)
            sys.stdout.write("".join(f"{target / name}.csv\n" for name in docs))
    return 0


def _base_from_args(args):
    if args.base == "lattice_reference":
        data = lattice_reference_data(args.N)
        if args.twist == "41":
            data = data.with_twist("theta_41")
        return data
    if args.base == "heisenberg":
        return heisenberg_data(args.N, args.d)
    return cyclic_data(args.N)


def cmd_verify_base(args) -> int:
    data = _base_from_args(args)
    window = args.window if (args.window is not None or not data.is_finite) else None
    if window is None and not data.is_finite:
        window = 3
    axioms = BASE_AXIOMS if args.axiom == "all" else (args.axiom,)
    return _finish([check_base_coherence(data, ax, window) for ax in axioms], args, {"base": data.name})


def _parse_completion_base(spec: str):
    name, _, params = spec.partition(":")
    nums = [int(x) for x in params.split(",") if x] if params else []
    if name == "cyclic":
        return cyclic_data(*(nums or [3]))
    if name == "lattice_reference":
        return lattice_reference_data(*(nums or [1]))
    if name == "heisenberg":
        return heisenberg_data(*(nums or [1]))
    raise ValueError(f"unknown base {spec!r}")


def cmd_verify_completion(args) -> int:
    bases = [_parse_completion_base(b) for b in args.base]
    axioms = sorted(COMPLETION_AXIOMS) if args.axiom == "all" else [args.axiom]
    reports = [
        check_completion_coherence(ax, data, trials=args.trials, max_size=args.max_size, seed=args.seed)
        for data in bases for ax in axioms
    ]
    for data, r in zip([d for d in bases for _ in axioms], reports):
        r.mode = f"{data.name}:{r.mode}"
    return _finish(reports, args, {"seed": args.seed})


def cmd_verify_algebra(args) -> int:
    Alg = lattice_algebra(args.N, args.d)
    mode = "symbolic" if args.mode == "symbolic" else args.window
    return _finish([check_algebra_axioms(Alg, mode), check_mu_cocycle_condition(args.N, args.d, args.window)], args)


def cmd_rep0(args) -> int:
    Alg = lattice_algebra(args.N, args.d)
    J = Alg.grain
    simples = rep0_simples(args.N, args.d)
    locality = {m: is_local(Alg, induce(Alg, m)) for m in range(J)}
    rep = locality_report(args.N, args.d, list(range(J)))
    payload = {
        "N": args.N,
        "d": args.d,
        "grain": J,
        "simples": [{"a": M.label // args.d, "label": M.label, "local": M.local} for M in simples],
        "locality": {str(m): v for m, v in locality.items()},
        "notes": rep.notes,
    }
    _emit(_dumps(payload), _out_path(args.out))
    return 0 if rep.passed else 1


def cmd_verify_rep0(args) -> int:
    N, w = args.N, args.window
    n = 2 * N
    Alg = lattice_algebra(N, 1)
    reports = []
    rep = Report(axiom="rep_axioms", mode="symbolic")
    for M in rep0_simples(N):
        rep.merge(check_rep_axioms(Alg, M))
        rep.merge(check_rep_axioms(Alg, M, w))
    reports.append(rep)
    reports.append(locality_report(N, 1, list(range(4 * N))))
    quot = Report(axiom="quotient_identification", mode=f"window({w})")
    inter = Report(axiom="f_intertwines", mode="symbolic")
    braided = Report(axiom="braided_induction", mode="symbolic")
    for x in range(n):
        for y in range(n):
            quot.merge(check_quotient_identification(N, 1, x, y, w))
            inter.merge(check_f_intertwines(Alg, x, y))
            braided.merge(check_braided_induction(Alg, x, y))
    reports += [quot, inter, braided]
    chain = Report(axiom="associator_via_chain", mode=f"window({w})")
    for x in range(n):
        for y in range(n):
            for z in range(n):
                chain.tuples_checked += 1
                try:
                    ph = associator_via_chain(N, x, y, z, w)
                except NotConstantOnWindow as exc:
                    chain.fail(labels=[x, y, z], error=str(exc))
                    continue
                want = (x * (cocycle_k(N, y, z) // n)) % 2
                if ph.exponent != want:
                    chain.fail(labels=[x, y, z], got=str(ph.exponent), want=str(want))
    reports.append(chain)
    reports.append(verify_output_coherence(N))
    return _finish(reports, args, {"N": N})


def cmd_compare(args) -> int:
    return _finish([compare_with_reference(args.N)], args, {"N": args.N})


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sumcomp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", help="emit Rep0 tables")
    t.add_argument("--N", type=_positive, required=True)
    t.add_argument("--d", type=_positive, default=1)
    t.add_argument("--format", choices=("json", "csv", "md"), default="json")
    t.add_argument("--out", help=f"output file (csv: directory); relative paths go under ${OUT_DIR_ENV}")
    t.set_defaults(func=cmd_tables)

    b = sub.add_parser("verify-base", help="brute-force coherence of a base category")
    b.add_argument("--N", type=_positive, required=True)
    b.add_argument("--d", type=_positive, default=1)
    b.add_argument("--base", choices=("lattice_reference", "heisenberg", "cyclic"), default="lattice_reference")
    b.add_argument("--axiom", choices=BASE_AXIOMS + ("all",), default="all")
    b.add_argument("--window", type=_nonneg, default=None)
    b.add_argument("--twist", choices=("thm", "41"), default="thm")
    b.add_argument("--out")
    b.set_defaults(func=cmd_verify_base)

    c = sub.add_parser("verify-completion", help="randomized laws of the completion")
    c.add_argument("--base", action="append", default=None,
                   help="cyclic:n, lattice_reference:N or heisenberg:N,d (repeatable)")
    c.add_argument("--axiom", choices=sorted(COMPLETION_AXIOMS) + ["all"], default="all")
    c.add_argument("--trials", type=_positive, default=100)
    c.add_argument("--max-size", dest="max_size", type=_positive, default=6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=cmd_verify_completion)

    a = sub.add_parser("verify-algebra", help="axioms of the lattice algebra")
    a.add_argument("--N", type=_positive, required=True)
    a.add_argument("--d", type=_positive, default=1)
    a.add_argument("--mode", choices=("symbolic", "window"), default="symbolic")
    a.add_argument("--window", type=_nonneg, default=3)
    a.add_argument("--out")
    a.set_defaults(func=cmd_verify_algebra)

    r = sub.add_parser("rep0", help="simples of Rep0 and locality of induced modules")
    r.add_argument("--N", type=_positive, required=True)
    r.add_argument("--d", type=_positive, default=1)
    r.add_argument("--out")
    r.set_defaults(func=cmd_rep0)

    v = sub.add_parser("verify-rep0", help="all checks of the induction pipeline")
    v.add_argument("--N", type=_positive, required=True)
    v.add_argument("--window", type=_nonneg, default=3)
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify_rep0)

    m = sub.add_parser("compare", help="pipeline tables against the reference category")
    m.add_argument("--N", type=_positive, required=True)
    m.add_argument("--out")
    m.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "command", None) == "verify-completion" and args.base is None:
        args.base = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5"]
    try:
        return args.func(args)
    except (SumCompError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
