"""Skeletal pointed base categories described by scalar cochains.

Objects are labels in an abelian group (``Z`` or ``Z/n``), the tensor
product is addition, and every structure isomorphism is a phase
``e^{i pi q}`` whose exponent ``q`` is produced by a cochain: a polynomial
in the labels when one exists, a finite table otherwise.

Integer-unit encoding for the Heisenberg family: a label ``m`` stands for
the Fock weight ``m / (d sqrt(2N))``.  The even lattice ``sqrt(2N) Z`` is
``{m : m = 0 mod 2Nd}`` and its dual ``(1/sqrt(2N)) Z`` is
``{m : m = 0 mod d}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Iterable, Mapping, Sequence, Union

from .errors import ArityMismatch, InfiniteScope
from .exact import Phase
from .report import Report
from .symbolic import Poly

__all__ = [
    "CochainTable",
    "PointedData",
    "heisenberg_data",
    "cyclic_data",
    "lattice_reference_data",
    "cocycle_k",
    "cochain_scalar",
    "check_base_coherence",
]


def _mod2(q: Fraction) -> Fraction:
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True)
class CochainTable:
    """Cochain on a finite cyclic group given by its values on representatives."""

    arity: int
    values: tuple[tuple[tuple[int, ...], Fraction], ...]

    @classmethod
    def tabulate(cls, modulus: int, arity: int, fn: Callable[..., Fraction]) -> "CochainTable":
        return cls(
            arity,
            tuple((args, _mod2(Fraction(fn(*args)))) for args in product(range(modulus), repeat=arity)),
        )

    def __post_init__(self):
        object.__setattr__(self, "_lookup", dict(self.values))

    def __call__(self, *labels: int) -> Fraction:
        return self._lookup[labels]  # type: ignore[attr-defined]

    def to_json_obj(self) -> dict[str, Any]:
        return {"table": {",".join(map(str, k)): str(v) for k, v in self.values}}


Cochain = Union[Poly, CochainTable]


def _cochain_json(c: Cochain) -> Any:
    if isinstance(c, Poly):
        return {"poly": c.to_json_obj()}
    return c.to_json_obj()


@dataclass(frozen=True)
class PointedData:
    """A skeletal pointed braided category with twist, as cochain data.

    ``modulus`` is 0 for the grading group Z and n for Z/n.  Cochains on Z/n
    are evaluated on the representatives ``0..n-1`` of their arguments.
    """

    name: str
    modulus: int
    assoc: Cochain
    braid: Cochain
    twist: Cochain
    N: int | None = None
    d: int | None = None
    alt_twists: tuple[tuple[str, Cochain], ...] = field(default=())

    @property
    def is_finite(self) -> bool:
        return self.modulus > 0

    def elements(self) -> range:
        if not self.is_finite:
            raise InfiniteScope(f"{self.name}: grading group Z is infinite")
        return range(self.modulus)

    def reduce(self, g: int) -> int:
        return g % self.modulus if self.modulus else g

    def fuse(self, g: int, h: int) -> int:
        return self.reduce(g + h)

    def _eval(self, c: Cochain, labels: Sequence[int]) -> Fraction:
        return _mod2(Fraction(c(*(self.reduce(x) for x in labels))))

    def assoc_exp(self, a: int, b: int, c: int) -> Fraction:
        return self._eval(self.assoc, (a, b, c))

    def braid_exp(self, a: int, b: int) -> Fraction:
        return self._eval(self.braid, (a, b))

    def twist_exp(self, a: int) -> Fraction:
        return self._eval(self.twist, (a,))

    def twist_variant(self, name: str) -> Cochain:
        for key, c in self.alt_twists:
            if key == name:
                return c
        raise KeyError(name)

    def with_twist(self, name: str) -> "PointedData":
        """Same data with the primary twist replaced by a stored alternative."""
        return PointedData(
            f"{self.name}[{name}]", self.modulus, self.assoc, self.braid,
            self.twist_variant(name), self.N, self.d, self.alt_twists,
        )

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "group": {"modulus": self.modulus, "kind": "Z" if not self.modulus else f"Z/{self.modulus}"},
            "assoc": _cochain_json(self.assoc),
            "braid": _cochain_json(self.braid),
            "twist": _cochain_json(self.twist),
            "alt_twists": {k: _cochain_json(v) for k, v in self.alt_twists},
            "N": self.N,
            "d": self.d,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)


def heisenberg_data(N: int, d: int = 1) -> PointedData:
    """Fock-space category: labels m <-> weight m/(d sqrt(2N)), trivial associator."""
    if N < 1 or d < 1:
        raise ValueError("N and d must be positive")
    scale = Fraction(1, 2 * N * d * d)
    m1, m2 = Poly.var(2, 0), Poly.var(2, 1)
    m = Poly.var(1, 0)
    return PointedData(
        name=f"heisenberg(N={N},d={d})",
        modulus=0,
        assoc=Poly.zero(3),
        braid=m1 * m2 * scale,
        twist=m * m * scale,
        N=N,
        d=d,
    )


def cyclic_data(n: int) -> PointedData:
    """Z/n with trivial associator, braiding e^{2 pi i ij/n}, twist e^{2 pi i i^2/n}."""
    if n < 1:
        raise ValueError("n must be positive")
    i, j = Poly.var(2, 0), Poly.var(2, 1)
    x = Poly.var(1, 0)
    return PointedData(
        name=f"cyclic({n})",
        modulus=n,
        assoc=Poly.zero(3),
        braid=i * j * Fraction(2, n),
        twist=x * x * Fraction(2, n),
    )


def cocycle_k(N: int, a: int, b: int, d: int = 1) -> int:
    """Carry of the section a -> a/sqrt(2N): 2Nd (that is, sqrt(2N)) when a + b >= 2N."""
    if not (0 <= a < 2 * N and 0 <= b < 2 * N):
        raise ValueError(f"representatives must lie in 0..{2 * N - 1}")
    return 2 * N * d if a + b >= 2 * N else 0


def lattice_reference_data(N: int) -> PointedData:
    """Known module category of the lattice VOA for L = sqrt(2N) Z.

    The primary twist is ``a^2/(2N)``; the alternative ``theta_41`` is
    ``2a^2/(2N)``.  The two disagree and both are kept for comparison.
    """
    if N < 1:
        raise ValueError("N must be positive")
    n = 2 * N

    def assoc(a, b, c):
        return Fraction(a * cocycle_k(N, b, c), n)

    x = Poly.var(1, 0)
    return PointedData(
        name=f"lattice_reference(N={N})",
        modulus=n,
        assoc=CochainTable.tabulate(n, 3, assoc),
        braid=CochainTable.tabulate(n, 2, lambda a, b: Fraction(a * b, n)),
        twist=x * x * Fraction(1, n),
        N=N,
        d=1,
        alt_twists=(("theta_thm", x * x * Fraction(1, n)), ("theta_41", x * x * Fraction(2, n))),
    )


_ARITY = {"assoc": 3, "braid": 2, "twist": 1}


def cochain_scalar(data: PointedData, kind: str, labels: Sequence[int]) -> Phase:
    if kind not in _ARITY:
        raise ValueError(f"unknown cochain kind {kind!r}")
    if len(labels) != _ARITY[kind]:
        raise ArityMismatch(f"{kind} takes {_ARITY[kind]} labels, got {len(labels)}")
    fn = {"assoc": data.assoc_exp, "braid": data.braid_exp, "twist": data.twist_exp}[kind]
    return Phase(fn(*labels))


def _scope(data: PointedData, window) -> list[int]:
    if window is None:
        return list(data.elements())
    if isinstance(window, int):
        return list(range(-window, window + 1))
    lo, hi = window
    return list(range(lo, hi + 1))


def _pentagon(D: PointedData, a, b, c, d):
    w, f = D.assoc_exp, D.fuse
    lhs = w(f(a, b), c, d) + w(a, b, f(c, d))
    rhs = w(a, b, c) + w(a, f(b, c), d) + w(b, c, d)
    return lhs, rhs


def _hexagon_1(D: PointedData, a, b, c):
    # a_{Y,Z,X} c_{X,YZ} a_{X,Y,Z} = (1 (x) c_{X,Z}) a_{Y,X,Z} (c_{X,Y} (x) 1)
    w, R, f = D.assoc_exp, D.braid_exp, D.fuse
    return w(b, c, a) + R(a, f(b, c)) + w(a, b, c), R(a, c) + w(b, a, c) + R(a, b)


def _hexagon_2(D: PointedData, a, b, c):
    # a^-1_{Z,X,Y} c_{XY,Z} a^-1_{X,Y,Z} = (c_{X,Z} (x) 1) a^-1_{X,Z,Y} (1 (x) c_{Y,Z})
    w, R, f = D.assoc_exp, D.braid_exp, D.fuse
    return -w(c, a, b) + R(f(a, b), c) - w(a, b, c), R(a, c) - w(a, c, b) + R(b, c)


def _balancing(D: PointedData, a, b):
    return D.twist_exp(D.fuse(a, b)), D.twist_exp(a) + D.twist_exp(b) + D.braid_exp(a, b) + D.braid_exp(b, a)


def _triangle(D: PointedData, a, b):
    w = D.assoc_exp
    return w(a, 0, b) + w(0, a, b) + w(a, b, 0) + D.braid_exp(0, a) + D.braid_exp(a, 0), Fraction(0)


_AXIOMS: dict[str, tuple[int, Callable]] = {
    "pentagon": (4, _pentagon),
    "hexagon": (3, None),  # both orientations, see below
    "balancing": (2, _balancing),
    "triangle": (2, _triangle),
}


def check_base_coherence(data: PointedData, axiom: str, window=None) -> Report:
    """Brute-force the scalar form of a coherence axiom over a finite scope.

    ``window=None`` means the whole group (finite groups only); an int ``w``
    means labels in ``[-w, w]``; a pair ``(lo, hi)`` an explicit range.
    """
    if axiom not in _AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}")
    if window is None and not data.is_finite:
        raise InfiniteScope(f"{data.name}: full-group scope needs a finite group; pass a window")
    labels = _scope(data, window)
    arity, fn = _AXIOMS[axiom]
    checks = [("hexagon_1", _hexagon_1), ("hexagon_2", _hexagon_2)] if axiom == "hexagon" else [(axiom, fn)]
    report = Report(axiom=axiom, mode="full" if window is None else f"window{labels[0]}..{labels[-1]}")
    if axiom == "triangle":
        report.tuples_checked += 1
        if data.twist_exp(0):
            report.fail(law="triangle", labels=[0], lhs=str(data.twist_exp(0)), rhs="0")
    for name, check in checks:
        for tup in product(labels, repeat=arity):
            lhs, rhs = check(data, *tup)
            report.tuples_checked += 1
            if _mod2(Fraction(lhs) - Fraction(rhs)):
                report.fail(law=name, labels=list(tup), lhs=str(_mod2(Fraction(lhs))), rhs=str(_mod2(Fraction(rhs))))
    return report


def check_all_base_coherence(data: PointedData, window=None,
                             axioms: Iterable[str] = ("pentagon", "hexagon", "balancing", "triangle")) -> dict[str, Report]:
    return {ax: check_base_coherence(data, ax, window) for ax in axioms}


def pointed_from_tables(name: str, modulus: int, assoc: Mapping, braid: Mapping, twist: Mapping,
                        N: int | None = None) -> PointedData:
    """Wrap exponent tables (keyed by representative tuples) as PointedData."""
    return PointedData(
        name=name,
        modulus=modulus,
        assoc=CochainTable(3, tuple(sorted((tuple(k), Fraction(v)) for k, v in assoc.items()))),
        braid=CochainTable(2, tuple(sorted((tuple(k), Fraction(v)) for k, v in braid.items()))),
        twist=CochainTable(1, tuple(sorted(((k,) if isinstance(k, int) else tuple(k), Fraction(v))
                                           for k, v in twist.items()))),
        N=N,
        d=1,
    )
