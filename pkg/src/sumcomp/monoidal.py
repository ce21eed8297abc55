"""Tensor product, associator, unit, braiding and twist on the completion.

On finite objects every structure map is explicit: an index bijection with
one base scalar per component.  On lattice objects (and singletons mixed
with them) the structure maps are affine: the index map is an identity or a
block swap and the phase exponent is the base cochain polynomial composed
with the affine label maps of the factors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .completion import (
    Affine,
    Explicit,
    SumMorphism,
    SumObject,
    add_scale,
    assemble_from_components,
    compose,
    compose_chain,
    coproduct,
    direct_sum_pair,
    eq_morphism,
    identity_of,
    include,
    inverse,
    normalize,
    scale,
    unit_object,
    zero_of,
)
from .completion import Finite, Lattice
from .errors import MixedFormUnsupported
from .exact import ONE, CycNum
from .pointed import PointedData
from .report import Report
from .symbolic import AffineMap, Poly

__all__ = [
    "tensor_objects",
    "tensor_morphisms",
    "associator",
    "associator_inverse",
    "unit_constraints",
    "braiding",
    "twist",
    "check_completion_coherence",
    "COMPLETION_AXIOMS",
]


def _lattice_like(X: SumObject) -> bool:
    return not X.is_finite or X.is_singleton


def _uses_lattice(*objs: SumObject) -> bool:
    return any(not X.is_finite for X in objs)


def _combine(X: SumObject, Y: SumObject, s, t):
    """Index of ``X_s (x) Y_t`` in ``X (x) Y``."""
    if _uses_lattice(X, Y):
        return tuple(X.point(s)) + tuple(Y.point(t))
    return (s, t)


def tensor_objects(X: SumObject, Y: SumObject) -> SumObject:
    if X.base != Y.base:
        raise MixedFormUnsupported("objects over different bases")
    base = X.base
    if not _uses_lattice(X, Y):
        labels = {(s, t): base.fuse(X.label(s), Y.label(t)) for s in X.ids for t in Y.ids}
        return SumObject(base, Finite(tuple(labels)), labels)
    if not (_lattice_like(X) and _lattice_like(Y)):
        raise MixedFormUnsupported("a lattice object can only be tensored with lattice objects or singletons")
    fx, fy = X.label_form, Y.label_form
    r = fx.source_dim + fy.source_dim
    row = fx.matrix[0] + fy.matrix[0]
    return SumObject(base, Lattice(r), AffineMap((row,), (fx.offset[0] + fy.offset[0],), r))


def _affine_view(f: SumMorphism):
    """``(index_map, exponent, coef)`` of an affine morphism or a singleton monomial."""
    if isinstance(f, Affine):
        return f.index_map, f.exponent, f.coef
    f = normalize(f)
    if not f.source.is_singleton:
        raise MixedFormUnsupported("only singleton explicit morphisms tensor with affine ones")
    if not f.comps:
        return None
    (s, row), = f.comps.items()
    if len(row) != 1:
        raise MixedFormUnsupported("singleton morphism with several targets")
    (t, a), = row.items()
    return AffineMap.constant(0, f.target.point(t)), Poly.zero(0), a


def tensor_morphisms(f: SumMorphism, g: SumMorphism) -> SumMorphism:
    source = tensor_objects(f.source, g.source)
    target = tensor_objects(f.target, g.target)
    if isinstance(f, Explicit) and isinstance(g, Explicit):
        f, g = normalize(f), normalize(g)
        out = {}
        for s, rf in f.comps.items():
            for t, rg in g.comps.items():
                out[_combine(f.source, g.source, s, t)] = {
                    _combine(f.target, g.target, s2, t2): a * b
                    for s2, a in rf.items() for t2, b in rg.items()
                }
        return normalize(Explicit(source, target, out, check=False))
    vf, vg = _affine_view(f), _affine_view(g)
    if vf is None or vg is None:
        return zero_of(source, target)
    (tf, pf, cf), (tg, pg, cg) = vf, vg
    r1, r2 = tf.source_dim, tg.source_dim
    exponent = pf.embed(r1 + r2, range(r1)) + pg.embed(r1 + r2, range(r1, r1 + r2))
    return Affine(source, target, tf.block_sum(tg), exponent, cf * cg)


# ---------------------------------------------------------------- structure maps


def _poly_cochain(base: PointedData, kind: str) -> Poly:
    c = getattr(base, kind)
    if not isinstance(c, Poly):
        raise MixedFormUnsupported(f"{base.name}: {kind} cochain is tabulated, not polynomial")
    return c


def _stacked_forms(objs: Sequence[SumObject]) -> AffineMap:
    """Map from the concatenated index lattice to the vector of factor labels."""
    forms = [X.label_form for X in objs]
    total = sum(f.source_dim for f in forms)
    rows, offs, pos = [], [], 0
    for f in forms:
        row = [0] * total
        row[pos:pos + f.source_dim] = f.matrix[0]
        rows.append(tuple(row))
        offs.append(f.offset[0])
        pos += f.source_dim
    return AffineMap(tuple(rows), tuple(offs), total)


def associator(X: SumObject, Y: SumObject, Z: SumObject) -> SumMorphism:
    """``a_{X,Y,Z}: (X (x) Y) (x) Z -> X (x) (Y (x) Z)``."""
    base = X.base
    S = tensor_objects(tensor_objects(X, Y), Z)
    T = tensor_objects(X, tensor_objects(Y, Z))
    if S.is_finite:
        comps = {
            ((s, t), r): {(s, (t, r)): CycNum.phase(base.assoc_exp(X.label(s), Y.label(t), Z.label(r)))}
            for s in X.ids for t in Y.ids for r in Z.ids
        }
        return Explicit(S, T, comps, normalized=True, check=False)
    exponent = _poly_cochain(base, "assoc").compose_affine(_stacked_forms([X, Y, Z]))
    return Affine(S, T, AffineMap.identity(S.rank), exponent)


def associator_inverse(X: SumObject, Y: SumObject, Z: SumObject) -> SumMorphism:
    return inverse(associator(X, Y, Z))


def unit_constraints(X: SumObject) -> tuple[SumMorphism, SumMorphism]:
    """``(l_X: 1 (x) X -> X, r_X: X (x) 1 -> X)``; base unit scalars are 1."""
    one = unit_object(X.base)
    L, R = tensor_objects(one, X), tensor_objects(X, one)
    if X.is_finite:
        l = Explicit(L, X, {(0, s): {s: ONE} for s in X.ids}, normalized=True, check=False)
        r = Explicit(R, X, {(s, 0): {s: ONE} for s in X.ids}, normalized=True, check=False)
        return l, r
    ident = AffineMap.identity(X.rank)
    return Affine(L, X, ident), Affine(R, X, ident)


def braiding(X: SumObject, Y: SumObject) -> SumMorphism:
    """``c_{X,Y}: X (x) Y -> Y (x) X``, base braid scalar on each component."""
    base = X.base
    S, T = tensor_objects(X, Y), tensor_objects(Y, X)
    if S.is_finite:
        comps = {
            (s, t): {(t, s): CycNum.phase(base.braid_exp(X.label(s), Y.label(t)))}
            for s in X.ids for t in Y.ids
        }
        return Explicit(S, T, comps, normalized=True, check=False)
    r1, r2 = X.label_form.source_dim, Y.label_form.source_dim
    swap = AffineMap.permutation(list(range(r1, r1 + r2)) + list(range(r1)))
    exponent = _poly_cochain(base, "braid").compose_affine(_stacked_forms([X, Y]))
    return Affine(S, T, swap, exponent)


def twist(X: SumObject) -> SumMorphism:
    base = X.base
    if X.is_finite:
        comps = {s: {s: CycNum.phase(base.twist_exp(X.label(s)))} for s in X.ids}
        return Explicit(X, X, comps, normalized=True, check=False)
    exponent = _poly_cochain(base, "twist").compose_affine(X.label_form)
    return Affine(X, X, AffineMap.identity(X.rank), exponent)


# ---------------------------------------------------------------- property suite


_DENOMS = (1, 2, 3, 4, 6)


def _rand_labels(rng: random.Random, base: PointedData, window: int) -> int:
    if base.modulus:
        return rng.randrange(base.modulus)
    return rng.randint(-window, window)


def random_object(rng: random.Random, base: PointedData, max_size: int, window: int = 3) -> SumObject:
    k = rng.randint(1, max_size)
    labels = [_rand_labels(rng, base, window) for _ in range(k)]
    return SumObject(base, Finite(tuple(range(k))), labels)


def random_scalar(rng: random.Random, nonzero: bool = False) -> CycNum:
    while True:
        terms = {}
        for _ in range(rng.randint(1, 2)):
            den = rng.choice(_DENOMS)
            terms[Fraction(rng.randrange(2 * den), den)] = rng.randint(-3, 3)
        c = CycNum(terms.items())
        if not nonzero or not c.is_zero():
            return c


def random_morphism(rng: random.Random, X: SumObject, Y: SumObject, density: float = 0.6) -> Explicit:
    comps = {}
    for s in X.ids:
        row = {t: random_scalar(rng) for t in Y.ids if Y.label(t) == X.label(s) and rng.random() < density}
        if row:
            comps[s] = row
    return normalize(Explicit(X, Y, comps, check=False))


def _same_label_object(rng: random.Random, X: SumObject, max_size: int) -> SumObject:
    # biased towards shared labels so that random morphisms are nonzero
    labs = [X.label(s) for s in X.ids]
    k = rng.randint(1, max_size)
    return SumObject(X.base, Finite(tuple(range(k))), [rng.choice(labs) for _ in range(k)])


def _law_composition(rng, base, ms, w):
    X = random_object(rng, base, ms, w)
    Y, Z, W = (_same_label_object(rng, X, ms) for _ in range(3))
    f, g, h = random_morphism(rng, X, Y), random_morphism(rng, Y, Z), random_morphism(rng, Z, W)
    ok = eq_morphism(compose(h, compose(g, f)), compose(compose(h, g), f))
    return ok, {"f": f, "g": g, "h": h}


def _law_identity(rng, base, ms, w):
    X = random_object(rng, base, ms, w)
    Y = _same_label_object(rng, X, ms)
    f = random_morphism(rng, X, Y)
    ok = eq_morphism(compose(identity_of(Y), f), f) and eq_morphism(compose(f, identity_of(X)), f)
    return ok, {"f": f}


def _law_bilinearity(rng, base, ms, w):
    X = random_object(rng, base, ms, w)
    Y, Z = _same_label_object(rng, X, ms), _same_label_object(rng, X, ms)
    f1, f2 = random_morphism(rng, X, Y), random_morphism(rng, X, Y)
    g1, g2 = random_morphism(rng, Y, Z), random_morphism(rng, Y, Z)
    lam = random_scalar(rng)
    ok = eq_morphism(compose(g1, add_scale(f1, f2, lam)), add_scale(compose(g1, f1), compose(g1, f2), lam))
    ok = ok and eq_morphism(compose(add_scale(g1, g2, lam), f1), add_scale(compose(g1, f1), compose(g2, f1), lam))
    return ok, {"f1": f1, "f2": f2, "g1": g1, "g2": g2}


def _law_vector_space(rng, base, ms, w):
    X = random_object(rng, base, ms, w)
    Y = _same_label_object(rng, X, ms)
    f, g, h = (random_morphism(rng, X, Y) for _ in range(3))
    a, b = random_scalar(rng), random_scalar(rng)
    zero = zero_of(X, Y)
    checks = [
        eq_morphism(add_scale(add_scale(f, g), h), add_scale(f, add_scale(g, h))),
        eq_morphism(add_scale(f, g), add_scale(g, f)),
        eq_morphism(add_scale(f, zero), f),
        eq_morphism(add_scale(f, f, -1), zero),
        eq_morphism(scale(add_scale(f, g), a), add_scale(scale(f, a), scale(g, a))),
        eq_morphism(scale(f, a + b), add_scale(scale(f, a), f, b)),
        eq_morphism(scale(scale(f, a), b), scale(f, a * b)),
        eq_morphism(scale(f, 1), f),
    ]
    return all(checks), {"f": f, "g": g, "h": h}


def _law_direct_sum(rng, base, ms, w):
    X, Y = random_object(rng, base, ms, w), random_object(rng, base, ms, w)
    S, pX, pY, iX, iY = direct_sum_pair(X, Y)
    ok = (
        eq_morphism(compose(pX, iX), identity_of(X))
        and eq_morphism(compose(pY, iY), identity_of(Y))
        and eq_morphism(add_scale(compose(iX, pX), compose(iY, pY)), identity_of(S))
        and compose(pX, iY).is_zero()
        and compose(pY, iX).is_zero()
    )
    return ok, {"X": X, "Y": Y}


def _law_coproduct(rng, base, ms, w):
    family = [random_object(rng, base, ms, w) for _ in range(rng.randint(1, 3))]
    S, inj = coproduct(family)
    Z = _same_label_object(rng, S, ms)
    F = random_morphism(rng, S, Z)
    parts = [compose(F, i) for i in inj]
    ok = eq_morphism(assemble_from_components(S, parts), F)
    gs = [random_morphism(rng, X, Z) for X in family]
    G = assemble_from_components(S, gs)
    ok = ok and all(eq_morphism(compose(G, i), g) for i, g in zip(inj, gs))
    # functoriality in the target
    W = _same_label_object(rng, Z, ms)
    h = random_morphism(rng, Z, W)
    ok = ok and eq_morphism(compose(h, G), assemble_from_components(S, [compose(h, g) for g in gs]))
    return ok, {"F": F}


def _law_bifunctoriality(rng, base, ms, w):
    ms = min(ms, 4)
    X, U = random_object(rng, base, ms, w), random_object(rng, base, ms, w)
    Y, V = _same_label_object(rng, X, ms), _same_label_object(rng, U, ms)
    Z, W = _same_label_object(rng, X, ms), _same_label_object(rng, U, ms)
    f1, f2 = random_morphism(rng, X, Y), random_morphism(rng, Y, Z)
    g1, g2 = random_morphism(rng, U, V), random_morphism(rng, V, W)
    ok = eq_morphism(
        tensor_morphisms(compose(f2, f1), compose(g2, g1)),
        compose(tensor_morphisms(f2, g2), tensor_morphisms(f1, g1)),
    )
    ok = ok and eq_morphism(tensor_morphisms(identity_of(X), identity_of(U)), identity_of(tensor_objects(X, U)))
    ok = ok and tensor_morphisms(f1, zero_of(U, V)).is_zero()
    return ok, {"f1": f1, "f2": f2, "g1": g1, "g2": g2}


def _law_naturality(rng, base, ms, w):
    ms = min(ms, 4)
    X, Y = random_object(rng, base, ms, w), random_object(rng, base, ms, w)
    X2, Y2 = _same_label_object(rng, X, ms), _same_label_object(rng, Y, ms)
    f, g = random_morphism(rng, X, X2), random_morphism(rng, Y, Y2)
    ok = eq_morphism(
        compose(braiding(X2, Y2), tensor_morphisms(f, g)),
        compose(tensor_morphisms(g, f), braiding(X, Y)),
    )
    ok = ok and eq_morphism(compose(twist(X2), f), compose(f, twist(X)))
    return ok, {"f": f, "g": g}


def _law_pentagon(rng, base, ms, w):
    X, Y, Z, W = (random_object(rng, base, min(ms, 3), w) for _ in range(4))
    I = identity_of
    lhs = compose(associator(X, Y, tensor_objects(Z, W)), associator(tensor_objects(X, Y), Z, W))
    rhs = compose_chain(
        tensor_morphisms(I(X), associator(Y, Z, W)),
        associator(X, tensor_objects(Y, Z), W),
        tensor_morphisms(associator(X, Y, Z), I(W)),
    )
    return eq_morphism(lhs, rhs), {"X": X, "Y": Y, "Z": Z, "W": W}


def _law_triangle(rng, base, ms, w):
    X, Y = random_object(rng, base, ms, w), random_object(rng, base, ms, w)
    one = unit_object(base)
    lY = unit_constraints(Y)[0]
    rX = unit_constraints(X)[1]
    lhs = compose(tensor_morphisms(identity_of(X), lY), associator(X, one, Y))
    return eq_morphism(lhs, tensor_morphisms(rX, identity_of(Y))), {"X": X, "Y": Y}


def _law_hexagon(rng, base, ms, w):
    X, Y, Z = (random_object(rng, base, min(ms, 4), w) for _ in range(3))
    I, T = identity_of, tensor_objects
    lhs1 = compose_chain(associator(Y, Z, X), braiding(X, T(Y, Z)), associator(X, Y, Z))
    rhs1 = compose_chain(
        tensor_morphisms(I(Y), braiding(X, Z)), associator(Y, X, Z), tensor_morphisms(braiding(X, Y), I(Z))
    )
    lhs2 = compose_chain(associator_inverse(Z, X, Y), braiding(T(X, Y), Z), associator_inverse(X, Y, Z))
    rhs2 = compose_chain(
        tensor_morphisms(braiding(X, Z), I(Y)), associator_inverse(X, Z, Y), tensor_morphisms(I(X), braiding(Y, Z))
    )
    return eq_morphism(lhs1, rhs1) and eq_morphism(lhs2, rhs2), {"X": X, "Y": Y, "Z": Z}


def _law_balancing(rng, base, ms, w):
    X, Y = random_object(rng, base, ms, w), random_object(rng, base, ms, w)
    lhs = twist(tensor_objects(X, Y))
    rhs = compose_chain(braiding(Y, X), braiding(X, Y), tensor_morphisms(twist(X), twist(Y)))
    return eq_morphism(lhs, rhs), {"X": X, "Y": Y}


COMPLETION_AXIOMS: dict[str, Callable] = {
    "composition": _law_composition,
    "identity": _law_identity,
    "bilinearity": _law_bilinearity,
    "vector_space": _law_vector_space,
    "direct_sum": _law_direct_sum,
    "coproduct": _law_coproduct,
    "bifunctoriality": _law_bifunctoriality,
    "naturality": _law_naturality,
    "pentagon": _law_pentagon,
    "triangle": _law_triangle,
    "hexagon": _law_hexagon,
    "balancing": _law_balancing,
}


def _dump(x):
    if isinstance(x, (SumObject, Explicit, Affine)):
        return x.to_json_obj()
    return x


def check_completion_coherence(axiom: str, data: PointedData, trials: int = 100, max_size: int = 6,
                               seed: int = 0, window: int = 3, max_dumps: int = 3) -> Report:
    """Randomized check of one law over finite objects of the completion.

    Each trial draws fresh objects/morphisms from ``random.Random(seed)``;
    the first few failing instances are dumped as JSON for replay.
    """
    if axiom not in COMPLETION_AXIOMS:
        raise ValueError(f"unknown axiom {axiom!r}; choose from {sorted(COMPLETION_AXIOMS)}")
    law = COMPLETION_AXIOMS[axiom]
    rng = random.Random(f"{seed}:{axiom}:{data.name}")
    report = Report(axiom=axiom, mode=f"random(seed={seed},max_size={max_size})")
    for trial in range(trials):
        ok, witness = law(rng, data, max_size, window)
        report.tuples_checked += 1
        if not ok:
            info = {"trial": trial, "base": data.name}
            if len(report.failures) < max_dumps:
                info["witness"] = {k: _dump(v) for k, v in witness.items()}
            report.fail(**info)
    return report
