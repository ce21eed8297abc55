from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcomp.completion import (
    Affine,
    Explicit,
    Finite,
    Lattice,
    SumObject,
    add_scale,
    assemble_from_components,
    compose,
    coproduct,
    direct_sum_pair,
    eq_morphism,
    evaluate_chain,
    identity_of,
    include,
    include_morphism,
    inverse,
    lattice_object,
    normalize,
    restrict_to_points,
    restrict_to_window,
    scale,
    unit_object,
    zero_of,
)
from sumcomp.errors import AffineAdditionUnsupported, DomainMismatch, LabelMismatch, MixedFormUnsupported
from sumcomp.exact import ONE, CycNum
from sumcomp.monoidal import random_morphism, random_object
from sumcomp.pointed import cyclic_data, heisenberg_data
from sumcomp.symbolic import AffineMap, Poly

from oracles import dense, dense_close, dense_compose

C3 = cyclic_data(3)
H = heisenberg_data(1, 1)


def obj(labels, base=C3):
    return SumObject(base, Finite(tuple(range(len(labels)))), labels)


def test_normalize_examples():
    X = obj([0])
    m = Explicit(X, X, {0: {0: CycNum()}})
    assert normalize(m).comps == {}
    Y = obj([1, 1])
    Z = obj([1, 1])
    f = Explicit(Y, Z, {0: {0: ONE + CycNum.phase(1), 1: CycNum.rational(2)}})
    assert normalize(f).comps == {0: {1: CycNum.rational(2)}}
    assert normalize(normalize(f)).comps == normalize(f).comps


def test_interior_sum_cancels():
    S, T, R = obj([1]), obj([1, 1]), obj([1])
    f = Explicit(S, T, {0: {0: ONE, 1: ONE}})
    h = Explicit(T, R, {0: {0: ONE}, 1: {0: -ONE}})
    assert compose(h, f).is_zero()


def test_label_mismatch_rejected():
    with pytest.raises(LabelMismatch):
        Explicit(obj([0]), obj([1]), {0: {0: ONE}})
    # a zero component between different labels is harmless
    Explicit(obj([0]), obj([1]), {0: {0: CycNum()}})


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        compose(identity_of(obj([0])), identity_of(obj([1])))


def test_identity_and_zero():
    rng = random.Random(3)
    X = random_object(rng, C3, 5)
    f = random_morphism(rng, X, X)
    assert eq_morphism(compose(identity_of(X), f), f)
    assert compose(zero_of(X, X), f).is_zero()
    A = lattice_object(H, [2])
    idA = identity_of(A)
    assert isinstance(idA, Affine) and idA.exponent.is_zero()


def test_add_scale_examples():
    rng = random.Random(5)
    X = random_object(rng, C3, 5)
    f = random_morphism(rng, X, X)
    assert eq_morphism(add_scale(f, zero_of(X, X)), f)
    assert add_scale(f, f, -1).is_zero()
    Y = obj([0, 0])
    g1 = Explicit(Y, Y, {0: {0: ONE}})
    g2 = Explicit(Y, Y, {0: {1: ONE}})
    s = add_scale(g1, g2)
    assert set(s.comps[0]) == {0, 1}


def test_direct_sum_examples():
    X, Y = obj([0, 1]), obj([1, 2, 2])
    S, pX, pY, iX, iY = direct_sum_pair(X, Y)
    assert eq_morphism(compose(pX, iX), identity_of(X))
    assert eq_morphism(add_scale(compose(iX, pX), compose(iY, pY)), identity_of(S))
    assert compose(pX, iY).is_zero()


def test_coproduct_of_singletons():
    N, d = 2, 3
    Hd = heisenberg_data(N, d)
    S, inj = coproduct([include(Hd, d * a) for a in range(2 * N)])
    assert sorted(S.label(i) for i in S.ids) == [d * a for a in range(2 * N)]
    for i, m in enumerate(inj):
        assert list(m.comps) == [0] and list(m.comps[0]) == [(i, 0)] and m.comps[0][(i, 0)] == ONE
    S1, (j,) = coproduct([obj([0, 1])])
    assert eq_morphism(compose(inverse(j), j), identity_of(obj([0, 1])))


def test_assemble_round_trip_and_zero():
    rng = random.Random(11)
    fam = [random_object(rng, C3, 3) for _ in range(3)]
    S, inj = coproduct(fam)
    Z = random_object(rng, C3, 4)
    F = random_morphism(rng, S, Z)
    assert eq_morphism(assemble_from_components(S, [compose(F, i) for i in inj]), F)
    assert assemble_from_components(S, [zero_of(X, Z) for X in fam]).is_zero()
    with pytest.raises(DomainMismatch):
        assemble_from_components(S, [zero_of(X, Z) for X in fam[:2]])


def test_include_is_fully_faithful():
    a, b = CycNum.phase(Fraction(1, 3)), CycNum.rational(2)
    g = include_morphism(C3, 1, 1, a)
    h = include_morphism(C3, 1, 1, b)
    assert compose(h, g).comps == {0: {0: a * b}}
    assert include(C3, 0) == unit_object(C3)
    with pytest.raises(LabelMismatch):
        include_morphism(C3, 1, 2, ONE)
    assert include_morphism(C3, 1, 2, 0).is_zero()
    assert eq_morphism(include_morphism(C3, 2, 2, 1), identity_of(include(C3, 2)))


def _shift(A_label_const, ell, J=2):
    src = lattice_object(H, [J], A_label_const)
    tgt = lattice_object(H, [J], A_label_const + ell)
    return Affine(src, tgt, AffineMap(((1,),), (-ell // J,), 1))


def test_affine_compose_shift_inverse():
    s = _shift(1, 4)
    back = Affine(s.target, s.source, AffineMap(((1,),), (2,), 1))
    assert eq_morphism(compose(back, s), identity_of(s.source))
    assert eq_morphism(inverse(s), back)


def test_affine_label_check():
    A = lattice_object(H, [2])
    with pytest.raises(LabelMismatch):
        Affine(A, A, AffineMap(((1,),), (1,), 1))  # shifts labels by 2


def test_affine_exponents_mod_2():
    A = lattice_object(H, [2])
    n = Poly.var(1, 0)
    f = Affine(A, A, AffineMap.identity(1), n * n * Fraction(1, 2))
    g = Affine(A, A, AffineMap.identity(1), n * n * Fraction(1, 2) + 2)
    assert eq_morphism(f, g)
    h = Affine(A, A, AffineMap.identity(1), n * n * Fraction(1, 2) + n * (n - 1))
    assert eq_morphism(f, h)
    assert not eq_morphism(f, Affine(A, A, AffineMap.identity(1), n))


def test_affine_addition_rules():
    A = lattice_object(H, [2])
    I = identity_of(A)
    assert eq_morphism(add_scale(I, I), scale(I, 2))
    assert add_scale(I, I, -1).is_zero()
    n = Poly.var(1, 0)
    with pytest.raises(AffineAdditionUnsupported):
        add_scale(I, Affine(A, A, AffineMap.identity(1), n))
    with pytest.raises(MixedFormUnsupported):
        add_scale(I, Explicit(A, A, {(0,): {(0,): ONE}}))


def test_restrict_to_window_examples():
    A = lattice_object(H, [2])
    AA = SumObject(H, Lattice(2), AffineMap(((2, 2),), (0,), 2))
    mu = Affine(AA, A, AffineMap(((1, 1),), (0,), 2))
    r = restrict_to_window(mu, 2, target_box=4)
    assert not r.truncated
    comps = [(s, t, a) for s, row in r.value.comps.items() for t, a in row.items()]
    assert len(comps) == 25 and all(a == ONE for _, _, a in comps)
    s = _shift(1, 4)
    rs = restrict_to_window(s, 3, target_box=6)
    assert len(rs.value.comps) == 7
    assert all(next(iter(row)) == (p[0] - 2,) for p, row in rs.value.comps.items())
    assert restrict_to_window(s, 3).truncated
    idw = restrict_to_window(identity_of(A), 2).value
    assert eq_morphism(idw, identity_of(idw.source))


def test_mixed_compose_on_infinite_domain():
    A = lattice_object(H, [2])
    e = Explicit(A, A, {(0,): {(0,): ONE}})
    with pytest.raises(MixedFormUnsupported):
        compose(e, identity_of(A))
    assert compose(identity_of(A), e).comps == {(0,): {(0,): ONE}}


def test_evaluate_chain_matches_restriction():
    s = _shift(1, 4)
    back = inverse(s)
    pts = [(k,) for k in range(-3, 4)]
    out = evaluate_chain([s, back], pts)
    assert all(list(out[p]) == [p] and out[p][p] == ONE for p in pts)
    r = restrict_to_points(s, pts)
    assert len(r.comps) == 7


def test_json_serialization():
    f = Explicit(obj([1, 1]), obj([1]), {0: {0: CycNum.phase(Fraction(1, 3))}})
    js = f.to_json_obj()
    assert js["form"] == "explicit" and js["components"][0]["scalar"] == [{"coef": "1", "exp": "1/3"}]
    assert _shift(1, 4).to_json_obj()["index_map"]["offset"] == [-2]


# ---------------------------------------------------------------- randomized, against a float oracle


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_compose_matches_dense_oracle(seed):
    rng = random.Random(seed)
    base = cyclic_data(rng.choice([2, 3, 4, 5]))
    X = random_object(rng, base, 6)
    Y = random_object(rng, base, 6)
    Z = random_object(rng, base, 6)
    f, g = random_morphism(rng, X, Y), random_morphism(rng, Y, Z)
    assert dense_close(dense(compose(g, f)), dense_compose(dense(g), dense(f)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_add_matches_dense_oracle(seed):
    from oracles import to_complex

    rng = random.Random(seed)
    base = cyclic_data(rng.choice([2, 3, 4, 5]))
    X, Y = random_object(rng, base, 6), random_object(rng, base, 6)
    f, g = random_morphism(rng, X, Y), random_morphism(rng, X, Y)
    lam = CycNum.phase(Fraction(rng.randrange(12), 6), rng.randint(-2, 2))
    want = dict(dense(f))
    for k, v in dense(g).items():
        want[k] = want.get(k, 0) + to_complex(lam) * v
    assert dense_close(dense(add_scale(f, g, lam)), want)
