from __future__ import annotations

import random
from fractions import Fraction

import pytest

from sumcomp.completion import (
    Affine,
    Explicit,
    Finite,
    SumObject,
    compose,
    compose_chain,
    eq_morphism,
    identity_of,
    include,
    inverse,
    lattice_object,
    restrict_to_points,
    unit_object,
    zero_of,
)
from sumcomp.errors import MixedFormUnsupported
from sumcomp.exact import ONE, CycNum
from sumcomp.monoidal import (
    COMPLETION_AXIOMS,
    associator,
    braiding,
    check_completion_coherence,
    random_morphism,
    random_object,
    tensor_morphisms,
    tensor_objects,
    twist,
    unit_constraints,
)
from sumcomp.pointed import cyclic_data, heisenberg_data, lattice_reference_data

C4 = cyclic_data(4)


def test_tensor_objects_examples():
    X = SumObject(C4, Finite((0, 1)), [1, 3])
    one = unit_object(C4)
    assert [tensor_objects(one, X).label((0, s)) for s in X.ids] == [1, 3]
    g = include(C4, 1)
    h = include(C4, 2)
    gh = tensor_objects(g, h)
    assert gh.ids == ((0, 0),) and gh.label((0, 0)) == 3


def test_tensor_lattice_with_singleton():
    N, d, a = 2, 3, 2
    H = heisenberg_data(N, d)
    A = lattice_object(H, [2 * N * d])
    V = tensor_objects(A, include(H, d * a))
    assert V.rank == 1 and V.label((5,)) == 2 * N * d * 5 + d * a
    with pytest.raises(MixedFormUnsupported):
        tensor_objects(A, SumObject(H, Finite((0, 1)), [0, 1]))


def test_tensor_identity_and_zero():
    rng = random.Random(0)
    X, Y = random_object(rng, C4, 4), random_object(rng, C4, 4)
    assert eq_morphism(tensor_morphisms(identity_of(X), identity_of(Y)), identity_of(tensor_objects(X, Y)))
    f = random_morphism(rng, X, X)
    assert tensor_morphisms(f, zero_of(Y, Y)).is_zero()


def test_heisenberg_associator_is_trivial():
    H = heisenberg_data(1, 1)
    X = SumObject(H, Finite((0, 1, 2)), [-1, 0, 2])
    a = associator(X, X, X)
    assert all(v == ONE for row in a.comps.values() for v in row.values())
    A = lattice_object(H, [2])
    aA = associator(A, A, A)
    assert isinstance(aA, Affine) and aA.exponent.is_zero()


def test_associator_invertible():
    R = lattice_reference_data(2)
    X = SumObject(R, Finite((0, 1)), [1, 3])
    a = associator(X, X, X)
    assert eq_morphism(compose(inverse(a), a), identity_of(a.source))


def test_unit_constraints():
    one = unit_object(C4)
    l, r = unit_constraints(one)
    assert l.comps == {(0, 0): {0: ONE}} and r.comps == {(0, 0): {0: ONE}}
    X = random_object(random.Random(2), C4, 4)
    l, _ = unit_constraints(X)
    assert eq_morphism(compose(inverse(l), l), identity_of(l.source))


def test_braiding_on_included_simples():
    R = lattice_reference_data(1)
    c = braiding(include(R, 1), include(R, 1))
    assert c.comps == {(0, 0): {(0, 0): CycNum.phase(Fraction(1, 2))}}
    H = heisenberg_data(1, 2)
    m = compose(braiding(include(H, 1), include(H, 4)), braiding(include(H, 4), include(H, 1)))
    (row,) = m.comps.values()
    (v,) = row.values()
    assert v == CycNum.phase(2 * H.braid_exp(4, 1))


def test_twist_examples():
    N = 3
    H = heisenberg_data(N, 1)
    t = twist(include(H, 2 * N))   # F_{sqrt(2N)}
    assert t.comps[0][0] == ONE
    assert eq_morphism(twist(unit_object(C4)), identity_of(unit_object(C4)))


def test_lattice_braiding_exponent():
    H = heisenberg_data(1, 2)
    A = lattice_object(H, [4])
    V = lattice_object(H, [4], 1)
    c = braiding(A, V)
    # (n1, n2) -> (n2, n1) with exponent (4 n1)(4 n2 + 1)/8
    assert c.index_map((2, 5)) == (5, 2)
    assert c.exponent.evaluate((1, 1)) == Fraction(20, 8)


def test_affine_and_window_paths_agree():
    H = heisenberg_data(2, 1)
    A = lattice_object(H, [4])
    V = lattice_object(H, [4], 1)
    chain = [braiding(A, V), braiding(V, A)]
    full = compose_chain(chain[1], chain[0])
    pts = [(i, j) for i in range(-2, 3) for j in range(-2, 3)]
    direct = restrict_to_points(full, pts)
    stepwise = restrict_to_points(chain[0], pts)
    stepwise2 = {s: {t2: a * b for t, a in row.items() for t2, b in chain[1].components_at(t).items()}
                 for s, row in stepwise.comps.items()}
    from sumcomp.completion import components_equal

    assert components_equal(direct.comps, stepwise2)


@pytest.mark.parametrize("axiom", sorted(COMPLETION_AXIOMS))
def test_completion_laws_cyclic(axiom):
    for n in (2, 3, 4, 5):
        r = check_completion_coherence(axiom, cyclic_data(n), trials=15, seed=7)
        assert r.passed, r.to_json()


@pytest.mark.parametrize("axiom", ["pentagon", "hexagon", "triangle", "balancing", "naturality"])
def test_completion_laws_nontrivial_associator(axiom):
    for N in (1, 2):
        assert check_completion_coherence(axiom, lattice_reference_data(N), trials=15, seed=3).passed


def test_completion_laws_heisenberg_windowed():
    for ax in ("hexagon", "balancing", "bifunctoriality"):
        assert check_completion_coherence(ax, heisenberg_data(1, 2), trials=10, seed=1, window=4).passed


def test_theta_41_balancing_fails_in_completion():
    D = lattice_reference_data(1).with_twist("theta_41")
    r = check_completion_coherence("balancing", D, trials=30, seed=0)
    assert not r.passed
    assert "witness" in r.failures[0]


def test_deterministic_seed():
    a = check_completion_coherence("pentagon", cyclic_data(3), trials=5, seed=42).to_json()
    b = check_completion_coherence("pentagon", cyclic_data(3), trials=5, seed=42).to_json()
    assert a == b
