from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumcomp.symbolic import AffineMap, Poly, box_points

coef = st.builds(Fraction, st.integers(-6, 6), st.sampled_from([1, 2, 3, 4, 6]))


@st.composite
def polys(draw, nvars=2, max_deg=2):
    terms = {}
    for mono in product(range(max_deg + 1), repeat=nvars):
        if sum(mono) <= max_deg and draw(st.booleans()):
            terms[mono] = draw(coef)
    return Poly(nvars, terms)


def _brute_even(p: Poly, w: int = 6) -> bool:
    for pt in box_points([(-w, w)] * p.nvars):
        v = p.evaluate(pt)
        if v.denominator != 1 or v.numerator % 2:
            return False
    return True


@settings(max_examples=200, deadline=None)
@given(polys())
def test_even_valued_matches_brute_force(p):
    assert p.is_even_valued() == _brute_even(p)


def test_even_valued_binomial_cases():
    n = Poly.var(1, 0)
    assert (n * (n - 1)).is_even_valued()        # n(n-1) is always even
    assert not (n * n * Fraction(1, 2)).is_even_valued()
    assert (n * n + n).is_even_valued()
    assert not n.is_even_valued()


def test_constant_mod2():
    n1, n2 = Poly.var(2, 0), Poly.var(2, 1)
    assert (n1 * n2 * 2 + Fraction(1, 3)).constant_mod2() == Fraction(1, 3)
    assert (n1 * n2 * 2 + 5).constant_mod2() == 1
    assert (n1 * Fraction(1, 2)).constant_mod2() is None


@settings(max_examples=100, deadline=None)
@given(polys(), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_compose_affine_matches_pointwise(p, entries):
    m = AffineMap(((entries[0], entries[1]), (entries[2], entries[3])), (entries[4], entries[5]), 2)
    q = p.compose_affine(m)
    for pt in box_points([(-2, 2)] * 2):
        assert q.evaluate(pt) == p.evaluate(m(pt))


def test_affine_inverse_and_compose():
    m = AffineMap(((2, 1), (1, 1)), (3, -1), 2)
    inv = m.inverse()
    assert inv.after(m) == AffineMap.identity(2)
    assert m.after(inv) == AffineMap.identity(2)
    with pytest.raises(ValueError):
        AffineMap(((2, 0), (0, 1)), (0, 0), 2).inverse()


def test_block_sum_and_permutation():
    a = AffineMap(((1,),), (2,), 1)
    b = AffineMap(((3,),), (0,), 1)
    assert a.block_sum(b)((1, 1)) == (3, 3)
    assert AffineMap.permutation([1, 0])((4, 5)) == (5, 4)


def test_embed_and_json():
    p = Poly(2, {(1, 1): Fraction(1, 2), (0, 0): 3})
    e = p.embed(3, [0, 2])
    assert e.evaluate((2, 7, 3)) == p.evaluate((2, 3))
    assert Poly.from_json_obj(2, p.to_json_obj()) == p
    m = AffineMap(((1, 2),), (3,), 2)
    assert AffineMap.from_json_obj(m.to_json_obj()) == m
