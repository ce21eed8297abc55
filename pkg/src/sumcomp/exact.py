"""Exact arithmetic for phases e^{i pi q} and their finite rational combinations.

A :class:`Phase` stores the rational exponent ``q`` reduced into ``[0, 2)``.
A :class:`CycNum` is a finite sum ``sum_j r_j e^{i pi q_j}`` with rational
``r_j``.  Terms are kept with exponents in ``[0, 1)``: a phase with exponent
``q >= 1`` is stored as ``-e^{i pi (q - 1)}``.  That folding alone settles
every identity among real signs; the general zero test rewrites all phases
as powers of one primitive root of unity and reduces modulo the cyclotomic
polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Mapping, Union

from .errors import NotMonomial, ZeroScalar

Rational = Union[int, Fraction]

__all__ = [
    "Phase",
    "CycNum",
    "phase_make",
    "cyc_add",
    "cyc_mul",
    "cyc_is_zero",
    "cyc_inv_monomial",
    "cyclotomic_poly",
    "ONE",
    "ZERO",
]


def _mod2(q: Rational) -> Fraction:
    q = Fraction(q)
    return q - 2 * (q.numerator // (2 * q.denominator))


@dataclass(frozen=True, order=True)
class Phase:
    """The unit complex number e^{i pi exponent}, exponent canonical in [0, 2)."""

    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", _mod2(self.exponent))

    def __mul__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.exponent + other.exponent)

    def inverse(self) -> "Phase":
        return Phase(-self.exponent)

    def __pow__(self, k: int) -> "Phase":
        return Phase(self.exponent * k)

    def to_cyc(self) -> "CycNum":
        return CycNum.phase(self.exponent)

    def to_str(self) -> str:
        return str(self.exponent)

    @classmethod
    def from_str(cls, s: str) -> "Phase":
        return cls(Fraction(s))

    def __repr__(self) -> str:
        return f"Phase({self.exponent})"


def phase_make(q: Rational) -> Phase:
    return Phase(Fraction(q))


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (lowest degree first) of the n-th cyclotomic polynomial.

    Obtained by dividing x^n - 1 by Phi_d for every proper divisor d of n.
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    # den is monic; the division is exact for cyclotomic factors
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            quot[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return quot


def _reduces_to_zero(coeffs: list[Fraction], n: int) -> bool:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, deg - 1, -1):
        lead = c[i]
        if lead:
            for j in range(deg + 1):
                c[i - deg + j] -= lead * phi[j]
    return not any(c[:deg])


def _prime_powers(n: int) -> list[tuple[int, int]]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            q = 1
            while n % p == 0:
                n //= p
                q *= p
            out.append((p, q))
        p += 1
    if n > 1:
        out.append((n, n))
    return out


def _sparse_is_zero(terms: dict[int, Fraction], n: int) -> bool:
    """Zero test in Q(zeta_n) = (x) Q(zeta_{p^a}) over the prime powers of n.

    ``zeta_n^k`` maps to the tensor of ``x_p^{k mod p^a}`` (CRT); each factor
    is reduced with the sparse relation
    ``x^e = -sum_{j=1}^{p-1} x^{e - j p^{a-1}}`` for ``e >= (p-1) p^{a-1}``,
    leaving coordinates in the power basis of every factor.
    """
    pps = _prime_powers(n)
    vec: dict[tuple[int, ...], Fraction] = {}
    for k, r in terms.items():
        key = tuple(k % q for _, q in pps)
        vec[key] = vec.get(key, 0) + r
    for i, (p, q) in enumerate(pps):
        step = q // p
        top = (p - 1) * step
        out: dict[tuple[int, ...], Fraction] = {}
        for key, r in vec.items():
            if not r:
                continue
            e = key[i]
            if e < top:
                out[key] = out.get(key, 0) + r
                continue
            for j in range(1, p):
                k2 = key[:i] + (e - j * step,) + key[i + 1:]
                out[k2] = out.get(k2, 0) - r
        vec = out
    return not any(vec.values())


_DENSE_LIMIT = 720


class CycNum:
    """Exact element of Q(zeta) for a root of unity zeta; immutable.

    Equality is decided exactly, so instances are deliberately unhashable.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Rational, Rational] | Iterable = ()):
        acc: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for q, r in items:
            r = Fraction(r)
            if not r:
                continue
            q = _mod2(q)
            if q >= 1:
                q -= 1
                r = -r
            acc[q] = acc.get(q, 0) + r
        self._terms = tuple(sorted((q, r) for q, r in acc.items() if r))

    @classmethod
    def _raw(cls, terms: tuple) -> "CycNum":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    # constructors
    @classmethod
    def phase(cls, q: Rational, coef: Rational = 1) -> "CycNum":
        return cls({q: coef})

    @classmethod
    def rational(cls, r: Rational) -> "CycNum":
        return cls({0: r})

    @classmethod
    def coerce(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, Phase):
            return cls.phase(x.exponent)
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to CycNum")

    @property
    def terms(self) -> tuple[tuple[Fraction, Fraction], ...]:
        """Sorted ``(exponent, coefficient)`` pairs, exponents in [0, 1)."""
        return self._terms

    # arithmetic
    def __add__(self, other) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for q, r in other._terms:
            acc[q] = acc.get(q, 0) + r
        return CycNum._raw(tuple(sorted((q, r) for q, r in acc.items() if r)))

    __radd__ = __add__

    def __neg__(self) -> "CycNum":
        return CycNum._raw(tuple((q, -r) for q, r in self._terms))

    def __sub__(self, other) -> "CycNum":
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "CycNum":
        return CycNum.coerce(other) - self

    def __mul__(self, other) -> "CycNum":
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return CycNum._raw(tuple((q, r * other) for q, r in self._terms))
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) == 1 and len(self._terms) == 1:
            (q1, r1), (q2, r2) = self._terms[0], other._terms[0]
            q = q1 + q2
            r = r1 * r2
            if q >= 1:
                return CycNum._raw(((q - 1, -r),))
            return CycNum._raw(((q, r),))
        return CycNum(
            (q1 + q2, r1 * r2) for q1, r1 in self._terms for q2, r2 in other._terms
        )

    __rmul__ = __mul__

    # predicates
    def is_zero(self) -> bool:
        t = self._terms
        if not t:
            return True
        if len(t) == 1:
            return False
        # e^{i pi p/m} = zeta_n^{p n / (2m)} with n the lcm of the doubled denominators
        n = 1
        for q, _ in t:
            n = lcm(n, 2 * q.denominator)
        if n <= _DENSE_LIMIT:
            coeffs = [Fraction(0)] * n
            for q, r in t:
                coeffs[int(q * n / 2)] += r
            return _reduces_to_zero(coeffs, n)
        return _sparse_is_zero({int(q * n / 2): r for q, r in t}, n)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        if self._terms == other._terms:
            return True
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_parts(self) -> tuple[Fraction, Phase]:
        """Return ``(r, Phase(q))`` with ``self == r * e^{i pi q}`` and ``r > 0``."""
        if not self._terms:
            raise ZeroScalar("zero has no monomial form")
        if len(self._terms) != 1:
            raise NotMonomial(f"{self!r} has {len(self._terms)} terms")
        q, r = self._terms[0]
        if r < 0:
            return -r, Phase(q + 1)
        return r, Phase(q)

    def inverse_monomial(self) -> "CycNum":
        r, ph = self.monomial_parts()
        return CycNum.phase(-ph.exponent, 1 / r)

    # serialization
    def to_json_obj(self) -> list[dict[str, str]]:
        return [{"coef": str(r), "exp": str(q)} for q, r in self._terms]

    @classmethod
    def from_json_obj(cls, obj: list[Mapping[str, str]]) -> "CycNum":
        return cls((Fraction(t["exp"]), Fraction(t["coef"])) for t in obj)

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    def __repr__(self) -> str:
        if not self._terms:
            return "CycNum(0)"
        parts = [f"{r}*e^(i*pi*{q})" if q else str(r) for q, r in self._terms]
        return "CycNum(" + " + ".join(parts) + ")"


ZERO = CycNum()
ONE = CycNum.rational(1)


def cyc_add(a: CycNum, b: CycNum) -> CycNum:
    return a + b


def cyc_mul(a: CycNum, b: CycNum) -> CycNum:
    return a * b


def cyc_is_zero(a: CycNum) -> bool:
    return a.is_zero()


def cyc_inv_monomial(a: CycNum) -> CycNum:
    return a.inverse_monomial()
