"""Multivariate rational polynomials and integer affine maps.

These carry the closed-form data behind the infinite (lattice-indexed)
morphisms: a phase exponent is a polynomial ``p(n)`` meaning
``e^{i pi p(n)}``, and an index map is ``n -> M n + v``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]


class Poly:
    """Polynomial in ``nvars`` variables with rational coefficients; immutable."""

    __slots__ = ("nvars", "_coeffs", "_int_form")

    def __init__(self, nvars: int, coeffs: Mapping[Monomial, Fraction | int] = ()):
        self.nvars = nvars
        clean = {}
        for mono, c in dict(coeffs).items():
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} does not have {nvars} variables")
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self._coeffs: dict[Monomial, Fraction] = clean
        self._int_form = None

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, c) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int) -> "Poly":
        mono = [0] * nvars
        mono[i] = 1
        return cls(nvars, {tuple(mono): 1})

    @classmethod
    def linear(cls, coeffs: Sequence, const=0) -> "Poly":
        n = len(coeffs)
        out = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            mono = [0] * n
            mono[i] = 1
            out[tuple(mono)] = c
        return cls(n, out)

    @property
    def coeffs(self) -> dict[Monomial, Fraction]:
        return dict(self._coeffs)

    def degree(self) -> int:
        return max((sum(m) for m in self._coeffs), default=0)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._coeffs.items())))

    def __add__(self, other: "Poly") -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        self._check(other)
        out = dict(self._coeffs)
        for m, c in other._coeffs.items():
            out[m] = out.get(m, 0) + c
        return Poly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self._coeffs.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(self.nvars, {m: c * other for m, c in self._coeffs.items()})
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._coeffs.items():
            for m2, c2 in other._coeffs.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        out = Poly.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def _check(self, other: "Poly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __call__(self, *point: int) -> Fraction:
        if len(point) == 1 and isinstance(point[0], (tuple, list)):
            point = tuple(point[0])
        return self.evaluate(point)

    def evaluate(self, point: Sequence[int]) -> Fraction:
        # integer arithmetic with one common denominator, then a single Fraction
        if self._int_form is None:
            den = 1
            for c in self._coeffs.values():
                den = lcm(den, c.denominator)
            self._int_form = (
                den,
                [(m, int(c * den)) for m, c in self._coeffs.items()],
            )
        den, terms = self._int_form
        total = 0
        for mono, c in terms:
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= x**e
            total += v
        return Fraction(total, den)

    def compose_affine(self, amap: "AffineMap") -> "Poly":
        """Return ``q(y) = p(M y + v)``."""
        if amap.target_dim != self.nvars:
            raise ValueError("affine map target dimension does not match")
        forms = [
            Poly.linear(amap.matrix[i], amap.offset[i]) if amap.source_dim else
            Poly.constant(0, amap.offset[i])
            for i in range(self.nvars)
        ]
        out = Poly.zero(amap.source_dim)
        for mono, c in self._coeffs.items():
            term = Poly.constant(amap.source_dim, c)
            for f, e in zip(forms, mono):
                if e:
                    term = term * f**e
            out = out + term
        return out

    def embed(self, nvars: int, positions: Sequence[int]) -> "Poly":
        """Rename variable ``i`` to variable ``positions[i]`` of a larger ring."""
        out = {}
        for mono, c in self._coeffs.items():
            m = [0] * nvars
            for i, e in enumerate(mono):
                m[positions[i]] += e
            out[tuple(m)] = out.get(tuple(m), 0) + c
        return Poly(nvars, out)

    def _partial_degrees(self) -> list[int]:
        return [max((m[i] for m in self._coeffs), default=0) for i in range(self.nvars)]

    def is_even_valued(self) -> bool:
        """True iff ``p(n)`` is an even integer for every integer point ``n``.

        Writes p in the binomial basis prod_i C(n_i, a_i); the basis
        coefficients are the iterated forward differences at the origin, and
        p maps Z^r into 2Z iff all of them are even integers.
        """
        degs = self._partial_degrees()
        total = self.degree()
        for alpha in product(*(range(d + 1) for d in degs)):
            if sum(alpha) > total:
                continue
            diff = Fraction(0)
            for beta in product(*(range(a + 1) for a in alpha)):
                sign = (-1) ** (sum(alpha) - sum(beta))
                w = 1
                for a, b in zip(alpha, beta):
                    w *= comb(a, b)
                diff += sign * w * self.evaluate(beta)
            if diff.denominator != 1 or diff.numerator % 2:
                return False
        return True

    def constant_mod2(self) -> Fraction | None:
        """If ``p`` is constant modulo 2 on Z^r, return that constant in [0, 2)."""
        c0 = self.evaluate((0,) * self.nvars)
        if (self - c0).is_even_valued():
            return c0 - 2 * (c0.numerator // (2 * c0.denominator))
        return None

    def to_json_obj(self) -> dict[str, str]:
        return {",".join(map(str, m)): str(c) for m, c in sorted(self._coeffs.items())}

    @classmethod
    def from_json_obj(cls, nvars: int, obj: Mapping[str, str]) -> "Poly":
        coeffs = {}
        for k, v in obj.items():
            mono = tuple(int(x) for x in k.split(",")) if k else ()
            coeffs[mono] = Fraction(v)
        return cls(nvars, coeffs)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "Poly(0)"
        parts = []
        for m, c in sorted(self._coeffs.items()):
            vs = "*".join(f"n{i}^{e}" if e > 1 else f"n{i}" for i, e in enumerate(m) if e)
            parts.append(f"{c}*{vs}" if vs else str(c))
        return "Poly(" + " + ".join(parts) + ")"


@dataclass(frozen=True)
class AffineMap:
    """Integer affine map ``Z^source_dim -> Z^target_dim``, ``n -> M n + v``."""

    matrix: tuple[tuple[int, ...], ...]
    offset: tuple[int, ...]
    source_dim: int

    def __post_init__(self):
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        object.__setattr__(self, "offset", tuple(int(x) for x in self.offset))
        if len(self.matrix) != len(self.offset):
            raise ValueError("matrix rows and offset length differ")
        for row in self.matrix:
            if len(row) != self.source_dim:
                raise ValueError("matrix row length differs from source dimension")

    @property
    def target_dim(self) -> int:
        return len(self.offset)

    @classmethod
    def identity(cls, dim: int) -> "AffineMap":
        return cls(
            tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)),
            (0,) * dim,
            dim,
        )

    @classmethod
    def constant(cls, source_dim: int, value: Sequence[int]) -> "AffineMap":
        return cls(tuple((0,) * source_dim for _ in value), tuple(value), source_dim)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "AffineMap":
        """Map sending ``n`` to ``(n[perm[0]], n[perm[1]], ...)``."""
        d = len(perm)
        return cls(tuple(tuple(int(j == perm[i]) for j in range(d)) for i in range(d)), (0,) * d, d)

    def __call__(self, n: Sequence[int]) -> tuple[int, ...]:
        return tuple(
            sum(a * x for a, x in zip(row, n)) + b for row, b in zip(self.matrix, self.offset)
        )

    def after(self, inner: "AffineMap") -> "AffineMap":
        """Composite ``self o inner``."""
        if inner.target_dim != self.source_dim:
            raise ValueError("affine maps are not composable")
        mat = tuple(
            tuple(
                sum(self.matrix[i][k] * inner.matrix[k][j] for k in range(self.source_dim))
                for j in range(inner.source_dim)
            )
            for i in range(self.target_dim)
        )
        off = tuple(
            sum(self.matrix[i][k] * inner.offset[k] for k in range(self.source_dim)) + self.offset[i]
            for i in range(self.target_dim)
        )
        return AffineMap(mat, off, inner.source_dim)

    def block_sum(self, other: "AffineMap") -> "AffineMap":
        """Direct sum ``(n, m) -> (self(n), other(m))``."""
        rows = [r + (0,) * other.source_dim for r in self.matrix]
        rows += [(0,) * self.source_dim + r for r in other.matrix]
        return AffineMap(tuple(rows), self.offset + other.offset, self.source_dim + other.source_dim)

    def inverse(self) -> "AffineMap":
        """Inverse of a bijective integer affine map (unimodular matrix)."""
        d = self.source_dim
        if self.target_dim != d:
            raise ValueError("only square affine maps are invertible")
        aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(d)]
               for i, row in enumerate(self.matrix)]
        for col in range(d):
            piv = next((r for r in range(col, d) if aug[r][col]), None)
            if piv is None:
                raise ValueError("affine map is not invertible")
            aug[col], aug[piv] = aug[piv], aug[col]
            p = aug[col][col]
            aug[col] = [x / p for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col]:
                    f = aug[r][col]
                    aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
        inv = [row[d:] for row in aug]
        if any(x.denominator != 1 for row in inv for x in row):
            raise ValueError("affine map is not invertible over the integers")
        mat = tuple(tuple(int(x) for x in row) for row in inv)
        off = tuple(-sum(mat[i][k] * self.offset[k] for k in range(d)) for i in range(d))
        return AffineMap(mat, off, d)

    def to_json_obj(self) -> dict:
        return {"matrix": [list(r) for r in self.matrix], "offset": list(self.offset),
                "source_dim": self.source_dim}

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "AffineMap":
        return cls(tuple(tuple(r) for r in obj["matrix"]), tuple(obj["offset"]), obj["source_dim"])


def box_points(box: Iterable[tuple[int, int]]) -> list[tuple[int, ...]]:
    """All integer points of a product of closed intervals."""
    return list(product(*(range(lo, hi + 1) for lo, hi in box)))
