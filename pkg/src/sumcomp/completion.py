"""Direct-sum completion of a skeletal pointed category.

An object is a formal direct sum of simple objects indexed either by a
finite list of identifiers or by the integer lattice ``Z^r``.  A morphism
records, for every source index ``s``, the finite set of target indices it
reaches together with one scalar per pair; in a skeletal pointed base every
Hom space is at most one-dimensional, so a component is a :class:`CycNum`
and must vanish unless the two labels agree.

Two morphism bodies exist:

* :class:`Explicit` stores the singleton map ``s -> {t: scalar}`` for
  finitely many ``s``.  Anything not stored is zero.
* :class:`Affine` is single-valued on a lattice: ``s -> {tau(s): c e^{i pi p(s)}}``
  with ``tau`` integer affine and ``p`` a rational polynomial.

Operations keep results normalized (zero components removed), which is the
canonical representative of the zero-padding equivalence on morphisms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Mapping, Sequence, Union

from .errors import (
    AffineAdditionUnsupported,
    DomainMismatch,
    LabelMismatch,
    MixedFormUnsupported,
)
from .exact import ONE, ZERO, CycNum
from .pointed import PointedData
from .symbolic import AffineMap, Poly, box_points

__all__ = [
    "Finite",
    "Lattice",
    "SumObject",
    "SumMorphism",
    "Explicit",
    "Affine",
    "finite_object",
    "lattice_object",
    "normalize",
    "compose",
    "compose_chain",
    "add_scale",
    "scale",
    "identity_of",
    "zero_of",
    "direct_sum_pair",
    "coproduct",
    "assemble_from_components",
    "restrict_to_summand",
    "include",
    "include_morphism",
    "unit_object",
    "restrict_to_window",
    "restrict_to_points",
    "eq_morphism",
    "scalar_ratio",
    "inverse",
    "components_equal",
]


# ---------------------------------------------------------------- domains


@dataclass(frozen=True)
class Finite:
    ids: tuple

    def __post_init__(self):
        object.__setattr__(self, "ids", tuple(self.ids))
        if len(set(self.ids)) != len(self.ids):
            raise ValueError("finite index identifiers must be distinct")
        object.__setattr__(self, "_set", frozenset(self.ids))

    def __contains__(self, idx) -> bool:
        return idx in self._set  # type: ignore[attr-defined]

    def __len__(self) -> int:
        return len(self.ids)


@dataclass(frozen=True)
class Lattice:
    rank: int

    def __post_init__(self):
        if self.rank < 1:
            raise ValueError("lattice rank must be positive")

    def __contains__(self, idx) -> bool:
        return (
            isinstance(idx, tuple)
            and len(idx) == self.rank
            and all(isinstance(x, int) for x in idx)
        )


IndexDomain = Union[Finite, Lattice]


# ---------------------------------------------------------------- objects


class SumObject:
    """Formal direct sum ``(+)_{s} X_{label(s)}`` over a pointed base."""

    __slots__ = ("base", "domain", "_labels", "_form")

    def __init__(self, base: PointedData, domain: IndexDomain, labels):
        self.base = base
        self.domain = domain
        if isinstance(domain, Finite):
            if isinstance(labels, Mapping):
                lab = {i: base.reduce(int(labels[i])) for i in domain.ids}
            else:
                labels = list(labels)
                if len(labels) != len(domain.ids):
                    raise ValueError("one label per index is required")
                lab = {i: base.reduce(int(g)) for i, g in zip(domain.ids, labels)}
            self._labels = lab
            self._form = None
        else:
            if base.modulus:
                raise MixedFormUnsupported("lattice-indexed objects need a base graded by Z")
            if not isinstance(labels, AffineMap) or labels.source_dim != domain.rank or labels.target_dim != 1:
                raise ValueError("a lattice object needs an affine label map Z^r -> Z")
            self._labels = None
            self._form = labels

    @property
    def is_finite(self) -> bool:
        return isinstance(self.domain, Finite)

    @property
    def is_singleton(self) -> bool:
        return self.is_finite and len(self.domain) == 1

    @property
    def rank(self) -> int | None:
        """Lattice rank; 0 for a singleton (a point), None for larger finite sums."""
        if isinstance(self.domain, Lattice):
            return self.domain.rank
        return 0 if len(self.domain) == 1 else None

    @property
    def ids(self) -> tuple:
        if not self.is_finite:
            raise MixedFormUnsupported("lattice object has infinitely many indices")
        return self.domain.ids

    def label(self, idx) -> int:
        if self._labels is not None:
            try:
                return self._labels[idx]
            except KeyError:
                raise DomainMismatch(f"index {idx!r} not in object") from None
        if idx not in self.domain:
            raise DomainMismatch(f"index {idx!r} not in Z^{self.domain.rank}")
        return self._form(idx)[0]

    @property
    def label_form(self) -> AffineMap:
        """Affine label map; a singleton gives the constant map on Z^0."""
        if self._form is not None:
            return self._form
        if self.is_singleton:
            return AffineMap.constant(0, (self._labels[self.domain.ids[0]],))
        raise MixedFormUnsupported("finite object with several indices has no affine label map")

    def point(self, idx) -> tuple[int, ...]:
        """Lattice coordinates of an index (empty tuple for a singleton)."""
        return () if self.is_finite else idx

    def labels(self) -> dict:
        return dict(self._labels) if self._labels is not None else {}

    def __eq__(self, other) -> bool:
        if not isinstance(other, SumObject):
            return NotImplemented
        if self is other:
            return True
        return (
            self.domain == other.domain
            and self._labels == other._labels
            and self._form == other._form
            and (self.base is other.base or self.base == other.base)
        )

    def __hash__(self) -> int:
        if self._labels is not None:
            return hash((self.domain, tuple(sorted(self._labels.items(), key=repr))))
        return hash((self.domain, self._form))

    def to_json_obj(self) -> dict[str, Any]:
        if self.is_finite:
            return {
                "base": self.base.name,
                "domain": {"finite": [_jsonable(i) for i in self.domain.ids]},
                "labels": [self._labels[i] for i in self.domain.ids],
            }
        return {
            "base": self.base.name,
            "domain": {"lattice": self.domain.rank},
            "labels": self._form.to_json_obj(),
        }

    def __repr__(self) -> str:
        if self.is_finite:
            return f"SumObject({self.base.name}, finite, {self._labels})"
        return f"SumObject({self.base.name}, Z^{self.domain.rank}, label={self._form.matrix[0]}.n+{self._form.offset[0]})"


def finite_object(base: PointedData, labels: Mapping | Sequence[int]) -> SumObject:
    """Finite sum; a sequence of labels gets indices ``0..k-1``."""
    if isinstance(labels, Mapping):
        return SumObject(base, Finite(tuple(labels)), labels)
    labels = list(labels)
    return SumObject(base, Finite(tuple(range(len(labels)))), labels)


def lattice_object(base: PointedData, coeffs: Sequence[int], const: int = 0) -> SumObject:
    """Sum over Z^r with label ``n -> coeffs . n + const``."""
    r = len(coeffs)
    return SumObject(base, Lattice(r), AffineMap((tuple(coeffs),), (const,), r))


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    return x


# ---------------------------------------------------------------- morphisms


class SumMorphism:
    __slots__ = ("source", "target")

    def components_at(self, s) -> dict:
        raise NotImplementedError

    def is_zero(self) -> bool:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        if not isinstance(other, SumMorphism):
            return NotImplemented
        return eq_morphism(self, other)

    __hash__ = None  # type: ignore[assignment]


class Explicit(SumMorphism):
    """Finitely supported morphism stored as ``{s: {t: scalar}}``."""

    __slots__ = ("comps", "normalized")

    def __init__(self, source: SumObject, target: SumObject, comps: Mapping, *, normalized: bool = False,
                 check: bool = True):
        self.source = source
        self.target = target
        self.comps: dict = {s: dict(row) for s, row in comps.items()}
        self.normalized = normalized
        if check:
            self._validate()

    def _validate(self):
        if self.source.base != self.target.base:
            raise DomainMismatch("source and target live over different bases")
        for s, row in self.comps.items():
            ls = self.source.label(s)
            for t, a in row.items():
                if not isinstance(a, CycNum):
                    row[t] = a = CycNum.coerce(a)
                if self.target.label(t) != ls and not a.is_zero():
                    raise LabelMismatch(
                        f"component {s!r}->{t!r} joins labels {ls} and {self.target.label(t)}"
                    )

    def components_at(self, s) -> dict:
        return dict(self.comps.get(s, {}))

    def is_zero(self) -> bool:
        return not normalize(self).comps

    def to_json_obj(self) -> dict[str, Any]:
        m = normalize(self)
        items = []
        for s, row in m.comps.items():
            for t, a in row.items():
                items.append({"source": _jsonable(s), "target": _jsonable(t), "scalar": a.to_json_obj()})
        items.sort(key=lambda d: (repr(d["source"]), repr(d["target"])))
        return {
            "form": "explicit",
            "source": self.source.to_json_obj(),
            "target": self.target.to_json_obj(),
            "components": items,
        }

    def __repr__(self) -> str:
        return f"Explicit({self.comps})"


class Affine(SumMorphism):
    """Lattice morphism ``n -> tau(n)`` with scalar ``coef * e^{i pi exponent(n)}``."""

    __slots__ = ("index_map", "exponent", "coef")

    def __init__(self, source: SumObject, target: SumObject, index_map: AffineMap, exponent: Poly | None = None,
                 coef=ONE):
        if source.is_finite or target.is_finite:
            raise MixedFormUnsupported("affine morphisms need lattice source and target")
        if index_map.source_dim != source.rank or index_map.target_dim != target.rank:
            raise DomainMismatch("index map dimensions do not match the objects")
        if exponent is None:
            exponent = Poly.zero(source.rank)
        if exponent.nvars != source.rank:
            raise DomainMismatch("exponent polynomial has the wrong number of variables")
        coef = CycNum.coerce(coef)
        if coef.is_zero():
            raise ValueError("affine coefficient must be nonzero; use zero_of for zero morphisms")
        if target.label_form.after(index_map) != source.label_form:
            raise LabelMismatch("index map does not preserve labels")
        self.source = source
        self.target = target
        self.index_map = index_map
        self.exponent = exponent
        self.coef = coef

    def scalar_at(self, n) -> CycNum:
        return self.coef * CycNum.phase(self.exponent.evaluate(n))

    def components_at(self, s) -> dict:
        return {self.index_map(s): self.scalar_at(s)}

    def is_zero(self) -> bool:
        return False

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "form": "affine",
            "source": self.source.to_json_obj(),
            "target": self.target.to_json_obj(),
            "index_map": self.index_map.to_json_obj(),
            "exponent": self.exponent.to_json_obj(),
            "coef": self.coef.to_json_obj(),
        }

    def __repr__(self) -> str:
        return f"Affine({self.index_map.matrix}+{self.index_map.offset}, {self.exponent}, {self.coef})"


def _check_same_ends(f: SumMorphism, g: SumMorphism):
    if f.source != g.source or f.target != g.target:
        raise DomainMismatch("morphisms do not share source and target")


def normalize(m: SumMorphism) -> SumMorphism:
    if isinstance(m, Affine) or m.normalized:
        return m
    comps = {}
    for s, row in m.comps.items():
        kept = {t: a for t, a in row.items() if not a.is_zero()}
        if kept:
            comps[s] = kept
    return Explicit(m.source, m.target, comps, normalized=True, check=False)


def zero_of(X: SumObject, Y: SumObject) -> Explicit:
    return Explicit(X, Y, {}, normalized=True, check=False)


def identity_of(X: SumObject) -> SumMorphism:
    if X.is_finite:
        return Explicit(X, X, {s: {s: ONE} for s in X.ids}, normalized=True, check=False)
    return Affine(X, X, AffineMap.identity(X.rank))


def compose(g: SumMorphism, f: SumMorphism) -> SumMorphism:
    """``g o f``; ``f.target`` must equal ``g.source``."""
    if f.target != g.source:
        raise DomainMismatch("f.target != g.source")
    if isinstance(f, Explicit) and f.normalized and not f.comps:
        return zero_of(f.source, g.target)
    if isinstance(g, Explicit) and g.normalized and not g.comps:
        return zero_of(f.source, g.target)
    if isinstance(f, Affine) and isinstance(g, Affine):
        tau = g.index_map.after(f.index_map)
        exponent = f.exponent + g.exponent.compose_affine(f.index_map)
        return Affine(f.source, g.target, tau, exponent, f.coef * g.coef)
    if isinstance(f, Explicit):
        # f has finite support, so evaluating g on f's targets is exact
        out = {}
        for s, row in f.comps.items():
            acc: dict = {}
            for t, a in row.items():
                for r, b in g.components_at(t).items():
                    prev = acc.get(r)
                    acc[r] = b * a if prev is None else prev + b * a
            out[s] = acc
        return normalize(Explicit(f.source, g.target, out, check=False))
    if normalize(g).is_zero():
        return zero_of(f.source, g.target)
    raise MixedFormUnsupported("explicit-after-affine composition on an infinite domain; restrict to a window")


def compose_chain(*morphisms: SumMorphism) -> SumMorphism:
    """``compose_chain(h, g, f) == h o g o f``."""
    out = morphisms[-1]
    for m in reversed(morphisms[:-1]):
        out = compose(m, out)
    return out


def scale(f: SumMorphism, lam) -> SumMorphism:
    lam = CycNum.coerce(lam)
    if lam.is_zero():
        return zero_of(f.source, f.target)
    if isinstance(f, Affine):
        return Affine(f.source, f.target, f.index_map, f.exponent, f.coef * lam)
    return normalize(Explicit(f.source, f.target,
                              {s: {t: a * lam for t, a in row.items()} for s, row in f.comps.items()},
                              check=False))


def add_scale(f: SumMorphism, g: SumMorphism, lam=ONE) -> SumMorphism:
    """``f + lam * g`` with the union rule on set maps."""
    _check_same_ends(f, g)
    lam = CycNum.coerce(lam)
    g = scale(g, lam)
    if isinstance(g, Explicit) and not normalize(g).comps:
        return normalize(f)
    if isinstance(f, Explicit) and not normalize(f).comps:
        return g
    if isinstance(f, Explicit) and isinstance(g, Explicit):
        out = {s: dict(row) for s, row in f.comps.items()}
        for s, row in g.comps.items():
            dest = out.setdefault(s, {})
            for t, b in row.items():
                a = dest.get(t)
                dest[t] = b if a is None else a + b
        return normalize(Explicit(f.source, f.target, out, check=False))
    if isinstance(f, Affine) and isinstance(g, Affine):
        if f.index_map != g.index_map:
            raise AffineAdditionUnsupported("affine morphisms with different index maps")
        shift = (g.exponent - f.exponent).constant_mod2()
        if shift is None:
            raise AffineAdditionUnsupported("exponents differ by a non-constant phase")
        total = f.coef + g.coef * CycNum.phase(shift)
        if total.is_zero():
            return zero_of(f.source, f.target)
        return Affine(f.source, f.target, f.index_map, f.exponent, total)
    raise MixedFormUnsupported("cannot add an explicit and an affine morphism on an infinite domain")


def scalar_ratio(f: Affine, g: Affine) -> CycNum | None:
    """The constant ``c`` with ``f = c * g``, or None if none exists."""
    if f.index_map != g.index_map:
        return None
    shift = (f.exponent - g.exponent).constant_mod2()
    if shift is None:
        return None
    return f.coef * g.coef.inverse_monomial() * CycNum.phase(shift) if g.coef.is_monomial() else None


def eq_morphism(f: SumMorphism, g: SumMorphism) -> bool:
    _check_same_ends(f, g)
    if isinstance(f, Explicit) and isinstance(g, Explicit):
        return components_equal(f.comps, g.comps)
    if isinstance(f, Affine) and isinstance(g, Affine):
        if f.index_map != g.index_map:
            return False
        shift = (f.exponent - g.exponent).constant_mod2()
        if shift is None:
            return False
        return f.coef * CycNum.phase(shift) == g.coef
    raise MixedFormUnsupported("comparing explicit and affine forms on an infinite domain")


def components_equal(c1: Mapping, c2: Mapping) -> bool:
    """Equality of ``{s: {t: scalar}}`` maps up to zero components."""
    keys = set(c1) | set(c2)
    for s in keys:
        r1, r2 = c1.get(s, {}), c2.get(s, {})
        for t in set(r1) | set(r2):
            if not (r1.get(t, ZERO) - r2.get(t, ZERO)).is_zero():
                return False
    return True


def inverse(m: SumMorphism) -> SumMorphism:
    """Inverse of an isomorphism whose components are invertible monomials."""
    if isinstance(m, Affine):
        tinv = m.index_map.inverse()
        return Affine(m.target, m.source, tinv, -m.exponent.compose_affine(tinv), m.coef.inverse_monomial())
    m = normalize(m)
    out: dict = {}
    for s, row in m.comps.items():
        if len(row) != 1:
            raise ValueError("not invertible: a source index reaches several targets")
        (t, a), = row.items()
        if t in out:
            raise ValueError("not invertible: two sources share a target")
        out[t] = {s: a.inverse_monomial()}
    if m.source.is_finite and len(out) != len(m.source.ids):
        raise ValueError("not invertible: some index is sent to zero")
    if m.target.is_finite and len(out) != len(m.target.ids):
        raise ValueError("not invertible: not surjective on indices")
    return Explicit(m.target, m.source, out, normalized=True, check=False)


# ---------------------------------------------------------------- sums


def direct_sum_pair(X: SumObject, Y: SumObject):
    """Return ``(X (+) Y, p_X, p_Y, i_X, i_Y)`` for finite X and Y."""
    if not (X.is_finite and Y.is_finite):
        raise MixedFormUnsupported("direct_sum_pair needs finite objects; use coproduct")
    S, (i_X, i_Y) = coproduct([X, Y])
    p_X = Explicit(S, X, {(0, s): {s: ONE} for s in X.ids}, normalized=True, check=False)
    p_Y = Explicit(S, Y, {(1, t): {t: ONE} for t in Y.ids}, normalized=True, check=False)
    return S, p_X, p_Y, i_X, i_Y


def coproduct(family: Sequence[SumObject]):
    """Disjoint union of a finite family of finite objects with its injections.

    Indices of the result are ``(position in family, original index)``.
    """
    if not family:
        raise ValueError("empty family")
    base = family[0].base
    labels = {}
    for i, X in enumerate(family):
        if not X.is_finite:
            raise MixedFormUnsupported("coproducts of lattice-indexed objects are not supported")
        if X.base != base:
            raise DomainMismatch("family members live over different bases")
        for s in X.ids:
            labels[(i, s)] = X.label(s)
    S = SumObject(base, Finite(tuple(labels)), labels)
    injections = [
        Explicit(X, S, {s: {(i, s): ONE} for s in X.ids}, normalized=True, check=False)
        for i, X in enumerate(family)
    ]
    return S, injections


def restrict_to_summand(F: SumMorphism, injection: Explicit) -> SumMorphism:
    return compose(F, injection)


def assemble_from_components(S: SumObject, morphisms: Sequence[SumMorphism]) -> Explicit:
    """The unique ``F: S -> Z`` with ``F o inj_i = morphisms[i]`` for a coproduct S."""
    if not morphisms:
        raise ValueError("no components given")
    Z = morphisms[0].target
    out: dict = {}
    n_parts = 1 + max(i for i, _ in S.ids)
    if len(morphisms) != n_parts:
        raise DomainMismatch(f"coproduct has {n_parts} summands, got {len(morphisms)} morphisms")
    for i, m in enumerate(morphisms):
        if m.target != Z:
            raise DomainMismatch("component morphisms must share their target")
        if not isinstance(m, Explicit):
            raise MixedFormUnsupported("components from finite summands are explicit")
        for s, row in normalize(m).comps.items():
            if (i, s) not in S.domain or S.label((i, s)) != m.source.label(s):
                raise DomainMismatch(f"summand {i} does not match the coproduct")
            out[(i, s)] = dict(row)
    return Explicit(S, Z, out, normalized=True, check=False)


# ---------------------------------------------------------------- inclusion


def include(base: PointedData, label: int) -> SumObject:
    return SumObject(base, Finite((0,)), [label])


def unit_object(base: PointedData) -> SumObject:
    return include(base, 0)


def include_morphism(base: PointedData, source_label: int, target_label: int, scalar) -> Explicit:
    """Image of a base morphism ``X_g -> X_h`` (a scalar, zero unless g == h)."""
    scalar = CycNum.coerce(scalar)
    X, Y = include(base, source_label), include(base, target_label)
    return normalize(Explicit(X, Y, {0: {0: scalar}}))


# ---------------------------------------------------------------- windows


@dataclass
class Restriction:
    value: Any
    truncated: bool = False
    dropped: int = 0


def _box(rank: int, box) -> list[tuple[int, int]]:
    if isinstance(box, int):
        return [(-box, box)] * rank
    box = list(box)
    if len(box) == 2 and all(isinstance(x, int) for x in box):
        return [tuple(box)] * rank
    if len(box) != rank:
        raise ValueError(f"box has {len(box)} sides for rank {rank}")
    return [tuple(b) for b in box]


def window_object(X: SumObject, box) -> SumObject:
    if X.is_finite:
        return X
    pts = box_points(_box(X.rank, box))
    return SumObject(X.base, Finite(tuple(pts)), [X.label(p) for p in pts])


def restrict_to_window(x: SumObject | SumMorphism, box, target_box=None) -> Restriction:
    """Finite/explicit image of an object or morphism on an integer box.

    Components whose target leaves ``target_box`` (default: ``box``) are
    dropped and reported through ``truncated``.
    """
    if isinstance(x, SumObject):
        return Restriction(window_object(x, box))
    m = x
    src = window_object(m.source, box)
    tgt = window_object(m.target, box if target_box is None else target_box)
    out = {}
    dropped = 0
    sources = src.ids if not m.source.is_finite or isinstance(m, Affine) else src.ids
    for s in sources:
        row = {}
        for t, a in m.components_at(s).items():
            if t in tgt.domain:
                row[t] = a
            else:
                dropped += 1
        if row:
            out[s] = row
    return Restriction(normalize(Explicit(src, tgt, out, check=False)), dropped > 0, dropped)


def restrict_to_points(m: SumMorphism, points: Iterable) -> Explicit:
    """Explicit restriction to given source points; the target is the image."""
    points = list(dict.fromkeys(points))
    rows = {s: m.components_at(s) for s in points}
    image = list(dict.fromkeys(t for row in rows.values() for t in row))
    src = SumObject(m.source.base, Finite(tuple(points)), [m.source.label(p) for p in points])
    tgt = SumObject(m.target.base, Finite(tuple(image)), [m.target.label(t) for t in image])
    return normalize(Explicit(src, tgt, rows, check=False))


def evaluate_chain(chain: Sequence[SumMorphism], points: Iterable) -> dict:
    """Components of ``chain[-1] o ... o chain[0]`` on the given source points.

    Each stage is restricted to exactly the image of the previous one, so no
    boundary truncation occurs.
    """
    current = {s: {s: ONE} for s in points}
    for m in chain:
        nxt = {}
        cache: dict = {}
        for s, row in current.items():
            acc: dict = {}
            for t, a in row.items():
                comps = cache.get(t)
                if comps is None:
                    comps = cache[t] = m.components_at(t)
                for r, b in comps.items():
                    prev = acc.get(r)
                    acc[r] = b * a if prev is None else prev + b * a
            nxt[s] = acc
        current = nxt
    return current


def source_points(X: SumObject, box) -> list:
    if X.is_finite:
        return list(X.ids)
    return box_points(_box(X.rank, box))
