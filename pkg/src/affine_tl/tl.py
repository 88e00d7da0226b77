"""
The monomial basis {b_w : w fully commutative} of TL(C~_n) over Z[delta].

Products are computed one generator at a time. For a basis element b_w and a
generator s there are three outcomes:

* s is a left descent of w: b_s b_w = delta b_w;
* s w is again FC-reduced: b_s b_w = b_{sw};
* otherwise the heap of s w contains a convex chain s t s (m = 3) or
  s t s t (m = 4) through the new entry. Collapsing it with
  b_s b_t b_s = b_s, resp. b_s b_t b_s b_t = 2 b_s b_t, leaves a strictly
  shorter word that is evaluated recursively.
"""

from __future__ import annotations

import dataclasses
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterContext, FCElement, Word, canonical_form, identity, is_fc_reduced
from .heap import ViolationKind, _bits, build, convex_violations


@dataclasses.dataclass(frozen=True)
class DeltaPoly:
    """Integer polynomial in delta, coefficients stored in ascending degree."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def const(cls, a: int) -> DeltaPoly:
        return cls((a,))

    @classmethod
    def monomial(cls, coeff: int, degree: int) -> DeltaPoly:
        return cls((0,) * degree + (coeff,))

    @classmethod
    def from_dict(cls, d: Mapping[int, int]) -> DeltaPoly:
        if not d:
            return cls()
        c = [0] * (max(d) + 1)
        for k, v in d.items():
            if k < 0:
                raise ValueError("negative delta exponent")
            c[k] += v
        return cls(tuple(c))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_dict(self) -> dict[int, int]:
        return {k: a for k, a in enumerate(self.coeffs) if a}

    def __add__(self, other: DeltaPoly) -> DeltaPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return DeltaPoly(tuple(x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)))

    def __neg__(self) -> DeltaPoly:
        return DeltaPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: DeltaPoly) -> DeltaPoly:
        return self + (-other)

    def __mul__(self, other) -> DeltaPoly:
        if isinstance(other, int):
            return DeltaPoly(tuple(a * other for a in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return DeltaPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return DeltaPoly(tuple(out))

    __rmul__ = __mul__

    def monomial_form(self) -> tuple[int, int] | None:
        """(c, m) when the polynomial is the single term c * delta^m."""
        nz = [(k, a) for k, a in enumerate(self.coeffs) if a]
        if len(nz) != 1:
            return None
        return nz[0][1], nz[0][0]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, a in enumerate(self.coeffs):
            if a:
                parts.append(str(a) if k == 0 else f"{a} d^{k}")
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str) -> DeltaPoly:
        text = text.strip()
        if text == "0":
            return cls()
        d: dict[int, int] = {}
        for part in text.split("+"):
            part = part.strip()
            if "d^" in part:
                c, e = part.split("d^")
                d[int(e)] = d.get(int(e), 0) + int(c.strip() or "1")
            else:
                d[0] = d.get(0, 0) + int(part)
        return cls.from_dict(d)


ONE = DeltaPoly.const(1)
DELTA = DeltaPoly.monomial(1, 1)


class RankMismatch(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class MonomialElement:
    n: int
    terms: tuple[tuple[FCElement, DeltaPoly], ...] = ()

    @classmethod
    def from_terms(cls, n: int, items: Iterable[tuple[FCElement, DeltaPoly]]) -> MonomialElement:
        acc: dict[FCElement, DeltaPoly] = {}
        for fc, p in items:
            if fc.n != n:
                raise RankMismatch(f"element of rank {fc.n} in rank-{n} sum")
            acc[fc] = acc.get(fc, DeltaPoly()) + p
        return cls(n, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def basis(cls, fc: FCElement, coeff: DeltaPoly = ONE) -> MonomialElement:
        return cls.from_terms(fc.n, [(fc, coeff)])

    @classmethod
    def one(cls, ctx: CoxeterContext) -> MonomialElement:
        return cls.basis(identity(ctx))

    def as_dict(self) -> dict[FCElement, DeltaPoly]:
        return dict(self.terms)

    def __add__(self, other: MonomialElement) -> MonomialElement:
        if self.n != other.n:
            raise RankMismatch("cannot add elements of different rank")
        return MonomialElement.from_terms(self.n, self.terms + other.terms)

    def scale(self, p: DeltaPoly) -> MonomialElement:
        return MonomialElement.from_terms(self.n, ((k, v * p) for k, v in self.terms))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for fc, p in self.terms:
            coeff = str(p)
            if len(p.as_dict()) > 1:
                coeff = f"({coeff})"
            parts.append(f"{coeff} * b[{' '.join(map(str, fc.canonical))}]")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "rank": self.n,
            "terms": [{"coeff": list(p.coeffs), "word": list(fc.canonical)} for fc, p in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> MonomialElement:
        ctx = CoxeterContext(int(obj["rank"]))
        return cls.from_terms(
            ctx.n,
            ((canonical_form(ctx, t["word"]), DeltaPoly(tuple(t["coeff"]))) for t in obj["terms"]),
        )


@lru_cache(maxsize=500_000)
def _gen_basis(n: int, s: int, w: Word) -> tuple[DeltaPoly, Word]:
    """b_s * b_w for canonical w, as (coefficient, canonical word)."""
    ctx = CoxeterContext(n)
    word = (s,) + w
    h = build(ctx, word)
    bad = [v for v in convex_violations(ctx, h) if v.entries[0] == 0]
    if not bad:
        return ONE, canonical_form(ctx, word).canonical
    v = bad[0]
    if v.kind is ViolationKind.SAME_COLUMN_ADJACENT:
        return DELTA, w
    chain = set(v.entries)
    rest = [e for e in v.entries if e != 0]
    ups = 0
    for e in rest:
        ups |= h.above[e]
    a_part = [i for i in _bits(ups) if i not in chain]
    b_part = [i for i in range(1, len(word)) if i not in chain and not ups >> i & 1]
    if v.kind is ViolationKind.BOND3_CHAIN:
        middle, scale = [s], 1
    else:
        middle, scale = [s, word[v.entries[1]]], 2
    new = [word[i] for i in a_part] + middle + [word[i] for i in b_part]
    p, res = _word_basis(n, tuple(new))
    return p * scale, res


@lru_cache(maxsize=500_000)
def _word_basis(n: int, w: Word) -> tuple[DeltaPoly, Word]:
    """b_{w_1} ... b_{w_r} for an arbitrary word, folded right to left."""
    p, cur = ONE, ()
    for s in reversed(w):
        q, cur = _gen_basis(n, s, cur)
        p = p * q
    return p, cur


def gen_times(ctx: CoxeterContext, i: int, x: MonomialElement) -> MonomialElement:
    ctx.check_letter(i)
    _same(ctx, x)
    out = []
    for fc, p in x.terms:
        q, w = _gen_basis(ctx.n, i, fc.canonical)
        out.append((FCElement(len(w), w, ctx.n), p * q))
    return MonomialElement.from_terms(ctx.n, out)


def times_gen(ctx: CoxeterContext, x: MonomialElement, i: int) -> MonomialElement:
    ctx.check_letter(i)
    _same(ctx, x)
    out = []
    for fc, p in x.terms:
        q, w = _gen_basis(ctx.n, i, fc.canonical[::-1])
        out.append((canonical_form(ctx, w[::-1]), p * q))
    return MonomialElement.from_terms(ctx.n, out)


def from_word(ctx: CoxeterContext, w: Sequence[int]) -> MonomialElement:
    w = ctx.word(w)
    p, res = _word_basis(ctx.n, w)
    return MonomialElement.basis(FCElement(len(res), res, ctx.n), p)


def basis_element(ctx: CoxeterContext, w: Sequence[int]) -> MonomialElement:
    """b_w for an FC-reduced word w."""
    return MonomialElement.basis(canonical_form(ctx, w))


def mul(ctx: CoxeterContext, x: MonomialElement, y: MonomialElement) -> MonomialElement:
    _same(ctx, x)
    _same(ctx, y)
    out = []
    for v, p in x.terms:
        for w, q in y.terms:
            r, res = _word_basis(ctx.n, v.canonical + w.canonical)
            out.append((FCElement(len(res), res, ctx.n), p * q * r))
    return MonomialElement.from_terms(ctx.n, out)


def _same(ctx: CoxeterContext, x: MonomialElement) -> None:
    if x.n != ctx.n:
        raise RankMismatch(f"element has rank {x.n}, context has rank {ctx.n}")


__all__ = [
    "DELTA",
    "DeltaPoly",
    "MonomialElement",
    "ONE",
    "RankMismatch",
    "basis_element",
    "from_word",
    "gen_times",
    "is_fc_reduced",
    "mul",
    "times_gen",
]
