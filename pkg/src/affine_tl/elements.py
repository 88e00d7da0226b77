"""
Type I (zigzag) and type II (alternating) elements, weak star reductions and
the non-cancellable classification for FC(C~_n).
"""

from __future__ import annotations

import dataclasses
import enum
import itertools
from functools import lru_cache

from .coxeter import (
    CoxeterContext,
    FCElement,
    Word,
    canonical_form,
    identity,
    is_fc_reduced,
    left_descents,
    right_descents,
    support,
)
from .heap import build, max_antichain


class Shape(enum.Enum):
    PATH = "path"
    L_EVEN = "L-even"
    L_ODD = "L-odd"
    R_EVEN = "R-even"
    R_ODD = "R-odd"


class InvalidDescriptor(ValueError):
    pass


class Cancellable(ValueError):
    pass


@dataclasses.dataclass(frozen=True)
class TypeIDescriptor:
    shape: Shape
    i: int
    j: int
    k: int = 0


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclasses.dataclass(frozen=True)
class WeakStarMove:
    side: Side
    s: int
    t: int
    result: FCElement


class NCTag(enum.Enum):
    PRODUCT_BBPRIME = "product-BB'"
    TYPE_I_END = "type-I-end"
    TYPE_II = "type-II"


@dataclasses.dataclass(frozen=True)
class NonCancellableClass:
    tag: NCTag
    u: FCElement | None = None
    v: FCElement | None = None


def lambda_rank(ctx: CoxeterContext) -> int:
    """Largest integer l with 2l <= n+1."""
    return (ctx.n + 1) // 2


def _z(i: int, j: int) -> list[int]:
    step = 1 if j >= i else -1
    return list(range(i, j + step, step))


def _check(cond: bool, d: TypeIDescriptor) -> None:
    if not cond:
        raise InvalidDescriptor(f"invalid type I descriptor {d}")


def type_I_word(ctx: CoxeterContext, d: TypeIDescriptor) -> FCElement:
    n, i, j, k = ctx.n, d.i, d.j, d.k
    top = n + 1
    _check(k >= 0, d)
    if d.shape is Shape.PATH:
        _check(1 <= i <= top and 1 <= j <= top, d)
        w = _z(i, j)
    elif d.shape is Shape.L_EVEN:
        _check(1 < i <= top and 1 < j <= top and k >= 1, d)
        w = _z(i, 2) + (_z(1, n) + _z(top, 2)) * (k - 1) + _z(1, n) + _z(top, j)
    elif d.shape is Shape.L_ODD:
        _check(1 < i <= top and 1 <= j < top, d)
        w = _z(i, 2) + (_z(1, n) + _z(top, 2)) * k + _z(1, j)
    elif d.shape is Shape.R_EVEN:
        _check(1 <= i < top and 1 <= j < top and k >= 1, d)
        w = _z(i, n) + (_z(top, 2) + _z(1, n)) * (k - 1) + _z(top, 2) + _z(1, j)
    else:
        _check(1 <= i < top and 1 < j <= top, d)
        w = _z(i, n) + (_z(top, 2) + _z(1, n)) * k + _z(top, j)
    return canonical_form(ctx, w)


def n_value(ctx: CoxeterContext, fc: FCElement) -> int:
    return max_antichain(build(ctx, fc.canonical))


def is_type_I(ctx: CoxeterContext, fc: FCElement) -> bool:
    return fc.length > 0 and n_value(ctx, fc) == 1


def odd_set(ctx: CoxeterContext) -> tuple[int, ...]:
    return tuple(range(1, ctx.n + 2, 2))


def even_set(ctx: CoxeterContext) -> tuple[int, ...]:
    return tuple(range(2, ctx.n + 2, 2))


def type_II_word(ctx: CoxeterContext, start: str, factors: int) -> FCElement:
    """Alternating product of x_O (all odd generators) and x_E (all even ones).

    ``start`` is ``"O"`` or ``"E"``.
    """
    if start not in ("O", "E"):
        raise ValueError(f"start must be 'O' or 'E', got {start!r}")
    if factors < 1:
        raise ValueError("a type II element needs at least one factor")
    parts = [odd_set(ctx), even_set(ctx)]
    first = 0 if start == "O" else 1
    w: list[int] = []
    for f in range(factors):
        w.extend(parts[(first + f) % 2])
    return canonical_form(ctx, w)


def is_type_II(ctx: CoxeterContext, fc: FCElement) -> bool:
    if fc.length == 0:
        return False
    rows = build(ctx, fc.canonical).level_sets()
    word = fc.canonical
    odd, even = set(odd_set(ctx)), set(even_set(ctx))
    want = odd if {word[i] for i in rows[0]} == odd else even
    for row in rows:
        if {word[i] for i in row} != want:
            return False
        want = even if want is odd else odd
    return True


def _drop_first(fc: FCElement, s: int) -> FCElement:
    """s*w for s a left descent of w."""
    w = list(fc.canonical)
    w.remove(s)  # first occurrence lies in the top level
    return canonical_form(fc.context, w)


def _left_moves(ctx: CoxeterContext, fc: FCElement) -> list[tuple[int, int, FCElement]]:
    out = []
    desc = sorted(left_descents(fc))
    for s in desc:
        sw = None
        for t in (s - 1, s + 1):
            if not 1 <= t <= ctx.n + 1:
                continue
            if sw is None:
                sw = _drop_first(fc, s)
            if t not in left_descents(sw):
                continue
            if is_fc_reduced(ctx, (t,) + fc.canonical):
                continue
            out.append((s, t, sw))
    return out


def weak_star_moves(ctx: CoxeterContext, fc: FCElement) -> list[WeakStarMove]:
    moves = [WeakStarMove(Side.LEFT, s, t, r) for s, t, r in _left_moves(ctx, fc)]
    rev = canonical_form(ctx, fc.canonical[::-1])
    for s, t, r in _left_moves(ctx, rev):
        moves.append(WeakStarMove(Side.RIGHT, s, t, canonical_form(ctx, r.canonical[::-1])))
    return moves


def is_non_cancellable(ctx: CoxeterContext, fc: FCElement) -> bool:
    return not weak_star_moves(ctx, fc)


def reduction_path(ctx: CoxeterContext, fc: FCElement) -> list[WeakStarMove]:
    path = []
    while True:
        moves = weak_star_moves(ctx, fc)
        if not moves:
            return path
        path.append(moves[0])
        fc = moves[0].result


# -- closed-form classification ------------------------------------------------


def _is_commuting_product(letters: list[int]) -> bool:
    s = sorted(letters)
    return len(set(s)) == len(s) and all(b - a > 1 for a, b in zip(s, s[1:]))


def _is_end_nc(fc: FCElement, end: int, nxt: int, third: int) -> bool:
    """Non-cancellable in the type B parabolic at one end of the graph.

    Either a product of commuting generators, or (end nxt | nxt end) times a
    commuting product avoiding end, nxt and third.
    """
    letters = list(fc.canonical)
    if _is_commuting_product(letters):
        return True
    if letters.count(end) != 1 or letters.count(nxt) != 1:
        return False
    rest = [a for a in letters if a not in (end, nxt)]
    return third not in rest and _is_commuting_product(rest)


def _components(ctx: CoxeterContext, fc: FCElement) -> list[list[int]]:
    h = build(ctx, fc.canonical)
    r = len(h)
    seen = [False] * r
    comps = []
    for start in range(r):
        if seen[start]:
            continue
        stack, comp = [start], []
        seen[start] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(r):
                if not seen[j] and h.comparable(i, j):
                    seen[j] = True
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def product_split(ctx: CoxeterContext, fc: FCElement) -> tuple[FCElement, FCElement] | None:
    """Find u in NC(B_n), v in NC(B'_n), commuting with each other, with w = uv."""
    n = ctx.n
    word = fc.canonical
    comps = _components(ctx, fc)
    for mask in itertools.product((0, 1), repeat=len(comps)):
        u_idx = sorted(i for c, m in zip(comps, mask) if m == 0 for i in c)
        v_idx = sorted(i for c, m in zip(comps, mask) if m == 1 for i in c)
        u_letters = [word[i] for i in u_idx]
        v_letters = [word[i] for i in v_idx]
        if any(a > n for a in u_letters) or any(a < 2 for a in v_letters):
            continue
        u = canonical_form(ctx, u_letters)
        v = canonical_form(ctx, v_letters)
        if _is_end_nc(u, 1, 2, 3) and _is_end_nc(v, n + 1, n, n - 1):
            return u, v
    return None


@lru_cache(maxsize=None)
def _end_family(n: int, max_len: int) -> frozenset[FCElement]:
    ctx = CoxeterContext(n)
    out = set()
    for shape, i, j, k0 in (
        (Shape.R_EVEN, 1, 1, 1),
        (Shape.L_EVEN, n + 1, n + 1, 1),
        (Shape.L_ODD, n + 1, 1, 0),
        (Shape.R_ODD, 1, n + 1, 0),
    ):
        k = k0
        while True:
            fc = type_I_word(ctx, TypeIDescriptor(shape, i, j, k))
            if fc.length > max_len:
                break
            out.add(fc)
            k += 1
    return frozenset(out)


def is_end_type_I(ctx: CoxeterContext, fc: FCElement) -> bool:
    return fc in _end_family(ctx.n, fc.length)


def classify_non_cancellable(ctx: CoxeterContext, fc: FCElement) -> NonCancellableClass:
    if not is_non_cancellable(ctx, fc):
        raise Cancellable(f"{fc} admits a weak star reduction")
    cls = closed_form_class(ctx, fc)
    if cls is None:
        raise AssertionError(f"non-cancellable {fc} matches no closed form")
    return cls


def closed_form_class(ctx: CoxeterContext, fc: FCElement) -> NonCancellableClass | None:
    """Membership in the closed-form list of non-cancellable elements, or None."""
    split = product_split(ctx, fc)
    if split is not None:
        return NonCancellableClass(NCTag.PRODUCT_BBPRIME, *split)
    if is_end_type_I(ctx, fc):
        return NonCancellableClass(NCTag.TYPE_I_END)
    if is_type_II(ctx, fc):
        return NonCancellableClass(NCTag.TYPE_II)
    return None


__all__ = [
    "Cancellable",
    "InvalidDescriptor",
    "NCTag",
    "NonCancellableClass",
    "Shape",
    "Side",
    "TypeIDescriptor",
    "WeakStarMove",
    "classify_non_cancellable",
    "closed_form_class",
    "even_set",
    "identity",
    "is_non_cancellable",
    "is_type_I",
    "is_type_II",
    "lambda_rank",
    "n_value",
    "odd_set",
    "product_split",
    "reduction_path",
    "right_descents",
    "support",
    "type_II_word",
    "type_I_word",
    "weak_star_moves",
]
