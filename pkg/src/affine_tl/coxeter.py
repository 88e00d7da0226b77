"""
Words over the generators of the affine Coxeter group of type C~_n.

Generators are numbered 1..n+1 along the path 1 - 2 - ... - n+1. The two end
bonds {1, 2} and {n, n+1} have m = 4, every inner bond has m = 3 and
non-adjacent generators commute.

Fully commutative (FC) elements are stored by their Cartier-Foata normal form:
the heap is cut into levels (the left descents first, then the left descents of
what remains, ...) and each level is written in ascending order.
"""

from __future__ import annotations

import dataclasses
import re
from typing import Iterable, Sequence

Word = tuple[int, ...]


class InvalidRank(ValueError):
    pass


class InvalidLetter(ValueError):
    pass


class NotFullyCommutative(ValueError):
    """Raised when a word is not a reduced expression of an FC element."""


@dataclasses.dataclass(frozen=True)
class CoxeterContext:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InvalidRank(f"rank must be an integer >= 2, got {self.n!r}")

    @property
    def num_generators(self) -> int:
        return self.n + 1

    @property
    def generators(self) -> range:
        return range(1, self.n + 2)

    def bond(self, i: int, j: int) -> int:
        self.check_letter(i)
        self.check_letter(j)
        if i == j:
            return 1
        if abs(i - j) > 1:
            return 2
        if {i, j} == {1, 2} or {i, j} == {self.n, self.n + 1}:
            return 4
        return 3

    def commute(self, i: int, j: int) -> bool:
        return abs(i - j) > 1

    def check_letter(self, i: int) -> None:
        if not isinstance(i, int) or not 1 <= i <= self.n + 1:
            raise InvalidLetter(f"generator index {i!r} outside 1..{self.n + 1}")

    def word(self, letters: Iterable[int]) -> Word:
        w = tuple(letters)
        for a in w:
            self.check_letter(a)
        return w


def new_context(n: int) -> CoxeterContext:
    return CoxeterContext(n)


def bond(ctx: CoxeterContext, i: int, j: int) -> int:
    return ctx.bond(i, j)


@dataclasses.dataclass(frozen=True, order=True)
class FCElement:
    """An FC element, keyed by its Cartier-Foata word.

    Ordering is by (length, canonical word), the order used for enumeration.
    Construct through :func:`canonical_form` rather than directly.
    """

    length: int
    canonical: Word
    n: int = dataclasses.field(compare=True)

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return iter(self.canonical)

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.canonical)) + "]"

    @property
    def context(self) -> CoxeterContext:
        return CoxeterContext(self.n)


def _make(n: int, word: Word) -> FCElement:
    return FCElement(len(word), word, n)


def identity(ctx: CoxeterContext) -> FCElement:
    return _make(ctx.n, ())


def is_fc_reduced(ctx: CoxeterContext, w: Sequence[int]) -> bool:
    """True iff ``w`` is a reduced expression of an FC element."""
    from .heap import build, convex_violations

    w = ctx.word(w)
    return not convex_violations(ctx, build(ctx, w))


def canonical_form(ctx: CoxeterContext, w: Sequence[int]) -> FCElement:
    from .heap import build, convex_violations

    w = ctx.word(w)
    h = build(ctx, w)
    bad = convex_violations(ctx, h)
    if bad:
        raise NotFullyCommutative(
            f"{list(w)} is not an FC-reduced word ({bad[0].kind.value})"
        )
    return _make(ctx.n, h.canonical_word())


def left_descents(fc: FCElement) -> frozenset[int]:
    from .heap import build

    h = build(fc.context, fc.canonical)
    return frozenset(h.letters[i] for i in h.minimal_entries())


def right_descents(fc: FCElement) -> frozenset[int]:
    from .heap import build

    h = build(fc.context, fc.canonical)
    return frozenset(h.letters[i] for i in h.maximal_entries())


def support(fc: FCElement) -> frozenset[int]:
    return frozenset(fc.canonical)


def reverse(fc: FCElement) -> FCElement:
    """The inverse element; its reduced words are the reversed words."""
    return canonical_form(fc.context, fc.canonical[::-1])


_S_FORM = re.compile(r"^\s*s?(\d+)\s*$")


def parse_word(text: str) -> list[int]:
    """Parse ``"3 2 1 2"``, ``"3,2,1"`` or ``"s3*s2*s1*s2"``.

    The empty string, ``"e"`` and ``"[]"`` denote the identity.
    """
    text = text.strip().strip("[]").strip()
    if text in ("", "e"):
        return []
    if "*" in text or "s" in text:
        parts = [p for p in re.split(r"[*\s]+", text) if p]
    else:
        parts = [p for p in re.split(r"[,\s]+", text) if p]
    letters = []
    for p in parts:
        m = _S_FORM.match(p)
        if m is None:
            raise ValueError(f"cannot parse generator {p!r} in word {text!r}")
        letters.append(int(m.group(1)))
    return letters


def format_word(w: Iterable[int]) -> str:
    return " ".join(map(str, w))


def fc_elements(ctx: CoxeterContext, max_len: int):
    """Yield every FC element of length <= max_len, ordered by (length, word)."""
    level = [identity(ctx)]
    yield from level
    for _ in range(max_len):
        nxt = set()
        for w in level:
            for s in ctx.generators:
                cand = (s,) + w.canonical
                if is_fc_reduced(ctx, cand):
                    nxt.add(canonical_form(ctx, cand))
        level = sorted(nxt)
        if not level:
            return
        yield from level
