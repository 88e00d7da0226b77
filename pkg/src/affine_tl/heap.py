"""
Heaps of words over the C~_n generators.

Entry ``i`` of a heap is the ``i``-th letter of the word. Entry ``i`` lies
above entry ``j`` when ``i < j`` and the two letters fail to commute, closed
under transitivity. Comparabilities are kept as bitmasks, which is plenty for
the word lengths handled here.
"""

from __future__ import annotations

import dataclasses
import enum
from functools import lru_cache
from typing import Sequence

from .coxeter import CoxeterContext, Word


class ViolationKind(enum.Enum):
    SAME_COLUMN_ADJACENT = "non-reduced"
    BOND3_CHAIN = "bond-3 braid"
    BOND4_CHAIN = "bond-4 braid"


@dataclasses.dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    entries: tuple[int, ...]
    columns: tuple[int, ...]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclasses.dataclass(frozen=True, eq=False)
class Heap:
    n: int
    letters: Word
    above: tuple[int, ...]  # above[j]: bitmask of entries strictly above j
    below: tuple[int, ...]  # below[i]: bitmask of entries strictly below i
    levels: tuple[int, ...]  # canonical level of each entry, 1 = top

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def key(self):
        """Lattice picture: entry points and cover relations between them."""
        pts = [(c, l) for c, l in zip(self.letters, self.levels)]
        covers = frozenset(
            (pts[i], pts[j]) for i, j in self.cover_relations()
        )
        return tuple(sorted(pts)), covers

    def __eq__(self, other):
        if not isinstance(other, Heap):
            return NotImplemented
        return self.n == other.n and self.key == other.key

    def __hash__(self):
        return hash((self.n, self.key))

    def precedes(self, i: int, j: int) -> bool:
        return bool(self.above[j] >> i & 1)

    def comparable(self, i: int, j: int) -> bool:
        return self.precedes(i, j) or self.precedes(j, i)

    def between(self, i: int, j: int) -> int:
        return self.below[i] & self.above[j]

    def cover_relations(self) -> list[tuple[int, int]]:
        """Pairs (i, j) with i covering j (i directly above j)."""
        out = []
        for j in range(len(self)):
            for i in _bits(self.above[j]):
                if not self.between(i, j):
                    out.append((i, j))
        return out

    def minimal_entries(self) -> list[int]:
        """Entries with nothing above them (the top level)."""
        return [i for i in range(len(self)) if not self.above[i]]

    def maximal_entries(self) -> list[int]:
        return [i for i in range(len(self)) if not self.below[i]]

    def level_sets(self) -> list[list[int]]:
        depth = max(self.levels, default=0)
        rows: list[list[int]] = [[] for _ in range(depth)]
        for i, lev in enumerate(self.levels):
            rows[lev - 1].append(i)
        for row in rows:
            row.sort(key=lambda i: (self.letters[i], i))
        return rows

    def canonical_word(self) -> Word:
        return tuple(self.letters[i] for row in self.level_sets() for i in row)

    def render_ascii(self) -> str:
        """Canonical lattice picture, one text row per level, top level first."""
        width = self.n + 1
        lines = ["  ".join(f"{c:>3}" for c in range(1, width + 1))]
        for row in self.level_sets():
            cells = ["   "] * width
            for i in row:
                cells[self.letters[i] - 1] = f"[{self.letters[i]}]".rjust(3)
            lines.append("  ".join(cells).rstrip())
        return "\n".join(lines)


@lru_cache(maxsize=200_000)
def _build(n: int, w: Word) -> Heap:
    r = len(w)
    above = [0] * r
    for j in range(r):
        mask = 0
        for i in range(j):
            if abs(w[i] - w[j]) <= 1:
                mask |= (1 << i) | above[i]
        above[j] = mask
    below = [0] * r
    for j in range(r):
        for i in _bits(above[j]):
            below[i] |= 1 << j
    levels = [0] * r
    for j in range(r):
        levels[j] = 1 + max((levels[i] for i in _bits(above[j])), default=0)
    return Heap(n, w, tuple(above), tuple(below), tuple(levels))


def build(ctx: CoxeterContext, w: Sequence[int]) -> Heap:
    return _build(ctx.n, ctx.word(w))


def convex_violations(ctx: CoxeterContext, h: Heap) -> list[Violation]:
    """All impermissible convex chains of ``h``; empty iff the word is FC-reduced."""
    return list(_violations(ctx.n, h.letters))


@lru_cache(maxsize=200_000)
def _violations(n: int, w: Word) -> tuple[Violation, ...]:
    ctx = CoxeterContext(n)
    h = _build(n, w)
    r = len(w)
    out = []
    # consecutive same-column pairs
    for i in range(r):
        for j in range(i + 1, r):
            if w[j] != w[i]:
                continue
            btw = h.between(i, j)
            if btw == 0:
                out.append(Violation(ViolationKind.SAME_COLUMN_ADJACENT, (i, j), (w[i], w[j])))
            elif btw & (btw - 1) == 0:
                x = btw.bit_length() - 1
                if ctx.bond(w[i], w[x]) == 3:
                    out.append(Violation(ViolationKind.BOND3_CHAIN, (i, x, j), (w[i], w[x], w[j])))
            break
    # alternating chains s t s t on the m = 4 bonds
    for a in range(r):
        for y in range(a + 1, r):
            if abs(w[a] - w[y]) != 1 or ctx.bond(w[a], w[y]) != 4:
                continue
            if not h.precedes(a, y):
                continue
            btw = h.between(a, y)
            mids = list(_bits(btw))
            if len(mids) != 2:
                continue
            x, b = mids
            if w[x] == w[y] and w[b] == w[a] and h.precedes(x, b):
                out.append(Violation(ViolationKind.BOND4_CHAIN, (a, x, b, y), (w[a], w[x], w[b], w[y])))
    out.sort(key=lambda v: v.entries)
    return tuple(out)


def max_antichain(h: Heap) -> int:
    """Size of a largest set of pairwise incomparable entries."""
    r = len(h)
    comp = [h.above[i] | h.below[i] | (1 << i) for i in range(r)]
    memo: dict[int, int] = {}

    def best(mask: int) -> int:
        if mask == 0:
            return 0
        if mask in memo:
            return memo[mask]
        i = (mask & -mask).bit_length() - 1
        res = max(best(mask & ~(1 << i)), 1 + best(mask & ~comp[i]))
        memo[mask] = res
        return res

    return best((1 << r) - 1)
