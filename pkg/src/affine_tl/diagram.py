"""
LR-decorated pseudo (n+2)-diagrams and their multiplication.

Boundary nodes are ``t1..t{k}`` on the north face and ``b1..b{k}`` on the
south face, k = n + 2. Internally node ``t_i`` is the integer ``i - 1`` and
``b_i`` is ``k + i - 1``; an edge stores its endpoints in ascending order,
which is exactly the reading direction for decorations (north to south on
propagating edges, west to east on non-propagating ones).

Decorations come from the decoration algebra: closed (dot, triangle) and open
(dot, triangle) symbols that never interact, with

    dot dot = triangle,   dot triangle = triangle dot = 2 dot

for each kind. A closed run of m_dot dots and m_tri triangles is x^m with
m = m_dot + 2 m_tri, and x^m = 2^(ceil(m/2) - 1) times a dot (m odd) or a
triangle (m even).

When the a-value is 1, decorations on propagating edges are also ordered by
height. The diagram keeps a *schedule*: the global top-to-bottom order of all
blocks on propagating edges. Two blocks on the same edge merge only when no
other edge has a block between them in the schedule.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import re
from typing import Iterable, Sequence

from .coxeter import CoxeterContext
from .tl import DELTA, ONE, DeltaPoly, RankMismatch


class Decoration(str, enum.Enum):
    CLOSED_DOT = "cd"
    CLOSED_TRI = "ct"
    OPEN_DOT = "od"
    OPEN_TRI = "ot"

    @property
    def closed(self) -> bool:
        return self in (Decoration.CLOSED_DOT, Decoration.CLOSED_TRI)

    @property
    def weight(self) -> int:
        return 1 if self in (Decoration.CLOSED_DOT, Decoration.OPEN_DOT) else 2

    @property
    def glyph(self) -> str:
        return _GLYPHS[self]


CD, CT, OD, OT = Decoration.CLOSED_DOT, Decoration.CLOSED_TRI, Decoration.OPEN_DOT, Decoration.OPEN_TRI
_GLYPHS = {CD: "•", CT: "▲", OD: "○", OT: "△"}
_FROM_GLYPH = {v: k for k, v in _GLYPHS.items()}

Block = tuple[Decoration, ...]
STANDARD_LOOP: Block = (CT, OT)


class MalformedDiagram(ValueError):
    pass


def parse_decoration(token: str) -> Decoration:
    if token in _FROM_GLYPH:
        return _FROM_GLYPH[token]
    try:
        return Decoration(token)
    except ValueError:
        raise MalformedDiagram(f"unknown decoration {token!r}") from None


def _runs(word: Sequence[Decoration]) -> list[tuple[bool, int]]:
    """Maximal same-kind runs as (closed?, total weight)."""
    out: list[tuple[bool, int]] = []
    for x in word:
        if out and out[-1][0] == x.closed:
            out[-1] = (x.closed, out[-1][1] + x.weight)
        else:
            out.append((x.closed, x.weight))
    return out


def _power(closed: bool, m: int) -> tuple[int, Decoration]:
    """x^m for x the dot of the given kind."""
    two = (m + 1) // 2 - 1
    if m % 2:
        return two, CD if closed else OD
    return two, CT if closed else OT


def normalize_block(block: Sequence[Decoration]) -> tuple[int, Block]:
    """Reduce a block to an alternating basis word; returns (power of 2, word)."""
    two, out = 0, []
    for closed, m in _runs(block):
        e, g = _power(closed, m)
        two += e
        out.append(g)
    return two, tuple(out)


def normalize_loop(word: Sequence[Decoration]) -> tuple[int, int, Block | None]:
    """Reduce the cyclic content of a closed loop.

    Returns (power of 2, power of delta, surviving content). The content is
    None when the loop evaluates to a scalar (empty, a lone triangle of
    either kind); otherwise it is the lexicographically least rotation or
    reflection of the reduced cyclic word.
    """
    runs = _runs(word)
    if len(runs) > 1 and runs[0][0] == runs[-1][0]:
        closed, m = runs.pop()
        runs[0] = (closed, runs[0][1] + m)
    if not runs:
        return 0, 1, None
    two, glyphs = 0, []
    for closed, m in runs:
        e, g = _power(closed, m)
        two += e
        glyphs.append(g)
    if len(glyphs) == 1 and glyphs[0] in (CT, OT):
        return two, 1, None
    return two, 0, _cyclic_min(tuple(glyphs))


def _cyclic_min(word: Block) -> Block:
    cands = []
    for w in (word, word[::-1]):
        for r in range(len(w)):
            cands.append(w[r:] + w[:r])
    return min(cands, key=lambda b: [x.value for x in b])


@dataclasses.dataclass(frozen=True)
class Edge:
    ends: tuple[int, int]
    blocks: tuple[Block, ...] = ()

    def decorations(self) -> Block:
        return tuple(x for b in self.blocks for x in b)


@dataclasses.dataclass(frozen=True)
class Diagram:
    """A decorated diagram in normal form; build through :func:`make_diagram`."""

    n: int
    edges: tuple[Edge, ...]
    loops: tuple[Block, ...] = ()
    schedule: tuple[tuple[int, int], ...] = ()

    @property
    def k(self) -> int:
        return self.n + 2

    def is_top(self, node: int) -> bool:
        return node < self.k

    def is_propagating(self, e: Edge) -> bool:
        return self.is_top(e.ends[0]) and not self.is_top(e.ends[1])

    def north_edges(self) -> list[Edge]:
        return [e for e in self.edges if self.is_top(e.ends[1])]

    def south_edges(self) -> list[Edge]:
        return [e for e in self.edges if not self.is_top(e.ends[0])]

    def propagating_edges(self) -> list[Edge]:
        return [e for e in self.edges if self.is_propagating(e)]

    def edge_at(self, node: int) -> Edge:
        for e in self.edges:
            if node in e.ends:
                return e
        raise KeyError(node)

    def node_name(self, node: int) -> str:
        return f"t{node + 1}" if node < self.k else f"b{node - self.k + 1}"

    @property
    def key(self):
        return (
            self.n,
            tuple((e.ends, tuple(tuple(x.value for x in b) for b in e.blocks)) for e in self.edges),
            tuple(tuple(x.value for x in b) for b in self.loops),
            self.schedule,
        )

    def __lt__(self, other: Diagram) -> bool:
        return self.key < other.key


def node_id(k: int, name: str) -> int:
    face, idx = name[0], name[1:]
    if face not in "tb" or not idx.isdigit() or not 1 <= int(idx) <= k:
        raise MalformedDiagram(f"bad node name {name!r} for a {k}-box")
    return int(idx) - 1 + (0 if face == "t" else k)


def make_diagram(
    n: int,
    edges: Iterable[tuple[Sequence[int], Sequence[Block]]],
    loops: Iterable[Block] = (),
    schedule: Iterable[tuple[int, int]] | None = None,
) -> Diagram:
    """Normalize and validate. ``schedule`` refers to positions in ``edges``
    as given; it is required (possibly empty) for a-value-1 diagrams and
    ignored otherwise. Blocks are taken as already maximal.
    """
    k = n + 2
    raw = []
    for ends, blocks in edges:
        a, b = ends
        if a > b:
            a, b = b, a
            blocks = [tuple(reversed(bl)) for bl in reversed(list(blocks))]
        raw.append(((a, b), [tuple(bl) for bl in blocks if bl]))
    nodes = sorted(x for ends, _ in raw for x in ends)
    if nodes != list(range(2 * k)):
        raise MalformedDiagram("edges must form a perfect matching of the 2(n+2) nodes")
    _check_planar(k, [ends for ends, _ in raw])
    order = sorted(range(len(raw)), key=lambda i: raw[i][0])
    pos = {old: new for new, old in enumerate(order)}
    a_val = sum(1 for (x, y), _ in raw if y < k)
    sched: tuple[tuple[int, int], ...] = ()
    if a_val == 1:
        given = list(schedule or [])
        prop = [i for i, ((x, y), _) in enumerate(raw) if x < k <= y]
        expected = {(i, j) for i in prop for j in range(len(raw[i][1]))}
        if schedule is None and all(len(raw[i][1]) <= 1 for i in prop):
            given = sorted(expected)
        if set(given) != expected or len(given) != len(expected):
            raise MalformedDiagram("schedule must list every propagating-edge block once")
        seen: dict[int, int] = {}
        for i, j in given:
            if seen.get(i, -1) != j - 1:
                raise MalformedDiagram("schedule must follow each edge's block order")
            seen[i] = j
        for (i, _), (i2, _) in zip(given, given[1:]):
            if i == i2:
                raise MalformedDiagram("schedule-adjacent blocks on one edge must be merged")
        sched = tuple((pos[i], j) for i, j in given)
    else:
        for idx, (ends, blocks) in enumerate(raw):
            if len(blocks) > 1:
                raise MalformedDiagram("edge blocks must be conjoined unless the a-value is 1")
    for ends, blocks in raw:
        if (ends[1] < k or ends[0] >= k) and len(blocks) > 1:
            raise MalformedDiagram("non-propagating edges carry at most one block")
        for bl in blocks:
            two, norm = normalize_block(bl)
            if two or norm != bl:
                raise MalformedDiagram(f"block {[x.value for x in bl]} is not in normal form")
    if a_val == 0 and any(blocks for _, blocks in raw):
        raise MalformedDiagram("a diagram with a-value 0 is undecorated")
    es = tuple(Edge(raw[i][0], tuple(raw[i][1])) for i in order)
    # loops are stored as given (up to rotation and reflection) so that
    # unreduced content stays representable and is caught by is_admissible
    lps = [_cyclic_min(tuple(lp)) if lp else () for lp in loops]
    lps.sort(key=lambda b: [x.value for x in b])
    return Diagram(n, es, tuple(lps), sched)


def _check_planar(k: int, pairs: list[tuple[int, int]]) -> None:
    # walk the boundary t1..tk, bk..b1 and require a balanced bracket word
    cyc = list(range(k)) + list(range(2 * k - 1, k - 1, -1))
    stack = []
    partner = {}
    for a, b in pairs:
        partner[a], partner[b] = b, a
    for v in cyc:
        if stack and stack[-1] == partner[v]:
            stack.pop()
        else:
            stack.append(v)
    if stack:
        raise MalformedDiagram("pairing is not planar")


def identity_diagram(ctx: CoxeterContext) -> Diagram:
    k = ctx.n + 2
    return make_diagram(ctx.n, [((i, k + i), []) for i in range(k)])


def simple_diagram(ctx: CoxeterContext, i: int) -> Diagram:
    ctx.check_letter(i)
    k = ctx.n + 2
    deco: list[Block] = []
    if i == 1:
        deco = [(CD,)]
    elif i == ctx.n + 1:
        deco = [(OD,)]
    edges = [((i - 1, i), deco), ((k + i - 1, k + i), deco)]
    for j in range(k):
        if j not in (i - 1, i):
            edges.append(((j, k + j), []))
    return make_diagram(ctx.n, edges)


def a_value(d: Diagram) -> int:
    return sum(1 for e in d.edges if e.ends[1] < d.k)


# -- concatenation -------------------------------------------------------------

_CUP, _CAP = -1, 10**9


def _heights(d: Diagram) -> dict[tuple[int, int], int]:
    """Relative height of every block: cups on top, caps at the bottom."""
    h = {}
    for pos, (i, j) in enumerate(d.schedule):
        h[(i, j)] = pos
    for i, e in enumerate(d.edges):
        for j in range(len(e.blocks)):
            if (i, j) not in h:
                h[(i, j)] = _CUP if e.ends[1] < d.k else _CAP
    return h


def concat(ctx: CoxeterContext, top: Diagram, bottom: Diagram) -> tuple[DeltaPoly, Diagram]:
    """The product ``top * bottom``: ``top`` is stacked above ``bottom``."""
    if top.n != ctx.n or bottom.n != ctx.n:
        raise RankMismatch("diagrams must share the context rank")
    k = ctx.n + 2
    facs = (top, bottom)
    heights = (_heights(top), _heights(bottom))
    # partner lookup per factor: node -> (edge index, other node)
    adj = []
    for d in facs:
        m = {}
        for idx, e in enumerate(d.edges):
            m[e.ends[0]] = (idx, e.ends[1])
            m[e.ends[1]] = (idx, e.ends[0])
        adj.append(m)

    def pieces_of(f: int, node: int):
        idx, other = adj[f][node]
        e = facs[f].edges[idx]
        items = [(heights[f][(idx, j)], f, b) for j, b in enumerate(e.blocks)]
        if node != e.ends[0]:
            items = [(hh, ff, tuple(reversed(b))) for hh, ff, b in reversed(items)]
        return items, other

    def walk(f: int, node: int):
        """Follow a strand; returns (pieces, final (factor, node)) or a loop."""
        pieces = []
        visited_mid = []
        while True:
            items, other = pieces_of(f, node)
            pieces.extend(items)
            if f == 0 and other < k:
                return pieces, (0, other), visited_mid
            if f == 1 and other >= k:
                return pieces, (1, other), visited_mid
            mid = other - k if f == 0 else other
            visited_mid.append(mid)
            f, node = (1, mid) if f == 0 else (0, mid + k)
            if (f, node) == start_state:
                return pieces, None, visited_mid

    def result_id(f: int, node: int) -> int:
        return node if f == 0 else node

    two = 0
    dexp = 0
    res_edges = []
    done = set()
    starts = [(0, i) for i in range(k)] + [(1, k + i) for i in range(k)]
    for f, node in starts:
        if (f, node) in done:
            continue
        start_state = (f, node)
        pieces, end, mids = walk(f, node)
        done.add((f, node))
        done.add(end)
        res_edges.append(((result_id(f, node), result_id(*end)), pieces))
        for m in mids:
            done.add(("mid", m))
    loops = list(top.loops) + list(bottom.loops)
    for m in range(k):
        if ("mid", m) in done:
            continue
        start_state = (1, m)
        pieces, end, mids = walk(1, m)
        for mm in mids:
            done.add(("mid", mm))
        done.add(("mid", m))
        word = [x for _, _, b in pieces for x in b]
        e2, dl, content = normalize_loop(word)
        two += e2
        dexp += dl
        if content is not None:
            loops.append(content)

    a_res = sum(1 for (x, y), _ in res_edges if y < k)
    edges_out: list[tuple[tuple[int, int], list[Block]]] = []
    sched_entries = []
    for idx, (ends, pieces) in enumerate(res_edges):
        prop = ends[0] < k <= ends[1]
        if a_res == 1 and prop:
            for p_idx, (hh, ff, b) in enumerate(pieces):
                sched_entries.append(((ff, hh), idx, p_idx, b))
            edges_out.append((ends, []))
        else:
            word = [x for _, _, b in pieces for x in b]
            if word:
                e2, norm = normalize_block(word)
                two += e2
                edges_out.append((ends, [norm]))
            else:
                edges_out.append((ends, []))
    schedule = []
    if a_res == 1:
        sched_entries.sort(key=lambda t: t[0])
        runs: list[list] = []
        for hkey, idx, p_idx, b in sched_entries:
            if runs and runs[-1][0] == idx:
                runs[-1][1].append((p_idx, b))
            else:
                runs.append([idx, [(p_idx, b)]])
        for idx, items in runs:
            items.sort()
            word = [x for _, b in items for x in b]
            e2, norm = normalize_block(word)
            two += e2
            blocks = edges_out[idx][1]
            schedule.append((idx, len(blocks)))
            blocks.append(norm)
    scalar = DeltaPoly.monomial(2**two, dexp)
    return scalar, make_diagram(ctx.n, edges_out, loops, schedule if a_res == 1 else None)


# -- linear combinations ---------------------------------------------------------


@dataclasses.dataclass(frozen=True)
class DiagramElement:
    n: int
    terms: tuple[tuple[Diagram, DeltaPoly], ...] = ()

    @classmethod
    def from_terms(cls, n: int, items: Iterable[tuple[Diagram, DeltaPoly]]) -> DiagramElement:
        acc: dict[Diagram, DeltaPoly] = {}
        for d, p in items:
            if d.n != n:
                raise RankMismatch(f"diagram of rank {d.n} in rank-{n} sum")
            acc[d] = acc.get(d, DeltaPoly()) + p
        return cls(n, tuple(sorted(((d, p) for d, p in acc.items() if p), key=lambda t: t[0].key)))

    @classmethod
    def single(cls, d: Diagram, coeff: DeltaPoly = ONE) -> DiagramElement:
        return cls.from_terms(d.n, [(d, coeff)])

    def as_dict(self) -> dict[Diagram, DeltaPoly]:
        return dict(self.terms)

    def __add__(self, other: DiagramElement) -> DiagramElement:
        return DiagramElement.from_terms(self.n, self.terms + other.terms)


def mul_elements(ctx: CoxeterContext, x: DiagramElement, y: DiagramElement) -> DiagramElement:
    if x.n != ctx.n or y.n != ctx.n:
        raise RankMismatch("elements must share the context rank")
    out = []
    for d1, p in x.terms:
        for d2, q in y.terms:
            s, d = concat(ctx, d1, d2)
            out.append((d, p * q * s))
    return DiagramElement.from_terms(ctx.n, out)


def concat_word(ctx: CoxeterContext, word: Sequence[int]) -> tuple[DeltaPoly, Diagram]:
    """Product of simple diagrams d_{w_1} ... d_{w_r}, folded left to right."""
    scalar, d = ONE, identity_diagram(ctx)
    for i in word:
        s, d = concat(ctx, d, simple_diagram(ctx, i))
        scalar = scalar * s
    return scalar, d


# -- admissibility -------------------------------------------------------------


def _count(d: Diagram, g: Decoration) -> int:
    return sum(e.decorations().count(g) for e in d.edges) + sum(lp.count(g) for lp in d.loops)


def d1_violations(d: Diagram) -> list[str]:
    """Exposure rules: closed symbols only where the west wall is reachable,
    open symbols only where the east wall is reachable."""
    out = []
    k = d.k
    prop = d.propagating_edges()
    for e in d.edges:
        deco = e.decorations()
        has_closed = any(x.closed for x in deco)
        has_open = any(not x.closed for x in deco)
        if not (has_closed or has_open):
            continue
        lo, hi = _span(d, e)
        west_ok = _exposed(d, e, prop, lo, hi, west=True)
        east_ok = _exposed(d, e, prop, lo, hi, west=False)
        name = f"{d.node_name(e.ends[0])}-{d.node_name(e.ends[1])}"
        if has_closed and not west_ok:
            out.append(f"D1: closed decoration on {name}, which is not exposed to the west wall")
        if has_open and not east_ok:
            out.append(f"D1: open decoration on {name}, which is not exposed to the east wall")
    del k
    return out


def _span(d: Diagram, e: Edge) -> tuple[int, int]:
    k = d.k
    cols = sorted(x if x < k else x - k for x in e.ends)
    return cols[0], cols[1]


def _exposed(d: Diagram, e: Edge, prop: list[Edge], lo: int, hi: int, west: bool) -> bool:
    k = d.k
    if d.is_propagating(e):
        others = [p for p in prop if p is not e]
        if west:
            return all(p.ends[0] > e.ends[0] for p in others)
        return all(p.ends[0] < e.ends[0] for p in others)
    top = e.ends[1] < k
    same_face = [
        f for f in d.edges if f is not e and not d.is_propagating(f) and (f.ends[1] < k) == top
    ]
    for f in same_face:
        flo, fhi = _span(d, f)
        if flo < lo and hi < fhi:
            return False
    for p in prop:
        col = p.ends[0] if top else p.ends[1] - k
        if west and col < lo:
            return False
        if not west and col > hi:
            return False
    return True


def is_admissible(ctx: CoxeterContext, d: Diagram) -> tuple[bool, list[str]]:
    if d.n != ctx.n:
        raise RankMismatch("diagram rank differs from context rank")
    v: list[str] = []
    for lp in d.loops:
        if lp != STANDARD_LOOP:
            v.append(f"C1: loop with content {[x.value for x in lp]}")
    v.extend(d1_violations(d))
    a = a_value(d)
    prop = d.propagating_edges()
    if a == 0:
        if any(e.blocks for e in d.edges):
            v.append("D0: a-value 0 diagram carries decorations")
    elif not prop:
        v.extend(_check_undammed(d))
    elif len(prop) == 1:
        v.extend(_check_single_prop(d, prop[0]))
    elif a > 1:
        v.extend(_check_dammed(d))
    else:
        v.extend(_check_a1(d))
    return not v, v


def _ends_at(d: Diagram, west: bool) -> list[Edge]:
    k = d.k
    nodes = (0, k) if west else (k - 1, 2 * k - 1)
    out = []
    for x in nodes:
        e = d.edge_at(x)
        if e not in out:
            out.append(e)
    return out


_SIDES = ((True, CD, CT, "•"), (False, OD, OT, "○"))


def _check_undammed(d: Diagram) -> list[str]:
    v = []
    for west, dot, _, sym in _SIDES:
        ends = _ends_at(d, west)
        for e in ends:
            deco = e.decorations()
            if not deco or deco[0 if west else -1] != dot:
                v.append(f"C2: edge at {'1' if west else 'n+2'} must {'start' if west else 'end'} with {sym}")
        if _count(d, dot) != len(ends):
            v.append(f"C2: {sym} may only occur on the edges at the {'west' if west else 'east'} end")
    return v


def _check_single_prop(d: Diagram, e: Edge) -> list[str]:
    v = []
    k = d.k
    core = list(e.decorations())
    allowed = {CD: 0, OD: 0}
    vertical = {(0, k): CT, (k - 1, 2 * k - 1): OT}
    if e.ends in vertical and len(core) <= 1:
        if core and core[0] != vertical[e.ends]:
            v.append("C3: a single decoration on a corner-to-corner edge must be a triangle")
        core = []
    else:
        corner_dot = {0: CD, k - 1: OD, k: CD, 2 * k - 1: OD}
        top, bot = e.ends
        if top in corner_dot:
            if not core or core[0] != corner_dot[top]:
                v.append(f"C3: propagating edge from {d.node_name(top)} must start with {corner_dot[top].glyph}")
            else:
                allowed[core.pop(0)] += 1
        if bot in corner_dot:
            if not core or core[-1] != corner_dot[bot]:
                v.append(f"C3: propagating edge to {d.node_name(bot)} must end with {corner_dot[bot].glyph}")
            else:
                allowed[core.pop()] += 1
    if any(x not in (CT, OT) for x in core):
        v.append("C3: propagating edge must carry an alternating sequence of triangles")
    for west, dot, _, sym in _SIDES:
        for f in _ends_at(d, west):
            if f is e:
                continue
            if f.decorations() != (dot,):
                v.append(f"C3: non-propagating edge at the {'west' if west else 'east'} end must carry exactly {sym}")
            else:
                allowed[dot] += 1
    for dot, sym in ((CD, "•"), (OD, "○")):
        if _count(d, dot) != allowed[dot]:
            v.append(f"C3: unexpected {sym} decorations")
    return v


def _check_dammed(d: Diagram) -> list[str]:
    v = []
    k = d.k
    for west, dot, tri, sym in _SIDES:
        top_node, bot_node = (0, k) if west else (k - 1, 2 * k - 1)
        e = d.edge_at(top_node)
        if e.ends == (top_node, bot_node):
            if e.decorations() not in ((), (tri,)):
                v.append(f"C4: vertical edge at the {'west' if west else 'east'} end carries more than a triangle")
            if _count(d, dot):
                v.append(f"C4: unexpected {sym} decorations")
        else:
            ends = _ends_at(d, west)
            for f in ends:
                if f.decorations() != (dot,):
                    v.append(f"C4: edges at the {'west' if west else 'east'} end must each carry exactly {sym}")
            if _count(d, dot) != len(ends):
                v.append(f"C4: unexpected {sym} decorations")
    return v


def end_signature(d: Diagram, west: bool = True) -> tuple[str, str, str, bool]:
    """Shape of one end of an a-value-1 diagram.

    Returns (north corner, south corner, block code, other-kind present).
    A corner is ``"prop"`` when it lies on the outermost propagating edge and
    ``"arc"`` otherwise. The block code spells the blocks of the outermost
    propagating edge from north to south: ``T`` a lone triangle, ``A`` a
    lone dot first in the schedule, ``Z`` a lone dot last in the schedule,
    ``B`` a lone dot that is the whole schedule, ``D`` any other lone dot and
    ``X`` anything else. The last field says whether decorations of the
    opposite kind occur anywhere in the diagram.
    """
    k = d.k
    dot, tri = (CD, CT) if west else (OD, OT)
    if a_value(d) != 1:
        raise ValueError("end signatures are defined for a-value-1 diagrams only")
    prop = d.propagating_edges()
    outer = prop[0] if west else prop[-1]
    oi = d.edges.index(outer)
    corners = (0, k) if west else (k - 1, 2 * k - 1)
    kinds = ["prop" if x in outer.ends else "arc" for x in corners]
    last = len(d.schedule) - 1
    code = []
    for j, bl in enumerate(outer.blocks):
        pos = d.schedule.index((oi, j))
        if bl == (tri,):
            code.append("T")
        elif bl == (dot,):
            code.append("B" if pos == 0 == last else "A" if pos == 0 else "Z" if pos == last else "D")
        else:
            code.append("X")
    other = any(x.closed != west for e in d.edges for x in e.decorations())
    return kinds[0], kinds[1], "".join(code), other


# Five end templates. Each maps the corner kinds to a regular expression over
# the block code; the bare arc/arc template needs the other kind to be absent.
C5_TEMPLATES: tuple[tuple[str, str, str, bool], ...] = (
    ("prop", "prop", r"T*", True),
    ("arc", "arc", r"T*", False),
    ("arc", "arc", r"AT*Z", True),
    ("arc", "prop", r"[AB]T*", True),
    ("prop", "arc", r"T*[ZB]", True),
)


def matching_template(sig: tuple[str, str, str, bool]) -> int | None:
    north, south, code, other = sig
    for idx, (tn, ts, pat, other_ok) in enumerate(C5_TEMPLATES):
        if (tn, ts) == (north, south) and re.fullmatch(pat, code) and (other_ok or not other):
            return idx
    return None


def _check_a1(d: Diagram) -> list[str]:
    v = []
    prop = d.propagating_edges()
    for west, dot, _, sym in _SIDES:
        side = "western" if west else "eastern"
        sig = end_signature(d, west)
        if matching_template(sig) is None:
            v.append(f"C5: {side} end {sig[:3]} matches no template")
        outer = prop[0] if west else prop[-1]
        allowed = sum(1 for b in outer.blocks if b == (dot,))
        for f in _ends_at(d, west):
            if f is outer:
                continue
            if f.decorations() != (dot,):
                v.append(f"C5: non-propagating edge at the {side} end must carry exactly {sym}")
            else:
                allowed += 1
        if _count(d, dot) != allowed:
            v.append(f"C5: unexpected {sym} decorations")
    return v


# -- serialization ---------------------------------------------------------------


def loop_count(d: Diagram) -> int:
    return sum(1 for lp in d.loops if lp == STANDARD_LOOP)


def to_json(d: Diagram) -> dict:
    loops: object
    if all(lp == STANDARD_LOOP for lp in d.loops):
        loops = len(d.loops)
    else:
        loops = [[x.value for x in lp] for lp in d.loops]
    return {
        "rank": d.n,
        "edges": [
            {
                "ends": [d.node_name(e.ends[0]), d.node_name(e.ends[1])],
                "blocks": [[x.value for x in b] for b in e.blocks],
            }
            for e in d.edges
        ],
        "loops": loops,
        "schedule": [list(p) for p in d.schedule],
    }


def from_json(obj: dict) -> Diagram:
    try:
        n = int(obj["rank"])
        CoxeterContext(n)
        k = n + 2
        edges = []
        for e in obj["edges"]:
            a, b = (node_id(k, x) for x in e["ends"])
            blocks = [tuple(parse_decoration(t) for t in bl) for bl in e.get("blocks", [])]
            edges.append(((a, b), blocks))
        raw = obj.get("loops", 0)
        if isinstance(raw, int):
            loops = [STANDARD_LOOP] * raw
        else:
            loops = [tuple(parse_decoration(t) for t in lp) for lp in raw]
        sched = obj.get("schedule")
        sched = None if sched is None else [tuple(p) for p in sched]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedDiagram):
            raise
        raise MalformedDiagram(f"malformed diagram JSON: {exc}") from exc
    return make_diagram(n, edges, loops, sched)


def canonicalize(d: Diagram) -> str:
    """Deterministic text form; equal exactly for equal diagrams."""
    return json.dumps(to_json(d), sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def render_ascii(d: Diagram) -> str:
    from .render import ascii_diagram

    return ascii_diagram(d)


def render_svg(d: Diagram) -> str:
    from .render import svg_diagram

    return svg_diagram(d)
