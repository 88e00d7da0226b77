"""
The homomorphism theta: b_i -> d_i from the monomial algebra to the diagram
algebra, plus bounded verification sweeps over FC elements.
"""

from __future__ import annotations

import dataclasses
import os
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache

from .coxeter import CoxeterContext, FCElement, fc_elements, left_descents, right_descents
from .diagram import (
    CD,
    OD,
    Diagram,
    DiagramElement,
    a_value,
    canonicalize,
    concat,
    identity_diagram,
    is_admissible,
    simple_diagram,
    to_json,
)
from .heap import build, max_antichain
from .tl import ONE, DeltaPoly, MonomialElement, RankMismatch


class InconsistentImage(RuntimeError):
    """theta(b_w) was not a single admissible diagram with coefficient 1."""


@dataclasses.dataclass
class VerificationReport:
    rank: int
    max_len: int
    checked: int = 0
    failures: list[tuple[FCElement, str]] = dataclasses.field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: VerificationReport) -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "max_len": self.max_len,
            "checked": self.checked,
            "failures": [{"word": list(w.canonical), "reason": r} for w, r in self.failures],
        }


@lru_cache(maxsize=200_000)
def _image(n: int, w: tuple[int, ...]) -> tuple[DeltaPoly, Diagram]:
    ctx = CoxeterContext(n)
    if not w:
        return ONE, identity_diagram(ctx)
    # peel the last letter so prefixes are shared through the cache
    s, d = _image(n, w[:-1])
    s2, d2 = concat(ctx, d, simple_diagram(ctx, w[-1]))
    return s * s2, d2


def image_of_word(ctx: CoxeterContext, w) -> tuple[DeltaPoly, Diagram]:
    """d_{w_1} ... d_{w_r} for any word, as (scalar, diagram)."""
    return _image(ctx.n, ctx.word(w))


def theta(ctx: CoxeterContext, x: MonomialElement) -> DiagramElement:
    if x.n != ctx.n:
        raise RankMismatch("element rank differs from context rank")
    out = []
    for fc, p in x.terms:
        s, d = _image(ctx.n, fc.canonical)
        out.append((d, p * s))
    return DiagramElement.from_terms(ctx.n, out)


def d_of_w(ctx: CoxeterContext, fc: FCElement) -> Diagram:
    s, d = _image(ctx.n, fc.canonical)
    if s != ONE:
        raise InconsistentImage(f"theta(b_{fc}) has scalar {s}, expected 1")
    ok, why = is_admissible(ctx, d)
    if not ok:
        raise InconsistentImage(f"theta(b_{fc}) is not admissible: {'; '.join(why)}")
    return d


def _simple_edge(d: Diagram, i: int, north: bool) -> bool:
    k = d.k
    a, b = (i - 1, i) if north else (k + i - 1, k + i)
    try:
        e = d.edge_at(a)
    except KeyError:
        return False
    if e.ends != (a, b):
        return False
    want = ()
    if i == 1:
        want = (CD,)
    elif i == d.n + 1:
        want = (OD,)
    return e.decorations() == want


def descents_from_diagram(ctx: CoxeterContext, d: Diagram) -> tuple[frozenset[int], frozenset[int]]:
    left = frozenset(i for i in ctx.generators if _simple_edge(d, i, True))
    right = frozenset(i for i in ctx.generators if _simple_edge(d, i, False))
    return left, right


@lru_cache(maxsize=64)
def _inverse_table(n: int, max_len: int) -> dict[str, FCElement]:
    ctx = CoxeterContext(n)
    table: dict[str, FCElement] = {}
    for fc in fc_elements(ctx, max_len):
        table.setdefault(canonicalize(_image(n, fc.canonical)[1]), fc)
    return table


def invert(ctx: CoxeterContext, d: Diagram, max_len: int) -> FCElement | None:
    """The FC element w with d_w = d and len(w) <= max_len, or None."""
    if d.n != ctx.n:
        raise RankMismatch("diagram rank differs from context rank")
    return _inverse_table(ctx.n, max_len).get(canonicalize(d))


def _check_one(n: int, w: tuple[int, ...]) -> str | None:
    ctx = CoxeterContext(n)
    fc = FCElement(len(w), w, n)
    s, d = _image(n, w)
    if s != ONE:
        return f"scalar {s}"
    ok, why = is_admissible(ctx, d)
    if not ok:
        return "inadmissible: " + "; ".join(why)
    L, R = descents_from_diagram(ctx, d)
    if L != left_descents(fc) or R != right_descents(fc):
        return f"descents {sorted(L)}/{sorted(R)} vs {sorted(left_descents(fc))}/{sorted(right_descents(fc))}"
    return None


def _check_chunk(args) -> list[tuple[tuple[int, ...], str]]:
    n, words = args
    out = []
    for w in words:
        why = _check_one(n, w)
        if why:
            out.append((w, why))
    return out


def worker_count(default: int = 1) -> int:
    try:
        return max(1, int(os.environ.get("TL_WORKERS", default)))
    except ValueError:
        return default


def verify_round_trip(ctx: CoxeterContext, max_len: int, workers: int | None = None) -> VerificationReport:
    elems = list(fc_elements(ctx, max_len))
    report = VerificationReport(ctx.n, max_len, checked=len(elems))
    words = [fc.canonical for fc in elems]
    workers = workers or worker_count()
    if workers > 1 and len(words) > 200:
        step = -(-len(words) // (workers * 4))
        chunks = [(ctx.n, words[i : i + step]) for i in range(0, len(words), step)]
        with ProcessPoolExecutor(workers) as pool:
            results = [r for part in pool.map(_check_chunk, chunks) for r in part]
    else:
        results = _check_chunk((ctx.n, words))
    for w, why in results:
        report.failures.append((FCElement(len(w), w, ctx.n), why))
    return report


def verify_injectivity(ctx: CoxeterContext, max_len: int) -> VerificationReport:
    report = VerificationReport(ctx.n, max_len)
    seen: dict[str, FCElement] = {}
    for fc in fc_elements(ctx, max_len):
        report.checked += 1
        key = canonicalize(_image(ctx.n, fc.canonical)[1])
        if key in seen:
            report.failures.append((fc, f"same diagram as {seen[key]}"))
        else:
            seen[key] = fc
    return report


def verify_a_values(ctx: CoxeterContext, max_len: int) -> VerificationReport:
    """a(d_w) = n(w) for every w, so in particular a(d_w) = 1 iff w is type I."""
    report = VerificationReport(ctx.n, max_len)
    for fc in fc_elements(ctx, max_len):
        report.checked += 1
        a = a_value(_image(ctx.n, fc.canonical)[1])
        nv = max_antichain(build(ctx, fc.canonical))
        if a != nv:
            report.failures.append((fc, f"a-value {a} but n-value {nv}"))
    return report


def report_json(report: VerificationReport) -> dict:
    return report.to_json()


def diagram_json(ctx: CoxeterContext, fc: FCElement) -> dict:
    return to_json(_image(ctx.n, fc.canonical)[1])


def relation_instances(ctx: CoxeterContext) -> list[tuple[tuple[int, ...], tuple[int, ...], int, int]]:
    """Defining relations as (lhs word, rhs word, power of 2, power of delta)."""
    out = []
    gens = list(ctx.generators)
    for i in gens:
        out.append(((i, i), (i,), 0, 1))
        for j in gens:
            if i == j:
                continue
            m = ctx.bond(i, j)
            if m == 2:
                out.append(((i, j), (j, i), 0, 0))
            elif m == 3:
                out.append(((i, j, i), (i,), 0, 0))
            else:
                out.append(((i, j, i, j), (i, j), 1, 0))
    return out


def verify_relations(ctx: CoxeterContext) -> VerificationReport:
    """Each defining relation holds in the monomial and the diagram engine."""
    from .tl import from_word

    report = VerificationReport(ctx.n, 4)
    for lhs, rhs, two, dl in relation_instances(ctx):
        report.checked += 1
        scale = DeltaPoly.monomial(2**two, dl)
        x, y = from_word(ctx, lhs), from_word(ctx, rhs).scale(scale)
        fc = y.terms[0][0]
        if x != y:
            report.failures.append((fc, f"monomial relation {lhs} fails: {x} vs {y}"))
        s1, d1 = image_of_word(ctx, lhs)
        s2, d2 = image_of_word(ctx, rhs)
        if (s1, d1) != (s2 * scale, d2):
            report.failures.append((fc, f"diagram relation {lhs} fails"))
    return report
