from __future__ import annotations

import json
import random

import pytest

import oracles
from affine_tl.coxeter import CoxeterContext, fc_elements
from affine_tl.diagram import (
    CD,
    CT,
    OD,
    OT,
    STANDARD_LOOP,
    Decoration,
    DiagramElement,
    MalformedDiagram,
    a_value,
    canonicalize,
    concat,
    concat_word,
    end_signature,
    from_json,
    identity_diagram,
    is_admissible,
    make_diagram,
    matching_template,
    mul_elements,
    normalize_block,
    normalize_loop,
    parse_decoration,
    render_ascii,
    render_svg,
    simple_diagram,
    to_json,
)
from affine_tl.tl import DELTA, ONE, DeltaPoly
from affine_tl.theta import image_of_word


def glyphs(text: str):
    return tuple(parse_decoration(c) for c in text)


@pytest.mark.parametrize(
    "block,two,out",
    [
        ("••○•○○•", 0, "▲○•△•"),
        ("••", 0, "▲"),
        ("•▲", 1, "•"),
        ("▲▲", 1, "▲"),
        ("○△", 1, "○"),
        ("•••••", 2, "•"),
        ("", 0, ""),
        ("•○•○", 0, "•○•○"),
    ],
)
def test_normalize_block(block, two, out):
    assert normalize_block(glyphs(block)) == (two, glyphs(out))


@pytest.mark.parametrize(
    "loop,two,dl,rest",
    [("", 0, 1, None), ("••", 0, 1, None), ("▲", 0, 1, None), ("△△", 1, 1, None), ("•○", 0, 0, "•○"), ("•○•", 0, 0, "▲○")],
)
def test_normalize_loop(loop, two, dl, rest):
    got = normalize_loop(glyphs(loop))
    assert got[:2] == (two, dl)
    assert got[2] == (None if rest is None else glyphs(rest))


def test_loop_content_is_rotation_invariant():
    a = normalize_loop(glyphs("▲○•△"))
    b = normalize_loop(glyphs("△▲○•"))
    c = normalize_loop(glyphs("△•○▲"))
    assert a == b == c


def test_normalize_block_confluent_against_random_rewriting():
    rng = random.Random(7)
    for _ in range(300):
        word = tuple(rng.choice(list(Decoration)) for _ in range(rng.randint(0, 10)))
        two, out = normalize_block(word)
        for _ in range(3):
            assert oracles.reduce_block([x.value for x in word], rng) == (two, tuple(x.value for x in out))


def test_decoration_properties():
    assert CD.closed and CT.closed and not OD.closed and not OT.closed
    assert (CD.weight, CT.weight) == (1, 2)
    assert parse_decoration("•") is CD and parse_decoration("ot") is OT
    with pytest.raises(MalformedDiagram):
        parse_decoration("x")


def test_simple_diagram_shape():
    ctx = CoxeterContext(2)
    d = simple_diagram(ctx, 1)
    assert a_value(d) == 1
    assert d.edge_at(0).ends == (0, 1) and d.edge_at(0).blocks == ((CD,),)
    assert d.edge_at(4).ends == (4, 5)
    d3 = simple_diagram(ctx, 3)
    assert d3.edge_at(2).blocks == ((OD,),)
    assert simple_diagram(ctx, 2).edge_at(1).blocks == ()


@pytest.mark.parametrize(
    "n,lhs,rhs,scalar",
    [
        (2, (1, 1), (1,), DELTA),
        (2, (2, 2), (2,), DELTA),
        (2, (1, 2, 1, 2), (1, 2), DeltaPoly.const(2)),
        (2, (3, 2, 3, 2), (3, 2), DeltaPoly.const(2)),
        (3, (2, 3, 2), (2,), ONE),
        (3, (1, 3), (3, 1), ONE),
    ],
)
def test_simple_diagram_relations(n, lhs, rhs, scalar):
    ctx = CoxeterContext(n)
    s1, d1 = concat_word(ctx, lhs)
    s2, d2 = concat_word(ctx, rhs)
    assert d1 == d2 and s1 == s2 * scalar


def test_identity_is_two_sided_unit():
    ctx = CoxeterContext(3)
    e = identity_diagram(ctx)
    for w in fc_elements(ctx, 5):
        _, d = image_of_word(ctx, w.canonical)
        assert concat(ctx, e, d) == (ONE, d) == concat(ctx, d, e)


def test_loops_of_factors_are_kept():
    ctx = CoxeterContext(2)
    s, d = image_of_word(ctx, (1, 3, 2, 1, 3, 2))
    assert s == ONE and d.loops == (STANDARD_LOOP,)
    assert is_admissible(ctx, d)[0]


@pytest.mark.parametrize(
    "edges,msg",
    [
        ([((0, 1), []), ((2, 3), [])], "perfect matching"),
        ([((0, 2), []), ((1, 3), []), ((4, 5), []), ((6, 7), [])], "planar"),
        ([((0, 4), [(CD,)]), ((1, 5), []), ((2, 6), []), ((3, 7), [])], "a-value 0"),
        ([((0, 1), [(CD, CD)]), ((2, 6), []), ((3, 7), []), ((4, 5), [])], "normal form"),
    ],
)
def test_make_diagram_rejects(edges, msg):
    with pytest.raises(MalformedDiagram, match=msg):
        make_diagram(2, edges)


def test_make_diagram_requires_schedule_for_multi_block_edges():
    edges = [((0, 1), [(CD,)]), ((2, 6), [(CD,), (CD,)]), ((3, 7), [(OT,)]), ((4, 5), [(CD,)])]
    with pytest.raises(MalformedDiagram, match="schedule"):
        make_diagram(2, edges)
    d = make_diagram(2, edges, schedule=[(1, 0), (2, 0), (1, 1)])
    assert d == image_of_word(CoxeterContext(2), (1, 2, 3, 2, 1))[1]


def test_json_round_trip_on_images():
    for n in (2, 3):
        ctx = CoxeterContext(n)
        for w in fc_elements(ctx, 7):
            _, d = image_of_word(ctx, w.canonical)
            obj = json.loads(json.dumps(to_json(d)))
            assert from_json(obj) == d
            assert canonicalize(from_json(obj)) == canonicalize(d)


def test_from_json_rejects_bad_node():
    with pytest.raises(MalformedDiagram):
        from_json({"rank": 2, "edges": [{"ends": ["t1", "x9"]}]})


def test_undecorated_loop_is_not_admissible():
    ctx = CoxeterContext(2)
    e = identity_diagram(ctx)
    bare = make_diagram(2, [(x.ends, x.blocks) for x in e.edges], loops=[()])
    ok, why = is_admissible(ctx, bare)
    assert not ok and any(w.startswith("C1") for w in why)
    std = make_diagram(2, [(x.ends, x.blocks) for x in e.edges], loops=[STANDARD_LOOP])
    assert is_admissible(ctx, std) == (True, [])
    assert to_json(std)["loops"] == 1


def test_dotted_corner_must_match_side():
    ctx = CoxeterContext(2)
    wrong = make_diagram(2, [((0, 1), [(OD,)]), ((2, 6), []), ((3, 7), []), ((4, 5), [(CD,)])])
    assert not is_admissible(ctx, wrong)[0]


@pytest.mark.parametrize(
    "word,sig,template",
    [((1, 2, 3, 2, 1), ("arc", "arc", "AZ", True), 2), ((1, 2, 1), ("arc", "arc", "T", False), 1), ((1, 2, 3), ("arc", "prop", "A", True), 3)],
)
def test_end_signatures(word, sig, template):
    _, d = image_of_word(CoxeterContext(2), word)
    assert end_signature(d) == sig
    assert matching_template(sig) == template


def test_end_signature_needs_a_value_one():
    _, d = image_of_word(CoxeterContext(2), (1, 3, 2))
    with pytest.raises(ValueError):
        end_signature(d)


def test_diagram_element_sum_and_product():
    ctx = CoxeterContext(2)
    d1, d2 = simple_diagram(ctx, 1), simple_diagram(ctx, 2)
    x = DiagramElement.single(d1) + DiagramElement.single(d2)
    sq = mul_elements(ctx, x, x)
    expected = {
        d1: DELTA,
        d2: DELTA,
        concat_word(ctx, (1, 2))[1]: ONE,
        concat_word(ctx, (2, 1))[1]: ONE,
    }
    assert sq.as_dict() == expected


def test_render_ascii_and_svg():
    _, d = image_of_word(CoxeterContext(2), (1, 2, 3, 2, 1))
    text = render_ascii(d)
    assert "a-value 1" in text and "schedule" in text and "•" in text
    svg = render_svg(d)
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")
    assert svg.count("<path") == len(d.edges)
