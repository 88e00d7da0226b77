"""Text and SVG drawings of decorated diagrams."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import CD, CT, OD, OT, Diagram, Edge, a_value


def _edge_label(d: Diagram, e: Edge) -> str:
    return f"{d.node_name(e.ends[0])}-{d.node_name(e.ends[1])}"


def _blocks_text(e: Edge) -> str:
    return " | ".join("".join(x.glyph for x in b) for b in e.blocks)


def ascii_diagram(d: Diagram) -> str:
    """Node rows with a mark per node, followed by an edge listing.

    Each node shows ``|`` when it sits on a straight vertical edge, ``\\`` or
    ``/`` for a slanted propagating edge, and ``(``/``)`` for the left and
    right end of an arc.
    """
    k = d.k
    mark_top = [" "] * k
    mark_bot = [" "] * k
    for e in d.edges:
        a, b = e.ends
        if d.is_propagating(e):
            i, j = a, b - k
            ch = "|" if i == j else ("\\" if j > i else "/")
            mark_top[i] = mark_bot[j] = ch
        elif b < k:
            mark_top[a], mark_top[b] = "(", ")"
        else:
            mark_bot[a - k], mark_bot[b - k] = "(", ")"
    width = max(3, len(str(k)) + 2)
    head = "".join(f"t{i + 1}".center(width) for i in range(k))
    foot = "".join(f"b{i + 1}".center(width) for i in range(k))
    lines = [
        head,
        "".join(m.center(width) for m in mark_top),
        "".join(m.center(width) for m in mark_bot),
        foot,
        f"a-value {a_value(d)}",
    ]
    for e in d.edges:
        kind = "prop " if d.is_propagating(e) else ("north" if e.ends[1] < k else "south")
        text = _blocks_text(e)
        lines.append(f"  {kind} {_edge_label(d, e):<8} {text}".rstrip())
    for lp in d.loops:
        lines.append(f"  loop  ({''.join(x.glyph for x in lp)})")
    if d.schedule:
        order = ", ".join(f"{_edge_label(d, d.edges[i])}#{j}" for i, j in d.schedule)
        lines.append(f"  schedule: {order}")
    return "\n".join(lines)


_STEP = 60
_TOP = 40
_HEIGHT = 240
_R = 5


def _glyph_svg(kind, x: float, y: float) -> str:
    fill = "black" if kind in (CD, CT) else "white"
    if kind in (CD, OD):
        return f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{_R}" fill="{fill}" stroke="black"/>'
    pts = f"{x:.1f},{y - _R - 1:.1f} {x - _R - 1:.1f},{y + _R:.1f} {x + _R + 1:.1f},{y + _R:.1f}"
    return f'<polygon points="{pts}" fill="{fill}" stroke="black"/>'


def _bezier(p0, p1, p2, p3, t: float) -> tuple[float, float]:
    u = 1 - t
    x = u**3 * p0[0] + 3 * u * u * t * p1[0] + 3 * u * t * t * p2[0] + t**3 * p3[0]
    y = u**3 * p0[1] + 3 * u * u * t * p1[1] + 3 * u * t * t * p2[1] + t**3 * p3[1]
    return x, y


def svg_diagram(d: Diagram) -> str:
    """Self-contained SVG 1.1 drawing with a fixed viewport per rank."""
    k = d.k
    loops_w = _STEP * len(d.loops)
    width = _STEP * (k + 1) + loops_w
    height = _HEIGHT + 2 * _TOP
    x0 = _STEP + loops_w
    y_top, y_bot = _TOP, _TOP + _HEIGHT

    def xpos(col: int) -> float:
        return x0 + _STEP * col

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="{x0 - _STEP / 2}" y="{y_top}" width="{_STEP * k}" height="{_HEIGHT}" '
        'fill="none" stroke="#999" stroke-dasharray="4 4"/>',
    ]
    sched_pos = {p: idx for idx, p in enumerate(d.schedule)}
    sched_len = max(1, len(d.schedule))
    for ei, e in enumerate(d.edges):
        a, b = e.ends
        if d.is_propagating(e):
            p0, p3 = (xpos(a), y_top), (xpos(b - k), y_bot)
            p1, p2 = (p0[0], y_top + _HEIGHT / 3), (p3[0], y_bot - _HEIGHT / 3)
        elif b < k:
            depth = 30 + 20 * (b - a)
            p0, p3 = (xpos(a), y_top), (xpos(b), y_top)
            p1, p2 = (p0[0], y_top + depth), (p3[0], y_top + depth)
        else:
            depth = 30 + 20 * (b - a)
            p0, p3 = (xpos(a - k), y_bot), (xpos(b - k), y_bot)
            p1, p2 = (p0[0], y_bot - depth), (p3[0], y_bot - depth)
        out.append(
            f'<path d="M {p0[0]:.1f} {p0[1]:.1f} C {p1[0]:.1f} {p1[1]:.1f} {p2[0]:.1f} {p2[1]:.1f} '
            f'{p3[0]:.1f} {p3[1]:.1f}" fill="none" stroke="black" stroke-width="2"/>'
        )
        for bj, block in enumerate(e.blocks):
            if (ei, bj) in sched_pos:
                lo = (sched_pos[(ei, bj)] + 0.5) / (sched_len + 1)
                hi = (sched_pos[(ei, bj)] + 1.5) / (sched_len + 1)
            else:
                lo, hi = (bj + 0.2) / len(e.blocks), (bj + 0.8) / len(e.blocks)
            for xi, x in enumerate(block):
                t = lo + (hi - lo) * (xi + 0.5) / len(block)
                if d.is_propagating(e):
                    # place by height so the schedule reads top to bottom
                    y = y_top + _HEIGHT * (0.15 + 0.7 * t)
                    s = (y - y_top) / _HEIGHT
                    px, _ = _bezier(p0, p1, p2, p3, s)
                    out.append(_glyph_svg(x, px, y))
                else:
                    px, py = _bezier(p0, p1, p2, p3, t)
                    out.append(_glyph_svg(x, px, py))
    for li, lp in enumerate(d.loops):
        cx, cy, rx = _STEP * (li + 0.5) + 5, y_top + _HEIGHT / 2, _STEP / 2 - 8
        out.append(
            f'<ellipse cx="{cx:.1f}" cy="{cy:.1f}" rx="{rx:.1f}" ry="{_HEIGHT / 4:.1f}" '
            'fill="none" stroke="black" stroke-width="2"/>'
        )
        for xi, x in enumerate(lp):
            y = cy - _HEIGHT / 4 + _HEIGHT / 2 * (xi + 0.5) / len(lp)
            out.append(_glyph_svg(x, cx - rx if x in (CD, CT) else cx + rx, y))
    for i in range(k):
        for y, face in ((y_top, "t"), (y_bot, "b")):
            out.append(f'<circle cx="{xpos(i):.1f}" cy="{y}" r="3" fill="black"/>')
            ty = y - 10 if face == "t" else y + 20
            out.append(
                f'<text x="{xpos(i):.1f}" y="{ty}" font-size="12" text-anchor="middle">'
                f"{escape(face + str(i + 1))}</text>"
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = ["ascii_diagram", "svg_diagram", "CD", "CT", "OD", "OT"]
