"""Command-line entry point ``tl``."""

from __future__ import annotations

import argparse
import json
import sys

from .coxeter import (
    CoxeterContext,
    InvalidLetter,
    NotFullyCommutative,
    canonical_form,
    fc_elements,
    format_word,
    is_fc_reduced,
    parse_word,
)
from .diagram import MalformedDiagram, a_value, from_json, is_admissible, to_json
from .elements import (
    classify_non_cancellable,
    is_non_cancellable,
    n_value,
    reduction_path,
)
from .heap import build, convex_violations
from .render import ascii_diagram, svg_diagram
from .theta import (
    image_of_word,
    verify_a_values,
    verify_injectivity,
    verify_relations,
    verify_round_trip,
    worker_count,
)
from .tl import MonomialElement, RankMismatch, from_word, mul


class DomainError(Exception):
    pass


def _rank(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rank must be an integer, got {text!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError("rank must be at least 2")
    return n


def _bound(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bound must be an integer, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("bound must be non-negative")
    return v


def _word(ctx: CoxeterContext, text: str) -> tuple[int, ...]:
    try:
        return ctx.word(parse_word(text))
    except (ValueError, InvalidLetter) as exc:
        raise DomainError(f"malformed word {text!r}: {exc}") from exc


def _read_diagram(path: str, ctx: CoxeterContext | None):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
        obj = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise DomainError(f"cannot read diagram JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise DomainError("diagram JSON must be an object")
    d = from_json(obj)
    if ctx is not None and d.n != ctx.n:
        raise DomainError(f"diagram has rank {d.n}, expected {ctx.n}")
    return d


def cmd_fc_check(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    w = _word(ctx, args.word)
    bad = convex_violations(ctx, build(ctx, w))
    if bad:
        print(f"not-FC ({bad[0].kind.value})", file=out)
        return 1
    print("FC", file=out)
    return 0


def cmd_normalize(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    fc = canonical_form(ctx, _word(ctx, args.word))
    print(format_word(fc.canonical), file=out)
    return 0


def cmd_mul(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    acc = MonomialElement.one(ctx)
    for text in args.words:
        acc = mul(ctx, acc, from_word(ctx, _word(ctx, text)))
    if args.format == "json":
        print(json.dumps(acc.to_json()), file=out)
    else:
        print(str(acc), file=out)
    return 0


def cmd_theta(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    scalar, d = image_of_word(ctx, _word(ctx, args.word))
    if args.format == "json":
        obj = to_json(d)
        if scalar.coeffs != (1,):
            obj["scalar"] = list(scalar.coeffs)
        print(json.dumps(obj), file=out)
    elif args.format == "svg":
        out.write(svg_diagram(d))
    else:
        if scalar.coeffs != (1,):
            print(f"scalar {scalar}", file=out)
        print(ascii_diagram(d), file=out)
    return 0


def cmd_admissible(args, out) -> int:
    d = _read_diagram(args.file, CoxeterContext(args.rank) if args.rank else None)
    ok, why = is_admissible(CoxeterContext(d.n), d)
    if args.format == "json":
        print(json.dumps({"admissible": ok, "violations": why}), file=out)
    else:
        print("admissible" if ok else "not admissible", file=out)
        for v in why:
            print(f"  {v}", file=out)
    return 0 if ok else 1


def cmd_render(args, out) -> int:
    d = _read_diagram(args.file, CoxeterContext(args.rank) if args.rank else None)
    if args.format == "svg":
        out.write(svg_diagram(d))
    elif args.format == "json":
        print(json.dumps(to_json(d)), file=out)
    else:
        print(ascii_diagram(d), file=out)
    return 0


def cmd_heap(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    h = build(ctx, _word(ctx, args.word))
    print(h.render_ascii(), file=out)
    return 0


def cmd_classify(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    fc = canonical_form(ctx, _word(ctx, args.word))
    path = reduction_path(ctx, fc)
    end = path[-1].result if path else fc
    cls = classify_non_cancellable(ctx, end)
    if args.format == "json":
        obj = {
            "word": list(fc.canonical),
            "non_cancellable": is_non_cancellable(ctx, fc),
            "path": [
                {"side": m.side.value, "s": m.s, "t": m.t, "result": list(m.result.canonical)}
                for m in path
            ],
            "class": cls.tag.value,
            "end": list(end.canonical),
        }
        if cls.u is not None:
            obj["u"], obj["v"] = list(cls.u.canonical), list(cls.v.canonical)
        print(json.dumps(obj), file=out)
        return 0
    for m in path:
        print(f"{m.side.value} s={m.s} t={m.t} -> [{format_word(m.result.canonical)}]", file=out)
    line = f"{cls.tag.value} [{format_word(end.canonical)}]"
    if cls.u is not None:
        line += f" u=[{format_word(cls.u.canonical)}] v=[{format_word(cls.v.canonical)}]"
    print(line, file=out)
    return 0


def cmd_enumerate(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    count = 0
    for fc in fc_elements(ctx, args.max_len):
        count += 1
        if args.format == "json":
            print(json.dumps({"word": list(fc.canonical), "n_value": n_value(ctx, fc)}), file=out)
        else:
            print(format_word(fc.canonical) or "e", file=out)
    if args.count:
        print(f"# {count} elements", file=out)
    return 0


def cmd_verify(args, out) -> int:
    ctx = CoxeterContext(args.rank)
    workers = args.workers or worker_count()
    suites = {
        "relations": verify_relations(ctx),
        "round-trip": verify_round_trip(ctx, args.max_len, workers),
        "injectivity": verify_injectivity(ctx, args.max_len),
        "a-value": verify_a_values(ctx, args.max_len),
    }
    ok = all(r.ok for r in suites.values())
    if args.format == "json":
        print(json.dumps({name: r.to_json() for name, r in suites.items()} | {"ok": ok}), file=out)
    else:
        for name, r in suites.items():
            status = "ok" if r.ok else f"{len(r.failures)} failures"
            print(f"{name}: checked {r.checked}, {status}", file=out)
            for fc, why in r.failures[:10]:
                print(f"  [{format_word(fc.canonical)}] {why}", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tl", description="Temperley-Lieb algebra of type affine C and its diagram calculus")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, word=True, fmt=("text", "json")):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--rank", "-n", type=_rank, required=word is not None)
        if word:
            sp.add_argument("word", help='word such as "3 2 1 2" or "s3*s2*s1*s2"')
        if fmt:
            sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.set_defaults(func=func)
        return sp

    add("fc-check", cmd_fc_check, "decide whether a word is FC-reduced", fmt=None)
    add("normalize", cmd_normalize, "Cartier-Foata normal form of an FC-reduced word", fmt=None)
    sp = add("mul", cmd_mul, "product of monomials b_w1 b_w2 ...", word=False)
    sp.add_argument("words", nargs="+")
    add("theta", cmd_theta, "image of a word under theta", fmt=("text", "json", "svg"))
    sp = sub.add_parser("admissible", help="check a diagram JSON for admissibility")
    sp.add_argument("file", help="path to diagram JSON, or - for stdin")
    sp.add_argument("--rank", "-n", type=_rank)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_admissible)
    sp = sub.add_parser("render", help="draw a diagram JSON")
    sp.add_argument("file", help="path to diagram JSON, or - for stdin")
    sp.add_argument("--rank", "-n", type=_rank)
    sp.add_argument("--format", choices=("ascii", "svg", "json"), default="ascii")
    sp.set_defaults(func=cmd_render)
    add("heap", cmd_heap, "draw the heap of a word", fmt=None)
    add("classify", cmd_classify, "reduce to a non-cancellable element and classify it")
    sp = add("enumerate", cmd_enumerate, "list FC elements by (length, word)", word=False)
    sp.add_argument("--max-len", "-L", type=_bound, required=True)
    sp.add_argument("--count", action="store_true", help="append a count line")
    sp = add("verify", cmd_verify, "run the verification suites", word=False)
    sp.add_argument("--max-len", "-L", type=_bound, default=6)
    sp.add_argument("--workers", "-j", type=int, default=None, help="worker processes (default: $TL_WORKERS or 1)")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except NotFullyCommutative as exc:
        print(f"not-FC: {exc}", file=sys.stderr)
        return 1
    except (DomainError, MalformedDiagram, RankMismatch, InvalidLetter, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
