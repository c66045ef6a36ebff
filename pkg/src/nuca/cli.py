"""Command-line front end.

Exit status: 0 after any verdict, 1 on malformed input, 2 when a state or
table budget (``NUCA_BUDGET``) is exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .core import ResourceBudgetError, format_config, format_word, parse_config, parse_word
from .rules import LocalRule, NuCaClass, NuCaSpec


class InputError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _window(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise InputError(f"window must look like a..b, got {text!r}") from None


def _load_spec(args) -> NuCaSpec:
    return NuCaSpec.load(args.spec)


def _rule(args, spec: NuCaSpec | None = None) -> LocalRule:
    """Rule from ``--rule`` (a table over the spec alphabet) or the spec's default rule."""
    if getattr(args, "rule", None):
        q = args.q if spec is None else spec.q
        radius = args.radius if spec is None else spec.radius
        if q is None or radius is None:
            raise InputError("--rule needs --spec or both --q and --radius")
        return LocalRule.parse(args.rule, q, radius)
    if spec is None:
        raise InputError("give --rule or --spec")
    f = spec.default_rule()
    if f is None:
        raise InputError("the spec has no single default rule")
    return f


def _emit(args, text: str, doc: dict) -> None:
    print(json.dumps(doc) if args.json else text)


def cmd_simulate(args) -> int:
    from .engine import trace

    spec = _load_spec(args)
    x = parse_config(args.config)
    a, b = _window(args.window)
    tr = trace(spec, x, a, b, args.steps)
    if args.command == "render":
        tr.save_pgm(args.out, spec.q)
        print(f"wrote {args.out} ({b - a + 1}x{args.steps + 1})")
    else:
        _emit(args, tr.text(), {"window": [a, b], "rows": tr.text().splitlines()})
    return 0


def cmd_decide(args) -> int:
    from .debruijn import decide_injective, decide_surjective

    spec = _load_spec(args)
    verdict = decide_surjective(spec) if args.property == "surjective" else decide_injective(spec)
    _emit(args, verdict.line(), verdict.to_json())
    return 0


def cmd_oracle(args) -> int:
    from .oracles import injectivity_witness_oracle, surjectivity_oracle

    spec = _load_spec(args)
    if args.property == "surjective":
        res = surjectivity_oracle(spec, args.bound)
        doc = {"refuted": hasattr(res, "word")}
        if doc["refuted"]:
            doc.update(word=format_word(res.word), position=res.position, n=res.n)
        else:
            doc["consistent_up_to"] = res.n
        _emit(args, res.line(), doc)
    else:
        pair = injectivity_witness_oracle(spec, args.bound)
        if pair is None:
            _emit(args, f"no colliding pair found (loop bound {args.bound})", {"pair": None})
        else:
            text = f"collision {format_config(pair[0])};{format_config(pair[1])}"
            _emit(args, text, {"pair": [format_config(c) for c in pair]})
    return 0


def cmd_blocking(args) -> int:
    from .dynamics import certify_strongly_blocking, find_strongly_blocking, refute_blocking

    spec = NuCaSpec.load(args.spec) if args.spec else None
    f = _rule(args, spec)
    if args.action == "certify":
        cert = certify_strongly_blocking(f, parse_word(args.word), args.width)
        if cert is None:
            _emit(args, f"not certified: {args.word}", {"certificate": None})
        else:
            cols = " ".join(format_word(c) for c in cert.column_trace)
            text = f"certified: {args.word} offset={cert.offset} preperiod={cert.preperiod} period={cert.period} columns={cols}"
            _emit(args, text, {"certificate": cert.to_json()})
    elif args.action == "find":
        hit = find_strongly_blocking(f, args.width, args.max_len)
        if hit is None:
            _emit(args, f"none up to length {args.max_len}", {"certificate": None})
        else:
            _emit(args, f"found: {format_word(hit[0])} offset={hit[1].offset}", {"certificate": hit[1].to_json()})
    else:
        ref = refute_blocking(f, parse_word(args.word), args.width, args.horizon, args.padding, seed=args.seed)
        if ref is None:
            _emit(args, "inconclusive", {"refutation": None})
        else:
            pairs = {d: [format_word(x), format_word(y), t] for d, (x, y, t) in ref.pairs.items()}
            text = "refuted: " + " ".join(f"d={d}:{x}/{y}@t={t}" for d, (x, y, t) in pairs.items())
            _emit(args, text, {"refutation": pairs})
    return 0


def cmd_classify(args) -> int:
    from .dynamics import classify_ca, classify_nuca

    spec = _load_spec(args)
    bounds = dict(max_word_len=args.max_word_len, max_q=args.max_q, max_p=args.max_p, horizon=args.horizon)
    if spec.class_of() is NuCaClass.UNIFORM_CA:
        res = classify_ca(spec.default_rule(), **bounds)
        _emit(args, res.describe(), {"kind": type(res).__name__, "detail": res.describe()})
    else:
        res = classify_nuca(spec, **bounds)
        _emit(args, res.describe(), {"kind": res.kind, "detail": res.describe()})
    return 0


def cmd_compat(args) -> int:
    spec = _load_spec(args)
    ok = spec.is_n_compatible(_rule(args, spec), args.n)
    _emit(args, "true" if ok else "false", {"compatible": ok})
    return 0


def cmd_zoo(args) -> int:
    from . import zoo

    if args.action == "list":
        for e in zoo.zoo_catalog():
            print(f"{e.name:10s} {e.title}")
        return 0
    try:
        entry = zoo.zoo_entry(args.name)
    except KeyError as exc:
        raise InputError(str(exc)) from None
    if args.action == "verify":
        for check, want, got in zoo.verify_entry(entry):
            ok = want == got
            name = lambda v: getattr(v, "name", v)
            print(f"{'ok  ' if ok else 'FAIL'} {check}: expected {name(want)}, got {name(got)}")
        return 0
    if args.action == "dump":
        if args.out:
            entry.spec.save(args.out)
        else:
            print(json.dumps(entry.spec.to_json(), indent=1))
        return 0
    tr = zoo.render(entry, steps=args.steps, width=args.width, seed=args.seed)
    out = args.out or f"{entry.name}.pgm"
    tr.save_pgm(out, entry.spec.q)
    print(f"wrote {out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nuca", description="Non-uniform cellular automata: simulation, decisions, dynamics.")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("simulate", "render"):
        s = sub.add_parser(name)
        s.add_argument("--spec", required=True)
        s.add_argument("--config", required=True)
        s.add_argument("--steps", type=int, default=20)
        s.add_argument("--window", default="-20..20")
        if name == "render":
            s.add_argument("--out", required=True)
        s.set_defaults(func=cmd_simulate)

    for name, func in (("decide", cmd_decide), ("oracle", cmd_oracle)):
        s = sub.add_parser(name)
        s.add_argument("property", choices=["surjective", "injective"])
        s.add_argument("--spec", required=True)
        if name == "oracle":
            s.add_argument("--bound", type=int, default=6)
        s.set_defaults(func=func)

    s = sub.add_parser("blocking")
    s.add_argument("action", choices=["find", "certify", "refute"])
    s.add_argument("--spec")
    s.add_argument("--rule", help="rule table, ascending neighborhoods")
    s.add_argument("--q", type=int)
    s.add_argument("--radius", type=int)
    s.add_argument("--word")
    s.add_argument("--width", type=int, default=1)
    s.add_argument("--max-len", type=int, default=4)
    s.add_argument("--horizon", type=int, default=30)
    s.add_argument("--padding", type=int, default=6)
    s.set_defaults(func=cmd_blocking)

    s = sub.add_parser("classify")
    s.add_argument("--spec", required=True)
    s.add_argument("--max-word-len", type=int, default=4)
    s.add_argument("--max-q", type=int, default=3)
    s.add_argument("--max-p", type=int, default=3)
    s.add_argument("--horizon", type=int, default=30)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("compat")
    s.add_argument("--spec", required=True)
    s.add_argument("--rule", required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_compat)

    s = sub.add_parser("zoo")
    s.add_argument("action", choices=["list", "verify", "render", "dump"])
    s.add_argument("name", nargs="?")
    s.add_argument("--out")
    s.add_argument("--steps", type=int, default=200)
    s.add_argument("--width", type=int, default=200)
    s.set_defaults(func=cmd_zoo)
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "blocking" and args.action != "find" and not args.word:
            raise InputError("--word is required")
        if args.command == "zoo" and args.action != "list" and not args.name:
            raise InputError("zoo entry name required")
        return args.func(args)
    except ResourceBudgetError as exc:
        print(f"error: resource budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
