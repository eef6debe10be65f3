"""Command-line front end: ``woontree <subcommand> ...``.

Exit status: 0 on success, 1 when ``verify`` finds a mismatch, 2 on usage
errors (including size guards).  Output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import algebra as al
from . import compositions as co
from . import compsum as cs
from . import iterated as it
from . import pitree as pt
from . import sequences as sq
from . import verify as vf
from .algebra import Polynomial, format_rational, parse_rational
from .errors import ConstantTermError, RangeError, SizeGuard


class UsageError(Exception):
    def __init__(self, flag: str, message: str):
        super().__init__(f"{flag}: {message}")


class _Parser(argparse.ArgumentParser):
    """Reports the offending flag followed by the full help of the (sub)command."""

    def error(self, message):
        self.exit(2, f"{self.prog}: error: {message}\n\n{self.format_help()}")


# -- rendering ---------------------------------------------------------------------

def render(v) -> str:
    if isinstance(v, Polynomial):
        return str(v)
    if isinstance(v, (int, Fraction)):
        return format_rational(Fraction(v))
    return str(v)


def num(v):
    """A computed value: rational string, or a polynomial's coefficient strings (index = power of x)."""
    if isinstance(v, Polynomial):
        return [format_rational(c) for c in v.coeffs]
    return format_rational(Fraction(v))


def nums(values) -> list:
    return [num(v) for v in values]


def to_json_value(v):
    """Fractions and polynomials as in :func:`num`; plain ints (indices, counts) stay ints."""
    if isinstance(v, (Polynomial, Fraction)):
        return num(v)
    if isinstance(v, dict):
        return {k: to_json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [to_json_value(x) for x in v]
    return v


def dump_json(obj) -> str:
    return json.dumps(to_json_value(obj), indent=2) + "\n"


def table(rows: Sequence[Sequence[str]], header: Sequence[str] | None = None) -> str:
    allrows = ([list(header)] if header else []) + [list(r) for r in rows]
    if not allrows:
        return ""
    widths = [max(len(r[i]) for r in allrows) for i in range(len(allrows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in allrows]
    return "\n".join(lines) + "\n"


# -- named inputs ------------------------------------------------------------------

def _catalan_shift() -> pt.InputSequence:
    return pt.InputSequence(lambda n: sq.catalan(n)[n - 1], "catalan_shift", Fraction(-1))


TREE_INPUTS = {
    "woon": lambda N: pt.woon(),
    "bernoulli": lambda N: pt.bernoulli_input(),
    "fibonacci": lambda N: pt.fibonacci(),
    "catalan_shift": lambda N: _catalan_shift(),
    "bernoulli_poly": lambda N: sq.bernoulli_poly_input(),
    "hermite": lambda N: sq.hermite_input(N),
}

WEIGHTS = {
    "log1p": lambda q: cs.log1p_weights(),
    "geometric": lambda q: cs.geometric_weights(),
    "expm1": lambda q: cs.expm1_weights(),
    "log1p_over_z": lambda q: cs.log1p_over_z_weights(),
    "norlund": lambda q: cs.norlund_weights(q),
}


def parse_series_spec(text: str, N: int) -> al.Series:
    """A registry name such as ``log1p`` or explicit ``coeffs:0,1,1/2``."""
    if text.startswith("coeffs:"):
        vals = [parse_rational(t) for t in text[len("coeffs:"):].split(",") if t.strip()]
        return al.Series(vals, N)
    if text in al.NAMED_SERIES:
        return al.NAMED_SERIES[text](N)
    raise KeyError(f"unknown series {text!r}; known: {', '.join(sorted(al.NAMED_SERIES))} or coeffs:a0,a1,...")


def _param(text: str) -> tuple[str, str]:
    key, sep, value = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), value.strip()


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


_param.__name__ = "key=value"
_nonneg.__name__ = "non-negative integer"
_positive.__name__ = "positive integer"


def _params_dict(pairs, allowed: dict) -> dict:
    out = {}
    for key, value in pairs or []:
        if key not in allowed:
            raise UsageError("--param", f"unknown parameter {key!r}; known: {', '.join(sorted(allowed)) or 'none'}")
        try:
            out[key] = allowed[key](value)
        except ValueError as exc:
            raise UsageError("--param", f"bad value for {key}: {exc}") from None
    return out


# -- subcommands -------------------------------------------------------------------

def cmd_compositions(args) -> tuple[str, int]:
    n = args.n
    if args.parts:
        J = sq.parse_parts(args.parts)
        comps = list(co.enumerate_restricted(n, J))
    else:
        comps = list(co.enumerate_compositions(n))
    if args.count:
        count = co.count_restricted(n, sq.parse_parts(args.parts)) if args.parts else co.count_compositions(n)
        if args.json:
            return dump_json({"n": n, "parts": list(sq.parse_parts(args.parts)) if args.parts else None, "count": count}), 0
        return f"{count}\n", 0
    if args.json:
        return json.dumps([list(c) for c in comps]) + "\n", 0
    return "".join(f"{co.Composition(c)}\n" for c in comps), 0


def cmd_tree(args) -> tuple[str, int]:
    g = TREE_INPUTS[args.input](args.order)
    if args.dot:
        return pt.export_dot(g, args.order, args.labeling), 0
    rows = [pt.build_row(g, n) for n in range(1, args.order + 1)]
    sums = [sum((nd.value for nd in row[1:]), row[0].value) for row in rows]
    if args.json:
        return dump_json({"input": g.name, "rows": [
            {"n": n, "sum": num(total),
             "nodes": [{"multi_index": list(nd.multi_index), "path": nd.path, "value": num(nd.value)} for nd in row]}
            for n, (row, total) in enumerate(zip(rows, sums), 1)
        ]}), 0
    out = []
    for n, (row, total) in enumerate(zip(rows, sums), 1):
        out.append(f"row {n}  sum = {render(total)}")
        out.append(table([["  " + ",".join(map(str, nd.multi_index)), render(nd.value)] for nd in row]).rstrip("\n"))
    return "\n".join(out) + "\n", 0


def cmd_sequence(args) -> tuple[str, int]:
    recipe = sq.RECIPES[args.name]
    given = {}
    for key, value in args.param or []:
        if key not in recipe.defaults:
            raise UsageError("--param", f"{recipe.name} has no parameter {key!r}; known: {', '.join(sorted(recipe.defaults)) or 'none'}")
        given[key] = value
    try:
        params = recipe.params(given)
    except ValueError as exc:
        raise UsageError("--param", str(exc)) from None
    values = recipe.values(args.order, given)
    if args.check:
        ok, witness = recipe.check(args.order, given)
    if args.json:
        obj = {"name": recipe.name, "params": {k: _param_json(v) for k, v in params.items()}, "values": nums(values)}
        if args.check:
            obj["check"] = {"relation": recipe.relation, "status": "pass" if ok else "fail", "witness": witness}
        return dump_json(obj), 0 if not args.check or ok else 1
    head = f"# {recipe.description}"
    if params:
        head += "  (" + ", ".join(f"{k}={_param_text(v)}" for k, v in params.items()) + ")"
    body = table([[str(n), render(v)] for n, v in enumerate(values)], ["n", "value"])
    text = head + "\n" + body
    if args.check:
        text += f"check {recipe.relation}: {'pass' if ok else 'fail'}\n"
        if not ok:
            text += "witness: " + json.dumps(to_json_value(witness)) + "\n"
    return text, 0 if not args.check or ok else 1


def _param_text(v) -> str:
    if isinstance(v, tuple):
        return ",".join(map(str, v))
    return render(v)


def _param_json(v):
    return list(v) if isinstance(v, tuple) else to_json_value(v)


def cmd_compose(args) -> tuple[str, int]:
    params = _params_dict(args.param, {"g0": parse_rational})
    N = args.order
    f_series = parse_series_spec(args.f, N)
    g_series = parse_series_spec(args.g, N)
    if g_series[0] != 0:
        raise ConstantTermError(f"inner series {args.g} has nonzero constant term {render(g_series[0])}")
    f = cs.WeightSequence.from_series(f_series, args.f)
    g = pt.InputSequence.from_series(g_series, args.g, params.get("g0"))
    if args.method == "convolution" and "g0" not in params:
        raise UsageError("--param", "the convolution method needs g0=<value> (it holds only when g0 = -1)")
    if args.method == "brute":
        coeffs = cs.weighted_comp_sum(f, g, N, "brute")
    elif args.method == "convolution":
        coeffs = [f(0)] + cs.weighted_convolution(f, g, N, params["g0"])
    else:
        coeffs = cs.weighted_comp_sum(f, g, N, "series")
    if args.json:
        return dump_json({"f": args.f, "g": args.g, "method": args.method, "coefficients": nums(coeffs)}), 0
    head = f"# [z^n] {args.f}({args.g}(z)) = sum over compositions of f_|pi| g_pi  (method {args.method})\n"
    return head + table([[str(n), render(c)] for n, c in enumerate(coeffs)], ["n", "coefficient"]), 0


def cmd_verify(args) -> tuple[str, int]:
    results = vf.run_suite(args.suite, args.max_n)
    failed = [r for r in results if r["status"] != "pass"]
    code = 1 if failed else 0
    if args.json:
        return dump_json(results), code
    rows = [[r["status"].upper(), r["suite"], r["n_range"], r["identity"]] for r in results]
    text = table(rows, ["status", "suite", "n", "identity"])
    for r in failed:
        text += f"witness for {r['identity']}: {json.dumps(to_json_value(r['witness']))}\n"
    text += f"{len(results) - len(failed)}/{len(results)} identities hold\n"
    return text, code


def cmd_digitsum(args) -> tuple[str, int]:
    params = _params_dict(args.param, {"q": int})
    if args.f != "norlund" and params:
        raise UsageError("--param", f"{args.f} takes no parameters")
    f = WEIGHTS[args.f](params.get("q", 2))
    methods = ("direct", "series", "binomial") if args.method == "all" else (args.method,)
    rows = []
    for n in range(1, args.order + 1):
        rows.append([cs.digit_sum_transform(f, n, m) for m in methods])
    if args.json:
        return dump_json({"f": f.name, "methods": list(methods),
                          "values": [{"n": n, **dict(zip(methods, nums(r)))} for n, r in enumerate(rows, 1)]}), 0
    head = f"# sum_k f_(s2(k)+1) over 0 <= k < 2^(n-1), f = {f.name}\n"
    return head + table([[str(n)] + [render(v) for v in r] for n, r in enumerate(rows, 1)], ["n", *methods]), 0


def cmd_iterated(args) -> tuple[str, int]:
    names = [s.strip() for s in args.functions.split(",") if s.strip()]
    if len(names) < 2:
        raise UsageError("--functions", "give at least two comma-separated series")
    fs = [parse_series_spec(s, args.order) for s in names]
    shapes = it.enumerate_shapes(len(fs))
    if args.shape is not None:
        if not 1 <= args.shape <= len(shapes):
            raise UsageError("--shape", f"index must lie in 1..{len(shapes)} for {len(fs)} functions")
        chosen = [(args.shape, shapes[args.shape - 1])]
    else:
        chosen = list(enumerate(shapes, 1))
    if args.dot:
        return "".join(it.shape_to_dot(s, names) for _, s in chosen), 0
    results = [(idx, shape, it.evaluate_iterated(fs, shape, args.order, args.method)) for idx, shape in chosen]
    if args.json:
        return dump_json({"functions": names, "method": args.method, "shapes": [
            {"index": idx, "shape": str(shape), "plan": str(it.plan_from_shape(shape)), "coefficients": nums(coeffs)}
            for idx, shape, coeffs in results
        ]}), 0
    out = [f"# f1..f{len(names)} = {', '.join(names)}; method {args.method}"]
    for idx, shape, coeffs in results:
        out.append(f"shape {idx}: {shape}")
        out.append(f"  plan: {it.plan_from_shape(shape)}")
        out.append("  coefficients: " + " ".join(render(c) for c in coeffs))
    return "\n".join(out) + "\n", 0


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="woontree", description="Composition sums, PI trees and the sequences they produce.")
    sub = p.add_subparsers(dest="command", required=True, metavar="subcommand", parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    common.add_argument("--out", metavar="PATH", help="write output to PATH instead of stdout")

    s = sub.add_parser("compositions", parents=[common], help="list the compositions of n in mask order")
    s.add_argument("n", type=_positive)
    s.add_argument("--parts", metavar="J", help="only parts from the comma-separated set J, e.g. 1,2")
    s.add_argument("--count", action="store_true", help="print the count only")
    s.set_defaults(run=cmd_compositions, sub=s)

    s = sub.add_parser("tree", parents=[common], help="rows of a PI tree and their sums")
    s.add_argument("--input", choices=sorted(TREE_INPUTS), default="woon")
    s.add_argument("--order", "-N", type=_positive, default=4, help="number of rows (default 4)")
    s.add_argument("--dot", action="store_true", help="emit a Graphviz DOT tree")
    s.add_argument("--labeling", choices=("value", "multi_index", "both"), default="value", help="DOT node labels")
    s.set_defaults(run=cmd_tree, sub=s)

    s = sub.add_parser("sequence", parents=[common], help="table of a named sequence")
    s.add_argument("name", choices=sorted(sq.RECIPES))
    s.add_argument("--order", "-N", type=_nonneg, default=10, help="largest index (default 10)")
    s.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE")
    s.add_argument("--check", action="store_true", help="also compare against the composition route")
    s.set_defaults(run=cmd_sequence, sub=s)

    s = sub.add_parser("compose", parents=[common], help="coefficients of f(g(z)) as a weighted composition sum")
    s.add_argument("f", help="outer series: registry name or coeffs:a0,a1,...")
    s.add_argument("g", help="inner series with zero constant term")
    s.add_argument("--order", "-N", type=_positive, default=8)
    s.add_argument("--method", choices=("series", "brute", "convolution"), default="series")
    s.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE", help="g0=<value> for --method convolution")
    s.set_defaults(run=cmd_compose, sub=s)

    s = sub.add_parser("verify", parents=[common], help="run the cross-path identity battery")
    s.add_argument("--suite", choices=("all",) + vf.SUITES, default="all")
    s.add_argument("--max-n", type=_positive, default=10)
    s.set_defaults(run=cmd_verify, sub=s)

    s = sub.add_parser("digitsum", parents=[common], help="sum of f_(s2(k)+1) over k < 2^(n-1)")
    s.add_argument("f", choices=sorted(WEIGHTS))
    s.add_argument("--order", "-N", type=_positive, default=10)
    s.add_argument("--method", choices=("direct", "series", "binomial", "all"), default="all")
    s.add_argument("--param", type=_param, action="append", metavar="KEY=VALUE", help="q=<int> for norlund")
    s.set_defaults(run=cmd_digitsum, sub=s)

    s = sub.add_parser("iterated", parents=[common], help="f1 o ... o fk under each parenthesization")
    s.add_argument("--functions", required=True, help="comma-separated series specs")
    s.add_argument("--order", "-N", type=_positive, default=6)
    group = s.add_mutually_exclusive_group()
    group.add_argument("--shape", type=int, metavar="INDEX", help="one shape, 1-based")
    group.add_argument("--all-shapes", action="store_true", help="every shape (the default)")
    s.add_argument("--method", choices=("plan", "memo", "series"), default="plan")
    s.add_argument("--dot", action="store_true", help="emit the shape tree(s) as DOT")
    s.set_defaults(run=cmd_iterated, sub=s)
    return p


def run(argv: Sequence[str] | None = None) -> tuple[int, str]:
    """Parse and execute; returns (exit status, stdout text)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = args.sub
    try:
        text, code = args.run(args)
    except UsageError as exc:
        sub.error(str(exc))
    except SizeGuard as exc:
        sub.exit(2, f"{sub.prog}: size guard: {exc}\n")
    except (RangeError, ConstantTermError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sub.exit(2, f"{sub.prog}: error: {msg}\n")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        return code, ""
    return code, text


def main(argv: Sequence[str] | None = None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
