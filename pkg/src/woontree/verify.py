"""Cross-path identity battery behind ``woontree verify``.

Each check compares two or more independent evaluation routes and returns
``(ok, witness)``; the witness is the first mismatch found.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import algebra as al
from . import compositions as co
from . import compsum as cs
from . import iterated as it
from . import pitree as pt
from . import sequences as sq

BRUTE_CAP = 14
ITERATED_CAP = 8


def battery_inputs() -> list[pt.InputSequence]:
    """Woon, shifted Catalan, two indicator sets and seeded random small rationals."""
    rng = random.Random(20240917)
    rand = [Fraction(rng.randint(-5, 5), rng.randint(1, 6)) for _ in range(40)]
    cat = al.catalan_numbers(41)
    return [
        pt.woon(),
        pt.InputSequence(lambda n: cat[n - 1], "catalan_shift", Fraction(-1)),
        pt.InputSequence(lambda n: 1 if n in (1, 2) else 0, "indicator{1,2}", Fraction(-1)),
        pt.InputSequence(lambda n: n % 2, "odd_parts", Fraction(-1)),
        pt.InputSequence(lambda n: rand[n - 1], "random", Fraction(-1)),
    ]


def battery_weights() -> list[cs.WeightSequence]:
    return [cs.geometric_weights(), cs.log1p_weights(), cs.expm1_weights(), cs.norlund_weights(2)]


def _first_mismatch(n_values, *columns, names=None):
    names = names or [f"path{i}" for i in range(len(columns))]
    for i, n in enumerate(n_values):
        vals = [c[i] for c in columns]
        if any(v != vals[0] for v in vals[1:]):
            return {"n": n, **{nm: v for nm, v in zip(names, vals)}}
    return None


@dataclass(frozen=True)
class Check:
    suite: str
    identity: str
    run: Callable[[int], tuple[str, bool, dict | None]]


CHECKS: list[Check] = []


def check(suite: str, identity: str):
    def deco(fn):
        CHECKS.append(Check(suite, identity, fn))
        return fn

    return deco


def _range(lo, hi):
    return f"{lo}..{hi}"


# -- core ---------------------------------------------------------------------------

_CORE_SERIES = [
    ("expm1_over_z", al.expm1_over_z),
    ("bernoulli_gf", al.bernoulli_gf),
    ("one_plus_z_z2", lambda N: al.Series([1, 1, 1], N)),
    ("exp", al.exp_series),
]


@check("core", "series_mul(a, reciprocal(a)) = 1")
def _recip(max_n):
    N = 32
    for name, make in _CORE_SERIES:
        a = make(N)
        if a * a.reciprocal() != al.Series.one(N):
            return _range(0, N), False, {"series": name}
    return _range(0, N), True, None


@check("core", "compose associative")
def _assoc(max_n):
    N = 16
    trio = [al.expm1(N), al.log1p(N), al.geometric(N), al.catalan_root(N)]
    for f in trio:
        for g in trio:
            for h in trio:
                if f.compose(g).compose(h) != f.compose(g.compose(h)):
                    return _range(0, N), False, {"f": f.to_json()[:4], "g": g.to_json()[:4]}
    return _range(0, N), True, None


@check("core", "exp(log(a)) = a and log(exp(b)) = b")
def _explog(max_n):
    N = 32
    a = al.Series([1, 1, 1], N)
    b = al.log1p(N)
    ok = a.log().exp() == a and b.exp().log() == b and al.exp_series(N).log() == al.Series.z(N)
    return _range(0, N), ok, None if ok else {"N": N}


# -- compositions -----------------------------------------------------------------------

@check("compositions", "|C(n)| = 2^(n-1), masks biject")
def _count(max_n):
    hi = min(max_n, 16)
    for n in range(1, hi + 1):
        seen = set()
        for mask in range(1 << (n - 1)):
            pi = co.from_mask(n, mask)
            if sum(pi) != n or co.to_mask(pi) != mask or len(pi) != co.digit_sum_s2(mask) + 1:
                return _range(1, hi), False, {"n": n, "mask": mask, "composition": str(pi)}
            seen.add(pi)
        if len(seen) != 1 << (n - 1):
            return _range(1, hi), False, {"n": n, "distinct": len(seen)}
    return _range(1, hi), True, None


@check("compositions", "restricted enumeration = linear recurrence count")
def _restricted(max_n):
    hi = min(max_n, 16)
    for J in [(1, 2), (1, 3), (2, 3)]:
        for n in range(1, hi + 1):
            a = sum(1 for _ in co.enumerate_restricted(n, J))
            b = co.count_restricted(n, J)
            c = sum(1 for pi in co.enumerate_compositions(n) if set(pi) <= set(J))
            if not a == b == c:
                return _range(1, hi), False, {"n": n, "J": list(J), "enumerated": a, "recurrence": b, "filtered": c}
    for n in range(1, hi + 1):
        odd = [j for j in range(1, n + 1, 2)]
        if sum(1 for _ in co.enumerate_restricted(n, odd)) != co.count_restricted(n, odd):
            return _range(1, hi), False, {"n": n, "J": "odd"}
    return _range(1, hi), True, None


@check("compositions", "multiset {|pi|} = multiset {s2(k)+1}")
def _s2(max_n):
    hi = min(max_n, 12)
    for n in range(1, hi + 1):
        a = Counter(len(pi) for pi in co.enumerate_compositions(n))
        b = Counter(co.digit_sum_s2(k) + 1 for k in range(1 << (n - 1)))
        if a != b:
            return _range(1, hi), False, {"n": n}
    return _range(1, hi), True, None


# -- pitree ---------------------------------------------------------------------------------

@check("pitree", "tree rows = compositions, node depth = row; tree = recurrence = g/(1-g)")
def _tree(max_n):
    hi = min(max_n, 14)
    for g in battery_inputs():
        rec = pt.row_sums(g, hi)
        ser = cs.comp_sum(g, hi)
        for n in range(1, hi + 1):
            row = pt.build_row(g, n)
            if any(node.depth != n for node in row):
                return _range(1, hi), False, {"input": g.name, "n": n, "reason": "node depth"}
            if Counter(node.multi_index for node in row) != Counter(tuple(p) for p in co.enumerate_compositions(n)):
                return _range(1, hi), False, {"input": g.name, "n": n, "reason": "row multiset"}
            tree_sum = sum((node.value for node in row), Fraction(0))
            if not tree_sum == rec[n - 1] == ser[n - 1]:
                return _range(1, hi), False, {"input": g.name, "n": n, "tree": tree_sum, "recurrence": rec[n - 1], "series": ser[n - 1]}
    return _range(1, hi), True, None


@check("pitree", "Woon row sums = (-1)^n B_n/n!")
def _woon(max_n):
    hi = max(max_n, 12)
    b = sq.bernoulli_numbers(hi)
    want = [(-1) ** n * b[n] / math.factorial(n) for n in range(1, hi + 1)]
    got = pt.row_sums(pt.woon(), hi)
    w = _first_mismatch(range(1, hi + 1), got, want, names=["row_sum", "expected"])
    return _range(1, hi), w is None, w


# -- compsum ---------------------------------------------------------------------------------

@check("compsum", "f(g(z)) main identity: brute = series = weighted convolution")
def _main(max_n):
    hi = min(max_n, BRUTE_CAP)
    for g in battery_inputs():
        for f in battery_weights():
            a = cs.weighted_comp_sum(f, g, hi, "brute")
            b = cs.weighted_comp_sum(f, g, hi, "series")
            c = cs.weighted_comp_sum(f, g, hi, "convolution")
            w = _first_mismatch(range(hi + 1), a, b, c, names=["brute", "series", "convolution"])
            if w:
                return _range(1, hi), False, {"f": f.name, "g": g.name, **w}
    return _range(1, hi), True, None


@check("compsum", "comp_sum: brute = g/(1-g) = binomial convolution")
def _plain(max_n):
    hi = min(max_n, BRUTE_CAP)
    for g in battery_inputs():
        a = cs.comp_sum(g, hi, "brute")
        b = cs.comp_sum(g, hi)
        c = cs.comp_sum_convolution(g, hi, g0=Fraction(-1))
        w = _first_mismatch(range(1, hi + 1), a, b, c, names=["brute", "series", "convolution"])
        if w:
            return _range(1, hi), False, {"g": g.name, **w}
    return _range(1, hi), True, None


@check("compsum", "inversion: comp_sum and comp_sum_inverse are mutually inverse")
def _inverse(max_n):
    hi = min(max_n, 12)
    for g in battery_inputs():
        x = cs.comp_sum(g, hi)
        back = cs.comp_sum_inverse(pt.InputSequence.from_values(x), hi)
        back_brute = cs.comp_sum_inverse(pt.InputSequence.from_values(x), hi, "brute")
        back_conv = cs.comp_sum_inverse_convolution(pt.InputSequence.from_values(x), hi)
        want = g.terms(hi)[1:]
        w = _first_mismatch(range(1, hi + 1), back, back_brute, back_conv, want,
                            names=["series", "brute", "convolution", "input"])
        if w:
            return _range(1, hi), False, {"g": g.name, **w}
        forward = cs.comp_sum(pt.InputSequence.from_values(cs.comp_sum_inverse(g, hi)), hi)
        w = _first_mismatch(range(1, hi + 1), forward, want, names=["roundtrip", "input"])
        if w:
            return _range(1, hi), False, {"g": g.name, "direction": "inverse then forward", **w}
    return _range(1, hi), True, None


@check("compsum", "sign exchange: comp_sum(-x) = -g")
def _sign(max_n):
    hi = min(max_n, 12)
    for g in battery_inputs():
        x = pt.InputSequence.from_values(cs.comp_sum(g, hi), "x")
        got = cs.comp_sum(x.negated(), hi, "brute" if hi <= BRUTE_CAP else "series")
        want = [-v for v in g.terms(hi)[1:]]
        w = _first_mismatch(range(1, hi + 1), got, want, names=["comp_sum(-x)", "-g"])
        if w:
            return _range(1, hi), False, {"g": g.name, **w}
    return _range(1, hi), True, None


@check("compsum", "parts sum: brute = f'(z/(1-z)) g(z); parts total")
def _parts(max_n):
    hi = min(max_n, BRUTE_CAP)
    for g in battery_inputs():
        for f in battery_weights():
            a = cs.parts_sum(f, g, hi, "brute")
            b = cs.parts_sum(f, g, hi)
            w = _first_mismatch(range(1, hi + 1), a, b, names=["brute", "series"])
            if w:
                return _range(1, hi), False, {"f": f.name, "g": g.name, **w}
        a = cs.parts_sum(cs.geometric_weights(), g, hi)
        b = cs.parts_total(g, hi)
        w = _first_mismatch(range(1, hi + 1), a, b, names=["parts_sum", "parts_total"])
        if w:
            return _range(1, hi), False, {"g": g.name, **w}
    return _range(1, hi), True, None


@check("compsum", "moments <-> cumulants round trip; brute = series")
def _moments(max_n):
    hi = min(max_n, 10)
    rng = random.Random(7)
    mu = [Fraction(rng.randint(-4, 4)) for _ in range(hi)]
    k_series = cs.moments_to_cumulants(mu, hi)
    k_brute = cs.moments_to_cumulants(mu, hi, "brute")
    back = cs.cumulants_to_moments(k_series, hi)
    back_brute = cs.cumulants_to_moments(k_series, hi, "brute")
    w = _first_mismatch(range(1, hi + 1), k_series, k_brute, names=["series", "brute"]) or _first_mismatch(
        range(1, hi + 1), back, back_brute, mu, names=["series", "brute", "input"]
    )
    return _range(1, hi), w is None, w


@check("compsum", "digit sums: direct = [z^n] f(z/(1-z)) = binomial")
def _digits(max_n):
    hi = max(min(max_n, 16), 1)
    for f in [cs.log1p_weights(), cs.geometric_weights(), cs.norlund_weights(2)]:
        for n in range(1, hi + 1):
            vals = [cs.digit_sum_transform(f, n, m) for m in ("direct", "series", "binomial")]
            if len(set(vals)) != 1:
                return _range(1, hi), False, {"f": f.name, "n": n, "direct": vals[0], "series": vals[1], "binomial": vals[2]}
            if f.name == "log1p" and vals[0] != Fraction(1, n):
                return _range(1, hi), False, {"f": f.name, "n": n, "got": vals[0], "want": Fraction(1, n)}
    return _range(1, hi), True, None


@check("compsum", "incomplete sums from complete sums (binomial inversion)")
def _complete(max_n):
    hi = min(max_n, 8)
    w = [Fraction(1, k + 1) for k in range(hi + 1)]
    for n in range(1, hi + 1):
        for m in range(1, n + 1):
            lhs = cs.incomplete_sum(w, m, n)
            rhs = sum(((-1) ** (m - p) * math.comb(m, p) * cs.complete_sum(w, p, n) for p in range(1, m + 1)), Fraction(0))
            if lhs != rhs:
                return _range(1, hi), False, {"m": m, "n": n, "incomplete": lhs, "from_complete": rhs}
    return _range(1, hi), True, None


# -- sequences --------------------------------------------------------------------------------

@check("sequences", "every recipe: closed form = composition route")
def _recipes(max_n):
    poly_hi, rat_hi = min(max_n, 10), min(max_n, 14)
    params = {"norlund": [{"p": "1"}, {"p": "2"}, {"p": "3"}], "norlund_stirling": [{"q": "1"}, {"q": "4"}],
              "hypergeometric_bernoulli": [{"a": "1", "b": "1"}, {"a": "2", "b": "1"}, {"a": "1/2", "b": "3"}],
              "restricted": [{"J": "1,2"}, {"J": "1,2,3"}, {"J": "2,5"}]}
    for name, recipe in sq.RECIPES.items():
        hi = poly_hi if name in ("bernoulli_poly", "norlund_poly", "hermite") else rat_hi
        for given in params.get(name, [{}]):
            ok, w = recipe.check(hi, given)
            if not ok:
                return _range(0, hi), False, {"recipe": name, "params": given, **w}
    return _range(0, rat_hi), True, None


@check("sequences", "Bernoulli five ways")
def _bern5(max_n):
    hi = max(min(max_n, 12), 1)
    gf = sq.bernoulli_numbers(hi)
    f1 = sq.bernoulli_via_compositions(hi, "inverse_factorial")
    f2 = sq.bernoulli_via_compositions(hi, "stirling_weighted")
    st = sq.bernoulli_via_stirling(hi)
    wo = [Fraction(1)] + [(-1) ** n * math.factorial(n) * x for n, x in enumerate(pt.row_sums(pt.woon(), hi), 1)]
    w = _first_mismatch(range(hi + 1), gf, f1, f2, st, wo,
                        names=["gf", "inverse_factorial", "stirling_weighted", "stirling", "woon"])
    return _range(0, hi), w is None, w


@check("sequences", "Bernoulli polynomial expansion through negative-order Norlund")
def _bexp(max_n):
    hi = max(min(max_n, 8), 1)
    for n in range(1, hi + 1):
        r = sq.bernoulli_poly_expansion(n)
        if not r["holds"]:
            return _range(1, hi), False, {"n": n, "lhs": str(r["lhs"]), "rhs": str(r["rhs"])}
    return _range(1, hi), True, None


@check("sequences", "Norlund: gf = input sequence = Stirling form")
def _norlund(max_n):
    hi = min(max_n, 10)
    for q in range(1, 5):
        w = _first_mismatch(range(hi + 1), sq.norlund_numbers(hi, q), sq.norlund_via_compositions(hi, q),
                            sq.norlund_via_stirling(hi, q), names=["gf", "compositions", "stirling"])
        if w:
            return _range(0, hi), False, {"q": q, **w}
        f = cs.norlund_weights(q)
        for n in range(1, hi + 1):
            for p in range(1, n + 1):
                lhs, rhs = sq.norlund_inner_weight(n, p, q)
                if lhs != rhs or cs.inner_weight(f, p, n) != lhs:
                    return _range(0, hi), False, {"q": q, "n": n, "p": p, "lhs": lhs, "rhs": rhs}
    return _range(0, hi), True, None


@check("sequences", "Catalan and Hermite invariance")
def _inv(max_n):
    hi = min(max_n, 12)
    c = sq.catalan_invariance(hi)
    if not c["holds"]:
        return _range(1, hi), False, c["witnesses"][0]
    h = sq.hermite_invariance(min(hi, 10))
    if not h["holds"]:
        return _range(1, hi), False, {k: str(v) for k, v in h["witnesses"][0].items()}
    return _range(1, hi), True, None


@check("sequences", "Stirling multinomial identity")
def _stirling(max_n):
    hi = min(max_n, 6)
    for p in range(1, 4):
        for n in range(0, hi + 1):
            a, b = sq.stirling_multinomial_sum(p, n), sq.stirling_multinomial_closed(p, n)
            if a != b:
                return _range(0, hi), False, {"p": p, "n": n, "enumerated": a, "closed": b}
    return _range(0, hi), True, None


@check("sequences", "linear recurrence = restricted count = J(z)/(1-J(z))")
def _linrec(max_n):
    hi = max(max_n, 20)
    for J in [(1,), (1, 2), (1, 2, 3), (2, 3), (1, 4)]:
        w = _first_mismatch(range(1, hi + 1), *[sq.linear_recurrence(J, hi, m) for m in ("recurrence", "count", "series")],
                            names=["recurrence", "count", "series"])
        if w:
            return _range(1, hi), False, {"J": list(J), **w}
    return _range(1, hi), True, None


# -- iterated ---------------------------------------------------------------------------------

def iterated_battery(N: int) -> list[al.Series]:
    return [al.geometric(N), al.log1p(N) + al.Series([0, 0, 1], N), al.expm1(N)]


@check("iterated", "all shapes agree with each other and with nested series")
def _iter(max_n):
    hi = min(max_n, ITERATED_CAP)
    base = iterated_battery(hi)
    for k in (2, 3, 4):
        fs = [al.exp_series(hi)] + base[: k - 1]
        ref = None
        for shape in it.enumerate_shapes(k):
            a = it.evaluate_iterated(fs, shape, hi, "plan")
            b = it.evaluate_iterated(fs, shape, hi, "series")
            if a != b or (ref is not None and a != ref):
                return _range(0, hi), False, {"functions": k, "shape": str(shape)}
            ref = a
    return _range(0, hi), True, None


@check("iterated", "shape count = Catalan(n-1)")
def _shapes(max_n):
    for n in range(2, 9):
        if len(it.enumerate_shapes(n)) != it.catalan_count(n) or it.catalan_count(n) != al.catalan_numbers(n)[n - 1]:
            return "2..8", False, {"n": n}
    return "2..8", True, None


SUITES = ("core", "compositions", "pitree", "compsum", "sequences", "iterated")


def run_suite(suite: str = "all", max_n: int = 10, checks: list[Check] | None = None) -> list[dict]:
    """Run checks; each result is {identity, suite, n_range, status, witness?}."""
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    out = []
    for c in checks if checks is not None else CHECKS:
        if suite != "all" and c.suite != suite:
            continue
        n_range, ok, witness = c.run(max_n)
        rec = {"identity": c.identity, "suite": c.suite, "n_range": n_range, "status": "pass" if ok else "fail"}
        if not ok:
            rec["witness"] = witness or {}
        out.append(rec)
    return out
