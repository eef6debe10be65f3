"""Special numbers and polynomials, each realised two ways.

One route goes through a closed-form generating function in the series
engine; the other feeds an input sequence to a composition sum (or uses a
Stirling-number closed form).  ``RECIPES`` binds the two routes per name and
drives both the CLI ``sequence`` command and the cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable

from .algebra import (
    Polynomial,
    Series,
    bernoulli_gf,
    catalan_numbers,
    exp_linear,
    expm1_over_z,
    series_pow,
)
from .compositions import PartSet, count_restricted, enumerate_compositions
from .compsum import comp_sum, comp_sum_inverse
from .errors import RangeError
from .pitree import InputSequence, bernoulli_input, indicator, row_sums, woon

X = Polynomial.x()


# -- Stirling numbers -------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling_rows(n: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for m in range(1, n + 1):
        prev = rows[-1]
        row = [0] * (m + 1)
        for k in range(1, m + 1):
            row[k] = (k * prev[k] if k < m else 0) + prev[k - 1]
        rows.append(tuple(row))
    return tuple(rows)


def stirling2_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Rows 0..n of the triangle {m brace k}."""
    return _stirling_rows(n)


def stirling2(n: int, k: int) -> int:
    if not 0 <= k <= n:
        raise RangeError(f"need 0 <= k <= n, got n={n}, k={k}")
    return _stirling_rows(n)[n][k]


def stirling_multinomial_sum(p: int, n: int) -> Fraction:
    """sum over k_1+..+k_p = n (k_i >= 0) of multinomial(n; k) / prod(k_i + 1), by enumeration."""
    total = Fraction(0)
    for ks in product(range(n + 1), repeat=p):
        if sum(ks) != n:
            continue
        coef = math.factorial(n)
        for k in ks:
            coef //= math.factorial(k)
        total += Fraction(coef, math.prod(k + 1 for k in ks))
    return total


def stirling_multinomial_closed(p: int, n: int) -> Fraction:
    return Fraction(math.factorial(n) * math.factorial(p), math.factorial(n + p)) * stirling2(n + p, p)


# -- Bernoulli numbers --------------------------------------------------------

def _scale_factorial(coeffs, N):
    return [coeffs[n] * math.factorial(n) for n in range(N + 1)]


def bernoulli_numbers(N: int) -> list[Fraction]:
    """B_0..B_N from z/(e^z - 1)."""
    if N < 0:
        raise RangeError("N must be >= 0")
    return _scale_factorial(bernoulli_gf(N).coeffs, N)


def bernoulli_via_compositions(N: int, form: str = "inverse_factorial") -> list[Fraction]:
    """B_0..B_N (B_0 = 1) from a brute-force sum over C(n).

    ``inverse_factorial``: B_n/n! = sum (-1)^|pi| / (pi+1)!
    ``stirling_weighted``: B_n/n! = sum (-1)^|pi| / ((|pi|+1) pi!)
    """
    if form not in ("inverse_factorial", "stirling_weighted"):
        raise ValueError(f"unknown form {form!r}")
    out = [Fraction(1)]
    for n in range(1, N + 1):
        acc = Fraction(0)
        for pi in enumerate_compositions(n):
            m = len(pi)
            if form == "inverse_factorial":
                acc += Fraction((-1) ** m, pi.shifted_factorial)
            else:
                acc += Fraction((-1) ** m, (m + 1) * pi.factorial)
        out.append(acc * math.factorial(n))
    return out


def bernoulli_via_stirling(N: int) -> list[Fraction]:
    """B_0..B_N with B_n = sum_p (-1)^p {n+p, p} / binom(n+p, p) * binom(n+1, p+1) for n >= 1."""
    out = [Fraction(1)]
    for n in range(1, N + 1):
        out.append(
            sum(
                (Fraction((-1) ** p * stirling2(n + p, p), comb(n + p, p)) * comb(n + 1, p + 1) for p in range(1, n + 1)),
                Fraction(0),
            )
        )
    return out


def bernoulli_poly_input() -> InputSequence:
    """g_n = (-1)^(n+1)/(n+1)! [x^(n+1) - (x-1)^(n+1)]; row sums B_n(x)/n!."""

    def g(n: int) -> Polynomial:
        return (X ** (n + 1) - (X - 1) ** (n + 1)) * Fraction((-1) ** (n + 1), math.factorial(n + 1))

    return InputSequence(g, "bernoulli_poly")


def bernoulli_polynomials(N: int, method: str = "series") -> list[Polynomial]:
    """B_0(x)..B_N(x).

    ``"series"`` expands z e^{zx}/(e^z - 1); ``"tree"`` takes PI-tree row sums
    of :func:`bernoulli_poly_input`.
    """
    if method == "series":
        s = bernoulli_gf(N).lift() * exp_linear(N, X)
        return _scale_factorial(s.coeffs, N)
    if method == "tree":
        if N == 0:
            return [Polynomial([1])]
        xs = row_sums(bernoulli_poly_input(), N)
        return [Polynomial([1])] + [xs[n - 1] * math.factorial(n) for n in range(1, N + 1)]
    raise ValueError(f"unknown method {method!r}")


# -- Norlund (higher-order Bernoulli) ---------------------------------------------

def _norlund_series(N: int, p: int) -> Series:
    if p >= 0:
        return series_pow(bernoulli_gf(N), p)
    # ((e^z-1)/z)^|p| has unit constant term; no reciprocal needed.
    return series_pow(expm1_over_z(N), -p)


def norlund_numbers(N: int, p: int) -> list[Fraction]:
    """B_0^(p)..B_N^(p), coefficients of (z/(e^z-1))^p times n!."""
    return _scale_factorial(_norlund_series(N, p).coeffs, N)


def norlund_polynomials(N: int, p: int) -> list[Polynomial]:
    """B_n^(p)(x) from e^{zx} (z/(e^z-1))^p, n = 0..N."""
    s = _norlund_series(N, p).lift() * exp_linear(N, X)
    return _scale_factorial(s.coeffs, N)


def norlund_input(p: int) -> InputSequence:
    """g_n = -p!/(p+n)! {n+p, p}; row sums B_n^(p)/n!."""
    if p < 1:
        raise RangeError("the Stirling input sequence needs p >= 1")
    return InputSequence(
        lambda n: Fraction(-math.factorial(p) * stirling2(n + p, p), math.factorial(n + p)), f"norlund{p}"
    )


def norlund_via_compositions(N: int, p: int) -> list[Fraction]:
    xs = comp_sum(norlund_input(p), N) if N >= 1 else []
    return [Fraction(1)] + [xs[n - 1] * math.factorial(n) for n in range(1, N + 1)]


def norlund_via_stirling(N: int, q: int) -> list[Fraction]:
    """B_n^(q) = binom(n+q, q-1) sum_p (-1)^p {n+p,p}/binom(n+p,p) (n+1)/(p+q) binom(n,p)."""
    if q < 1:
        raise RangeError("q must be >= 1")
    out = [Fraction(1)]
    for n in range(1, N + 1):
        s = sum(
            (
                Fraction((-1) ** p * stirling2(n + p, p), comb(n + p, p)) * Fraction(n + 1, p + q) * comb(n, p)
                for p in range(1, n + 1)
            ),
            Fraction(0),
        )
        out.append(comb(n + q, q - 1) * s)
    return out


def norlund_inner_weight(n: int, p: int, q: int) -> tuple[int, Fraction]:
    """Both sides of sum_{m=p}^n binom(m,p) binom(m+q-1,q-1) = (n-p+1)/(p+q) binom(n+1,p) binom(n+q,q-1)."""
    lhs = sum(comb(m, p) * comb(m + q - 1, q - 1) for m in range(p, n + 1))
    rhs = Fraction(n - p + 1, p + q) * comb(n + 1, p) * comb(n + q, q - 1)
    return lhs, rhs


def bernoulli_poly_expansion(n: int) -> dict:
    """Check B_n(x) = sum_p binom(n+1,p+1) (-1)^p B_n^(-p)(-p x) as polynomials."""
    if not 1 <= n <= 10:
        raise RangeError("n must lie in [1, 10]")
    lhs = bernoulli_polynomials(n)[n]
    rhs = Polynomial()
    for p in range(1, n + 1):
        term = norlund_polynomials(n, -p)[n].scale_argument(-p)
        rhs = rhs + term * (comb(n + 1, p + 1) * (-1) ** p)
    return {"identity": "bernoulli_expansion", "n": n, "lhs": lhs, "rhs": rhs, "holds": lhs == rhs}


# -- hypergeometric Bernoulli -----------------------------------------------------

def _pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def hypergeometric_bernoulli(N: int, a, b, method: str = "series") -> list[Fraction]:
    """B_0^(a,b)..B_N^(a,b), coefficients of 1/1F1(a; a+b; z) times n!."""
    a, b = Fraction(a), Fraction(b)
    if a <= 0 or b <= 0:
        raise RangeError("a and b must be positive")
    ratio = [_pochhammer(a, n) / _pochhammer(a + b, n) / math.factorial(n) for n in range(N + 1)]
    if method == "series":
        return _scale_factorial(Series(ratio).reciprocal().coeffs, N)
    if method == "compositions":
        g = InputSequence(lambda n: -ratio[n], f"hyp({a},{b})")
        xs = comp_sum(g, N) if N >= 1 else []
        return [Fraction(1)] + [xs[n - 1] * math.factorial(n) for n in range(1, N + 1)]
    raise ValueError(f"unknown method {method!r}")


# -- Catalan ------------------------------------------------------------------------

def catalan(N: int) -> list[int]:
    """C_0..C_N."""
    return catalan_numbers(N + 1)


def catalan_invariance(N: int) -> dict:
    """Check both Catalan sums over compositions for n = 1..N by brute force."""
    c = catalan(N)
    forward = comp_sum(InputSequence(lambda n: c[n - 1], "catalan_shift"), N, "brute")
    inverse = comp_sum_inverse(InputSequence(lambda n: c[n], "catalan"), N, "brute")
    bad = []
    for n in range(1, N + 1):
        if forward[n - 1] != c[n]:
            bad.append({"identity": "catalan_sum", "n": n, "got": forward[n - 1], "want": c[n]})
        if inverse[n - 1] != c[n - 1]:
            bad.append({"identity": "inverse_catalan_sum", "n": n, "got": inverse[n - 1], "want": c[n - 1]})
    return {"identity": "catalan_invariance", "N": N, "holds": not bad, "witnesses": bad}


# -- Hermite --------------------------------------------------------------------------

def hermite_polynomials(N: int) -> list[Polynomial]:
    """Physicists' H_0..H_N: H_n = 2x H_{n-1} - 2(n-1) H_{n-2}."""
    h = [Polynomial([1]), X * 2]
    for n in range(2, N + 1):
        h.append(X * 2 * h[n - 1] - h[n - 2] * (2 * (n - 1)))
    return h[: N + 1]


def hermite_rotated(N: int) -> list[Polynomial]:
    """G_n(x) = i^n H_n(ix), real: G_n = -2x G_{n-1} + 2(n-1) G_{n-2}."""
    gs = [Polynomial([1]), X * -2]
    for n in range(2, N + 1):
        gs.append(X * -2 * gs[n - 1] + gs[n - 2] * (2 * (n - 1)))
    return gs[: N + 1]


def hermite_input(N: int) -> InputSequence:
    gs = hermite_rotated(N)
    return InputSequence.from_values([-gs[n] / math.factorial(n) for n in range(1, N + 1)], "hermite")


def hermite_invariance(N: int) -> dict:
    if N > 10:
        raise RangeError("hermite_invariance supports N <= 10")
    xs = comp_sum(hermite_input(N), N)
    h = hermite_polynomials(N)
    bad = [
        {"identity": "hermite", "n": n, "got": xs[n - 1], "want": h[n] / math.factorial(n)}
        for n in range(1, N + 1)
        if xs[n - 1] != h[n] / math.factorial(n)
    ]
    return {"identity": "hermite_invariance", "N": N, "holds": not bad, "witnesses": bad}


# -- restricted compositions --------------------------------------------------------------

def linear_recurrence(parts, N: int, method: str = "recurrence") -> list[int | Fraction]:
    """[x_1..x_N] for x_n = sum_{j in J} x_{n-j}, x_0 = 1.

    ``"recurrence"``, ``"count"`` (restricted composition counts) or
    ``"series"`` (J(z)/(1 - J(z)) with J(z) = sum_{j in J} z^j).
    """
    J = PartSet(parts)
    if N < 1:
        raise RangeError("N must be >= 1")
    if method == "recurrence":
        x = [1]
        for n in range(1, N + 1):
            x.append(sum(x[n - j] for j in J if j <= n))
        return x[1:]
    if method == "count":
        return [count_restricted(n, J) for n in range(1, N + 1)]
    if method == "series":
        jz = Series([1 if k in J else 0 for k in range(N + 1)])
        return list((jz * (1 - jz).reciprocal()).coeffs[1:])
    raise ValueError(f"unknown method {method!r}")


def characteristic_polynomial(parts) -> Polynomial:
    """x^d - sum_{j in J} x^(d-j), d = max J; exposed as data only."""
    J = PartSet(parts)
    d = max(J)
    coeffs = [0] * (d + 1)
    coeffs[d] = 1
    for j in J:
        coeffs[d - j] -= 1
    return Polynomial(coeffs)


# -- registry --------------------------------------------------------------------------------

def parse_parts(text) -> tuple[int, ...]:
    """``"1,2"`` -> (1, 2); tuples pass through."""
    if isinstance(text, (tuple, list, frozenset, set)):
        return tuple(sorted(int(t) for t in text))
    return tuple(sorted({int(t) for t in str(text).split(",") if t.strip()}))


@dataclass(frozen=True)
class SequenceRecipe:
    """Binds one named sequence to two independent realisations.

    Both callables take ``(N, params)`` and return values for n = 0..N.
    ``defaults`` maps each parameter to ``(default, parser)``.
    """

    name: str
    description: str
    closed_form: Callable[[int, dict], list]
    via_compositions: Callable[[int, dict], list]
    relation: str
    defaults: dict = field(default_factory=dict)

    def params(self, given: dict | None = None) -> dict:
        out = {k: v for k, (v, _) in self.defaults.items()}
        for k, v in (given or {}).items():
            if k not in self.defaults:
                raise KeyError(f"{self.name} has no parameter {k!r}; known: {sorted(self.defaults) or 'none'}")
            out[k] = self.defaults[k][1](v)
        return out

    def values(self, N: int, given: dict | None = None) -> list:
        return self.closed_form(N, self.params(given))

    def check(self, N: int, given: dict | None = None) -> tuple[bool, dict | None]:
        p = self.params(given)
        a = self.closed_form(N, p)
        b = self.via_compositions(N, p)
        if len(a) != len(b):
            return False, {"n": min(len(a), len(b)), "reason": "length mismatch"}
        for n, (u, v) in enumerate(zip(a, b)):
            if u != v:
                return False, {"n": n, "closed_form": u, "via_compositions": v}
        return True, None


def _fact_scaled(xs: list, N: int, first=Fraction(1)) -> list:
    return [first] + [xs[n - 1] * math.factorial(n) for n in range(1, N + 1)]


def _norlund_poly_binomial(N: int, p: int) -> list[Polynomial]:
    """B_n^(p)(x) = sum_k binom(n,k) B_k^(p) x^(n-k), numbers taken from the composition route."""
    b = norlund_via_compositions(N, p) if p >= 1 else norlund_numbers(N, p)
    return [Polynomial([comb(n, n - j) * b[n - j] for j in range(n + 1)]) for n in range(N + 1)]


RECIPES: dict[str, SequenceRecipe] = {}


def _register(r: SequenceRecipe) -> None:
    RECIPES[r.name] = r


_register(SequenceRecipe(
    "bernoulli",
    "Bernoulli numbers B_n from z/(e^z-1)",
    lambda N, p: bernoulli_numbers(N),
    lambda N, p: _fact_scaled(comp_sum(bernoulli_input(), N), N) if N else [Fraction(1)],
    "n! * comp_sum(g_n = -1/(n+1)!)",
))
_register(SequenceRecipe(
    "woon",
    "row sums of Woon's tree, (-1)^n B_n/n!",
    lambda N, p: [(-1) ** n * b / math.factorial(n) for n, b in enumerate(bernoulli_numbers(N))],
    lambda N, p: [Fraction(1)] + (row_sums(woon(), N) if N else []),
    "PI-tree row sums with g_n = (-1)^(n+1)/(n+1)!",
))
_register(SequenceRecipe(
    "bernoulli_poly",
    "Bernoulli polynomials B_n(x)",
    lambda N, p: bernoulli_polynomials(N, "series"),
    lambda N, p: bernoulli_polynomials(N, "tree"),
    "n! * PI-tree row sums with polynomial input",
))
_register(SequenceRecipe(
    "norlund",
    "Norlund numbers B_n^(p) from (z/(e^z-1))^p",
    lambda N, p: norlund_numbers(N, p["p"]),
    lambda N, p: norlund_via_compositions(N, p["p"]),
    "n! * comp_sum(g_n = -p!/(n+p)! {n+p,p})",
    {"p": (2, int)},
))
_register(SequenceRecipe(
    "norlund_stirling",
    "Norlund numbers B_n^(q) by the Stirling closed form",
    lambda N, p: norlund_via_stirling(N, p["q"]),
    lambda N, p: norlund_via_compositions(N, p["q"]),
    "n! * comp_sum(g_n = -q!/(n+q)! {n+q,q})",
    {"q": (2, int)},
))
_register(SequenceRecipe(
    "norlund_poly",
    "higher-order Bernoulli polynomials B_n^(p)(x)",
    lambda N, p: norlund_polynomials(N, p["p"]),
    lambda N, p: _norlund_poly_binomial(N, p["p"]),
    "sum_k binom(n,k) B_k^(p) x^(n-k)",
    {"p": (2, int)},
))
_register(SequenceRecipe(
    "hypergeometric_bernoulli",
    "hypergeometric Bernoulli numbers B_n^(a,b) from 1/1F1(a; a+b; z)",
    lambda N, p: hypergeometric_bernoulli(N, p["a"], p["b"], "series"),
    lambda N, p: hypergeometric_bernoulli(N, p["a"], p["b"], "compositions"),
    "n! * comp_sum(g_n = -(a)_n/((a+b)_n n!))",
    {"a": (Fraction(1), Fraction), "b": (Fraction(1), Fraction)},
))
_register(SequenceRecipe(
    "catalan",
    "Catalan numbers C_n",
    lambda N, p: [Fraction(c) for c in catalan(N)],
    lambda N, p: [Fraction(1)] + (comp_sum(InputSequence(lambda n: catalan(n)[n - 1], "catalan_shift"), N) if N else []),
    "comp_sum(g_n = C_{n-1})",
))
_register(SequenceRecipe(
    "hermite",
    "Hermite polynomials H_n(x)",
    lambda N, p: hermite_polynomials(N),
    lambda N, p: [Polynomial([1])] + ([xs * math.factorial(n) for n, xs in enumerate(comp_sum(hermite_input(N), N), 1)] if N else []),
    "n! * comp_sum(g_n = -i^n H_n(ix)/n!)",
))
_register(SequenceRecipe(
    "restricted",
    "number of compositions of n with parts in J (J=1,2 gives Fibonacci)",
    lambda N, p: [Fraction(1)] + ([Fraction(v) for v in linear_recurrence(p["J"], N)] if N else []),
    lambda N, p: [Fraction(1)] + ([Fraction(v) for v in comp_sum(indicator(p["J"]), N)] if N else []),
    "comp_sum(indicator of J)",
    {"J": ((1, 2), parse_parts)},
))
