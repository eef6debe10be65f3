"""Sums over compositions and their generating-function forms.

Every transform has at least two evaluation routes: a brute-force walk over
C(n) and a power-series route (plus, where available, a convolution form
whose inner sums run over k_i >= 0).  The routes share no code beyond
coefficient arithmetic, so agreement between them is a real check.

Sums over k_i >= 0 need a value for g_0.  They reproduce the composition
sums exactly when g_0 = -1, which is the natural extension of the Woon and
Bernoulli inputs (-1/(0+1)! = -1).  Callers must pass g_0 explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .algebra import Coeff, Polynomial, Series, geometric
from .compositions import composition_products, digit_sum_s2
from .errors import RangeError, SizeGuard
from .pitree import InputSequence

MAX_BRUTE = 20
MAX_DIGIT_SUM = 24


@dataclass(frozen=True)
class WeightSequence:
    """Outer weights f_0, f_1, f_2, ... of f(z) = sum f_n z^n."""

    func: Callable[[int], Coeff]
    f0: Coeff = Fraction(0)
    name: str = "f"
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __call__(self, n: int) -> Coeff:
        if n == 0:
            return self.f0
        try:
            return self._cache[n]
        except KeyError:
            v = self.func(n)
            v = v if isinstance(v, Polynomial) else Fraction(v)
            self._cache[n] = v
            return v

    def terms(self, N: int) -> list:
        return [self(k) for k in range(N + 1)]

    def series(self, N: int) -> Series:
        return Series(self.terms(N))

    @classmethod
    def from_series(cls, s: Series, name: str = "series") -> WeightSequence:
        def get(n: int):
            if n > s.order:
                raise RangeError(f"{name} is only known up to z^{s.order}")
            return s[n]

        return cls(get, s[0], name)


def geometric_weights() -> WeightSequence:
    """f(z) = z/(1-z)."""
    return WeightSequence(lambda n: 1, Fraction(0), "geometric")


def log1p_weights() -> WeightSequence:
    return WeightSequence(lambda n: Fraction((-1) ** (n + 1), n), Fraction(0), "log1p")


def expm1_weights() -> WeightSequence:
    return WeightSequence(lambda n: Fraction(1, math.factorial(n)), Fraction(0), "expm1")


def log1p_over_z_weights() -> WeightSequence:
    """f(z) = log(1+z)/z = sum (-1)^n z^n/(n+1)."""
    return WeightSequence(lambda n: Fraction((-1) ** n, n + 1), Fraction(1), "log1p_over_z")


def norlund_weights(q: int) -> WeightSequence:
    """f(z) = (1-z)^(-q) - 1, f_k = binom(k+q-1, q-1)."""
    return WeightSequence(lambda k: comb(k + q - 1, q - 1), Fraction(0), f"norlund{q}")


def single_weight(k: int) -> WeightSequence:
    """f(z) = z^k."""
    return WeightSequence(lambda n: 1 if n == k else 0, Fraction(0), f"z^{k}")


def _check_brute(n: int) -> None:
    if n > MAX_BRUTE:
        raise SizeGuard("n", n, "MAX_BRUTE", MAX_BRUTE, "brute force visits 2^(n-1) compositions")


def _sum(values):
    total = 0
    for v in values:
        total = v + total
    return total


def _brute_weighted(fw: Callable[[int], Coeff], g: InputSequence, N: int) -> list:
    _check_brute(N)
    gt = g.terms(N)
    out = []
    for n in range(1, N + 1):
        acc = 0
        for m, p in composition_products(gt, n):
            fm = fw(m)
            if fm != 0:
                acc = fm * p + acc
        out.append(acc)
    return out


def _power_coeffs(base: Sequence, p: int, n: int) -> Coeff:
    """[z^n] of (sum base[k] z^k)^p, by plain repeated convolution."""
    cur = [1] + [0] * n
    for _ in range(p):
        nxt = [0] * (n + 1)
        for i, a in enumerate(cur):
            if a == 0:
                continue
            for j in range(n + 1 - i):
                b = base[j]
                if b != 0:
                    nxt[i + j] = a * b + nxt[i + j]
        cur = nxt
    return cur[n]


def _resolve_g0(g: InputSequence, g0):
    if g0 is None:
        g0 = g.g0
    if g0 is None:
        raise ValueError(
            f"sums over k_i >= 0 need an explicit g0 for {g.name!r} "
            "(the composition identity holds for g0 = -1)"
        )
    return g0


# -- plain composition sums -------------------------------------------------

def comp_sum(g: InputSequence, N: int, method: str = "series") -> list:
    """[x_1..x_N] with x_n = sum over pi in C(n) of g_pi.

    ``"series"``: coefficients of g/(1-g).  ``"brute"``: walk C(n).
    """
    if N < 1:
        raise RangeError("N must be >= 1")
    if method == "brute":
        return _brute_weighted(lambda m: 1, g, N)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    gs = g.series(N)
    x = (1 - gs).reciprocal() - 1
    return list(x.coeffs[1:])


def comp_sum_convolution(g: InputSequence, N: int, g0: Coeff | None = None) -> list:
    """x_n = sum_p binom(n+1, p+1) sum_{k_1+..+k_p = n, k_i >= 0} g_k1 ... g_kp."""
    g0 = _resolve_g0(g, g0)
    base = [g0] + g.terms(N)[1:]
    out = []
    for n in range(1, N + 1):
        out.append(_sum(comb(n + 1, p + 1) * _power_coeffs(base, p, n) for p in range(1, n + 1)))
    return out


def complete_sum(w: Sequence[Coeff], p: int, n: int) -> Coeff:
    """S_{p,n} = sum_{k_1+..+k_p = n, k_i >= 0} multinomial(n; k) w_k1 ... w_kp."""
    return _multinomial_sum(w, p, n, 0)


def incomplete_sum(w: Sequence[Coeff], m: int, n: int) -> Coeff:
    """Same as :func:`complete_sum` with every k_i >= 1."""
    return _multinomial_sum(w, m, n, 1)


def _multinomial_sum(w, p, n, lo):
    # depth-first over k_1..k_p with the remaining total bounded at each step
    def rec(slots: int, left: int):
        if slots == 0:
            return 1 if left == 0 else 0
        acc = 0
        for k in range(lo, left - lo * (slots - 1) + 1):
            if w[k] == 0:
                continue
            rest = rec(slots - 1, left - k)
            if rest != 0:
                acc = math.comb(left, k) * w[k] * rest + acc
        return acc

    return rec(p, n)


def comp_sum_inverse(x: InputSequence, N: int, method: str = "series") -> list:
    """[g_1..g_N] with g_n = sum over C(n) of (-1)^(|pi|+1) x_pi, i.e. g = x/(1+x)."""
    if N < 1:
        raise RangeError("N must be >= 1")
    if method == "brute":
        return _brute_weighted(lambda m: (-1) ** (m + 1), x, N)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    xs = x.series(N)
    g = 1 - (1 + xs).reciprocal()
    return list(g.coeffs[1:])


def comp_sum_inverse_convolution(x: InputSequence, N: int, x0: Coeff = Fraction(1)) -> list:
    """g_n = sum_p (-1)^(p+1) binom(n+1, p+1) sum_{k_i >= 0} x_k1 ... x_kp, with x_0 = 1."""
    base = [x0] + x.terms(N)[1:]
    out = []
    for n in range(1, N + 1):
        out.append(
            _sum((-1) ** (p + 1) * comb(n + 1, p + 1) * _power_coeffs(base, p, n) for p in range(1, n + 1))
        )
    return out


# -- weighted sums ------------------------------------------------------------

def weighted_comp_sum(f: WeightSequence, g: InputSequence, N: int, method: str = "series") -> list:
    """[a_0..a_N]: a_0 = f_0, a_n = sum over C(n) of f_|pi| g_pi.

    ``"series"``: coefficients of f(g(z)).  ``"brute"``: walk C(n).
    ``"convolution"``: :func:`weighted_convolution` (needs ``g.g0``).
    """
    if N < 1:
        raise RangeError("N must be >= 1")
    if method == "brute":
        return [f.f0] + _brute_weighted(f, g, N)
    if method == "convolution":
        return [f.f0] + weighted_convolution(f, g, N)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    return list(f.series(N).compose(g.series(N)).coeffs)


def inner_weight(f: WeightSequence, p: int, n: int) -> Coeff:
    """sum_{m=p}^{n} f_m binom(m, p)."""
    return _sum(f(m) * comb(m, p) for m in range(p, n + 1))


def weighted_convolution(f: WeightSequence, g: InputSequence, N: int, g0: Coeff | None = None) -> list:
    """[a_1..a_N] from sum_p (sum_{m=p}^n f_m binom(m,p)) sum_{k_i >= 0} g_k1 ... g_kp."""
    g0 = _resolve_g0(g, g0)
    base = [g0] + g.terms(N)[1:]
    out = []
    for n in range(1, N + 1):
        out.append(_sum(inner_weight(f, p, n) * _power_coeffs(base, p, n) for p in range(1, n + 1)))
    return out


def parts_sum(f: WeightSequence, g: InputSequence, N: int, method: str = "series") -> list:
    """[c_1..c_N], c_n = sum over C(n) of f_|pi| * (g_k1 + ... + g_km).

    The series route is f'(z/(1-z)) g(z).
    """
    if N < 1:
        raise RangeError("N must be >= 1")
    if method == "brute":
        _check_brute(N)
        gt = g.terms(N)
        out = []
        for n in range(1, N + 1):
            acc = 0
            for m, s in _composition_part_sums(gt, n):
                fm = f(m)
                if fm != 0 and s != 0:
                    acc = fm * s + acc
            out.append(acc)
        return out
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    fprime = f.series(N + 1).derivative()
    outer = fprime.compose(geometric(N))
    return list((outer * g.series(N)).coeffs[1:])


def _composition_part_sums(values, n):
    """Yield (len(pi), sum(values[k] for k in pi)) for every pi in C(n)."""

    def walk(rest, length, acc):
        for k in range(1, rest + 1):
            s = values[k] + acc
            if k == rest:
                yield length + 1, s
            else:
                yield from walk(rest - k, length + 1, s)

    yield from walk(n, 0, 0)


def parts_total(g: InputSequence, N: int) -> list:
    """[c_1..c_N] from ((1-z)/(1-2z))^2 g(z): every part of every composition, f = z/(1-z)."""
    ratio = Series([1, -1], N) * Series([1, -2], N).reciprocal()
    return list((ratio * ratio * g.series(N)).coeffs[1:])


# -- moments and cumulants ------------------------------------------------------

def _egf_input(values: Sequence[Coeff], name: str) -> InputSequence:
    vals = [Fraction(v) for v in values]
    return InputSequence.from_values([v / math.factorial(k + 1) for k, v in enumerate(vals)], name)


def moments_to_cumulants(mu: Sequence[Coeff], N: int | None = None, method: str = "series") -> list:
    """Raw moments mu_1..mu_N (mu_0 = 1) to cumulants kappa_1..kappa_N.

    kappa_n/n! = sum over C(n) of (-1)^(|pi|+1)/|pi| * mu_pi/pi!.
    """
    N = len(mu) if N is None else N
    g = _egf_input(mu[:N], "moments")
    coeffs = weighted_comp_sum(log1p_weights(), g, N, method)
    return [coeffs[n] * math.factorial(n) for n in range(1, N + 1)]


def cumulants_to_moments(kappa: Sequence[Coeff], N: int | None = None, method: str = "series") -> list:
    """Cumulants kappa_1..kappa_N to raw moments: mu_n/n! = sum over C(n) of kappa_pi/(|pi|! pi!)."""
    N = len(kappa) if N is None else N
    g = _egf_input(kappa[:N], "cumulants")
    coeffs = weighted_comp_sum(expm1_weights(), g, N, method)
    return [coeffs[n] * math.factorial(n) for n in range(1, N + 1)]


# -- sum of binary digits ---------------------------------------------------------

def digit_sum_transform(f: WeightSequence, n: int, method: str = "direct") -> Coeff:
    """sum_{k=0}^{2^(n-1)-1} f_{s2(k)+1}.

    ``"direct"`` loops over k, ``"series"`` reads [z^n] f(z/(1-z)),
    ``"binomial"`` evaluates sum_k f_k binom(n-1, n-k).
    """
    if n < 1:
        raise RangeError("n must be >= 1")
    if n > MAX_DIGIT_SUM:
        raise SizeGuard("n", n, "MAX_DIGIT_SUM", MAX_DIGIT_SUM, "the direct sum has 2^(n-1) terms")
    if method == "direct":
        return _sum(f(digit_sum_s2(k) + 1) for k in range(1 << (n - 1)))
    if method == "series":
        return f.series(n).compose(geometric(n))[n]
    if method == "binomial":
        return _sum(f(k) * comb(n - 1, n - k) for k in range(1, n + 1))
    raise ValueError(f"unknown method {method!r}")
