from fractions import Fraction as F
from math import comb, factorial

import pytest

from woontree import sequences as sq
from woontree.algebra import Polynomial
from woontree.compositions import enumerate_restricted
from woontree.errors import RangeError

X = Polynomial.x()


def bernoulli_by_recurrence(N):
    """B_n = -sum_{k=1}^n binom(n, k) B_{n-k}/(k+1)."""
    b = [F(1)]
    for n in range(1, N + 1):
        b.append(-sum(comb(n, k) * b[n - k] / (k + 1) for k in range(1, n + 1)))
    return b


def naive_power(coeffs, p, N):
    out = [F(1)] + [F(0)] * N
    for _ in range(p):
        out = [sum(out[i] * coeffs[k - i] for i in range(k + 1)) for k in range(N + 1)]
    return out


def stirling_explicit(n, k):
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


# -- Stirling ---------------------------------------------------------------------

def test_stirling_examples():
    assert sq.stirling2(4, 2) == 7
    assert all(sq.stirling2(n, n) == 1 for n in range(12))
    assert sq.stirling2(0, 0) == 1 and sq.stirling2(5, 0) == 0
    with pytest.raises(RangeError):
        sq.stirling2(3, 4)


def test_stirling_table_matches_explicit_formula():
    for n in range(15):
        for k in range(n + 1):
            assert sq.stirling2(n, k) == stirling_explicit(n, k)


def test_stirling_multinomial_identity():
    # p = 2, n = 2 by hand: 1/3 + 1/2 + 1/3
    assert sq.stirling_multinomial_sum(2, 2) == F(7, 6) == sq.stirling_multinomial_closed(2, 2)
    for p in range(1, 4):
        for n in range(7):
            assert sq.stirling_multinomial_sum(p, n) == sq.stirling_multinomial_closed(p, n)


# -- Bernoulli numbers ------------------------------------------------------------------

def test_bernoulli_values():
    b = sq.bernoulli_numbers(12)
    assert (b[1], b[2], b[3], b[4]) == (F(-1, 2), F(1, 6), 0, F(-1, 30))
    assert b[12] == F(-691, 2730)


def test_bernoulli_recurrence_to_sixteen():
    assert sq.bernoulli_numbers(16) == bernoulli_by_recurrence(16)


def test_composition_forms_by_hand():
    # n = 2, compositions (2) and (1,1)
    assert -F(1, factorial(3)) + F(1, factorial(2) ** 2) == F(1, 12)
    assert -F(1, 2) * F(1, factorial(2)) + F(1, 3) == F(1, 12)
    assert sq.bernoulli_via_compositions(2, "inverse_factorial")[2] / 2 == F(1, 12)
    assert sq.bernoulli_via_compositions(2, "stirling_weighted")[2] / 2 == F(1, 12)


@pytest.mark.parametrize("form", ["inverse_factorial", "stirling_weighted"])
def test_composition_forms_match_recurrence(form):
    assert sq.bernoulli_via_compositions(12, form) == bernoulli_by_recurrence(12)


def test_bernoulli_via_stirling():
    # n = 2 by hand: -{3,1}/binom(3,1) binom(3,2) + {4,2}/binom(4,2) binom(3,3)
    assert -F(1, 3) * 3 + F(7, 6) * 1 == F(1, 6)
    b = sq.bernoulli_via_stirling(12)
    assert b[2] == F(1, 6) and b[3] == 0
    assert b == bernoulli_by_recurrence(12)


# -- Bernoulli polynomials --------------------------------------------------------------

def bernoulli_poly_oracle(n):
    b = bernoulli_by_recurrence(n)
    return Polynomial([comb(n, k) * b[n - k] for k in range(n + 1)])


def test_bernoulli_polynomial_examples():
    polys = sq.bernoulli_polynomials(2, "tree")
    assert polys[1] == X - F(1, 2) == (X * X - (X - 1) ** 2) / 2
    assert polys[2] / 2 == X * X / 2 - X / 2 + F(1, 12)
    g = sq.bernoulli_poly_input()
    assert g(1) * g(1) + g(2) == X * X / 2 - X / 2 + F(1, 12)


@pytest.mark.parametrize("method", ["series", "tree"])
def test_bernoulli_polynomials_match_binomial_oracle(method):
    polys = sq.bernoulli_polynomials(10, method)
    assert polys == [bernoulli_poly_oracle(n) for n in range(11)]
    assert [p(0) for p in polys] == sq.bernoulli_numbers(10)


def test_bernoulli_expansion():
    # n = 1: -B_1^(-1)(-x) with B_1^(-1)(y) = y + 1/2
    r = sq.bernoulli_poly_expansion(1)
    assert r["holds"] and r["rhs"] == X - F(1, 2)
    assert sq.bernoulli_poly_expansion(3)["rhs"](0) == 0
    for n in range(1, 9):
        r = sq.bernoulli_poly_expansion(n)
        assert r["holds"] and r["lhs"] == bernoulli_poly_oracle(n)
    with pytest.raises(RangeError):
        sq.bernoulli_poly_expansion(11)


# -- Norlund --------------------------------------------------------------------------

def norlund_oracle(N, p):
    base = [b / factorial(n) for n, b in enumerate(bernoulli_by_recurrence(N))]
    return [c * factorial(n) for n, c in enumerate(naive_power(base, p, N))]


def test_norlund_examples():
    assert sq.norlund_numbers(12, 1) == sq.bernoulli_numbers(12)
    assert sq.norlund_numbers(2, 2)[2] == F(5, 6)
    assert sq.norlund_via_stirling(2, 2)[2] == F(5, 6)
    assert sq.norlund_via_stirling(1, 3)[1] == F(-3, 2) == 3 * F(-1, 2)


@pytest.mark.parametrize("q", [1, 2, 3, 4])
def test_norlund_three_paths(q):
    want = norlund_oracle(10, q)
    assert sq.norlund_numbers(10, q) == want
    assert sq.norlund_via_stirling(10, q) == want
    assert sq.norlund_via_compositions(10, q) == want


def test_norlund_input_sequence():
    for p in (2, 3):
        g = sq.norlund_input(p)
        assert g(1) == -F(factorial(p), factorial(p + 1)) * sq.stirling2(p + 1, p)


def test_norlund_q1_is_bernoulli_stirling():
    assert sq.norlund_via_stirling(12, 1) == sq.bernoulli_via_stirling(12)


def test_negative_order_polynomial():
    # ((e^z-1)/z) e^{zy}: B_1^(-1)(y) = y + 1/2
    assert sq.norlund_polynomials(1, -1)[1] == X + F(1, 2)


def test_norlund_polynomials_binomial_form():
    for p in (1, 2, 3, -2):
        polys = sq.norlund_polynomials(6, p)
        nums = sq.norlund_numbers(6, p)
        for n, poly in enumerate(polys):
            assert poly == Polynomial([comb(n, k) * nums[n - k] for k in range(n + 1)])


def test_norlund_inner_weight():
    for q in range(1, 5):
        for n in range(1, 9):
            for p in range(1, n + 1):
                lhs, rhs = sq.norlund_inner_weight(n, p, q)
                assert lhs == rhs


# -- hypergeometric Bernoulli ---------------------------------------------------------

def test_hypergeometric_reduces_to_classical():
    assert sq.hypergeometric_bernoulli(12, 1, 1) == sq.bernoulli_numbers(12)
    assert sq.hypergeometric_bernoulli(12, 1, 1, "compositions") == sq.bernoulli_numbers(12)


@pytest.mark.parametrize("a,b", [(2, 1), (F(1, 2), 3), (3, F(5, 2))])
def test_hypergeometric_paths(a, b):
    s = sq.hypergeometric_bernoulli(8, a, b)
    assert s[0] == 1
    assert s == sq.hypergeometric_bernoulli(8, a, b, "compositions")


def test_hypergeometric_rejects_nonpositive():
    with pytest.raises(RangeError):
        sq.hypergeometric_bernoulli(4, 0, 1)


# -- Catalan and Hermite --------------------------------------------------------------

def test_catalan_values():
    assert sq.catalan(6) == [1, 1, 2, 5, 14, 42, 132]
    c = sq.catalan(12)
    assert all(c[n] == sum(c[k] * c[n - 1 - k] for k in range(n)) for n in range(1, 13))
    # C_3 over the four compositions of 3: C_2 + C_1 C_0 + C_0 C_1 + C_0^3
    assert c[2] + c[1] * c[0] + c[0] * c[1] + c[0] ** 3 == 5
    assert c[2] - c[1] ** 2 == 1 == c[1]


def test_catalan_invariance():
    r = sq.catalan_invariance(12)
    assert r["holds"] and r["witnesses"] == []


def hermite_oracle(N):
    h = [[F(1)], [F(0), F(2)]]
    for n in range(2, N + 1):
        a = [F(0)] + [2 * c for c in h[n - 1]]
        b = [2 * (n - 1) * c for c in h[n - 2]] + [F(0)] * 2
        h.append([u - v for u, v in zip(a, b)])
    return [Polynomial(c) for c in h]


def test_hermite_examples():
    g = sq.hermite_input(2)
    assert g(1) == 2 * X
    assert g(2) == -2 * X * X - 1
    assert g(1) * g(1) + g(2) == 2 * X * X - 1 == sq.hermite_polynomials(2)[2] / 2


def test_hermite_invariance():
    assert sq.hermite_polynomials(10) == hermite_oracle(10)
    assert sq.hermite_invariance(8)["holds"]
    assert sq.hermite_invariance(10)["holds"]
    with pytest.raises(RangeError):
        sq.hermite_invariance(11)


def test_hermite_rotation_is_real_form():
    # G_n(x) = i^n H_n(i x); for even n that is (-1)^(n/2) H_n with x^2 -> -x^2
    for n in range(0, 9, 2):
        h = sq.hermite_polynomials(n)[n]
        rotated = Polynomial([c * (-1) ** (k // 2) * (-1) ** (n // 2) for k, c in enumerate(h.coeffs)])
        assert sq.hermite_rotated(n)[n] == rotated


# -- linear recurrences -----------------------------------------------------------------

def test_linear_recurrence_examples():
    assert sq.linear_recurrence((1, 2), 5) == [1, 2, 3, 5, 8]
    assert sq.linear_recurrence((1,), 10) == [1] * 10
    trib = sq.linear_recurrence((1, 2, 3), 12)
    assert trib == [sum(1 for _ in enumerate_restricted(n, {1, 2, 3})) for n in range(1, 13)]


@pytest.mark.parametrize("J", [(1, 2), (1, 2, 3), (2, 3), (1, 4), (3,)])
def test_linear_recurrence_three_paths(J):
    a = sq.linear_recurrence(J, 20)
    assert a == sq.linear_recurrence(J, 20, "count") == sq.linear_recurrence(J, 20, "series")


def test_characteristic_polynomial():
    assert sq.characteristic_polynomial((1, 2)) == X * X - X - 1


# -- registry -------------------------------------------------------------------------

POLY = {"bernoulli_poly", "norlund_poly", "hermite"}


@pytest.mark.parametrize("name", sorted(sq.RECIPES))
def test_every_recipe_checks(name):
    recipe = sq.RECIPES[name]
    ok, witness = recipe.check(10 if name in POLY else 14)
    assert ok, witness


def test_recipe_params():
    r = sq.RECIPES["norlund"]
    assert r.values(2, {"p": "2"})[2] == F(5, 6)
    with pytest.raises(KeyError):
        r.params({"x": "1"})
    assert sq.RECIPES["restricted"].values(5, {"J": "1,2"}) == [1, 1, 2, 3, 5, 8]
