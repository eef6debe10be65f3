"""Exact rational, polynomial and truncated power series arithmetic.

Rationals are :class:`fractions.Fraction`.  A :class:`Series` holds the
coefficients of z^0..z^N of a formal power series; every operation is exact
modulo z^(N+1).  Coefficients are either all Fractions or all
:class:`Polynomial` (in one indeterminate ``x``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .errors import CompositionAtNonzeroPoint, ConstantTermError, NonUnitConstantTerm

Rational = Fraction
Scalar = Union[int, Fraction]


def format_rational(q: Scalar) -> str:
    """Canonical string form: ``"p/q"``, or ``"p"`` when q == 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


class Polynomial:
    """Dense univariate polynomial with Fraction coefficients.

    Immutable.  ``coeffs[k]`` is the coefficient of x^k; trailing zeros are
    trimmed so equal polynomials have equal coefficient tuples.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def x(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def constant(cls, a: Scalar) -> Polynomial:
        return cls([a])

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> float | int:
        """Degree; ``-inf`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else -math.inf

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        return len(self._c) <= 1

    def constant_term(self) -> Fraction:
        return self._c[0] if self._c else Fraction(0)

    def __call__(self, point: Scalar) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self._c):
            acc = acc * point + a
        return acc

    def substitute(self, other: Polynomial | Scalar) -> Polynomial:
        """Return ``self(other(x))``."""
        acc = Polynomial()
        for a in reversed(self._c):
            acc = acc * other + a
        return acc if isinstance(acc, Polynomial) else Polynomial([acc])

    def scale_argument(self, c: Scalar) -> Polynomial:
        """Return p(c*x)."""
        c = Fraction(c)
        return Polynomial([a * c**k for k, a in enumerate(self._c)])

    @staticmethod
    def _coerce(other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial([-a for a in self._c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial([a * other for a in self._c])
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self._c or not other._c:
            return Polynomial()
        out = [Fraction(0)] * (len(self._c) + len(other._c) - 1)
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant() or other.is_zero():
                raise ZeroDivisionError("division only by a nonzero constant polynomial")
            other = other.constant_term()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return Polynomial([a / other for a in self._c])

    def __pow__(self, k: int) -> Polynomial:
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial([1])
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._c == o._c

    def __hash__(self) -> int:
        if len(self._c) <= 1:
            return hash(self.constant_term())
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Polynomial({[format_rational(a) for a in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k, a in enumerate(self._c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            terms.append(format_rational(a) + (" " + mono if mono else ""))
        return " + ".join(terms)


Coeff = Union[Fraction, Polynomial]


def _is_zero(c) -> bool:
    return c == 0


class Series:
    """Truncated formal power series ``sum_{k<=N} coeffs[k] z^k``.

    Binary operations between series of different orders truncate to the
    smaller order.  Values never change after construction.
    """

    __slots__ = ("_c", "_ring")

    def __init__(self, coeffs: Iterable, order: int | None = None, ring: str | None = None):
        c = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            c = c[: order + 1] + [0] * (order + 1 - len(c))
        if not c:
            raise ValueError("a series needs at least one coefficient (order >= 0)")
        if ring == "polynomial" or any(isinstance(a, Polynomial) for a in c):
            self._c = tuple(a if isinstance(a, Polynomial) else Polynomial([a]) for a in c)
            self._ring = "polynomial"
        else:
            self._c = tuple(Fraction(a) for a in c)
            self._ring = "rational"

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_function(cls, func: Callable[[int], Coeff], order: int) -> Series:
        return cls([func(k) for k in range(order + 1)])

    @classmethod
    def one(cls, order: int) -> Series:
        return cls([1], order)

    @classmethod
    def zero(cls, order: int) -> Series:
        return cls([0], order)

    @classmethod
    def z(cls, order: int) -> Series:
        return cls([0, 1], order)

    # -- basic protocol -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def ring(self) -> str:
        return self._ring

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Series):
            return self._c == other._c
        if isinstance(other, (int, Fraction, Polynomial)):
            return self._c[0] == other and all(_is_zero(a) for a in self._c[1:])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        if self._ring == "rational":
            body = ", ".join(format_rational(a) for a in self._c)
        else:
            body = ", ".join(str(a) for a in self._c)
        return f"Series([{body}])"

    def truncate(self, order: int) -> Series:
        return Series(self._c, order, ring=self._ring)

    def lift(self) -> Series:
        """Same series with Polynomial coefficients."""
        return Series([a if isinstance(a, Polynomial) else Polynomial([a]) for a in self._c])

    def to_json(self) -> list:
        if self._ring == "rational":
            return [format_rational(a) for a in self._c]
        return [[format_rational(b) for b in a.coeffs] for a in self._c]

    @classmethod
    def from_json(cls, data: Sequence) -> Series:
        out = []
        for item in data:
            if isinstance(item, list):
                out.append(Polynomial(parse_rational(s) for s in item))
            else:
                out.append(parse_rational(str(item)))
        return cls(out)

    # -- ring operations ------------------------------------------------
    def _check_ring(self, other: Series) -> None:
        if self._ring != other._ring:
            raise TypeError(f"mixed coefficient rings: {self._ring} and {other._ring}")

    def __add__(self, other):
        if isinstance(other, Series):
            self._check_ring(other)
            n = min(len(self._c), len(other._c))
            return Series([self._c[k] + other._c[k] for k in range(n)], ring=self._ring)
        if isinstance(other, (int, Fraction, Polynomial)):
            return Series((self._c[0] + other,) + self._c[1:], ring=self._ring)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> Series:
        return Series([-a for a in self._c], ring=self._ring)

    def __sub__(self, other):
        if isinstance(other, (Series, int, Fraction, Polynomial)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            self._check_ring(other)
            n = min(len(self._c), len(other._c))
            a, b = self._c, other._c
            out = []
            for k in range(n):
                acc = 0
                for i in range(k + 1):
                    if not _is_zero(a[i]) and not _is_zero(b[k - i]):
                        acc = a[i] * b[k - i] + acc
                out.append(acc)
            return Series(out, ring=self._ring)
        if isinstance(other, (int, Fraction, Polynomial)):
            return Series([a * other for a in self._c])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Polynomial)):
            return Series([a * other for a in self._c])
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.reciprocal()
        if isinstance(other, (int, Fraction)):
            return Series([a / other for a in self._c], ring=self._ring)
        return NotImplemented

    def __pow__(self, p: int) -> Series:
        return series_pow(self, p)

    def _unit_inverse(self):
        a0 = self._c[0]
        if isinstance(a0, Polynomial):
            if a0.is_zero() or not a0.is_constant():
                raise NonUnitConstantTerm(f"constant term {a0} is not a unit")
            return 1 / a0.constant_term()
        if a0 == 0:
            raise NonUnitConstantTerm("constant term is zero")
        return 1 / a0

    def reciprocal(self) -> Series:
        inv0 = self._unit_inverse()
        a = self._c
        b = [inv0]
        for k in range(1, len(a)):
            acc = 0
            for i in range(1, k + 1):
                if not _is_zero(a[i]):
                    acc = a[i] * b[k - i] + acc
            b.append(-acc * inv0)
        return Series(b, ring=self._ring)

    def derivative(self) -> Series:
        """Formal derivative; the order drops by one (order 0 gives the zero series)."""
        if len(self._c) == 1:
            return Series([self._c[0] * 0], ring=self._ring)
        return Series([k * self._c[k] for k in range(1, len(self._c))], ring=self._ring)

    def compose(self, inner: Series) -> Series:
        """``self(inner(z))`` by Horner's rule in the truncated ring."""
        if not _is_zero(inner._c[0]):
            raise CompositionAtNonzeroPoint(f"inner constant term {inner._c[0]} is nonzero")
        n = min(self.order, inner.order)
        g = inner.truncate(n)
        if self._ring == "polynomial" and g._ring == "rational":
            g = g.lift()
        acc = Series([self._c[n]], n)
        if g._ring == "polynomial" and acc._ring == "rational":
            acc = acc.lift()
        for k in range(n - 1, -1, -1):
            acc = _mul_any(acc, g) + self._c[k]
        return acc

    def exp(self) -> Series:
        if not _is_zero(self._c[0]):
            raise ConstantTermError("exp needs a zero constant term")
        a = self._c
        b = [a[0] * 0 + 1]
        for n in range(1, len(a)):
            acc = a[0] * 0  # ring zero, so acc / n stays exact
            for k in range(1, n + 1):
                if not _is_zero(a[k]):
                    acc = (k * a[k]) * b[n - k] + acc
            b.append(acc / n)
        return Series(b, ring=self._ring)

    def log(self) -> Series:
        if self._c[0] != 1:
            raise ConstantTermError("log needs constant term 1")
        a = self._c
        # b' = a'/a, with a0 = 1
        b = [a[0] * 0]
        for n in range(1, len(a)):
            acc = n * a[n]
            for k in range(1, n):
                if not _is_zero(a[n - k]):
                    acc = acc - (k * b[k]) * a[n - k]
            b.append(acc / n)
        return Series(b, ring=self._ring)


def _mul_any(a: Series, b: Series) -> Series:
    if a.ring != b.ring:
        a, b = a.lift(), b.lift()
    return a * b


def series_add(a: Series, b: Series) -> Series:
    return a + b


def series_mul(a: Series, b: Series) -> Series:
    return a * b


def series_reciprocal(a: Series) -> Series:
    return a.reciprocal()


def series_compose(f: Series, g: Series) -> Series:
    return f.compose(g)


def series_exp(a: Series) -> Series:
    return a.exp()


def series_log(a: Series) -> Series:
    return a.log()


def series_pow(a: Series, p: int) -> Series:
    """Integer power by repeated squaring; negative p goes through the reciprocal."""
    if p < 0:
        a = a.reciprocal()
        p = -p
    out = Series.one(a.order)
    if a.ring == "polynomial":
        out = out.lift()
    base = a
    while p:
        if p & 1:
            out = out * base
        p >>= 1
        if p:
            base = base * base
    return out


# -- named series -------------------------------------------------------

def expm1(order: int) -> Series:
    """e^z - 1."""
    return Series([0] + [Fraction(1, math.factorial(k)) for k in range(1, order + 1)])


def exp_series(order: int) -> Series:
    return Series([Fraction(1, math.factorial(k)) for k in range(order + 1)])


def expm1_over_z(order: int) -> Series:
    """(e^z - 1)/z."""
    return Series([Fraction(1, math.factorial(k + 1)) for k in range(order + 1)])


def bernoulli_gf(order: int) -> Series:
    """z/(e^z - 1)."""
    return expm1_over_z(order).reciprocal()


def geometric(order: int) -> Series:
    """z/(1 - z)."""
    return Series([0] + [1] * order)


def log1p(order: int) -> Series:
    """log(1 + z)."""
    return Series([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, order + 1)])


def catalan_numbers(count: int) -> list[int]:
    """C_0..C_{count-1} from C_n = sum_k C_k C_{n-1-k}."""
    c = [1]
    for n in range(1, count):
        c.append(sum(c[k] * c[n - 1 - k] for k in range(n)))
    return c[:count]


def catalan_root(order: int) -> Series:
    """(1 - sqrt(1 - 4z))/2 = sum_{n>=1} C_{n-1} z^n, kept rational."""
    c = catalan_numbers(order)
    return Series([0] + c, order)


def exp_linear(order: int, scale: Coeff = Fraction(1)) -> Series:
    """e^{scale*z}; pass ``Polynomial.x()`` for e^{zx}."""
    out = []
    power = Polynomial([1]) if isinstance(scale, Polynomial) else Fraction(1)
    for k in range(order + 1):
        out.append(power / math.factorial(k))
        power = power * scale
    return Series(out)


NAMED_SERIES: dict[str, Callable[[int], Series]] = {
    "z": lambda n: Series.z(n),
    "exp": exp_series,
    "expm1": expm1,
    "expm1_over_z": expm1_over_z,
    "bernoulli_gf": bernoulli_gf,
    "geometric": geometric,
    "log1p": log1p,
    "catalan_root": catalan_root,
}
