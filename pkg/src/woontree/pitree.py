"""Woon's tree and Fuchs' general PI tree.

Each node holds a multi-index (i1, ..., ik) and the product g_{i1}...g_{ik}.
The left child prepends a 1 (operator P), the right child increments the
first index (operator I).  Row n holds exactly the compositions of n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import Coeff, Polynomial, Series, format_rational
from .errors import RangeError, SizeGuard

MAX_ROW = 24
MAX_DOT_DEPTH = 8


@dataclass(frozen=True)
class InputSequence:
    """A map n -> g_n for n >= 1.

    ``g0`` is only consulted by sums over k_i >= 0 (the convolution forms);
    leave it ``None`` when no such value is defined.
    """

    func: Callable[[int], Coeff]
    name: str = "g"
    g0: Coeff | None = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False, hash=False)

    def __call__(self, n: int) -> Coeff:
        if n < 1:
            raise RangeError(f"input sequences are indexed from 1, got {n}")
        try:
            return self._cache[n]
        except KeyError:
            v = self.func(n)
            v = v if isinstance(v, Polynomial) else Fraction(v)
            self._cache[n] = v
            return v

    def terms(self, N: int) -> list:
        """[0, g_1, ..., g_N] so that index equals subscript."""
        return [Fraction(0)] + [self(k) for k in range(1, N + 1)]

    def series(self, N: int) -> Series:
        return Series(self.terms(N))

    def negated(self) -> InputSequence:
        g0 = None if self.g0 is None else -self.g0
        return InputSequence(lambda n: -self(n), f"-{self.name}", g0)

    @classmethod
    def from_values(cls, values: Sequence[Coeff], name: str = "table", g0=None) -> InputSequence:
        """Table-backed: ``values[0]`` is g_1; zero past the end."""
        vals = list(values)
        return cls(lambda n: vals[n - 1] if n <= len(vals) else 0, name, g0)

    @classmethod
    def from_series(cls, s: Series, name: str = "series", g0=None) -> InputSequence:
        def get(n: int):
            if n > s.order:
                raise RangeError(f"{name} is only known up to z^{s.order}")
            return s[n]

        return cls(get, name, g0)


def woon() -> InputSequence:
    """Woon's tree exactly as drawn: g_n = (-1)^(n+1)/(n+1)!.

    Its row sums are (-1)^n B_n/n!; the alternating node signs of the
    picture are carried by the values themselves.
    """
    return InputSequence(lambda n: Fraction((-1) ** (n + 1), math.factorial(n + 1)), "woon", Fraction(-1))


def bernoulli_input() -> InputSequence:
    """g_n = -1/(n+1)!, i.e. g(z) = 1 - (e^z-1)/z; row sums are B_n/n!."""
    return InputSequence(lambda n: Fraction(-1, math.factorial(n + 1)), "bernoulli", Fraction(-1))


def indicator(parts: Iterable[int], name: str | None = None) -> InputSequence:
    allowed = frozenset(parts)
    label = name or "indicator{" + ",".join(map(str, sorted(allowed))) + "}"
    return InputSequence(lambda n: 1 if n in allowed else 0, label)


def fibonacci() -> InputSequence:
    return indicator({1, 2}, "fibonacci")


@dataclass(frozen=True)
class PiNode:
    multi_index: tuple[int, ...]
    value: Coeff
    path: str = ""

    @property
    def depth(self) -> int:
        return sum(self.multi_index)

    def p_child(self) -> tuple[int, ...]:
        return (1,) + self.multi_index

    def i_child(self) -> tuple[int, ...]:
        return (self.multi_index[0] + 1,) + self.multi_index[1:]


def _value(g: InputSequence, mi: tuple[int, ...]) -> Coeff:
    v = g(mi[0])
    for k in mi[1:]:
        v = v * g(k)
    return v


def _rows(g: InputSequence, n: int):
    row = [((1,), "")]
    yield row
    for _ in range(n - 1):
        nxt = []
        for mi, path in row:
            nxt.append(((1,) + mi, path + "P"))
            nxt.append(((mi[0] + 1,) + mi[1:], path + "I"))
        row = nxt
        yield row


def build_row(g: InputSequence, n: int) -> list[PiNode]:
    """Row n, left to right, obtained by applying P then I to every node of row n-1."""
    if n < 1:
        raise RangeError(f"rows start at 1, got {n}")
    if n > MAX_ROW:
        raise SizeGuard("n", n, "MAX_ROW", MAX_ROW, "row n has 2^(n-1) nodes")
    for row in _rows(g, n):
        pass
    return [PiNode(mi, _value(g, mi), path) for mi, path in row]


def row_sum(g: InputSequence, n: int, method: str = "recurrence") -> Coeff:
    """Sum of row n.

    ``"recurrence"`` uses x_n = sum_j g_j x_{n-j} with x_0 = 1;
    ``"tree"`` adds the node values of :func:`build_row`.
    """
    if method == "tree":
        total = 0
        for node in build_row(g, n):
            total = node.value + total
        return total
    if method != "recurrence":
        raise ValueError(f"unknown method {method!r}")
    return row_sums(g, n)[n - 1]


def row_sums(g: InputSequence, N: int) -> list:
    """[x_1, ..., x_N] by the convolution recurrence."""
    if N < 1:
        raise RangeError(f"N must be >= 1, got {N}")
    x = [Fraction(1)]
    for n in range(1, N + 1):
        acc = 0
        for j in range(1, n + 1):
            gj = g(j)
            if gj != 0:
                acc = gj * x[n - j] + acc
        x.append(acc)
    return x[1:]


def _label(node: PiNode, labeling: str) -> str:
    v = node.value
    vs = format_rational(v) if not isinstance(v, Polynomial) else str(v)
    mi = ",".join(map(str, node.multi_index))
    if labeling == "value":
        return vs
    if labeling == "multi_index":
        return mi
    if labeling == "both":
        return f"{mi}\\n{vs}"
    raise ValueError(f"unknown labeling {labeling!r}")


def export_dot(g: InputSequence, depth: int, labeling: str = "value") -> str:
    """DOT digraph of rows 1..depth; node ids are ``r`` plus the P/I path."""
    if depth < 1:
        raise RangeError("depth must be >= 1")
    if depth > MAX_DOT_DEPTH:
        raise SizeGuard("depth", depth, "MAX_DOT_DEPTH", MAX_DOT_DEPTH, "the tree has 2^depth - 1 nodes")
    lines = [f'digraph "{g.name}" {{', "  node [shape=box];"]
    edges = []
    for row in _rows(g, depth):
        for mi, path in row:
            node = PiNode(mi, _value(g, mi), path)
            lines.append(f'  "r{path}" [label="{_label(node, labeling)}"];')
            if path:
                edges.append(f'  "r{path[:-1]}" -> "r{path}" [label="{path[-1]}"];')
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
