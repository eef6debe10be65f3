"""Iterated sums over compositions for f1 o f2 o ... o fk.

A :class:`ParenShape` is a full binary tree whose leaves are the function
labels 1..k; an internal node ``(L, R)`` means L o R.  Every internal node
carries a composition variable pi_j (numbered in preorder).  With the parent
variable pi_p:

* a right child sums pi_j |= pi_p (one composition per part of pi_p),
* a left child sums pi_j |= |pi_p| (one composition per entry of the length
  vector of pi_p),
* a leaf that is a right child contributes f_{pi_p}, a left child f_{|pi_p|}.

The root sums pi_1 |= n.  Subscripts are vectors and f_(a, b, ...) means
f_a f_b ....
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence, Union

from .algebra import Series
from .compositions import Composition, enumerate_compositions
from .errors import ConstantTermError, RangeError, SizeGuard

MAX_SHAPE_LEAVES = 8
MAX_PLAN_FUNCTIONS = 5
MAX_PLAN_ORDER = 10

Tree = Union[int, tuple]


@dataclass(frozen=True)
class ParenShape:
    tree: Tree

    @property
    def n_leaves(self) -> int:
        return _count(self.tree)

    def leaves(self) -> list[int]:
        out: list[int] = []

        def walk(t):
            if isinstance(t, int):
                out.append(t)
            else:
                walk(t[0])
                walk(t[1])

        walk(self.tree)
        return out

    def __str__(self) -> str:
        return _render(self.tree, top=True)


def _count(t: Tree) -> int:
    return 1 if isinstance(t, int) else _count(t[0]) + _count(t[1])


def _render(t: Tree, top: bool = False) -> str:
    if isinstance(t, int):
        return f"f{t}"
    body = f"{_render(t[0])} o {_render(t[1])}"
    return body if top else f"({body})"


def _shapes(lo: int, hi: int) -> list[Tree]:
    if lo == hi:
        return [lo]
    out = []
    for split in range(lo, hi):
        for left in _shapes(lo, split):
            for right in _shapes(split + 1, hi):
                out.append((left, right))
    return out


def enumerate_shapes(n: int) -> list[ParenShape]:
    """All groupings of n functions, ordered by left-subtree size, recursively."""
    if n < 2:
        raise RangeError("need at least two functions")
    if n > MAX_SHAPE_LEAVES:
        raise SizeGuard("n", n, "MAX_SHAPE_LEAVES", MAX_SHAPE_LEAVES, "shape count grows like Catalan(n-1)")
    return [ParenShape(t) for t in _shapes(1, n)]


@dataclass(frozen=True)
class Constraint:
    """pi_var |= n (kind "n"), pi_var |= pi_parent ("parts") or pi_var |= |pi_parent| ("length")."""

    var: int
    kind: str
    parent: int | None

    def __str__(self) -> str:
        if self.kind == "n":
            return f"pi{self.var} |= n"
        if self.kind == "parts":
            return f"pi{self.var} |= pi{self.parent}"
        return f"pi{self.var} |= |pi{self.parent}|"


@dataclass(frozen=True)
class Selector:
    """Subscript of one function: pi_var itself ("parts") or its lengths ("length")."""

    leaf: int
    var: int
    kind: str

    def __str__(self) -> str:
        return f"pi{self.var}" if self.kind == "parts" else f"|pi{self.var}|"


@dataclass(frozen=True)
class SummationPlan:
    constraints: tuple[Constraint, ...]
    selectors: tuple[Selector, ...]

    def __str__(self) -> str:
        cons = ", ".join(map(str, self.constraints))
        subs = ", ".join(f"f{s.leaf}_{s}" for s in self.selectors)
        return f"{{{cons}; {subs}}}"


def plan_from_shape(shape: ParenShape) -> SummationPlan:
    constraints: list[Constraint] = []
    selectors: dict[int, Selector] = {}
    counter = 0

    def visit(t: Tree, parent: int | None, side: str) -> None:
        nonlocal counter
        kind = "parts" if side == "right" else "length"
        if isinstance(t, int):
            selectors[t] = Selector(t, parent, kind)
            return
        counter += 1
        var = counter
        constraints.append(Constraint(var, "n" if parent is None else kind, parent))
        visit(t[0], var, "left")
        visit(t[1], var, "right")

    if isinstance(shape.tree, int):
        raise RangeError("a shape needs at least two leaves")
    visit(shape.tree, None, "root")
    return SummationPlan(tuple(constraints), tuple(selectors[k] for k in sorted(selectors)))


# -- evaluation ------------------------------------------------------------------

def _flat(groups: tuple[Composition, ...]) -> tuple[int, ...]:
    return tuple(k for g in groups for k in g)


def _lengths(groups: tuple[Composition, ...]) -> tuple[int, ...]:
    return tuple(len(g) for g in groups)


def _per_part(target: tuple[int, ...]) -> Iterator[tuple[Composition, ...]]:
    return product(*(list(enumerate_compositions(t)) for t in target))


def _check_functions(fs: Sequence[Series], shape: ParenShape) -> int:
    if len(fs) != shape.n_leaves:
        raise ValueError(f"shape has {shape.n_leaves} leaves but {len(fs)} functions were given")
    for i, f in enumerate(fs[1:], start=2):
        if f[0] != 0:
            raise ConstantTermError(f"inner function f{i} has nonzero constant term {f[0]}")
    return min(f.order for f in fs)


def _plan_coefficient(fs: Sequence[Series], plan: SummationPlan, n: int):
    values: dict[int, tuple[Composition, ...]] = {}
    by_var: dict[int, list[Selector]] = {}
    for s in plan.selectors:
        by_var.setdefault(s.var, []).append(s)
    cons = plan.constraints
    total = 0

    def weight() -> object:
        w = 1
        for s in plan.selectors:
            groups = values[s.var]
            sub = _flat(groups) if s.kind == "parts" else _lengths(groups)
            f = fs[s.leaf - 1]
            for k in sub:
                c = f[k]
                if c == 0:
                    return 0
                w = w * c
        return w

    def assign(i: int) -> None:
        nonlocal total
        if i == len(cons):
            w = weight()
            if w != 0:
                total = w + total
            return
        c = cons[i]
        if c.kind == "n":
            target: tuple[int, ...] = (n,)
        elif c.kind == "parts":
            target = _flat(values[c.parent])
        else:
            target = _lengths(values[c.parent])
        for groups in _per_part(target):
            values[c.var] = groups
            assign(i + 1)
        del values[c.var]

    assign(0)
    return total


def _memo_coefficients(fs: Sequence[Series], tree: Tree, N: int) -> list:
    @lru_cache(maxsize=None)
    def value(t: Tree, m: int):
        if isinstance(t, int):
            return fs[t - 1][m]
        left, right = t
        acc = 0
        for pi in enumerate_compositions(m):
            w = value(left, len(pi))
            if w == 0:
                continue
            for k in pi:
                w = w * value(right, k)
                if w == 0:
                    break
            if w != 0:
                acc = w + acc
        return acc

    return [value(tree, m) for m in range(1, N + 1)]


def _nested_series(fs: Sequence[Series], t: Tree, N: int) -> Series:
    if isinstance(t, int):
        return fs[t - 1].truncate(N)
    return _nested_series(fs, t[0], N).compose(_nested_series(fs, t[1], N))


def evaluate_iterated(fs: Sequence[Series], shape: ParenShape, N: int, method: str = "plan") -> list:
    """Coefficients a_0..a_N of f1 o ... o fk grouped as ``shape``.

    ``"plan"`` runs the nested composition-chain sums literally,
    ``"memo"`` recurses over the tree caching each (node, integer) pair,
    ``"series"`` composes the series themselves.
    """
    order = _check_functions(fs, shape)
    if N > order:
        raise RangeError(f"N={N} exceeds the common series order {order}")
    if method == "series":
        return list(_nested_series(fs, shape.tree, N).coeffs)
    head = [fs[0][0]]
    if method == "memo":
        return head + _memo_coefficients(fs, shape.tree, N)
    if method != "plan":
        raise ValueError(f"unknown method {method!r}")
    if len(fs) > MAX_PLAN_FUNCTIONS:
        raise SizeGuard("functions", len(fs), "MAX_PLAN_FUNCTIONS", MAX_PLAN_FUNCTIONS, "chain sums grow super-exponentially")
    if N > MAX_PLAN_ORDER:
        raise SizeGuard("N", N, "MAX_PLAN_ORDER", MAX_PLAN_ORDER, "chain sums grow super-exponentially")
    plan = plan_from_shape(shape)
    return head + [_plan_coefficient(fs, plan, n) for n in range(1, N + 1)]


def shape_to_dot(shape: ParenShape, labels: Sequence[str] | None = None) -> str:
    """DOT tree with edges labelled ``|piJ|`` (left) and ``piJ`` (right)."""
    k = shape.n_leaves
    names = list(labels) if labels is not None else [f"f{i}" for i in range(1, k + 1)]
    if len(names) != k:
        raise ValueError(f"need {k} labels, got {len(names)}")
    lines = ["digraph shape {", "  node [shape=plaintext];"]
    edges: list[str] = []
    counter = 0

    def text(t: Tree) -> str:
        if isinstance(t, int):
            return names[t - 1]
        return f"({text(t[0])} o {text(t[1])})"

    def visit(t: Tree, node_id: str) -> None:
        nonlocal counter
        if isinstance(t, int):
            lines.append(f'  "{node_id}" [label="{names[t - 1]}"];')
            return
        counter += 1
        var = counter
        lines.append(f'  "{node_id}" [label="{text(t)}"];')
        edges.append(f'  "{node_id}" -> "{node_id}L" [label="|pi{var}|"];')
        edges.append(f'  "{node_id}" -> "{node_id}R" [label="pi{var}"];')
        visit(t[0], node_id + "L")
        visit(t[1], node_id + "R")

    visit(shape.tree, "t")
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def catalan_count(n: int) -> int:
    """Number of full binary trees with n leaves, binom(2n-2, n-1)/n."""
    return math.comb(2 * n - 2, n - 1) // n
