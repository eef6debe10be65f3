"""Integer compositions, the binary-mask bijection and restricted counts.

A composition of n with m parts corresponds to a placement of m-1 bars in
the n-1 gaps between n dots.  Bit i of the mask is the gap between dots
n-1-i and n-i (counting dots from 1), so mask 1 of n=3 is ``2+1``.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

from .errors import RangeError, SizeGuard

MAX_ENUMERATE = 30


class Composition(tuple):
    """An ordered tuple of positive parts."""

    def __new__(cls, parts: Iterable[int]):
        parts = tuple(int(k) for k in parts)
        if not parts:
            raise ValueError("a composition needs at least one part")
        if any(k < 1 for k in parts):
            raise ValueError(f"parts must be positive: {parts}")
        return super().__new__(cls, parts)

    @property
    def total(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    @property
    def factorial(self) -> int:
        """pi! = k1! ... km!"""
        return math.prod(math.factorial(k) for k in self)

    @property
    def shifted_factorial(self) -> int:
        """(pi+1)! = (k1+1)! ... (km+1)!"""
        return math.prod(math.factorial(k + 1) for k in self)

    @property
    def mask(self) -> int:
        return to_mask(self)

    def __str__(self) -> str:
        return "+".join(str(k) for k in self)

    def __repr__(self) -> str:
        return f"Composition({tuple(self)})"


class PartSet(frozenset):
    """Non-empty set of allowed positive parts."""

    def __new__(cls, members: Iterable[int]):
        members = frozenset(int(j) for j in members)
        if not members:
            raise ValueError("part set must be non-empty")
        if min(members) < 1:
            raise ValueError("parts must be positive")
        return super().__new__(cls, members)

    @property
    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self))

    def __repr__(self) -> str:
        return f"PartSet({set(self.sorted)})"


def _check_n(n: int) -> None:
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if n > MAX_ENUMERATE:
        raise SizeGuard("n", n, "MAX_ENUMERATE", MAX_ENUMERATE, "C(n) has 2^(n-1) members")


def from_mask(n: int, mask: int) -> Composition:
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    if not 0 <= mask < 1 << (n - 1):
        raise RangeError(f"mask {mask} outside [0, 2^{n - 1})")
    parts = []
    run = 1
    for i in range(n - 2, -1, -1):
        if mask >> i & 1:
            parts.append(run)
            run = 1
        else:
            run += 1
    parts.append(run)
    return Composition(parts)


def to_mask(parts: Iterable[int]) -> int:
    """Inverse of :func:`from_mask`."""
    parts = tuple(parts)
    n = sum(parts)
    mask = 0
    pos = 0
    for k in parts[:-1]:
        pos += k
        mask |= 1 << (n - 1 - pos)
    return mask


def enumerate_compositions(n: int) -> Iterator[Composition]:
    """All 2^(n-1) compositions of n, lazily, in increasing mask order."""
    _check_n(n)
    for mask in range(1 << (n - 1)):
        yield from_mask(n, mask)


def count_compositions(n: int) -> int:
    return 1 << (n - 1) if n >= 1 else 1


def enumerate_restricted(n: int, parts: Iterable[int]) -> Iterator[Composition]:
    """Compositions of n whose parts all lie in ``parts``, in lexicographic order.

    Depth-first, so only compositions that exist are visited; there is no
    size guard.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")
    allowed = PartSet(parts).sorted
    stack: list[int] = []

    def walk(rest: int) -> Iterator[Composition]:
        if rest == 0:
            yield Composition(stack)
            return
        for j in allowed:
            if j > rest:
                break
            stack.append(j)
            yield from walk(rest - j)
            stack.pop()

    yield from walk(n)


def count_restricted(n: int, parts: Iterable[int]) -> int:
    """Number of compositions of n with parts in ``parts``; n = 0 gives 1.

    Uses x_n = sum_{j in J} x_{n-j} with x_0 = 1.
    """
    if n < 0:
        raise RangeError(f"n must be >= 0, got {n}")
    allowed = PartSet(parts).sorted
    x = [1] + [0] * n
    for m in range(1, n + 1):
        x[m] = sum(x[m - j] for j in allowed if j <= m)
    return x[n]


def digit_sum_s2(k: int) -> int:
    """Number of ones in the binary expansion of k."""
    if k < 0:
        raise RangeError("k must be non-negative")
    return bin(k).count("1")


def composition_products(values, n: int):
    """Yield ``(len(pi), prod(values[k] for k in pi))`` for every pi in C(n).

    ``values`` is indexable by part size (index 0 unused).  Walks the
    compositions depth-first sharing prefix products, so the cost is linear
    in the number of compositions.  Zero factors prune whole subtrees, which
    contribute nothing to any sum of products.
    """
    if n < 1:
        raise RangeError(f"n must be >= 1, got {n}")

    def walk(rest: int, length: int, prod):
        for k in range(1, rest + 1):
            v = values[k]
            if v == 0:
                continue
            p = v if prod is None else prod * v
            if k == rest:
                yield length + 1, p
            else:
                yield from walk(rest - k, length + 1, p)

    yield from walk(n, 0, None)
