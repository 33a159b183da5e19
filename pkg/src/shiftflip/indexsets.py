"""Symbolic subsets of the integers.

The grammar is small on purpose: the whole set, the empty set, the sets
``H(n) = {i : nk < i < n(k + 1/2) for some k}``, translates, negation,
symmetric difference, complement and union.  Membership is decided by
walking the expression tree.  Equality is not provided; compare sets by
sampling membership on a window.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from .errors import DomainError


class IndexSet:
    def __contains__(self, i: int) -> bool:
        raise NotImplementedError

    def period(self) -> int:
        """A (not necessarily least) period of the membership function."""
        raise NotImplementedError

    # operator sugar: A ^ B, A | B, ~A, -A, m + A
    def __xor__(self, other: IndexSet) -> IndexSet:
        return SymmDiff(self, other)

    def __or__(self, other: IndexSet) -> IndexSet:
        return Union(self, other)

    def __invert__(self) -> IndexSet:
        return Complement(self)

    def __neg__(self) -> IndexSet:
        return Negate(self)

    def __radd__(self, m: int) -> IndexSet:
        return Translate(m, self)

    def __add__(self, m: int) -> IndexSet:
        return Translate(m, self)

    def members(self, lo: int, hi: int) -> list[int]:
        return [i for i in range(lo, hi + 1) if i in self]


@dataclass(frozen=True, repr=False)
class _All(IndexSet):
    def __contains__(self, i):
        return True

    def period(self):
        return 1

    def __repr__(self):
        return "ALL"


@dataclass(frozen=True, repr=False)
class _Empty(IndexSet):
    def __contains__(self, i):
        return False

    def period(self):
        return 1

    def __repr__(self):
        return "EMPTY"


ALL = _All()
EMPTY = _Empty()


@dataclass(frozen=True)
class H(IndexSet):
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise DomainError(f"H(n) needs n >= 1, got {self.n}")

    def __contains__(self, i):
        # i = nk + r with 0 <= r < n; the condition reduces to 0 < r < n/2
        r = i % self.n
        return 0 < r and 2 * r < self.n

    def period(self):
        return self.n


@dataclass(frozen=True)
class Translate(IndexSet):
    m: int
    inner: IndexSet

    def __contains__(self, i):
        return (i - self.m) in self.inner

    def period(self):
        return self.inner.period()


@dataclass(frozen=True)
class Negate(IndexSet):
    inner: IndexSet

    def __contains__(self, i):
        return -i in self.inner

    def period(self):
        return self.inner.period()


@dataclass(frozen=True)
class SymmDiff(IndexSet):
    left: IndexSet
    right: IndexSet

    def __contains__(self, i):
        return (i in self.left) != (i in self.right)

    def period(self):
        return lcm(self.left.period(), self.right.period())


@dataclass(frozen=True)
class Complement(IndexSet):
    inner: IndexSet

    def __contains__(self, i):
        return i not in self.inner

    def period(self):
        return self.inner.period()


@dataclass(frozen=True)
class Union(IndexSet):
    left: IndexSet
    right: IndexSet

    def __contains__(self, i):
        return i in self.left or i in self.right

    def period(self):
        return lcm(self.left.period(), self.right.period())


def index_member(A: IndexSet, i: int) -> bool:
    return i in A
