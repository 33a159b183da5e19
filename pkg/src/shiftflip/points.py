"""Bi-infinite points with finite descriptions.

Three kinds are used: periodic points (one period at phase 0), eventually
periodic points (two periodic tails spliced around a finite center) and
lazy points defined by a coordinate function, which is how compositions
of flips, shifts and marker involutions are evaluated on windows.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .errors import DomainError
from .words import Word, as_word, word_str


class Point:
    def coord(self, i: int) -> str:
        raise NotImplementedError

    def window(self, lo: int, hi: int) -> Word:
        """Coordinates ``lo..hi`` inclusive."""
        return tuple(self.coord(i) for i in range(lo, hi + 1))

    def agrees_with(self, other: Point, lo: int, hi: int) -> bool:
        return all(self.coord(i) == other.coord(i) for i in range(lo, hi + 1))


@dataclass(frozen=True)
class PeriodicPoint(Point):
    """The point ``x`` with ``x_i = word[i mod len(word)]``.

    ``period`` is the word length (the claimed period), not necessarily the
    least period; two words of the same length give the same point only if
    they are equal.
    """

    word: Word

    def __post_init__(self):
        w = as_word(self.word)
        if not w:
            raise DomainError("periodic point needs a nonempty word")
        object.__setattr__(self, "word", w)

    @property
    def period(self) -> int:
        return len(self.word)

    def coord(self, i):
        return self.word[i % len(self.word)]

    def shift(self, k: int = 1) -> PeriodicPoint:
        """``sigma^k``: the point ``i -> x_{i+k}``."""
        n = len(self.word)
        k %= n
        return PeriodicPoint(self.word[k:] + self.word[:k])

    def __str__(self):
        return f"({word_str(self.word)})^inf"


@dataclass(frozen=True, eq=False)
class EventuallyPeriodicPoint(Point):
    """``... left left | center | right right ...``.

    The center occupies coordinates ``center_start .. center_start+len-1``.
    The left tail is right-aligned: coordinate ``center_start - 1`` is the
    last symbol of ``left``.  The right tail is left-aligned against the end
    of the center.  The center may be empty.
    """

    left: Word
    center: Word
    right: Word
    center_start: int = 0

    def __post_init__(self):
        for name in ("left", "center", "right"):
            object.__setattr__(self, name, as_word(getattr(self, name)))
        if not self.left or not self.right:
            raise DomainError("tails of an eventually periodic point must be nonempty")

    @property
    def center_end(self) -> int:
        """One past the last center coordinate."""
        return self.center_start + len(self.center)

    def coord(self, i):
        s = self.center_start
        if i < s:
            return self.left[(i - s) % len(self.left)]
        e = s + len(self.center)
        if i >= e:
            return self.right[(i - e) % len(self.right)]
        return self.center[i - s]

    def shift(self, k: int = 1) -> EventuallyPeriodicPoint:
        return EventuallyPeriodicPoint(self.left, self.center, self.right, self.center_start - k)

    def tail_period(self) -> int:
        return lcm(len(self.left), len(self.right))

    def comparison_window(self, other: EventuallyPeriodicPoint) -> tuple[int, int]:
        p = lcm(len(self.left), len(self.right), len(other.left), len(other.right))
        lo = min(self.center_start, other.center_start) - p
        hi = max(self.center_end, other.center_end) + p
        return lo, hi

    def __eq__(self, other):
        if not isinstance(other, EventuallyPeriodicPoint):
            return NotImplemented
        lo, hi = self.comparison_window(other)
        return self.agrees_with(other, lo, hi)

    def __hash__(self):
        return hash((_least_rotation(_primitive_root(self.left)),
                     _least_rotation(_primitive_root(self.right))))

    def __str__(self):
        return (f"...{word_str(self.left)}{word_str(self.left)}"
                f".[{self.center_start}]{word_str(self.center)}."
                f"{word_str(self.right)}{word_str(self.right)}...")

    def to_json(self) -> dict:
        return {"left": list(self.left), "center": list(self.center),
                "right": list(self.right), "center_start": self.center_start}

    @classmethod
    def from_json(cls, obj: dict) -> EventuallyPeriodicPoint:
        return cls(tuple(obj["left"]), tuple(obj["center"]), tuple(obj["right"]),
                   int(obj.get("center_start", 0)))


def _primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def _least_rotation(w: Word) -> Word:
    return min(w[k:] + w[:k] for k in range(len(w)))


class LazyPoint(Point):
    """A point given by a coordinate function; coordinates are memoized."""

    def __init__(self, func: Callable[[int], str], label: str = "lazy"):
        self._func = lru_cache(maxsize=None)(func)
        self.label = label

    def coord(self, i):
        return self._func(i)

    def __repr__(self):
        return f"LazyPoint({self.label})"


def shifted(p: Point, k: int = 1) -> Point:
    """``sigma^k(p)``, keeping the concrete type when there is one."""
    if isinstance(p, (PeriodicPoint, EventuallyPeriodicPoint)):
        return p.shift(k)
    return LazyPoint(lambda i: p.coord(i + k), f"sigma^{k}({getattr(p, 'label', p)})")


def point_coord(p: Point, i: int) -> str:
    return p.coord(i)


def periodic_splice(base: Sequence[str], start: int, replacement: Sequence[str],
                    margin: int | None = None) -> EventuallyPeriodicPoint:
    """The periodic point ``base`` with coordinates ``start..`` overwritten.

    Both tails keep the phase of the periodic point, so the result differs
    from it on at most ``len(replacement)`` coordinates.
    """
    base = as_word(base)
    n = len(base)
    margin = n if margin is None else margin
    lo = start - margin
    hi = start + len(replacement) + margin  # exclusive
    pp = PeriodicPoint(base)
    center = list(pp.window(lo, hi - 1))
    for t, s in enumerate(replacement):
        center[start - lo + t] = s
    left = pp.window(lo - n, lo - 1)
    right = pp.window(hi, hi + n - 1)
    return EventuallyPeriodicPoint(left, tuple(center), right, lo)
