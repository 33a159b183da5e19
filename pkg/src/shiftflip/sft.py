"""Shifts of finite type presented by allowed (or forbidden) blocks.

An ``m``-step presentation lists the allowed ``(m+1)``-blocks.  On
construction the list is trimmed to its essential part, so every allowed
block extends to a bi-infinite point; the transition graph then has the
allowed ``m``-words as vertices and the allowed ``(m+1)``-blocks as edges.
Everything is ordered lexicographically by the alphabet's symbol order.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from functools import cached_property, lru_cache
from itertools import product

from .errors import DomainError, PreconditionError, SearchBoundError
from .points import EventuallyPeriodicPoint, PeriodicPoint
from .words import Alphabet, Word, as_word


class SftPresentation:
    def __init__(self, alphabet: Alphabet | Iterable[str], step: int, allowed: Iterable[Sequence[str]]):
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        if step < 1:
            raise DomainError(f"step must be a positive integer, got {step}")
        blocks = set()
        for b in allowed:
            b = alphabet.word(b)
            if len(b) != step + 1:
                raise DomainError(f"allowed block {b!r} does not have length {step + 1}")
            blocks.add(b)
        blocks = _trim(blocks)
        if not blocks:
            raise DomainError("presentation is empty after trimming")
        self.alphabet = alphabet
        self.step = step
        self.allowed = frozenset(blocks)

    @classmethod
    def from_forbidden(cls, alphabet, step: int, forbidden: Iterable[Sequence[str]]) -> SftPresentation:
        if not isinstance(alphabet, Alphabet):
            alphabet = Alphabet(tuple(alphabet))
        bad = {alphabet.word(b) for b in forbidden}
        for b in bad:
            if len(b) != step + 1:
                raise DomainError(f"forbidden block {b!r} does not have length {step + 1}")
        allowed = (b for b in product(alphabet.symbols, repeat=step + 1) if b not in bad)
        return cls(alphabet, step, allowed)

    @classmethod
    def full_shift(cls, symbols: Iterable[str]) -> SftPresentation:
        return cls.from_forbidden(tuple(symbols), 1, ())

    # -- serialization -------------------------------------------------

    def forbidden(self) -> list[Word]:
        key = self.alphabet.sort_key
        return sorted((b for b in product(self.alphabet.symbols, repeat=self.step + 1)
                       if b not in self.allowed), key=key)

    def to_json(self) -> dict:
        return {"alphabet": list(self.alphabet.symbols), "step": self.step,
                "forbidden": [list(b) for b in self.forbidden()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: dict) -> SftPresentation:
        try:
            alphabet = obj["alphabet"]
            step = obj["step"]
            forbidden = obj["forbidden"]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"presentation JSON is missing field {exc}") from None
        if not isinstance(step, int) or isinstance(step, bool):
            raise DomainError(f"'step' must be an integer, got {step!r}")
        if not isinstance(alphabet, list) or not isinstance(forbidden, list):
            raise DomainError("'alphabet' and 'forbidden' must be JSON arrays")
        return cls.from_forbidden(alphabet, step, [as_word(b) if isinstance(b, list) else as_word(str(b))
                                                   for b in forbidden])

    # -- graph ---------------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[Word, ...]:
        vs = {b[:-1] for b in self.allowed}
        return tuple(sorted(vs, key=self.alphabet.sort_key))

    @cached_property
    def successors(self) -> dict[Word, tuple[tuple[str, Word], ...]]:
        succ: dict[Word, list] = {v: [] for v in self.vertices}
        for b in self.allowed:
            succ[b[:-1]].append((b[-1], b[1:]))
        idx = self.alphabet.index
        return {v: tuple(sorted(e, key=lambda t: idx(t[0]))) for v, e in succ.items()}

    @cached_property
    def predecessors(self) -> dict[Word, tuple[tuple[str, Word], ...]]:
        pred: dict[Word, list] = {v: [] for v in self.vertices}
        for b in self.allowed:
            pred[b[1:]].append((b[0], b[:-1]))
        idx = self.alphabet.index
        return {v: tuple(sorted(e, key=lambda t: idx(t[0]))) for v, e in pred.items()}

    def is_allowed(self, block: Sequence[str]) -> bool:
        return tuple(block) in self.allowed

    def in_language(self, w: Sequence[str]) -> bool:
        """Membership in ``B(X)`` (the empty word is always a member)."""
        w = tuple(w)
        m = self.step
        if len(w) <= m:
            return w in _short_factors(self, len(w))
        return all(w[i:i + m + 1] in self.allowed for i in range(len(w) - m))

    def __repr__(self):
        return (f"SftPresentation(|A|={len(self.alphabet)}, step={self.step}, "
                f"|allowed|={len(self.allowed)})")

    def __eq__(self, other):
        return (isinstance(other, SftPresentation) and self.alphabet == other.alphabet
                and self.step == other.step and self.allowed == other.allowed)

    def __hash__(self):
        return hash((self.alphabet, self.step, self.allowed))


def _trim(blocks: set[Word]) -> set[Word]:
    while True:
        heads = {b[1:] for b in blocks}
        tails = {b[:-1] for b in blocks}
        keep = {b for b in blocks if b[:-1] in heads and b[1:] in tails}
        if keep == blocks:
            return keep
        blocks = keep


@lru_cache(maxsize=256)
def _short_factors(X: SftPresentation, n: int) -> frozenset[Word]:
    return frozenset(v[:n] for v in X.vertices)


# -- language ----------------------------------------------------------

def iter_language(X: SftPresentation, n: int) -> Iterator[Word]:
    """The ``n``-blocks of ``X`` in lexicographic order."""
    if n < 1:
        raise DomainError(f"block length must be positive, got {n}")
    m = X.step
    if n <= m:
        yield from sorted(_short_factors(X, n), key=X.alphabet.sort_key)
        return
    succ = X.successors
    for v in X.vertices:
        stack = [(v, v)]
        # depth-first in reverse order so that output is lexicographic
        while stack:
            w, state = stack.pop()
            if len(w) == n:
                yield w
                continue
            for s, nxt in reversed(succ[state]):
                stack.append((w + (s,), nxt))


def language(X: SftPresentation, n: int) -> list[Word]:
    return list(iter_language(X, n))


def count_language(X: SftPresentation, n: int) -> int:
    """``|B_n(X)|`` by path counting, without enumerating blocks."""
    if n < 1:
        raise DomainError(f"block length must be positive, got {n}")
    m = X.step
    if n <= m:
        return len(_short_factors(X, n))
    counts = {v: 1 for v in X.vertices}
    succ = X.successors
    for _ in range(n - m):
        new = dict.fromkeys(counts, 0)
        for v, c in counts.items():
            if c:
                for _, w in succ[v]:
                    new[w] += c
        counts = new
    return sum(counts.values())


def is_irreducible(X: SftPresentation) -> bool:
    vs = X.vertices
    return (len(_reach(vs[0], X.successors)) == len(vs)
            and len(_reach(vs[0], X.predecessors)) == len(vs))


def _reach(v0, adj) -> set:
    seen = {v0}
    queue = deque([v0])
    while queue:
        v = queue.popleft()
        for _, w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_infinite(X: SftPresentation) -> bool:
    """True iff ``X`` has infinitely many points.

    Only meaningful for irreducible presentations: a strongly connected
    graph is a single simple cycle exactly when it has as many edges as
    vertices.
    """
    if not is_irreducible(X):
        raise PreconditionError("is_infinite requires an irreducible presentation")
    return len(X.allowed) > len(X.vertices)


def synchronizing_block(X: SftPresentation) -> Word:
    """A finitary block: every allowed ``m``-block of an ``m``-step SFT is one.

    Returns the lexicographically least allowed ``m``-block.
    """
    if not is_irreducible(X):
        raise PreconditionError("synchronizing_block requires an irreducible presentation")
    return X.vertices[0]


def periodic_points(X: SftPresentation, n: int) -> list[PeriodicPoint]:
    """All points with ``sigma^n x = x``, one word of length ``n`` each."""
    from .kernels import list_fixed_words
    if n < 1:
        raise DomainError(f"period must be positive, got {n}")
    return [PeriodicPoint(w) for w in list_fixed_words(X, n)]


def count_periodic_points(X: SftPresentation, n: int) -> int:
    from .kernels import count_fixed_words
    if n < 1:
        raise DomainError(f"period must be positive, got {n}")
    return count_fixed_words(X, n)


def ep_point_admissible(X: SftPresentation, p: EventuallyPeriodicPoint) -> bool:
    m = X.step
    lo = p.center_start - len(p.left) - m - 1
    hi = p.center_end + len(p.right) + m
    w = p.window(lo, hi)
    if any(s not in X.alphabet for s in w):
        return False
    return all(w[i:i + m + 1] in X.allowed for i in range(len(w) - m))


def periodic_admissible(X: SftPresentation, word: Sequence[str]) -> bool:
    """All cyclic ``(m+1)``-windows of ``word`` are allowed."""
    word = tuple(word)
    n, m = len(word), X.step
    ext = word * (1 + (m + n - 1) // n)
    ext = ext[:n + m]
    return all(ext[i:i + m + 1] in X.allowed for i in range(n))


# -- connector searches ------------------------------------------------

def iter_connectors(X: SftPresentation, prefix: Sequence[str], suffix: Sequence[str],
                    length: int) -> Iterator[Word]:
    """Words ``w`` of the given length with ``prefix + w + suffix`` in ``B(X)``.

    Yielded in lexicographic order.  Branches that cannot reach ``suffix``
    in the remaining number of steps are pruned.
    """
    prefix, suffix = tuple(prefix), tuple(suffix)
    m = X.step
    symbols = X.alphabet.symbols
    succ = X.successors

    @lru_cache(maxsize=None)
    def can_finish(state: Word, remaining: int) -> bool:
        # state: the last m symbols written so far
        if remaining == 0:
            return X.in_language(state + suffix)
        return any(can_finish(nxt, remaining - 1) for _, nxt in succ[state])

    def rec(cur: Word, remaining: int):
        if remaining == 0:
            if X.in_language(cur + suffix):
                yield cur[len(prefix):]
            return
        options = [s for s, _ in succ[cur[-m:]]] if len(cur) >= m else symbols
        for s in options:
            nxt = cur + (s,)
            if len(nxt) <= m:
                if not X.in_language(nxt):
                    continue
                if len(nxt) == m and not can_finish(nxt, remaining - 1):
                    continue
            elif not can_finish(nxt[-m:], remaining - 1):
                continue
            yield from rec(nxt, remaining - 1)

    if X.in_language(prefix):
        yield from rec(prefix, length)


def shortest_connector(X: SftPresentation, prefix: Sequence[str], suffix: Sequence[str],
                       max_length: int, min_length: int = 0, exclude=None) -> Word:
    """Least (shortest, then lexicographic) connector not rejected by ``exclude``."""
    for n in range(min_length, max_length + 1):
        for w in iter_connectors(X, prefix, suffix, n):
            if exclude is None or not exclude(w):
                return w
    raise SearchBoundError(
        f"no connector between {prefix!r} and {suffix!r} of length <= {max_length}")


def graph_diameter_bound(X: SftPresentation) -> int:
    """Vertex count plus step: bounds the shortest connector in irreducible ``X``."""
    return len(X.vertices) + X.step
