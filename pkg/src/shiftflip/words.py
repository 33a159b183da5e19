"""Alphabets, finite words and symbol involutions.

Words are plain tuples of symbol strings.  Symbols are strings rather than
characters so that alphabets whose symbols are themselves blocks (higher
block systems, recoded pair alphabets) need no special handling.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from .errors import DomainError

Word = tuple[str, ...]


def as_word(w: str | Iterable[str]) -> Word:
    """Coerce ``w`` to a word.

    A plain string is split into single characters, so ``"011"`` becomes
    ``("0", "1", "1")``; any other iterable is taken symbol by symbol.
    """
    if isinstance(w, str):
        return tuple(w)
    return tuple(str(s) for s in w)


def word_str(w: Sequence[str]) -> str:
    """Render a word compactly: joined when every symbol is one character."""
    if all(len(s) == 1 for s in w):
        return "".join(w)
    return "[" + ",".join(w) + "]"


def block_symbol(w: Sequence[str]) -> str:
    """Name for a symbol whose content is the block ``w``."""
    if len(w) == 1:
        return w[0]
    return word_str(w)


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        syms = tuple(str(s) for s in self.symbols)
        if not syms:
            raise DomainError("alphabet must be nonempty")
        if len(set(syms)) != len(syms):
            raise DomainError(f"duplicate symbols in alphabet {syms!r}")
        object.__setattr__(self, "symbols", syms)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(syms)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, s) -> bool:
        return s in self._index

    def index(self, s: str) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise DomainError(f"symbol {s!r} not in alphabet") from None

    def sort_key(self, w: Sequence[str]) -> tuple[int, ...]:
        """Lexicographic key by symbol order (not by string order)."""
        return tuple(self._index[s] for s in w)

    def word(self, w: str | Iterable[str]) -> Word:
        """Parse ``w`` and check every symbol belongs to the alphabet."""
        out = as_word(w)
        for s in out:
            if s not in self._index:
                raise DomainError(f"symbol {s!r} not in alphabet {self.symbols!r}")
        return out


class SymbolInvolution:
    """A symbol map ``tau`` with ``tau(tau(a)) == a`` for every symbol."""

    __slots__ = ("mapping",)

    def __init__(self, mapping: Mapping[str, str]):
        m = {str(k): str(v) for k, v in mapping.items()}
        for a, b in m.items():
            if b not in m:
                raise DomainError(f"involution image {b!r} of {a!r} is outside its domain")
            if m[b] != a:
                raise DomainError(f"not an involution: {a!r} -> {b!r} -> {m[b]!r}")
        self.mapping = m

    @classmethod
    def identity(cls, symbols: Iterable[str]) -> SymbolInvolution:
        return cls({s: s for s in symbols})

    @classmethod
    def swap(cls, symbols: Iterable[str], a: str, b: str) -> SymbolInvolution:
        m = {s: s for s in symbols}
        m[a], m[b] = b, a
        return cls(m)

    def __call__(self, s: str) -> str:
        try:
            return self.mapping[s]
        except KeyError:
            raise DomainError(f"symbol {s!r} outside the involution's domain") from None

    def __eq__(self, other):
        return isinstance(other, SymbolInvolution) and self.mapping == other.mapping

    def __hash__(self):
        return hash(frozenset(self.mapping.items()))

    def __repr__(self):
        moved = {a: b for a, b in sorted(self.mapping.items()) if a < b}
        if not moved:
            return "SymbolInvolution(identity)"
        return f"SymbolInvolution({moved})"

    @property
    def is_identity(self) -> bool:
        return all(a == b for a, b in self.mapping.items())

    def to_json(self) -> dict[str, str]:
        return dict(sorted(self.mapping.items()))


def star_word(w: Sequence[str], tau: SymbolInvolution) -> Word:
    """``w*``: reverse ``w`` and apply ``tau`` to every symbol."""
    return tuple(tau(s) for s in reversed(w))


def occurs(needle: Sequence[str], hay: Sequence[str]) -> bool:
    """True iff ``needle`` is a factor of ``hay``."""
    k = len(needle)
    needle = tuple(needle)
    hay = tuple(hay)
    return any(hay[i:i + k] == needle for i in range(len(hay) - k + 1))
