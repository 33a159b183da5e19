"""The coded system ``W`` over ``{0, 1, 2}`` built from stable blocks.

With ``I = [4, 8] u [16, 32] u [64, 128] u ...`` and
``J = {(0,0), (1,1), (1,2), (2,1), (2,2)}``, a block ``w`` is stable when
``12`` and ``21`` do not occur in it and every run ``0 a^n 0`` inside the
padded block ``0^(|w|+1) w 0^(|w|+1)`` has ``a = 1`` exactly when
``(n, (x[i-n], x[j+n]))`` lies in ``(I x J) u (I^c x J^c)``.

``W`` is not presented by a graph here; everything works at block level.
"""

from __future__ import annotations

import random
from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DomainError, PreconditionError
from .words import SymbolInvolution, Word, as_word, occurs, star_word, word_str

SYMBOLS = ("0", "1", "2")
J = frozenset({("0", "0"), ("1", "1"), ("1", "2"), ("2", "1"), ("2", "2")})


def in_I(n: int) -> bool:
    """``n in [2^(2k), 2^(2k+1)]`` for some ``k >= 1``."""
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    b = n.bit_length() - 1  # 2^b <= n < 2^(b+1)
    if b % 2 == 0:
        return b >= 2
    return b >= 3 and n == 1 << b


def in_J(a: str, b: str) -> bool:
    return (a, b) in J


def _check_symbols(w: Word):
    for s in w:
        if s not in SYMBOLS:
            raise DomainError(f"symbol {s!r} is not one of 0, 1, 2")


def _runs(x: Word, lo: int, hi: int) -> Iterator[tuple[int, int, str]]:
    """Maximal runs ``x[i..j] = 0 a^n 0`` with ``lo <= i < j <= hi`` (0-based)."""
    i = lo
    while i < hi:
        if x[i] == "0" and x[i + 1] != "0":
            a = x[i + 1]
            j = i + 1
            while j <= hi and x[j] == a:
                j += 1
            if j <= hi and x[j] == "0":
                yield i, j, a
            i = j
        else:
            i += 1


def stability(w) -> tuple[bool, str]:
    """``(stable, reason)``; reason is ``""``, ``"condition 1"`` or ``"condition 2"``."""
    w = as_word(w)
    _check_symbols(w)
    for u, v in zip(w, w[1:]):
        if {u, v} == {"1", "2"}:
            return False, "condition 1"
    L = len(w)
    # x[1 .. 3L+2] = 0^(L+1) w 0^(L+1); index 0 is padding so positions match
    x = ("0",) * (L + 2) + w + ("0",) * (L + 1)
    for i, j, a in _runs(x, L + 1, 2 * L + 2):
        n = j - i - 1
        if not (1 <= i - n and j + n <= 3 * L + 2):
            raise AssertionError("condition (2) reads outside the padded block")
        rule_says_one = in_I(n) == in_J(x[i - n], x[j + n])
        if (a == "1") != rule_says_one:
            return False, "condition 2"
    return True, ""


def is_stable(w) -> bool:
    return stability(w)[0]


def iter_candidates(L: int) -> Iterator[Word]:
    """Words of length ``L`` avoiding ``12`` and ``21``, lexicographic."""
    def rec(prefix: Word):
        if len(prefix) == L:
            yield prefix
            return
        for s in SYMBOLS:
            if prefix and {prefix[-1], s} == {"1", "2"}:
                continue
            yield from rec(prefix + (s,))
    yield from rec(())


@lru_cache(maxsize=64)
def stable_of_length(L: int) -> tuple[Word, ...]:
    return tuple(w for w in iter_candidates(L) if is_stable(w))


def enumerate_stable(L: int) -> list[Word]:
    """Stable words of length ``1..L``, by length then lexicographically."""
    if L < 1:
        raise DomainError("L must be positive")
    out: list[Word] = []
    for n in range(1, L + 1):
        out.extend(stable_of_length(n))
    return out


def code_element(w) -> Word:
    """The code block ``0^(|w|+1) w 0^(|w|+1)`` of a stable word."""
    w = as_word(w)
    if not is_stable(w):
        raise PreconditionError(f"{word_str(w)} is not stable")
    pad = ("0",) * (len(w) + 1)
    return pad + w + pad


def block_in_W(w, bound: int) -> Word | None:
    """Least stable block of length ``<= bound`` containing ``w``, or ``None`` (unknown)."""
    w = as_word(w)
    _check_symbols(w)
    for n in range(max(1, len(w)), bound + 1):
        for s in stable_of_length(n):
            if occurs(w, s):
                if not is_stable(s):
                    raise AssertionError("certificate failed re-check")
                return s
    return None


# -- reports -----------------------------------------------------------

@dataclass
class Report:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"{self.name}: {'pass' if self.passed else 'FAIL'}"


def verify_property_a(j: int, count: int, bound: int) -> Report:
    """Witnesses ``n <= bound`` in each of the four classes of ``(n, n+j)``."""
    if j == 0:
        raise DomainError("j must be nonzero")

    def member(k):
        return k >= 1 and in_I(k)

    classes = {"both_in": [], "first_in": [], "second_in": [], "neither": []}
    for n in range(1, bound + 1):
        key = {(True, True): "both_in", (True, False): "first_in",
               (False, True): "second_in", (False, False): "neither"}[(member(n), member(n + j))]
        if len(classes[key]) < count:
            classes[key].append(n)
    passed = all(len(v) >= count for v in classes.values())
    return Report(f"property (a), j={j}", passed,
                  {"j": j, "count": count, "bound": bound, "witnesses": classes})


def reversal_closure_check(L: int) -> Report:
    failures = [w for w in enumerate_stable(L) if not is_stable(w[::-1])]
    asym = next((w for w in enumerate_stable(L) if w != w[::-1]), None)
    return Report(f"reversal closure, L={L}", not failures,
                  {"checked": len(enumerate_stable(L)),
                   "failures": [word_str(w) for w in failures],
                   "asymmetric_example": word_str(asym) if asym else None})


def concatenation_check(samples: int = 100, L: int = 8, seed: int = 0) -> Report:
    """Property (e) on sampled pairs, plus triple concatenations of code blocks.

    Sampling uses a fixed-seed generator, so the report is reproducible.
    """
    rng = random.Random(seed)
    pool = enumerate_stable(L)
    failures = []
    for _ in range(samples):
        w, w2 = rng.choice(pool), rng.choice(pool)
        n = max(len(w), len(w2))
        block = w + ("0",) * (n + 1) + w2
        if not is_stable(block):
            failures.append(word_str(block))
    short = enumerate_stable(min(L, 5))
    triples = 0
    for _ in range(max(1, samples // 5)):
        parts = [code_element(rng.choice(short)) for _ in range(3)]
        block = parts[0] + parts[1] + parts[2]
        triples += 1
        if not is_stable(block):
            failures.append(word_str(block))
    return Report(f"concatenation, {samples} pairs", not failures,
                  {"pairs": samples, "triples": triples, "failures": failures})


INVOLUTIONS = {
    "identity": SymbolInvolution.identity(SYMBOLS),
    "0<->1": SymbolInvolution.swap(SYMBOLS, "0", "1"),
    "0<->2": SymbolInvolution.swap(SYMBOLS, "0", "2"),
    "1<->2": SymbolInvolution.swap(SYMBOLS, "1", "2"),
}

# blocks whose stability is fixed by property (b); cited when a map breaks them
_CITED = (("1",) * 4, ("2",) * 3, ("0",) * 4)


def flip_rigidity_scan(L: int) -> Report:
    """Which symbol involutions keep the stable blocks of length ``<= L`` stable
    under ``w -> w*``."""
    pool = enumerate_stable(L)
    survivors = []
    results = {}
    for name, tau in INVOLUTIONS.items():
        first = next((w for w in pool if not is_stable(star_word(w, tau))), None)
        cited = [f"{word_str(w)} -> {word_str(star_word(w, tau))}" for w in _CITED
                 if len(w) <= L and is_stable(w) and not is_stable(star_word(w, tau))]
        if first is None:
            survivors.append(name)
        results[name] = {
            "survives": first is None,
            "first_counterexample": None if first is None
            else f"{word_str(first)} -> {word_str(star_word(first, tau))}",
            "cited": cited,
        }
    return Report(f"rigidity, L={L}", survivors == ["identity"],
                  {"L": L, "survivors": survivors, "involutions": results})


# -- finitely supported points -----------------------------------------

@dataclass(frozen=True)
class W0Point:
    """A point of ``W`` with finitely many nonzero coordinates."""

    support: tuple[tuple[int, str], ...]

    @classmethod
    def from_dict(cls, d: dict[int, str]) -> W0Point:
        for s in d.values():
            if s not in ("1", "2"):
                raise DomainError(f"support symbols must be 1 or 2, got {s!r}")
        return cls(tuple(sorted(d.items())))

    def coord(self, i: int) -> str:
        return dict(self.support).get(i, "0")

    def block(self) -> tuple[int, Word]:
        """``(start, x[start .. end])`` spanning the support."""
        if not self.support:
            return 0, ()
        lo, hi = self.support[0][0], self.support[-1][0]
        return lo, tuple(self.coord(i) for i in range(lo, hi + 1))


def w0_certificate(p: W0Point) -> Word | None:
    """A stable block ``0^k s 0^k`` with ``s`` the support block.

    ``0^inf . u 0^inf`` lies in ``W`` for every stable ``u``, so this
    certifies ``p in W``.
    """
    _, s = p.block()
    if not s:
        return ("0",)
    for k in range(len(s) + 1):
        u = ("0",) * k + s + ("0",) * k
        if is_stable(u):
            return u
    return None


@dataclass(frozen=True)
class ZeroSet:
    """``Z(x)``: every integer except the finite set ``nonzero``."""

    nonzero: frozenset[int]

    def __contains__(self, i: int) -> bool:
        return i not in self.nonzero

    @property
    def is_all(self) -> bool:
        return not self.nonzero

    def __str__(self):
        if self.is_all:
            return "Z = all integers"
        return "Z = integers minus " + _intervals(sorted(self.nonzero))


def _intervals(xs: list[int]) -> str:
    parts = []
    start = prev = xs[0]
    for x in xs[1:] + [None]:
        if x is not None and x == prev + 1:
            prev = x
            continue
        parts.append(f"[{start},{prev}]" if start != prev else f"{{{start}}}")
        if x is not None:
            start = prev = x
    return " u ".join(parts)


def zero_set(p: W0Point) -> ZeroSet:
    if w0_certificate(p) is None:
        raise PreconditionError("point has no stable certificate")
    return ZeroSet(frozenset(i for i, _ in p.support))


def reconstruct(Z: ZeroSet) -> W0Point:
    """The unique assignment of 1/2 on the complement of ``Z`` allowed by (g).

    Whether a context pair lies in ``J`` depends only on which of its two
    symbols are zero, so each run's symbol is forced by ``Z`` alone.
    """
    nz = sorted(Z.nonzero)
    out: dict[int, str] = {}
    k = 0
    while k < len(nz):
        start = nz[k]
        while k + 1 < len(nz) and nz[k + 1] == nz[k] + 1:
            k += 1
        end = nz[k]
        n = end - start + 1
        left_zero = (start - 1 - n) in Z
        right_zero = (end + 1 + n) in Z
        pair_in_J = left_zero == right_zero
        a = "1" if in_I(n) == pair_in_J else "2"
        for i in range(start, end + 1):
            out[i] = a
        k += 1
    return W0Point.from_dict(out)


def property_h_check(p: W0Point, q: W0Point) -> Report:
    """Equal zero sets force equal points; flags which input breaks (g) otherwise."""
    Zp, Zq = ZeroSet(frozenset(i for i, _ in p.support)), ZeroSet(frozenset(i for i, _ in q.support))
    if Zp != Zq:
        return Report("property (h)", True, {"equal_zero_sets": False})
    r = reconstruct(Zp)
    bad = [name for name, x in (("first", p), ("second", q)) if x != r]
    return Report("property (h)", not bad,
                  {"equal_zero_sets": True, "reconstruction": dict(r.support),
                   "contradicts_g": bad})
