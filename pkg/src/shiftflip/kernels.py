"""Fixed-point enumeration with a compiled core and a pure-Python fallback.

The one hot loop of the package is a depth-first search for periodic words
satisfying local constraints: every cyclic ``(m+1)``-window must be allowed
and, for a flip with local rule ``Theta`` of radius ``r``, every coordinate
must satisfy ``x_i = Theta(x[-i-r .. -i+r])``.  Coordinates are assigned in
folded order ``0, 1, -1, 2, -2, ...`` so that flip constraints (which tie
``i`` to the window around ``-i``) close early and prune the search.

``_ckernels`` is used when it was built and every window key fits in 63
bits; otherwise ``_fallback`` runs the same algorithm in Python.  When
``q ** width`` is small the compiled path indexes byte tables directly
instead of binary-searching sorted keys.
"""

from __future__ import annotations

from collections.abc import Mapping

import numpy as np

from . import _fallback
from .words import Word

try:
    from . import _ckernels
except ImportError:  # pragma: no cover - exercised when the extension is absent
    _ckernels = None

HAVE_COMPILED = _ckernels is not None
_KEY_LIMIT = 1 << 62
# direct-indexed tables up to this many entries (one byte each)
_DENSE_LIMIT = 1 << 26


def folded_order(n: int) -> list[int]:
    order = [0]
    k = 1
    while len(order) < n:
        order.append(k % n)
        if len(order) < n:
            order.append((-k) % n)
        k += 1
    return order


def build_schedule(n: int, m: int, radius: int | None):
    """Constraint schedule for words of length ``n``.

    Returns ``order`` and flat constraint arrays (see ``_fallback``).
    """
    order = folded_order(n)
    when = {p: t for t, p in enumerate(order)}
    per_step: list[list[tuple[int, tuple[int, ...]]]] = [[] for _ in range(n)]
    for j in range(n):
        pos = tuple((j + t) % n for t in range(m + 1))
        per_step[max(when[p] for p in pos)].append((-1, pos))
    if radius is not None:
        for i in range(n):
            pos = tuple((-i - radius + t) % n for t in range(2 * radius + 1))
            ready = max(when[i], max(when[p] for p in pos))
            per_step[ready].append((i, pos))
    cstart, ctarget, cpoff, clen, cpos = [0], [], [], [], []
    for cons in per_step:
        # admissibility first: it is the cheaper test
        cons.sort(key=lambda c: (c[0] >= 0, len(c[1])))
        for tgt, pos in cons:
            ctarget.append(tgt)
            cpoff.append(len(cpos))
            clen.append(len(pos))
            cpos.extend(pos)
        cstart.append(len(ctarget))
    return order, cstart, ctarget, cpoff, clen, cpos


def _encode(words, index: Mapping[str, int], q: int) -> list[int]:
    out = []
    for w in words:
        k = 0
        for s in w:
            k = k * q + index[s]
        out.append(k)
    return out


class FixedPointProblem:
    """Encoded data for counting words fixed by a flip on a given space.

    ``rule`` maps allowed ``(2r+1)``-windows to output symbols; ``None``
    drops the flip constraint (plain periodic points).
    """

    def __init__(self, space, rule: Mapping[Word, str] | None = None, radius: int | None = None):
        self.space = space
        self.symbols = space.alphabet.symbols
        self.q = len(self.symbols)
        index = {s: i for i, s in enumerate(self.symbols)}
        self.m = space.step
        adm = sorted(_encode(space.allowed, index, self.q))
        self.radius = radius if rule is not None else None
        if rule is not None:
            items = sorted(zip(_encode(rule.keys(), index, self.q),
                               (index[o] for o in rule.values())))
            rk = [k for k, _ in items]
            ro = [o for _, o in items]
        else:
            rk, ro = [], []
        widest = max(self.m + 1, 2 * self.radius + 1 if self.radius is not None else 0)
        self.compiled_ok = HAVE_COMPILED and self.q ** widest < _KEY_LIMIT
        self.adm, self.rk, self.ro = adm, rk, ro
        self.dense = None
        if self.compiled_ok:
            as_arr = lambda v: np.asarray(v, dtype=np.int64)  # noqa: E731
            self.adm, self.rk, self.ro = as_arr(adm), as_arr(rk), as_arr(ro)
            if self.q < 128 and self.q ** widest <= _DENSE_LIMIT:
                d_adm = np.zeros(self.q ** (self.m + 1), dtype=np.int8)
                d_adm[self.adm] = 1
                width = 2 * self.radius + 1 if self.radius is not None else 1
                d_rule = np.full(self.q ** width, -1, dtype=np.int8)
                d_rule[self.rk] = self.ro
                self.dense = (d_adm, d_rule)

    def run(self, n: int, collect: bool = False, backend: str | None = None):
        sched = build_schedule(n, self.m, self.radius)
        use_c = self.compiled_ok if backend is None else backend == "compiled"
        if use_c:
            if not self.compiled_ok:
                raise RuntimeError("compiled backend unavailable for this problem")
            arrs = [np.asarray(a, dtype=np.int64) for a in sched]
            if self.dense is not None:
                count, found = _ckernels.fixed_point_dfs_dense(self.q, n, *arrs, *self.dense,
                                                               collect)
            else:
                count, found = _ckernels.fixed_point_dfs(self.q, n, *arrs, self.adm, self.rk,
                                                         self.ro, collect)
        else:
            adm = [int(k) for k in self.adm]
            rk = [int(k) for k in self.rk]
            ro = [int(k) for k in self.ro]
            count, found = _fallback.fixed_point_dfs(self.q, n, *sched, adm, rk, ro, collect)
        words = [tuple(self.symbols[s] for s in w) for w in found]
        if collect:
            key = self.space.alphabet.sort_key
            words.sort(key=key)
        return count, words

    def count(self, n: int, backend: str | None = None) -> int:
        return self.run(n, False, backend)[0]

    def words(self, n: int, backend: str | None = None) -> list[Word]:
        return self.run(n, True, backend)[1]


def count_fixed_words(space, n: int, rule=None, radius=None, backend=None) -> int:
    return FixedPointProblem(space, rule, radius).count(n, backend)


def list_fixed_words(space, n: int, rule=None, radius=None, backend=None) -> list[Word]:
    return FixedPointProblem(space, rule, radius).words(n, backend)


def backends() -> list[str]:
    return ["compiled", "python"] if HAVE_COMPILED else ["python"]


__all__ = ["FixedPointProblem", "HAVE_COMPILED", "backends", "build_schedule",
           "count_fixed_words", "folded_order", "list_fixed_words"]

