"""Conjugacy invariants: the counts ``|F(phi;n)|`` and membership in ``A(phi)``.

``F(phi;n)`` is the set of points fixed by both ``sigma^n`` and ``phi``.  A
conjugacy of shift-flip systems maps ``F(phi;n)`` onto ``F(psi;n)``, so two
flips whose count vectors differ at some ``n`` are not conjugate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import lcm

from .errors import DomainError, PreconditionError
from .flips import OneBlockFlip, SlidingFlip, apply_flip_ep, as_sliding
from .kernels import FixedPointProblem
from .points import EventuallyPeriodicPoint
from .sft import SftPresentation, ep_point_admissible


@dataclass(frozen=True)
class FVector:
    counts: tuple[int, ...]
    label: str = "phi"

    @property
    def horizon(self) -> int:
        return len(self.counts)

    def __getitem__(self, n: int) -> int:
        """``|F(phi;n)|`` (1-based)."""
        if not 1 <= n <= self.horizon:
            raise DomainError(f"n = {n} outside the horizon 1..{self.horizon}")
        return self.counts[n - 1]

    def nesting_failures(self) -> list[tuple[int, int]]:
        """Pairs ``n | n'`` with ``|F(phi;n)| > |F(phi;n')|``; always empty for a flip."""
        bad = []
        for n in range(1, self.horizon + 1):
            for n2 in range(2 * n, self.horizon + 1, n):
                if self[n] > self[n2]:
                    bad.append((n, n2))
        return bad

    def dominated_by(self, other: FVector) -> bool:
        return all(a <= b for a, b in zip(self.counts, other.counts))

    def to_csv(self) -> str:
        return "n,count\n" + "".join(f"{n},{c}\n" for n, c in enumerate(self.counts, 1))

    def to_json(self) -> dict:
        return {"label": self.label, "horizon": self.horizon, "counts": list(self.counts)}


def fvector(X: SftPresentation, phi: SlidingFlip | OneBlockFlip, horizon: int,
            backend: str | None = None) -> FVector:
    """``(|F(phi;1)|, ..., |F(phi;horizon)|)`` by constrained enumeration."""
    phi = as_sliding(phi)
    if phi.space != X:
        raise DomainError("flip is defined on a different space")
    if horizon < 1:
        raise DomainError(f"horizon must be positive, got {horizon}")
    prob = FixedPointProblem(X, phi.table, phi.radius)
    return FVector(tuple(prob.count(n, backend) for n in range(1, horizon + 1)), phi.label)


def fixed_count(X: SftPresentation, phi: SlidingFlip | OneBlockFlip, n: int,
                backend: str | None = None) -> int:
    """The single entry ``|F(phi;n)|``."""
    phi = as_sliding(phi)
    return FixedPointProblem(X, phi.table, phi.radius).count(n, backend)


@dataclass(frozen=True)
class NonConjugacyCertificate:
    first: str
    second: str
    n: int
    first_count: int
    second_count: int
    flips: dict = field(default_factory=dict, compare=False)

    def reversed(self) -> NonConjugacyCertificate:
        return NonConjugacyCertificate(self.second, self.first, self.n, self.second_count,
                                       self.first_count, self.flips)

    def to_json(self) -> dict:
        out = {"flips": [self.first, self.second], "n": self.n,
               "counts": [self.first_count, self.second_count]}
        if self.flips:
            out["flip_data"] = self.flips
        return out


def certify_nonconjugate(f1: FVector, f2: FVector, flips: dict | None = None
                         ) -> NonConjugacyCertificate | None:
    """First ``n`` where the counts differ, or ``None``."""
    if f1.horizon != f2.horizon:
        raise DomainError(f"horizons differ: {f1.horizon} vs {f2.horizon}")
    for n, (a, b) in enumerate(zip(f1.counts, f2.counts), 1):
        if a != b:
            return NonConjugacyCertificate(f1.label, f2.label, n, a, b, flips or {})
    return None


# -- A(phi) ------------------------------------------------------------

@dataclass
class AMembership:
    member: bool
    reason: str
    differences: tuple[int, ...] = ()
    finitary_tails: bool = True

    @property
    def verdict(self) -> str:
        return "IN" if self.member else "NOT_IN"

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason,
                "differences": list(self.differences), "finitary_tails": self.finitary_tails}


def difference_set(phi: SlidingFlip | OneBlockFlip, p: EventuallyPeriodicPoint):
    """``{i : phi(p)_i != p_i}`` as a sorted tuple, or ``None`` when infinite.

    Outside the union of both centers the two points are periodic with a
    common period ``L``, so one period on each side decides the rest.
    """
    q = apply_flip_ep(phi, p)
    L = lcm(len(p.left), len(p.right), len(q.left), len(q.right))
    lo = min(p.center_start, q.center_start)
    hi = max(p.center_end, q.center_end) - 1
    for i in range(hi + 1, hi + L + 1):
        if p.coord(i) != q.coord(i):
            return None
    for i in range(lo - L, lo):
        if p.coord(i) != q.coord(i):
            return None
    return tuple(i for i in range(lo, hi + 1) if p.coord(i) != q.coord(i))


def a_membership(X: SftPresentation, phi: SlidingFlip | OneBlockFlip,
                 p: EventuallyPeriodicPoint) -> AMembership:
    """Decide ``p in A(phi)`` for an eventually periodic point of an SFT.

    In an ``m``-step SFT every allowed ``m``-block is finitary, and each
    tail repeats such blocks, so the finitary-block clause holds on both
    sides; it is recorded rather than searched for.
    """
    if not ep_point_admissible(X, p):
        raise PreconditionError("point is not admissible")
    D = difference_set(phi, p)
    if D is None:
        return AMembership(False, "difference set is infinite")
    if not D:
        return AMembership(False, "point is fixed by the flip")
    return AMembership(True, f"{len(D)} differing coordinates", D)


def fvector_table(vectors: list[FVector]) -> str:
    """CSV with one column per vector."""
    if not vectors:
        return "n\n"
    h = vectors[0].horizon
    head = "n," + ",".join(v.label for v in vectors) + "\n"
    rows = "".join(f"{n}," + ",".join(str(v[n]) for v in vectors) + "\n" for n in range(1, h + 1))
    return head + rows


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
