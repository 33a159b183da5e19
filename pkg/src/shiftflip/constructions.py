"""Witness points and flip modifications.

* ``lemma22``: blocks ``a, b`` around a symbol ``f`` such that ``fbfa``
  occurs in no ``(|a|+1)``-periodic point.
* ``lemma23_witness``: from a flip-fixed symbol, a point that the flip moves
  in finitely many (but some) coordinates.
* ``prop_c``: a point of ``A(phi)`` or ``A(sigma phi)``.
* ``prop_d``: the marker involution ``theta`` and the flip ``psi = theta phi``
  with ``|F(phi;n)| <= |F(psi;n)|``, strictly at the witness period.
* ``theorem_a``: iterates the above to collect flips with distinct counts.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from itertools import product
from math import lcm

from .errors import ConsistencyError, ConstructionError, DomainError, PreconditionError, \
    SearchBoundError
from .flips import DEFAULT_BLOCK_CAP, ConjugacyDescriptor, OneBlockFlip, SlidingFlip, \
    apply_flip_periodic, as_one_block, as_sliding, compose_shift, higher_block, \
    higher_block_code, recode_one_block, validate_flip
from .indexsets import H, IndexSet
from .invariants import FVector, a_membership, certify_nonconjugate, fvector
from .kernels import list_fixed_words
from .points import EventuallyPeriodicPoint, LazyPoint, PeriodicPoint, Point, periodic_splice
from .sft import SftPresentation, count_language, ep_point_admissible, graph_diameter_bound, \
    is_infinite, is_irreducible, iter_connectors, periodic_admissible, periodic_points, \
    shortest_connector, synchronizing_block
from .words import Word, occurs, star_word, word_str


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _require_synchronized_infinite(X: SftPresentation):
    if not is_irreducible(X):
        raise PreconditionError("the space must be irreducible")
    if not is_infinite(X):
        raise PreconditionError("the space must be infinite")


# -- block search ------------------------------------------------------

@dataclass(frozen=True)
class Lemma22Blocks:
    f: str
    a: Word
    b: Word

    def to_json(self) -> dict:
        return {"f": self.f, "a": list(self.a), "b": list(self.b)}


def is_af_power(w: Word, a: Word, f: str) -> bool:
    """``w == (af)^n a`` for some ``n >= 0``."""
    unit = a + (f,)
    if (len(w) - len(a)) % len(unit):
        return False
    k = (len(w) - len(a)) // len(unit)
    return w == unit * k + a


def lemma22(X: SftPresentation, f: str, max_length: int | None = None) -> Lemma22Blocks:
    """Shortest, then lexicographically least, blocks ``a`` and ``b``.

    ``a`` may be empty (when ``ff`` is allowed).  All three properties and
    both minimality conditions are re-checked before returning; property
    (c) by listing every ``(|a|+1)``-periodic point.
    """
    _require_synchronized_infinite(X)
    if f not in X.alphabet:
        raise DomainError(f"symbol {f!r} not in alphabet")
    bound = max_length if max_length is not None else 4 * graph_diameter_bound(X)
    a = shortest_connector(X, (f,), (f,), bound)
    b = shortest_connector(X, (f,), (f,), bound, exclude=lambda w: is_af_power(w, a, f))
    blocks = Lemma22Blocks(f, a, b)
    failures = lemma22_failures(X, blocks)
    if failures:
        raise ConstructionError("block search postconditions failed: " + "; ".join(failures))
    return blocks


def lemma22_failures(X: SftPresentation, blocks: Lemma22Blocks) -> list[str]:
    """Independent check of properties (a)-(c) and of minimality."""
    f, a, b = blocks.f, blocks.a, blocks.b
    bad = []
    if not X.in_language((f,) + a + (f,)):
        bad.append("faf not allowed")
    if not X.in_language((f,) + b + (f,)):
        bad.append("fbf not allowed")
    if f in b:
        bad.append("f occurs in b")
    if is_af_power(b, a, f):
        bad.append("b has the form (af)^n a")
    pattern = (f,) + b + (f,) + a
    for p in periodic_points(X, len(a) + 1):
        if occurs(pattern, p.window(0, len(pattern) + p.period - 1)):
            bad.append(f"fbfa occurs in the periodic point {p}")
    for n in range(len(a)):
        if next(iter_connectors(X, (f,), (f,), n), None) is not None:
            bad.append(f"a is not minimal (length {n} works)")
    for n in range(len(b)):
        if any(not is_af_power(w, a, f) for w in iter_connectors(X, (f,), (f,), n)):
            bad.append(f"b is not minimal (length {n} works)")
    return bad


# -- A(phi) witnesses --------------------------------------------------

@dataclass
class Lemma23Witness:
    blocks: Lemma22Blocks
    N: int
    M: int
    w: Word
    point: EventuallyPeriodicPoint

    def to_json(self) -> dict:
        return {"blocks": self.blocks.to_json(), "N": self.N, "M": self.M,
                "w": list(self.w), "point": self.point.to_json()}


def lemma23_N(blocks: Lemma22Blocks) -> int:
    """Least positive ``N`` with ``2|a| + 1 + 2(|b| + 1) <= (N - 1)(|a| + 1)``."""
    la, lb = len(blocks.a), len(blocks.b)
    return max(1, 1 + _ceil_div(2 * la + 1 + 2 * (lb + 1), la + 1))


def lemma23_witness(X: SftPresentation, phi: OneBlockFlip, f: str) -> Lemma23Witness:
    """The point ``... a*f a*f [afa (fb)^2 (fa)^2N] fa fa ...`` centered at 0."""
    phi = as_one_block(phi)
    if phi.tau(f) != f:
        raise PreconditionError(f"the symbol map moves {f!r}")
    blocks = lemma22(X, f)
    a, b = blocks.a, blocks.b
    N = lemma23_N(blocks)
    fa = (f,) + a
    fb = (f,) + b
    w = a + (f,) + a + fb * 2 + fa * (2 * N)
    M = len(a) + len(b) + 1 + N * (len(a) + 1)
    if len(w) != 2 * M + 1:
        raise ConstructionError(f"|w| = {len(w)} but 2M+1 = {2 * M + 1}")
    y = EventuallyPeriodicPoint(phi.star(a) + (f,), w, fa, -M)
    if not ep_point_admissible(X, y):
        raise ConstructionError("witness point is not admissible")
    if phi.star(w) == w:
        raise ConstructionError("w* = w")
    mem = a_membership(X, phi, y)
    if not mem.member:
        raise ConstructionError(f"witness not in A(phi): {mem.reason}")
    return Lemma23Witness(blocks, N, M, w, y)


def splice_witness(X: SftPresentation, phi: SlidingFlip | OneBlockFlip, base: PeriodicPoint,
                   max_length: int = 6, start: int = 1) -> EventuallyPeriodicPoint:
    """A point of ``A(phi)`` that agrees with the ``phi``-fixed point ``base``
    outside a short window starting at ``start``.

    Agreement on both tails makes the difference set finite; the first
    admissible modification (shortest, then lexicographic) that the flip
    moves is returned.
    """
    phi = as_sliding(phi)
    if apply_flip_periodic(phi, base) != base:
        raise PreconditionError("base point is not fixed by the flip")
    symbols = X.alphabet.symbols
    for L in range(1, max_length + 1):
        for repl in product(symbols, repeat=L):
            if repl == base.window(start, start + L - 1):
                continue
            y = periodic_splice(base.word, start, repl, margin=phi.radius + X.step)
            if not ep_point_admissible(X, y):
                continue
            if a_membership(X, phi, y).member:
                return y
    raise SearchBoundError(f"no modification of length <= {max_length} leaves the fixed set")


# -- Proposition C -----------------------------------------------------

A_OF_FLIP = "A_OF_FLIP"
A_OF_SHIFT_FLIP = "A_OF_SHIFT_FLIP"


@dataclass
class PropCResult:
    branch: str
    witness: EventuallyPeriodicPoint
    space: SftPresentation
    flip: SlidingFlip
    f: str
    v: Word
    w: Word
    chain: list[ConjugacyDescriptor] = field(default_factory=list)
    lemma23: Lemma23Witness | None = None

    def to_json(self) -> dict:
        out = {"branch": self.branch, "f": self.f, "v": list(self.v), "w": list(self.w),
               "witness": self.witness.to_json(),
               "chain": [c.to_json() for c in self.chain]}
        if self.lemma23 is not None:
            out["lemma23"] = self.lemma23.to_json()
        return out


def to_one_step(X: SftPresentation, phi: SlidingFlip | OneBlockFlip,
                block_cap: int = DEFAULT_BLOCK_CAP):
    """A conjugate one-block flip on a one-step space.

    Recodes to one-block form, then passes to an odd higher block system so
    every symbol is finitary; odd passes keep the flip's conjugacy class.
    Returns ``(Y, psi, chain)``.
    """
    chain: list[ConjugacyDescriptor] = []
    phi = as_sliding(phi)
    if phi.radius > 0:
        X, phi1, desc = recode_one_block(X, phi, block_cap)
        chain.append(desc)
    else:
        phi1 = as_one_block(phi)
    if X.step > 1:
        N = X.step if X.step % 2 else X.step + 1
        needed = count_language(X, N + 1)
        if needed > block_cap:
            raise SearchBoundError(
                f"higher block pass needs {needed} blocks, above the cap {block_cap}")
        chain.append(higher_block_code(X, N))
        X, phi1 = higher_block(X, phi1, N)
    return X, phi1, chain


def prop_c(X: SftPresentation, phi: SlidingFlip | OneBlockFlip,
           max_length: int | None = None) -> PropCResult:
    """A point of ``A(phi)`` (branch ``A_OF_FLIP``) or of ``A(sigma phi)``.

    The connector ``w`` with ``f* w f`` allowed is taken nonempty: for an
    even ``|w| = 2N`` the construction needs ``N >= 1``.
    """
    _require_synchronized_infinite(X)
    Y, phi1, chain = to_one_step(X, phi)
    f = synchronizing_block(Y)[0]
    fs = phi1.tau(f)
    bound = max_length if max_length is not None else 4 * graph_diameter_bound(Y)
    v = shortest_connector(Y, (f,), (f,), bound)
    w = shortest_connector(Y, (fs,), (f,), bound, min_length=1)
    left = phi1.star(v) + (fs,)
    right = (f,) + v
    # odd |w| = 2N+1 sits on [-N, N]; even |w| = 2N on [-N, N-1]
    x = EventuallyPeriodicPoint(left, w, right, -(len(w) // 2))
    if len(w) % 2:
        branch, flip = A_OF_FLIP, phi1.as_sliding()
    else:
        branch, flip = A_OF_SHIFT_FLIP, compose_shift(phi1, 1)
    if not ep_point_admissible(Y, x):
        raise ConstructionError("Proposition C point is not admissible")
    result = PropCResult(branch, x, Y, flip, f, v, w, chain)
    if phi1.star(w) != w:
        mem = a_membership(Y, flip, x)
        if not mem.member:
            raise ConstructionError(f"Proposition C point not in A: {mem.reason}")
        return result
    # the point is fixed by the branch flip; move it while keeping the tails
    if branch == A_OF_FLIP and phi1.tau(f) == f:
        l23 = lemma23_witness(Y, phi1, f)
        result.witness, result.lemma23 = l23.point, l23
    else:
        base = _periodic_fixed_point(Y, flip)
        result.witness = splice_witness(Y, flip, base)
    mem = a_membership(Y, flip, result.witness)
    if not mem.member:
        raise ConstructionError(f"delegated witness not in A: {mem.reason}")
    return result


def _periodic_fixed_point(X: SftPresentation, phi: SlidingFlip, max_period: int = 64) -> PeriodicPoint:
    for n in range(1, max_period + 1):
        words = list_fixed_words(X, n, phi.table, phi.radius)
        if words:
            return PeriodicPoint(words[0])
    raise SearchBoundError(f"no fixed periodic point of period <= {max_period}")


# -- Proposition D -----------------------------------------------------

@dataclass
class PropDData:
    space: SftPresentation
    phi: OneBlockFlip
    blocks: Lemma22Blocks
    c: Word
    N: int
    d: Word
    alpha: int
    beta: int
    w: Word
    n: int
    m: int
    z: PeriodicPoint
    psi: SlidingFlip | None = None
    verification: dict = field(default_factory=dict)
    a_witness: EventuallyPeriodicPoint | None = None

    @property
    def f(self) -> str:
        return self.blocks.f

    @property
    def radius(self) -> int:
        return self.alpha + self.beta

    @property
    def patterns(self) -> frozenset[Word]:
        ds = self.phi.star(self.d)
        cs = self.phi.star(self.c)
        return frozenset({ds + self.c + self.d, ds + cs + self.d})

    def star(self, w) -> Word:
        return self.phi.star(w)

    def to_json(self) -> dict:
        out = {
            "f": self.f, "a": list(self.blocks.a), "b": list(self.blocks.b),
            "c": list(self.c), "N": self.N, "d": list(self.d),
            "alpha": self.alpha, "beta": self.beta, "w": list(self.w),
            "n": self.n, "m": self.m, "z": list(self.z.word),
            "radius": self.radius,
        }
        if self.psi is not None:
            out["psi_rule_sha256"] = rule_digest(self.psi)
        if self.verification:
            out["verification"] = self.verification
        if self.a_witness is not None:
            out["a_witness"] = self.a_witness.to_json()
        return out


def rule_digest(phi: SlidingFlip) -> str:
    blob = json.dumps(phi.to_json(), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def lemma_d_N(blocks: Lemma22Blocks, c: Word) -> int:
    """Least positive ``N`` with ``|a| + 2|b| + |c| + 2 <= (N - 1)(|a| + 1)``."""
    la, lb = len(blocks.a), len(blocks.b)
    return max(1, 1 + _ceil_div(la + 2 * lb + len(c) + 2, la + 1))


def find_c(X: SftPresentation, phi: OneBlockFlip, f: str, max_length: int) -> Word:
    """Shortest odd ``c`` (lexicographic tie-break) with ``f* c f`` allowed and ``c* != c``."""
    fs = phi.tau(f)
    for L in range(1, max_length + 1, 2):
        for c in iter_connectors(X, (fs,), (f,), L):
            if phi.star(c) != c:
                return c
    raise SearchBoundError(f"no odd block c of length <= {max_length} with c* != c")


def markers(data: PropDData, p: Point, lo: int, hi: int) -> list[int]:
    """Marker positions in ``[lo, hi]``, with the separation law asserted."""
    pats = data.patterns
    b = data.beta
    found = [i for i in range(lo, hi + 1) if p.window(i - b, i + b) in pats]
    gap = len(data.c) + len(data.d) + 1
    for x, y in zip(found, found[1:]):
        if y - x < gap:
            raise ConsistencyError(f"markers {x} and {y} are closer than {gap}")
    return found


def is_marker(data: PropDData, p: Point, i: int) -> bool:
    b = data.beta
    return p.window(i - b, i + b) in data.patterns


def theta_coord(data: PropDData, A: IndexSet, p: Point, i: int) -> str:
    """``theta_A(p)_i``."""
    al = data.alpha
    hits = [c for c in range(i - al, i + al + 1) if is_marker(data, p, c)]
    if len(hits) > 1:
        raise ConsistencyError(f"coordinate {i} lies near markers {hits}")
    if hits and hits[0] in A:
        return data.phi.tau(p.coord(2 * hits[0] - i))
    return p.coord(i)


def theta_apply(data: PropDData, A: IndexSet, p: Point) -> Point:
    """``theta_A(p)``: periodic in, periodic out; otherwise a lazy point."""
    if isinstance(p, PeriodicPoint):
        P = lcm(p.period, A.period())
        out = PeriodicPoint(tuple(theta_coord(data, A, p, i) for i in range(P)))
        if not periodic_admissible(data.space, out.word):
            raise ConsistencyError("theta produced an inadmissible point")
        return out
    return LazyPoint(lambda i: theta_coord(data, A, p, i), f"theta({getattr(p, 'label', 'x')})")


def psi_rule(data: PropDData):
    """The local rule of ``theta phi`` with radius ``alpha + beta``.

    The window ``u`` around ``-i`` maps to the window ``u*`` of ``phi(x)``
    around ``i``; a marker of ``phi(x)`` within ``alpha`` of ``i`` reflects
    the coordinate through it.
    """
    R, al, be = data.radius, data.alpha, data.beta
    pats = data.patterns
    tau = data.phi.tau

    def rule(u: Word) -> str:
        v = star_word(u, tau)
        for k in range(-al, al + 1):
            if v[R + k - be:R + k + be + 1] in pats:
                return tau(v[R + 2 * k])
        return v[R]

    return rule


def build_prop_d(X: SftPresentation, phi: OneBlockFlip, f: str,
                 c_bound: int | None = None, w_bound: int | None = None) -> PropDData:
    """All constants and the witness ``z``, without the expensive checks."""
    _require_synchronized_infinite(X)
    phi = as_one_block(phi)
    if X.step != 1:
        raise PreconditionError("Proposition D runs on a one-step presentation")
    blocks = lemma22(X, f)
    diam = graph_diameter_bound(X)
    c = find_c(X, phi, f, c_bound if c_bound is not None else 2 * diam + 1)
    N = lemma_d_N(blocks, c)
    d = (f,) + blocks.b + ((f,) + blocks.a) * N
    ds = phi.star(d)
    for pat in (ds + c + d, ds + phi.star(c) + d):
        if not X.in_language(pat):
            raise ConstructionError(f"{word_str(pat)} is not allowed")
    alpha = (len(c) - 1) // 2
    beta = alpha + len(d)
    w = shortest_connector(X, d, ds, w_bound if w_bound is not None else 4 * diam)
    n = 2 * (len(c) + 2 * len(d) + len(w))
    if (len(c) + 2 * len(d) + n) % 2 == 0:
        raise ConstructionError("|c| + 2|d| + n is even")
    m = (len(c) + 2 * len(d) + n - 1) // 2
    unit = ds + c + d
    P = unit + phi.star(w) + unit + w
    if len(P) != n:
        raise ConstructionError(f"period word has length {len(P)}, expected {n}")
    z = PeriodicPoint(tuple(P[(j + m) % n] for j in range(n)))
    data = PropDData(X, phi, blocks, c, N, d, alpha, beta, w, n, m, z)
    expect = unit + phi.star(w) + unit + w + unit
    if z.window(-m, m) != expect:
        raise ConstructionError("z[-m, m] is not d*cd w* d*cd w d*cd")
    if z.window(-alpha, alpha) != c:
        raise ConstructionError("z[-alpha, alpha] != c")
    if not periodic_admissible(X, z.word):
        raise ConstructionError("z is not admissible")
    found = markers(data, z, 0, n - 1)
    if found != [0, n // 2]:
        raise ConstructionError(f"markers of z in one period are {found}, expected [0, {n // 2}]")
    return data


def prop_d(X: SftPresentation, phi: OneBlockFlip, f: str, horizon: int | None = None,
           block_cap: int = DEFAULT_BLOCK_CAP, validate: bool = True,
           c_bound: int | None = None) -> PropDData:
    """Build ``psi = theta phi`` and verify every clause.

    ``horizon`` (default: the witness period) bounds the entrywise count
    comparison; the strict inequality is checked at the witness period.
    """
    data = build_prop_d(X, phi, f, c_bound)
    R = data.radius
    need = count_language(X, 2 * R + 1)
    if need > block_cap:
        raise SearchBoundError(
            f"tabulating psi needs {need} windows of length {2 * R + 1}, above the cap {block_cap}")
    psi = SlidingFlip(X, R, fn=psi_rule(data), label=f"theta {data.phi.label}")
    psi.table  # tabulate now
    data.psi = psi
    ver: dict = {}
    if validate:
        rep = validate_flip(psi)
        ver["validate"] = rep.summary()
        if not rep.valid:
            raise ConstructionError(f"psi is not a flip: {rep.summary()}")
    H_ = max(horizon or 0, data.n)
    f_phi = fvector(X, data.phi, H_)
    f_psi = fvector(X, psi, H_)
    ver["fvector_phi"] = list(f_phi.counts)
    ver["fvector_psi"] = list(f_psi.counts)
    if not f_phi.dominated_by(f_psi):
        bad = [n for n in range(1, H_ + 1) if f_phi[n] > f_psi[n]]
        raise ConstructionError(f"count domination fails at n = {bad}")
    if not f_psi[data.n] > f_phi[data.n]:
        raise ConstructionError(f"no strict inequality at n = {data.n}")
    z = data.z
    if apply_flip_periodic(data.phi, z) == z:
        raise ConstructionError("z is fixed by phi")
    t = theta_apply(data, H(data.n), z)
    if t.period != data.n or apply_flip_periodic(psi, t) != t:
        raise ConstructionError("theta_n(z) is not in F(psi; n)")
    ver["theta_n_z"] = list(t.word)
    data.a_witness = splice_witness(X, psi, t)
    if not occurs(data.d, data.a_witness.left * 2) and not occurs(data.d, data.a_witness.right * 2):
        raise ConstructionError("A(psi) witness tails do not contain d")
    ver["a_witness"] = "IN"
    data.verification = ver
    return data


def clause_i_failures(data: PropDData, n: int) -> list[PeriodicPoint]:
    """Points of ``F(phi;n)`` whose image under ``theta_n`` is not in ``F(psi;n)``."""
    phi = data.phi.as_sliding()
    bad = []
    for w in list_fixed_words(data.space, n, phi.table, 0):
        p = PeriodicPoint(w)
        t = theta_apply(data, H(n), p)
        if t.period != n or apply_flip_periodic(data.psi, t) != t:
            bad.append(p)
    return bad


# -- Theorem A ---------------------------------------------------------

@dataclass
class Stage:
    label: str
    space: SftPresentation
    flip: SlidingFlip
    fvector: FVector
    prop_d: PropDData | None = None
    prop_c: PropCResult | None = None
    chain: list[ConjugacyDescriptor] = field(default_factory=list)

    def to_json(self) -> dict:
        flip = self.flip.to_json() if self.flip.radius == 0 else {
            "type": "sliding", "radius": self.flip.radius,
            "rule_size": len(self.flip.table), "rule_sha256": rule_digest(self.flip)}
        out = {"label": self.label,
               "space": {"alphabet_size": len(self.space.alphabet), "step": self.space.step,
                         "allowed": len(self.space.allowed)},
               "flip": flip, "fvector": self.fvector.to_json(),
               "fvector_csv": self.fvector.to_csv()}
        if self.prop_c is not None:
            out["prop_c"] = self.prop_c.to_json()
        if self.prop_d is not None:
            out["prop_d"] = self.prop_d.to_json()
        if self.chain:
            out["chain"] = [c.to_json() for c in self.chain]
        return out


@dataclass
class TheoremAReport:
    requested: int
    horizon: int
    stages: list[Stage]
    certificates: list = field(default_factory=list)
    halted: bool = False
    halt_reason: str = ""

    @property
    def complete(self) -> bool:
        k = len(self.stages)
        return (not self.halted and k >= self.requested
                and len(self.certificates) == k * (k - 1) // 2)

    def to_json(self) -> dict:
        return {"requested": self.requested, "obtained": len(self.stages),
                "horizon": self.horizon, "complete": self.complete,
                "halted": self.halted, "halt_reason": self.halt_reason,
                "stages": [s.to_json() for s in self.stages],
                "certificates": [c.to_json() for c in self.certificates]}


def theorem_a(X: SftPresentation, phi: SlidingFlip | OneBlockFlip, k: int,
              horizon: int | None = None, block_cap: int = DEFAULT_BLOCK_CAP,
              validate: bool = True) -> TheoremAReport:
    """Collect up to ``k`` pairwise non-conjugate flips.

    Each step makes the current flip a one-block flip on a one-step space,
    picks the Proposition C branch with nonempty ``A``, and applies
    Proposition D.  Any bound that stops the iteration (block cap, search
    bound, horizon) is recorded in the report instead of raised.
    """
    if k < 1:
        raise DomainError("k must be positive")
    _require_synchronized_infinite(X)
    phi = as_sliding(phi)
    rep = validate_flip(phi)
    if not rep.valid:
        raise PreconditionError(f"input flip is invalid ({rep.summary()})")
    stages: list[Stage] = []
    report = TheoremAReport(k, horizon or 0, stages)
    cur_X, cur = X, phi
    # (space, flip, label, Proposition D record, Proposition C record, conjugacy chain)
    pending: list[tuple] = [(X, phi, phi.label, None, None, [])]
    try:
        while len(pending) < k:
            Y, phi1, chain = to_one_step(cur_X, cur, block_cap)
            pc = prop_c(Y, phi1)
            if pc.branch == A_OF_SHIFT_FLIP:
                # continue from sigma phi, realized as a one-block flip by a 2-block pass
                chain = chain + [higher_block_code(Y, 2)]
                Y, phi1 = higher_block(Y, phi1, 2)
                Y, phi1, more = to_one_step(Y, phi1, block_cap)
                chain += more
            f = synchronizing_block(Y)[0]
            if phi1.tau(f) != f:
                f = next((s for s in Y.alphabet if phi1.tau(s) == s), f)
            data = prop_d(Y, phi1, f, None, block_cap, validate)
            label = f"psi{len(pending)}"
            data.psi.label = label
            pending.append((Y, data.psi, label, data, pc, chain))
            cur_X, cur = Y, data.psi
    except (SearchBoundError, PreconditionError, ConstructionError) as exc:
        report.halted = True
        report.halt_reason = f"stopped after {len(pending)} flip(s): {exc}"
    need = max((p[3].n for p in pending if p[3] is not None), default=10)
    H_ = horizon if horizon is not None else need
    report.horizon = H_
    for Y, fl, label, data, pc, chain in pending:
        known = data.verification["fvector_psi"] if data is not None else []
        if len(known) >= H_:
            fv = FVector(tuple(known[:H_]), label)
        else:
            fv = FVector(fvector(Y, fl, H_).counts, label)
        stages.append(Stage(label, Y, fl, fv, data, pc, chain))
    unseparated = []
    for i in range(len(stages)):
        for j in range(i + 1, len(stages)):
            cert = certify_nonconjugate(stages[i].fvector, stages[j].fvector)
            if cert is None:
                unseparated.append((stages[i].label, stages[j].label))
            else:
                report.certificates.append(cert)
    if unseparated:
        report.halted = True
        msg = f"horizon {H_} does not separate {unseparated}; raise the horizon"
        report.halt_reason = (report.halt_reason + "; " if report.halt_reason else "") + msg
    return report


__all__ = [
    "A_OF_FLIP", "A_OF_SHIFT_FLIP", "Lemma22Blocks", "Lemma23Witness", "PropCResult",
    "PropDData", "Stage", "TheoremAReport", "build_prop_d", "clause_i_failures", "find_c",
    "is_af_power", "is_marker", "lemma22", "lemma22_failures", "lemma23_N", "lemma23_witness",
    "lemma_d_N", "markers", "prop_c", "prop_d", "psi_rule", "splice_witness", "theorem_a",
    "theta_apply", "theta_coord", "to_one_step",
]
