"""Flips on shifts of finite type.

Every flip is stored in reversal-centered normal form::

    phi(x)_i = Theta(x[-i-r .. -i+r])

which is forced by continuity together with ``phi sigma = sigma^-1 phi``.
A one-block flip is the case ``r = 0`` with ``Theta`` a symbol involution.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ConsistencyError, ConstructionError, DomainError, PreconditionError, \
    SearchBoundError
from .points import EventuallyPeriodicPoint, LazyPoint, PeriodicPoint, Point
from .sft import SftPresentation, count_language, iter_language, language, periodic_points
from .words import Alphabet, SymbolInvolution, Word, as_word, block_symbol, star_word

DEFAULT_BLOCK_CAP = 2_000_000


class SlidingFlip:
    """A candidate flip with local rule ``Theta`` of radius ``radius``.

    Give either a table over the allowed ``(2r+1)``-blocks or a procedural
    ``fn``; the table is built from ``fn`` on first use.
    """

    def __init__(self, space: SftPresentation, radius: int,
                 rule: Mapping[Word, str] | None = None,
                 fn: Callable[[Word], str] | None = None, label: str = "phi"):
        if radius < 0:
            raise DomainError("radius must be non-negative")
        if (rule is None) == (fn is None):
            raise DomainError("give exactly one of rule or fn")
        self.space = space
        self.radius = radius
        self.label = label
        self._fn = fn
        if rule is not None:
            self._table = {as_word(k): str(v) for k, v in rule.items()}

    @property
    def width(self) -> int:
        return 2 * self.radius + 1

    @cached_property
    def _table(self) -> dict[Word, str]:
        return {w: self._fn(w) for w in iter_language(self.space, self.width)}

    @property
    def table(self) -> dict[Word, str]:
        return self._table

    def output(self, window: Word) -> str:
        """``Theta(window)`` for a window of length ``2r+1``."""
        try:
            return self._table[window]
        except KeyError:
            if self._fn is not None and "_table" not in self.__dict__:
                return self._fn(window)
            raise DomainError(f"window {window!r} is not an allowed block") from None

    @property
    def is_one_block(self) -> bool:
        return self.radius == 0

    def symbol_map(self) -> SymbolInvolution:
        """The symbol map of a radius-0 flip."""
        if self.radius != 0:
            raise PreconditionError("symbol map exists only for radius-0 flips")
        return SymbolInvolution({w[0]: o for w, o in self.table.items()})

    def at(self, x: Point, i: int) -> str:
        r = self.radius
        return self.output(x.window(-i - r, -i + r))

    def to_json(self) -> dict:
        if self.radius == 0:
            try:
                return {"type": "one_block", "symbol_map": self.symbol_map().to_json()}
            except DomainError:
                pass
        key = self.space.alphabet.sort_key
        rows = sorted(self.table.items(), key=lambda kv: key(kv[0]))
        return {"type": "sliding", "radius": self.radius,
                "rule": [{"window": list(w), "out": o} for w, o in rows]}

    def __repr__(self):
        return f"SlidingFlip({self.label}, radius={self.radius})"


@dataclass
class OneBlockFlip:
    """``phi(x)_i = tau(x_{-i})``."""

    space: SftPresentation
    tau: SymbolInvolution
    label: str = "phi"

    def __post_init__(self):
        for s in self.space.alphabet:
            self.tau(s)

    def as_sliding(self) -> SlidingFlip:
        return SlidingFlip(self.space, 0, {(s,): self.tau(s) for s in self.space.alphabet},
                           label=self.label)

    def star(self, w) -> Word:
        return star_word(w, self.tau)

    def to_json(self) -> dict:
        return {"type": "one_block", "symbol_map": self.tau.to_json()}


def as_sliding(phi: SlidingFlip | OneBlockFlip) -> SlidingFlip:
    return phi.as_sliding() if isinstance(phi, OneBlockFlip) else phi


def as_one_block(phi: SlidingFlip | OneBlockFlip) -> OneBlockFlip:
    if isinstance(phi, OneBlockFlip):
        return phi
    return OneBlockFlip(phi.space, phi.symbol_map(), phi.label)


def reversal(space: SftPresentation) -> OneBlockFlip:
    """The reversal map ``rho(x)_i = x_{-i}``."""
    return OneBlockFlip(space, SymbolInvolution.identity(space.alphabet), "rho")


def flip_from_json(space: SftPresentation, obj: dict, label: str = "phi") -> SlidingFlip:
    kind = obj.get("type")
    if kind == "one_block":
        return OneBlockFlip(space, SymbolInvolution(obj["symbol_map"]), label).as_sliding()
    if kind == "sliding":
        rule = {as_word(row["window"]): row["out"] for row in obj["rule"]}
        return SlidingFlip(space, int(obj["radius"]), rule, label=label)
    raise DomainError(f"unknown flip type {kind!r}")


# -- validation --------------------------------------------------------

@dataclass
class ValidationReport:
    valid: bool
    missing_windows: list[Word] = field(default_factory=list)
    containment_violations: list[tuple[Word, Word]] = field(default_factory=list)
    involution_violations: list[tuple[Word, str]] = field(default_factory=list)
    blocks_checked: int = 0
    states_explored: int = 0

    def summary(self) -> str:
        if self.valid:
            return "valid"
        parts = []
        if self.missing_windows:
            parts.append(f"{len(self.missing_windows)} windows without a rule")
        if self.containment_violations:
            parts.append(f"{len(self.containment_violations)} image-containment failures")
        if self.involution_violations:
            parts.append(f"{len(self.involution_violations)} involution failures")
        return "invalid: " + ", ".join(parts)

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "missing_windows": [list(w) for w in self.missing_windows],
            "containment_violations": [{"block": list(b), "image": list(i)}
                                       for b, i in self.containment_violations],
            "involution_violations": [{"block": list(b), "got": g}
                                      for b, g in self.involution_violations],
        }


def validate_flip(phi: SlidingFlip | OneBlockFlip, max_examples: int = 20) -> ValidationReport:
    """Exact finite check that ``phi`` is a flip of its space.

    (1) image containment: for every allowed ``(2r+m+1)``-block the induced
    ``(m+1)``-block of the image is allowed; (2) involution: for every
    allowed ``(4r+1)``-block, applying the local rule twice returns the
    center symbol.  Check (2) runs as a dynamic program over blocks whose
    state keeps only the last ``max(2r, m)`` symbols and the class of the
    partially read outer window, so it never lists the ``(4r+1)``-blocks.
    """
    phi = as_sliding(phi)
    X, r, m = phi.space, phi.radius, phi.space.step
    table = phi.table
    report = ValidationReport(valid=True)

    for w in iter_language(X, 2 * r + 1):
        if w not in table:
            report.missing_windows.append(w)
    if report.missing_windows:
        report.valid = False
        del report.missing_windows[max_examples:]
        return report

    span = 2 * r + m + 1
    for u in iter_language(X, span):
        outs = tuple(table[u[j:j + 2 * r + 1]] for j in range(m + 1))
        image = outs[::-1]
        report.blocks_checked += 1
        if image not in X.allowed:
            report.valid = False
            if len(report.containment_violations) < max_examples:
                report.containment_violations.append((u, image))
    if not report.valid:
        return report

    bad, states = _involution_dp(X, r, table, max_examples)
    report.states_explored = states
    if bad:
        report.valid = False
        report.involution_violations = bad
    return report


def _suffix_classes(table: Mapping[Word, str], width: int):
    """Classes of window suffixes read right to left.

    Two suffixes are equivalent when every completion to a full window
    gives the same (allowed-or-not, output) result.  Returns the class of
    the empty suffix, a transition map ``(class, symbol) -> class`` for
    prepending a symbol, and the outputs of full-window classes.
    """
    intern: dict = {}
    outputs: dict[int, str] = {}

    def cid(sig):
        c = intern.get(sig)
        if c is None:
            c = intern[sig] = len(intern)
        return c

    cur = {}
    for w, o in table.items():
        c = cid(("out", o))
        outputs[c] = o
        cur[w] = c
    trans: dict[tuple[int, str], int] = {}
    for _ in range(width):
        groups: dict[Word, list] = defaultdict(list)
        for w, c in cur.items():
            groups[w[1:]].append((w[0], c))
        nxt = {}
        for s, ext in groups.items():
            ext.sort()
            c = cid(("node", tuple(ext)))
            nxt[s] = c
            for a, cc in ext:
                trans[(c, a)] = cc
        cur = nxt
    return cur[()], trans, outputs


def _involution_dp(X: SftPresentation, r: int, table: Mapping[Word, str], max_examples: int):
    width = 2 * r + 1
    total = 4 * r + 1
    keep = max(2 * r, X.step)
    root, trans, outputs = _suffix_classes(table, width)
    m = X.step
    succ = X.successors
    symbols = X.alphabet.symbols
    # state: (last `keep` symbols, outer class, center symbol) -> representative
    layer: dict[tuple, tuple | None] = {((), root, None): None}
    bad: list[tuple[Word, str]] = []
    explored = 0
    for t in range(total):
        nxt_layer: dict[tuple, tuple | None] = {}
        for (tail, oc, center), rep in layer.items():
            explored += 1
            options = [s for s, _ in succ[tail[-m:]]] if len(tail) >= m else symbols
            for a in options:
                full = tail + (a,)
                if len(full) <= m and not X.in_language(full):
                    continue
                noc = oc
                if len(full) >= width:
                    v = table[full[-width:]]
                    noc = trans.get((oc, v))
                    if noc is None:
                        # outer window not allowed; image containment already
                        # excludes this for valid inputs
                        raise ConsistencyError("outer window outside the rule table")
                ncenter = a if t == 2 * r else center
                if t == total - 1:
                    if outputs[noc] != ncenter:
                        if len(bad) < max_examples:
                            bad.append((_unwind((a, rep)), outputs[noc]))
                    continue
                key = (full[-keep:] if keep else (), noc, ncenter)
                if key not in nxt_layer:
                    nxt_layer[key] = (a, rep)
        layer = nxt_layer
    return bad, explored


def _unwind(rep) -> Word:
    out = []
    while rep is not None:
        a, rep = rep
        out.append(a)
    return tuple(reversed(out))


# -- application -------------------------------------------------------

def apply_flip_periodic(phi: SlidingFlip | OneBlockFlip, p: PeriodicPoint) -> PeriodicPoint:
    phi = as_sliding(phi)
    n, r = p.period, phi.radius
    return PeriodicPoint(tuple(phi.output(p.window(-i - r, -i + r)) for i in range(n)))


def apply_flip_ep(phi: SlidingFlip | OneBlockFlip, p: EventuallyPeriodicPoint) -> EventuallyPeriodicPoint:
    """Image of an eventually periodic point.

    The image center covers the mirrored input center widened by the
    radius; beyond it each output coordinate reads only one input tail, so
    the input's left tail becomes the image's right tail and vice versa.
    """
    phi = as_sliding(phi)
    r = phi.radius
    lo = -(p.center_end - 1) - r
    hi = -p.center_start + r

    def out(i):
        return phi.output(p.window(-i - r, -i + r))

    center = tuple(out(i) for i in range(lo, hi + 1))
    right = tuple(out(i) for i in range(hi + 1, hi + 1 + len(p.left)))
    left = tuple(out(i) for i in range(lo - len(p.right), lo))
    return EventuallyPeriodicPoint(left, center, right, lo)


def apply_flip_lazy(phi: SlidingFlip | OneBlockFlip, x: Point) -> LazyPoint:
    phi = as_sliding(phi)
    return LazyPoint(lambda i: phi.at(x, i), f"{phi.label}({getattr(x, 'label', 'x')})")


def apply_flip(phi, x: Point) -> Point:
    if isinstance(x, PeriodicPoint):
        return apply_flip_periodic(phi, x)
    if isinstance(x, EventuallyPeriodicPoint):
        return apply_flip_ep(phi, x)
    return apply_flip_lazy(phi, x)


def compose_shift(phi: SlidingFlip | OneBlockFlip, k: int) -> SlidingFlip:
    """``sigma^k phi``, as a flip of radius ``r + |k|``."""
    phi = as_sliding(phi)
    if k == 0:
        return phi
    r = phi.radius
    R = r + abs(k)
    off = R - k - r
    base = phi

    def fn(w: Word) -> str:
        return base.output(w[off:off + 2 * r + 1])

    label = f"sigma^{k} {phi.label}" if k != 1 else f"sigma {phi.label}"
    return SlidingFlip(phi.space, R, fn=fn, label=label)


# -- conjugacies -------------------------------------------------------

@dataclass
class ConjugacyDescriptor:
    """Either ``sigma^k`` or a sliding block code with a tabulated rule.

    For a sliding code ``Phi(x)_i = rule(x[i-r .. i+r])``; ``inverse`` is a
    one-block map back when the code has a radius-0 inverse.
    """

    kind: str
    k: int = 0
    radius: int = 0
    rule: dict[Word, str] | None = None
    inverse: dict[str, str] | None = None
    note: str = ""

    def apply_periodic(self, p: PeriodicPoint) -> PeriodicPoint:
        if self.kind == "shift_power":
            return p.shift(self.k)
        r = self.radius
        return PeriodicPoint(tuple(self.rule[p.window(i - r, i + r)] for i in range(p.period)))

    def invert_periodic(self, p: PeriodicPoint) -> PeriodicPoint:
        if self.kind == "shift_power":
            return p.shift(-self.k)
        if self.inverse is None:
            raise PreconditionError("descriptor has no one-block inverse")
        return PeriodicPoint(tuple(self.inverse[s] for s in p.word))

    def to_json(self) -> dict:
        if self.kind == "shift_power":
            return {"kind": "shift_power", "k": self.k}
        rows = sorted(self.rule.items())
        out = {"kind": "sliding_code", "radius": self.radius,
               "rule": [{"window": list(w), "out": o} for w, o in rows]}
        if self.inverse is not None:
            out["inverse"] = dict(sorted(self.inverse.items()))
        if self.note:
            out["note"] = self.note
        return out


def pair_symbol(a: str, b: str) -> str:
    return f"({a},{b})"


def recode_one_block(X: SftPresentation, phi: SlidingFlip | OneBlockFlip,
                     block_cap: int = DEFAULT_BLOCK_CAP):
    """Conjugate ``(X, phi)`` to a one-block flip on a pair alphabet.

    ``Phi(x)_i = (x_i, phi(x)_{-i})``; the recoded space is presented as a
    ``K``-step SFT, ``K = m + 2r``, whose allowed blocks are the images of
    the allowed ``(K+1+2r)``-blocks of ``X``.  The flip on it swaps the two
    coordinates of each symbol.  Block counts of the presentation are
    cross-checked against images of ``X``-blocks up to length ``K+3``.
    """
    phi = as_sliding(phi)
    if phi.space != X:
        raise DomainError("flip is defined on a different space")
    rep = validate_flip(phi)
    if not rep.valid:
        raise PreconditionError(f"recode_one_block needs a valid flip ({rep.summary()})")
    r, m = phi.radius, X.step
    K = m + 2 * r
    needed = count_language(X, K + 3 + 2 * r)
    if needed > block_cap:
        raise SearchBoundError(
            f"recoding needs |B_{K + 3 + 2 * r}(X)| = {needed} blocks, above the cap {block_cap}")
    width = 2 * r + 1
    code: dict[Word, str] = {}
    inverse: dict[str, str] = {}
    for u in iter_language(X, width):
        s = pair_symbol(u[r], phi.output(u))
        code[u] = s
        inverse[s] = u[r]
    idx = X.alphabet.index
    first = {s: u[r] for u, s in code.items()}
    second = {code[u]: phi.output(u) for u in code}
    pairs = sorted(set(code.values()), key=lambda s: (idx(first[s]), idx(second[s])))
    Y_alpha = Alphabet(tuple(pairs))

    def image(u: Word) -> Word:
        return tuple(code[u[j:j + width]] for j in range(len(u) - width + 1))

    blocks = {image(u) for u in iter_language(X, K + 1 + 2 * r)}
    Y = SftPresentation(Y_alpha, K, blocks)
    swap = {}
    for u, s in code.items():
        t = pair_symbol(phi.output(u), u[r])
        if t not in Y_alpha:
            raise ConstructionError(f"swapped symbol {t} missing from the recoded alphabet")
        swap[s] = t
    psi = OneBlockFlip(Y, SymbolInvolution(swap), f"recode({phi.label})")
    for n in range(1, K + 4):
        from_x = len({image(u) for u in iter_language(X, n + 2 * r)})
        from_y = count_language(Y, n)
        if from_x != from_y:
            raise ConsistencyError(
                f"recoded presentation has |B_{n}| = {from_y}, images of X give {from_x}")
    desc = ConjugacyDescriptor("sliding_code", radius=r, rule=code, inverse=inverse,
                               note="x -> (x_i, phi(x)_{-i})")
    return Y, psi, desc


def higher_block(X: SftPresentation, phi: OneBlockFlip | SlidingFlip, N: int):
    """The ``N``-th higher block system with ``phi^[N](y)_i = (y_{-i})*``.

    Conjugate to ``(X, phi)`` for odd ``N`` and to ``(X, sigma phi)`` for
    even ``N``.
    """
    phi = as_one_block(phi)
    if N < 1:
        raise DomainError("N must be a positive integer")
    if N == 1:
        return X, phi
    m = X.step
    step = max(1, m - N + 1)
    blocks = language(X, N)
    names = {b: block_symbol(b) for b in blocks}
    alpha = Alphabet(tuple(names[b] for b in blocks))
    allowed = set()
    for u in iter_language(X, N + step):
        allowed.add(tuple(names[u[j:j + N]] for j in range(step + 1)))
    XN = SftPresentation(alpha, step, allowed)
    tau = SymbolInvolution({names[b]: names[phi.star(b)] for b in blocks})
    return XN, OneBlockFlip(XN, tau, f"{phi.label}^[{N}]")


def higher_block_code(X: SftPresentation, N: int) -> ConjugacyDescriptor:
    """The code ``x -> (x[i-k .. i-k+N-1])_i`` with ``k = N // 2``.

    For odd ``N`` it conjugates ``(X, phi)`` to ``(X^[N], phi^[N])``; for
    even ``N`` it conjugates ``(X, sigma phi)`` to it.
    """
    r = N // 2
    rule = {u: block_symbol(u[:N]) for u in iter_language(X, 2 * r + 1)}
    inverse = {block_symbol(b): b[r] for b in language(X, N)}
    return ConjugacyDescriptor("sliding_code", radius=r, rule=rule, inverse=inverse,
                               note=f"{N}-block code")


def even_shift_conjugacy(phi: SlidingFlip | OneBlockFlip, m: int, n: int) -> ConjugacyDescriptor:
    """``sigma^((n-m)/2)`` conjugates ``sigma^m phi`` to ``sigma^n phi``."""
    if (n - m) % 2:
        raise PreconditionError(f"n - m = {n - m} is odd")
    return ConjugacyDescriptor("shift_power", k=(n - m) // 2)


def verify_intertwining(phi: SlidingFlip | OneBlockFlip, m: int, n: int,
                        theta: ConjugacyDescriptor, max_period: int) -> list[PeriodicPoint]:
    """Points of period ``<= max_period`` where ``theta sigma^m phi != sigma^n phi theta``."""
    phi = as_sliding(phi)
    bad = []
    for period in range(1, max_period + 1):
        for p in periodic_points(phi.space, period):
            lhs = theta.apply_periodic(apply_flip_periodic(phi, p).shift(m))
            rhs = apply_flip_periodic(phi, theta.apply_periodic(p)).shift(n)
            if lhs != rhs:
                bad.append(p)
    return bad
