"""Representation of reals in [1/θ, 1] by infinite words of the language.

The interval I_w of reals whose representation may start with ``w`` has
exact endpoints in Q(θ).  Inside I_w the split into children I_wσ depends
only on the state q0.w, which yields one partition of [0, 1] per state and
the piecewise-affine map ``h``.  Iterating ``h`` on exact values both emits
the letters of a representation and detects ultimately periodic ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algnum import AlgNum
from .automata import Dfa, UpWord
from .counting import GrowthProfile, _beta_up
from .errors import DomainError, NoUniqueFixedPointError, NotALeftFactorError, NotRepresentableError

RIGHT = "right"
LEFT = "left"


@dataclass(frozen=True)
class IwInterval:
    prefix: tuple
    lower: AlgNum
    upper: AlgNum

    @property
    def length(self) -> AlgNum:
        return self.upper - self.lower

    def relative(self, x: AlgNum) -> AlgNum:
        return (x - self.lower) / (self.upper - self.lower)

    def __contains__(self, x) -> bool:
        return self.lower <= x <= self.upper


@dataclass(frozen=True)
class Cell:
    letter: str
    lo: AlgNum
    hi: AlgNum
    target: object
    inv_width: AlgNum

    @property
    def rescale(self) -> "AffineMap":
        """The increasing affine map sending [lo, hi] onto [0, 1]."""
        return AffineMap(self.inv_width, -self.lo * self.inv_width)


@dataclass(frozen=True)
class AffineMap:
    """x ↦ slope·x + offset."""

    slope: AlgNum
    offset: AlgNum

    def __post_init__(self):
        if self.slope == 0:
            raise DomainError("affine map with zero slope is not invertible")

    def __call__(self, x):
        return self.slope * x + self.offset

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self ∘ inner"""
        return AffineMap(self.slope * inner.slope, self.slope * inner.offset + self.offset)

    def inverse(self) -> "AffineMap":
        inv = 1 / self.slope
        return AffineMap(inv, -self.offset * inv)

    def is_identity(self) -> bool:
        return self.slope == 1 and self.offset == 0

    def fixed_point(self) -> AlgNum:
        if self.slope == 1:
            raise NoUniqueFixedPointError("slope 1: no unique fixed point")
        return self.offset / (1 - self.slope)

    def __str__(self):
        return f"x ↦ {self.slope}·x + {self.offset}"


@dataclass(frozen=True)
class PartitionRow:
    state: object
    cells: tuple

    def cell(self, letter) -> Cell:
        for c in self.cells:
            if c.letter == letter:
                return c
        raise KeyError(letter)

    def locate(self, y: AlgNum, convention: str = RIGHT) -> Cell:
        cells = self.cells
        if convention == RIGHT:
            for c in cells[:-1]:
                if y < c.hi:
                    return c
            return cells[-1]
        # left-limit convention: cells (ℓ, u], the first one closed
        chosen = cells[0]
        for c in cells[1:]:
            if not y > c.lo:
                break
            chosen = c
        return chosen


def prefix_sum(g: GrowthProfile, d: Dfa, w: Sequence) -> AlgNum:
    """Σ a_{q0.m} over words m of length |w| with m lexicographically below w.

    Uses Σ_{x∈Σ^k} a_{p.x} = θ^k a_p, so no enumeration is needed.
    """
    theta = g.theta
    total = g.field.zero
    q = d.initial
    for a in w:
        total = total * theta
        for b, t in d.out(q):
            if b == a:
                break
            total = total + g.a_of(t)
        q = d.step(q, a)
        if q is None:
            raise NotALeftFactorError("prefix enters the sink")
    return total


def interval_of_prefix(g: GrowthProfile, d: Dfa, w) -> IwInterval:
    w = d.alphabet.parse_word(w)
    q = d.run(w)
    if q is None or not g.positive(q):
        raise NotALeftFactorError(f"{d.alphabet.format_word(w)!r} is not a left factor with positive weight")
    theta = g.theta
    scale = (theta - 1) / theta ** (len(w) + 1)
    base = 1 / theta
    below = prefix_sum(g, d, w)
    return IwInterval(w, base + scale * below, base + scale * (below + g.a_of(q)))


def partition_table(g: GrowthProfile, d: Dfa) -> dict:
    table = {}
    theta = g.theta
    for q in d.states:
        if not g.positive(q):
            continue
        denom = 1 / (theta * g.a_of(q))
        acc = g.field.zero
        cells = []
        for a, t in d.out(q):
            if not g.positive(t):
                continue
            lo = acc * denom
            acc = acc + g.a_of(t)
            hi = acc * denom
            cells.append(Cell(a, lo, hi, t, 1 / (hi - lo)))
        table[q] = PartitionRow(q, tuple(cells))
    return table


def h_step(g: GrowthProfile, d: Dfa, q, x: AlgNum, table: dict | None = None,
           convention: str = RIGHT) -> tuple:
    if table is None:
        table = partition_table(g, d)
    x = g.field(x)
    if x < 0 or x > 1:
        raise DomainError(f"{x} is outside [0, 1]")
    c = table[q].locate(x, convention)
    return c.target, (x - c.lo) * c.inv_width, c.letter


@dataclass
class RepStep:
    state: object
    position: AlgNum
    letter: str


@dataclass
class Representation:
    """Result of :func:`represent`: an ultimately periodic word, or only a prefix."""

    letters: tuple
    trace: list = field(default_factory=list)
    detection: tuple | None = None
    up: UpWord | None = None

    @property
    def periodic(self) -> bool:
        return self.up is not None


def f_I(g: GrowthProfile, x: AlgNum) -> AlgNum:
    """Relative position of x inside I_ε = [1/θ, 1]."""
    th = g.theta
    return (th * x - 1) / (th - 1)


def f_I_inverse(g: GrowthProfile, y: AlgNum) -> AlgNum:
    th = g.theta
    return ((th - 1) * y + 1) / th


def _check_domain(g: GrowthProfile, x: AlgNum) -> AlgNum:
    x = g.field(x)
    if x < 1 / g.theta or x > 1:
        raise DomainError(f"{x} is outside [1/θ, 1]")
    return x


def represent(g: GrowthProfile, d: Dfa, x, max_steps: int = 10000, table: dict | None = None,
              convention: str = RIGHT) -> Representation:
    """Iterate h from (q0, f_I(x)); stop on the first exact repeat of (state, position)."""
    x = _check_domain(g, x)
    if table is None:
        table = partition_table(g, d)
    q, y = d.initial, f_I(g, x)
    seen = {}
    letters = []
    trace = []
    for n in range(max_steps + 1):
        key = (q, y)
        if key in seen:
            i = seen[key]
            trace.append(RepStep(q, y, None))
            up = UpWord(tuple(letters[:i]), tuple(letters[i:n]))
            return Representation(tuple(letters), trace, (i, n), up)
        seen[key] = n
        if n == max_steps:
            trace.append(RepStep(q, y, None))
            break
        c = table[q].locate(y, convention)
        trace.append(RepStep(q, y, c.letter))
        letters.append(c.letter)
        q, y = c.target, (y - c.lo) * c.inv_width
    return Representation(tuple(letters), trace)


def represent_global(g: GrowthProfile, d: Dfa, x, max_steps: int = 10000, table: dict | None = None,
                     convention: str = RIGHT) -> Representation:
    """Same letters as :func:`represent`, but each step recomputes the relative
    position of x inside the nested interval I_w rather than rescaling."""
    x = _check_domain(g, x)
    if table is None:
        table = partition_table(g, d)
    theta = g.theta
    inv_theta = 1 / theta
    q = d.initial
    below = g.field.zero          # Σ_{m<w, |m|=|w|} a_{q0.m}
    scale = (theta - 1) * inv_theta  # (θ-1)/θ^{|w|+1}
    seen = {}
    letters = []
    trace = []
    for n in range(max_steps + 1):
        lower = inv_theta + scale * below
        width = scale * g.a_of(q)
        y = (x - lower) / width
        key = (q, y)
        if key in seen:
            i = seen[key]
            trace.append(RepStep(q, y, None))
            return Representation(tuple(letters), trace, (i, n), UpWord(tuple(letters[:i]), tuple(letters[i:n])))
        seen[key] = n
        if n == max_steps:
            trace.append(RepStep(q, y, None))
            break
        c = table[q].locate(y, convention)
        trace.append(RepStep(q, y, c.letter))
        letters.append(c.letter)
        below = below * theta
        for b, t in d.out(q):
            if b == c.letter:
                break
            below = below + g.a_of(t)
        scale = scale * inv_theta
        q = c.target
    return Representation(tuple(letters), trace)


def value_of_up(g: GrowthProfile, d: Dfa, w: UpWord) -> AlgNum:
    """Exact value of an ultimately periodic word of L_∞, state by state."""
    from .periodic import is_up_in_Linfty

    if not is_up_in_Linfty(d, w):
        raise NotRepresentableError(f"{w.format(d.alphabet)} is not in L_inf")
    b = _beta_up(d, w, None)
    theta = g.theta
    inv = 1 / theta
    total = g.field.zero
    for q in d.states:
        aq = g.a_of(q)
        if aq == 0:
            continue
        seq, r, p = b.seq[q], b.preperiod[q], b.period[q]
        head = g.field.zero
        powj = g.field.one
        for j in range(r):
            if seq[j]:
                head = head + seq[j] * powj
            powj = powj * inv
        tail = g.field.zero
        for j in range(r, r + p):
            if seq[j]:
                tail = tail + seq[j] * powj
            powj = powj * inv
        tp = theta ** p
        total = total + aq * (head + tp / (tp - 1) * tail)
    return (theta - 1) / theta ** 2 * total


def value_of_up_aggregate(g: GrowthProfile, d: Dfa, w: UpWord) -> AlgNum:
    """The same value through the aggregated coefficients Σ_q a_q β_{q,j} (common r and p)."""
    from .periodic import is_up_in_Linfty

    if not is_up_in_Linfty(d, w):
        raise NotRepresentableError(f"{w.format(d.alphabet)} is not in L_inf")
    b = _beta_up(d, w, None)
    r, p = b.r, b.p
    b = _beta_up(d, w, r + p)
    theta = g.theta
    inv = 1 / theta
    coef = [sum((g.a_of(q) * b.seq[q][j] for q in d.states), g.field.zero) for j in range(r + p)]
    powj = g.field.one
    head = tail = g.field.zero
    for j in range(r + p):
        if j < r:
            head = head + coef[j] * powj
        else:
            tail = tail + coef[j] * powj
        powj = powj * inv
    tp = theta ** p
    return (theta - 1) / theta ** 2 * (head + tp / (tp - 1) * tail)


def densify(d: Dfa, w, ell: int) -> UpWord:
    """An ultimately periodic word of L_∞ agreeing with ``w`` on its first ``ell`` letters.

    From q0.w, walk at most #Q letters to a state on a cycle inside a
    coaccessible strongly connected component and pump that cycle.
    """
    from .periodic import cycle_states, shortest_cycle, shortest_path_into

    w = d.alphabet.parse_word(w)
    if len(w) < ell:
        raise ValueError("w must be at least ell letters long")
    q = d.run(w)
    if q is None:
        raise NotALeftFactorError("w enters the sink")
    targets = cycle_states(d)
    found = shortest_path_into(d, q, targets)
    if found is None:
        raise NotALeftFactorError(f"{d.alphabet.format_word(w)!r} is a prefix of only finitely many words")
    path, s = found
    return UpWord(tuple(w) + path, shortest_cycle(d, s))
