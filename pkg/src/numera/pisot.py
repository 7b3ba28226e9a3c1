"""Greedy θ-expansions and the numeration system they induce.

For θ > 1 whose expansion of 1 is finite or ultimately periodic, the
greedy representations of the integers form a regular language read by a
small automaton.  The abstract system built on that language represents
reals exactly as the greedy algorithm does.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import _poly as P
from .algnum import AlgField, AlgNum
from .automata import Alphabet, Dfa, UpWord
from .counting import growth_profile
from .errors import DomainError, NotEventuallyPeriodicWithinBudget
from .realline import interval_of_prefix, partition_table, represent

DEFAULT_BUDGET = 10000


def format_digits(w: UpWord | tuple) -> str:
    if isinstance(w, UpWord):
        pre = " ".join(str(d) for d in w.preperiod)
        per = " ".join(str(d) for d in w.period)
        return f"{pre} ({per})^w".lstrip()
    return " ".join(str(d) for d in w)


@dataclass(frozen=True)
class ThetaExpansionOfOne:
    digits: tuple          # t_1 … t_m (finite) or t_1 … t_{N+p}
    preperiod: int         # N; equals len(digits) when finite
    period: int            # p; 0 when finite

    @property
    def finite(self) -> bool:
        return self.period == 0

    @property
    def word(self) -> UpWord:
        """e_θ(1) as an infinite word (a finite expansion is padded with 0^ω)."""
        if self.finite:
            return UpWord(self.digits, (0,))
        return UpWord(self.digits[:self.preperiod], self.digits[self.preperiod:])

    @property
    def quasi(self) -> UpWord:
        """e*_θ(1): (t_1 … t_{m-1}(t_m - 1))^ω when finite, e_θ(1) otherwise."""
        if not self.finite:
            return self.word
        t = self.digits
        return UpWord((), t[:-1] + (t[-1] - 1,))

    @property
    def reference(self) -> UpWord:
        """The sequence shifts must stay strictly below (Parry's condition)."""
        return self.quasi

    def format(self) -> str:
        if self.finite:
            return format_digits(self.digits)
        return format_digits(self.word)


def theta_expansion_of_one(f: AlgField, budget: int = DEFAULT_BUDGET) -> ThetaExpansionOfOne:
    theta = f.theta
    if theta <= 1:
        raise DomainError("θ must exceed 1")
    r = f.one
    seen = {r: 0}
    digits = []
    for i in range(1, budget + 1):
        y = theta * r
        t = y.floor()
        digits.append(t)
        r = y - t
        if r == 0:
            return ThetaExpansionOfOne(tuple(digits), len(digits), 0)
        if r in seen:
            n = seen[r]
            return ThetaExpansionOfOne(tuple(digits), n, i - n)
        seen[r] = i
    raise NotEventuallyPeriodicWithinBudget(f"no repetition within {budget} digits")


@dataclass
class DigitStream:
    digits: tuple
    up: UpWord | None = None

    def prefix(self, n: int) -> tuple:
        if self.up is not None:
            return self.up.prefix(n)
        return self.digits[:n]


def greedy_theta_expansion(x, f: AlgField, n_digits: int) -> DigitStream:
    """Greedy digits of x ∈ [0, 1] in base θ, with exact remainders."""
    x = f(x)
    if x < 0 or x > 1:
        raise DomainError(f"{x} is outside [0, 1]")
    theta = f.theta
    r = x
    seen = {r: 0}
    digits = []
    for i in range(1, n_digits + 1):
        y = theta * r
        t = y.floor()
        digits.append(t)
        r = y - t
        if r == 0:
            return DigitStream(tuple(digits), UpWord(tuple(digits), (0,)))
        if r in seen:
            n = seen[r]
            return DigitStream(tuple(digits), UpWord(tuple(digits[:n]), tuple(digits[n:])))
        seen[r] = i
    return DigitStream(tuple(digits))


def _compare_up(a: UpWord, b: UpWord) -> int:
    n = max(len(a.preperiod), len(b.preperiod)) + lcm(len(a.period), len(b.period))
    for i in range(n):
        x, y = a.letter(i), b.letter(i)
        if x != y:
            return -1 if x < y else 1
    return 0


def parry_check(s: UpWord, e: ThetaExpansionOfOne) -> bool:
    """Every shift of s is lexicographically below e(1), or e*(1) when e(1) is finite."""
    ref = e.reference
    for k in range(len(s.preperiod) + len(s.period)):
        shifted = UpWord(tuple(s.letter(k + i) for i in range(max(0, len(s.preperiod) - k))), s.period) \
            if k < len(s.preperiod) else UpWord((), tuple(s.letter(k + i) for i in range(len(s.period))))
        if _compare_up(shifted, ref) >= 0:
            return False
    return True


# -- Pisot certification ---------------------------------------------------

class PisotStatus(enum.Enum):
    PISOT = "Pisot"
    NOT_PISOT = "NotPisot"
    UNKNOWN = "Unknown"


def _variations(seq: list) -> int:
    signs = [x for x in seq if x != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def _cauchy_index(B: P.Poly, A: P.Poly) -> int:
    """Cauchy index of B/A over the whole real line, by a generalized Sturm chain."""
    B = P.mod(B, A)
    chain = [A, B]
    while chain[-1]:
        chain.append(P.neg(P.mod(chain[-2], chain[-1])))
    chain = chain[:-1]
    at_pos = [p[-1] for p in chain]
    at_neg = [p[-1] * (-1) ** P.degree(p) for p in chain]
    return _variations(at_neg) - _variations(at_pos)


def _rhp_count(R: P.Poly) -> int | None:
    """Roots of R with positive real part, or None if R has a root on the imaginary axis.

    With R(iy) = E(y) + i·O(y), the argument of R(iy) turns by
    π(#left - #right) as y runs over the reals, which is -π·Ind(O/E) for
    even degree and π·Ind(E/O) for odd degree.
    """
    n = P.degree(R)
    E = P.make([(c * (-1) ** (k // 2) if k % 2 == 0 else 0) for k, c in enumerate(R)])
    O = P.make([(c * (-1) ** (k // 2) if k % 2 == 1 else 0) for k, c in enumerate(R)])
    G = P.gcd(E, O) if E and O else (E or O)
    if P.degree(G) >= 1:
        B = P.cauchy_bound(G) + 1
        if P.count_roots(G, -B, B) > 0:
            return None
    diff = -_cauchy_index(O, E) if n % 2 == 0 else _cauchy_index(E, O)
    return (n - diff) // 2


def pisot_check(f: AlgField) -> PisotStatus:
    """Decide whether θ is a Pisot number.

    The Cayley map z = (1+w)/(1-w) sends the open unit disc to the open left
    half-plane, so θ is Pisot iff its minimal polynomial has integer
    coefficients and its transform has exactly one root with Re w > 0 and
    none on the imaginary axis.  Both counts are exact (Sturm chains).
    """
    m = f.minpoly
    if any(c.denominator != 1 for c in m):
        return PisotStatus.NOT_PISOT
    if f.theta <= 1:
        return PisotStatus.NOT_PISOT
    n = P.degree(m)
    if n == 1:
        return PisotStatus.PISOT
    one_plus, one_minus = P.make([1, 1]), P.make([1, -1])
    R = P.ZERO
    for k, ck in enumerate(m):
        term = P.make([ck])
        for _ in range(k):
            term = P.mul(term, one_plus)
        for _ in range(n - k):
            term = P.mul(term, one_minus)
        R = P.add(R, term)
    if P.degree(R) != n:
        # a root at z = -1; impossible for an irreducible polynomial of degree >= 2
        return PisotStatus.UNKNOWN
    cnt = _rhp_count(R)
    if cnt is None:
        return PisotStatus.NOT_PISOT  # a conjugate on the unit circle
    return PisotStatus.PISOT if cnt == 1 else PisotStatus.NOT_PISOT


# -- the associated numeration system --------------------------------------

@dataclass
class BertrandSystem:
    field: AlgField
    expansion: ThetaExpansionOfOne
    A: Dfa
    A_prime: Dfa
    _U: list = field(default_factory=lambda: [1], repr=False)

    def d(self, i: int) -> int:
        """d_i (i ≥ 1) of e(1), or of e*(1) when e(1) is finite."""
        w = self.expansion.quasi if self.expansion.finite else self.expansion.word
        return w.letter(i - 1)

    def U(self, n: int) -> int:
        while len(self._U) <= n:
            k = len(self._U)
            self._U.append(sum(self.d(i) * self._U[k - i] for i in range(1, k + 1)) + 1)
        return self._U[n]

    def sequence(self, n: int) -> list[int]:
        return [self.U(i) for i in range(n)]

    def linear_recurrence(self) -> list[int]:
        """Coefficients c_1..c_k with U_n = Σ c_i U_{n-i} for n ≥ k."""
        e = self.expansion
        t = e.digits
        if e.finite:
            return list(t)
        N, p = e.preperiod, e.period
        c = list(t[:p])
        c[p - 1] += 1
        c += [t[p + j] - t[j] for j in range(N)]
        return c

    @property
    def theta(self) -> AlgNum:
        return self.field.theta


def build_bertrand(e: ThetaExpansionOfOne, f: AlgField) -> BertrandSystem:
    t = e.digits
    k = len(t)
    top = max(t)
    alphabet = Alphabet(tuple(str(i) for i in range(top + 1)))
    names = [f"q{i}" for i in range(k + 1)]
    delta = {}
    for i in range(1, k + 1):
        ti = t[i - 1]
        for dgt in range(ti):
            delta[(names[i], str(dgt))] = names[1]
        if i < k:
            delta[(names[i], str(ti))] = names[i + 1]
        elif not e.finite:
            delta[(names[i], str(ti))] = names[e.preperiod + 1]
    A = Dfa(alphabet, tuple(names[1:]), names[1], frozenset(names[1:]), dict(delta))
    for dgt in range(1, t[0]):
        delta[(names[0], str(dgt))] = names[1]
    if k >= 2:
        delta[(names[0], str(t[0]))] = names[2]
    elif not e.finite:
        delta[(names[0], str(t[0]))] = names[e.preperiod + 1]
    A2 = Dfa(alphabet, tuple(names), names[0], frozenset(names), delta)
    return BertrandSystem(f, e, A, A2)


def maximal_word(d: Dfa, q, n: int) -> tuple:
    out = []
    for _ in range(n):
        edges = d.out(q)
        if not edges:
            break
        a, q = edges[-1]
        out.append(a)
    return tuple(out)


def closed_form_interval(b: BertrandSystem, w: tuple) -> tuple[AlgNum, AlgNum]:
    """I_w by the three explicit cases for greedy languages."""
    d = b.A_prime
    theta = b.theta
    inv = 1 / theta
    digits = [int(a) for a in w]
    q = d.initial
    r = -1
    for i, a in enumerate(w):
        if a != d.out(q)[-1][0]:
            r = i
        q = d.step(q, a)
    pw = [inv ** (i + 1) for i in range(len(w))]
    total = sum((digits[i] * pw[i] for i in range(len(w))), b.field.zero)
    if r < 0:
        return total, b.field.one
    head = sum((digits[i] * pw[i] for i in range(r + 1)), b.field.zero)
    return total, head + inv ** (r + 1)


@dataclass
class EquivalenceReport:
    mismatches: list = field(default_factory=list)
    interval_mismatches: list = field(default_factory=list)
    checked: int = 0
    intervals_checked: int = 0
    pisot: PisotStatus | None = None

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.interval_mismatches

    def lines(self) -> list[str]:
        out = [f"pisot: {self.pisot.value if self.pisot else 'unchecked'}",
               f"samples: {self.checked} mismatches: {len(self.mismatches)}",
               f"intervals: {self.intervals_checked} mismatches: {len(self.interval_mismatches)}"]
        for x, g, a in self.mismatches:
            out.append(f"  x = {x}: greedy {g} abstract {a}")
        for w, got, want in self.interval_mismatches:
            out.append(f"  I_{w}: closed form {got} formula {want}")
        out.append("PASS" if self.ok else "FAIL")
        return out


def abstract_profile(b: BertrandSystem):
    return growth_profile(b.A_prime, f=b.field)


def equivalence_check(b: BertrandSystem, samples, n_digits: int, max_len: int = 5,
                      max_steps: int = DEFAULT_BUDGET) -> EquivalenceReport:
    from .automata import words_upto

    rep = EquivalenceReport(pisot=pisot_check(b.field))
    d = b.A_prime
    g = abstract_profile(b)
    table = partition_table(g, d)
    for x in samples:
        x = b.field(x)
        got = represent(g, d, x, max_steps=max_steps, table=table)
        abstract = got.up.prefix(n_digits) if got.up is not None else got.letters[:n_digits]
        abstract = tuple(int(a) for a in abstract)
        if x == 1:
            greedy = b.expansion.reference.prefix(n_digits)
        else:
            greedy = greedy_theta_expansion(x, b.field, max(n_digits, 1) + 1).prefix(n_digits)
        rep.checked += 1
        if tuple(greedy) != abstract:
            rep.mismatches.append((x, format_digits(tuple(greedy)), format_digits(abstract)))
    for w in words_upto(d, max_len):
        if not w:
            continue
        rep.intervals_checked += 1
        lo, hi = closed_form_interval(b, w)
        I = interval_of_prefix(g, d, w)
        if (lo, hi) != (I.lower, I.upper):
            rep.interval_mismatches.append((" ".join(w), f"[{lo}, {hi}]", f"[{I.lower}, {I.upper}]"))
    return rep


def field_from_coefficients(coeffs, iso=None) -> AlgField:
    """Field of the largest real root of the integer polynomial (coefficients lowest degree first)."""
    from .counting import isolate_largest_root

    p = P.make(coeffs)
    if iso is None:
        found = isolate_largest_root(p, above=Fraction(1))
        if found is None:
            raise DomainError(f"{P.to_str(p)} has no real root above 1")
        p, iso = found
    return AlgField(p, iso)
