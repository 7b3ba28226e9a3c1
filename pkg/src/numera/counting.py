"""Counting functions of the languages L_q, the Perron root, and the a-vector."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import mpmath

from . import _poly as P
from .algnum import AlgField, AlgNum
from .automata import Dfa, UpWord, restrict, scc_decompose, trim
from .errors import (AmbiguousGrowthError, InternalError, NotALeftFactorError,
                     SubExponentialError)

log = logging.getLogger(__name__)

DEFAULT_HORIZON = 200
CLASSIFY_TOL = 1e-9
CROSSCHECK_TOL = 1e-6


@dataclass(frozen=True)
class CountingTables:
    u: dict
    v: dict
    horizon: int


def count_u_v(d: Dfa, n_max: int) -> CountingTables:
    """``u[q][n]`` = #(L_q ∩ Σ^n) and ``v[q][n]`` = #(L_q ∩ Σ^{≤n}) for n ≤ n_max."""
    u = {q: [1 if q in d.finals else 0] for q in d.states}
    succ = {q: [t for _, t in d.out(q)] for q in d.states}
    for n in range(1, n_max + 1):
        prev = {q: u[q][-1] for q in d.states}
        for q in d.states:
            u[q].append(sum(prev[t] for t in succ[q]))
    v = {}
    for q, row in u.items():
        acc, out = 0, []
        for x in row:
            acc += x
            out.append(acc)
        v[q] = out
    return CountingTables(u, v, n_max)


# ---------------------------------------------------------------------------
# Perron root

def charpoly(A: list[list[int]]) -> P.Poly:
    """Characteristic polynomial det(xI - A) by the Faddeev-LeVerrier recursion."""
    n = len(A)
    if n == 0:
        return P.ONE
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # M <- A M + c I
        AM = [[sum(A[i][l] * M[l][j] for l in range(n) if A[i][l]) for j in range(n)] for i in range(n)]
        for i in range(n):
            AM[i][i] += c_prev
        M = AM
        tr = sum(sum(A[i][l] * M[l][i] for l in range(n)) for i in range(n))
        coeffs[n - k] = -Fraction(tr) / k
    return P.make(coeffs)


def isolate_largest_root(p: P.Poly, above=Fraction(1)) -> tuple[P.Poly, tuple[Fraction, Fraction]] | None:
    """Isolate the largest real root of ``p`` exceeding ``above``.

    Returns ``(squarefree part, (lo, hi))`` with exactly one root in the open
    interval, or None if no root lies above ``above``.
    """
    sf = P.squarefree_part(p)
    seq = P.sturm_sequence(sf)
    B = P.cauchy_bound(sf)
    lo, hi = Fraction(above), B
    if lo >= hi or P.count_roots(sf, lo, hi, seq) == 0:
        return None
    while P.count_roots(sf, lo, hi, seq) > 1:
        mid = (lo + hi) / 2
        if P.count_roots(sf, mid, hi, seq) >= 1:
            lo = mid
        else:
            hi = mid
    if P.sign_at(sf, hi) == 0:
        delta = (hi - lo) / 2
        return sf, (hi - delta, hi + delta)
    return sf, (lo, hi)


def perron_theta(d: Dfa) -> AlgField:
    """Q(θ) where θ > 1 is the dominant eigenvalue of the adjacency matrix."""
    d = trim(d)
    A = d.adjacency()
    mat = [[A[p][q] for q in d.states] for p in d.states]
    cp = charpoly(mat)
    found = isolate_largest_root(cp)
    if found is None:
        raise SubExponentialError("adjacency matrix has no eigenvalue > 1; the language grows subexponentially")
    sf, iso = found
    f = AlgField(sf, iso)
    f.charpoly = cp
    return f


# ---------------------------------------------------------------------------
# a-vector

class GrowthClass(enum.Enum):
    FINITE = "finite"
    SUBDOMINANT = "subdominant"
    EXPONENTIAL = "exponential"


class Exactness(enum.Enum):
    EXACT = "exact"
    NUMERIC_FALLBACK = "numeric-fallback"


@dataclass
class GrowthProfile:
    field: AlgField
    theta: AlgNum
    a: dict
    poly_degree: int
    classes: dict
    exactness: Exactness = Exactness.EXACT
    estimates: dict = field(default_factory=dict)
    max_deviation: float = 0.0

    def positive(self, q) -> bool:
        return q is not None and self.classes.get(q) is GrowthClass.EXPONENTIAL

    def a_of(self, q) -> AlgNum:
        if q is None:
            return self.field.zero
        return self.a.get(q, self.field.zero)


def _live_cycles(d: Dfa) -> set:
    """States from which some nontrivial coaccessible SCC is reachable."""
    comps, dag = scc_decompose(d)
    good = set()
    # comps are in reverse topological order: successors come first
    reach_good = [False] * len(comps)
    succ: dict = {}
    for a, b in dag:
        succ.setdefault(a, set()).add(b)
    for i, c in enumerate(comps):
        reach_good[i] = (c.nontrivial and c.coaccessible) or any(reach_good[j] for j in succ.get(i, ()))
        if reach_good[i]:
            good.update(c.states)
    return good


def fitted_degree(t: CountingTables, q, theta: float) -> int:
    N = t.horizon
    half = N // 2
    uN, uh = t.u[q][N], t.u[q][half]
    if uN == 0 or uh == 0:
        return 0
    with mpmath.workdps(60):
        r = mpmath.log(mpmath.mpf(uN) / mpmath.mpf(uh)) - (N - half) * mpmath.log(theta)
        return max(0, int(mpmath.nint(r / mpmath.log(mpmath.mpf(N) / half))))


def _nullspace(M: list[list[AlgNum]], zero: AlgNum) -> list[list[AlgNum]]:
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [zero] * ncols
        vec[fc] = zero + 1
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][fc]
        basis.append(vec)
    return basis


def growth_profile(d: Dfa, t: CountingTables | None = None, f: AlgField | None = None,
                   classify_tol: float = CLASSIFY_TOL, crosscheck_tol: float = CROSSCHECK_TOL,
                   allow_numeric: bool = False) -> GrowthProfile:
    """Solve A·a = θ·a over Q(θ) with a_{q0} = 1 and a_q = 0 off the dominant states."""
    if t is None:
        t = count_u_v(d, DEFAULT_HORIZON)
    if f is None:
        f = perron_theta(d)
    theta = f.theta
    N = t.horizon
    live = _live_cycles(d)
    vN = t.v[d.initial][N]
    estimates = {}
    classes = {}
    ladder = [max(1, N // 4), max(1, N // 2), N]
    for q in d.states:
        if q not in live:
            classes[q] = GrowthClass.FINITE
            estimates[q] = 0.0
            continue
        est = [t.v[q][n] / t.v[d.initial][n] if t.v[d.initial][n] else 0.0 for n in ladder]
        estimates[q] = t.v[q][N] / vN if vN else 0.0
        if est[-1] < classify_tol and est[-1] <= est[-2]:
            classes[q] = GrowthClass.SUBDOMINANT
        else:
            classes[q] = GrowthClass.EXPONENTIAL
    if classes.get(d.initial) is not GrowthClass.EXPONENTIAL:
        raise AmbiguousGrowthError("initial state is not dominant", estimates)

    pos = [q for q in d.states if classes[q] is GrowthClass.EXPONENTIAL]
    A = d.adjacency()
    zero = f.zero
    M = [[zero + A[p][q] - (theta if p == q else 0) for q in pos] for p in pos]
    basis = _nullspace(M, zero)
    i0 = pos.index(d.initial)
    degree = fitted_degree(t, d.initial, float(theta))

    def fallback(msg):
        if not allow_numeric:
            raise AmbiguousGrowthError(msg, estimates)
        log.warning("%s; returning numeric estimates", msg)
        a = {q: f(Fraction(estimates[q]).limit_denominator(10**12)) if classes[q] is GrowthClass.EXPONENTIAL
             else zero for q in d.states}
        return GrowthProfile(f, theta, a, degree, classes, Exactness.NUMERIC_FALLBACK, estimates)

    if len(basis) != 1:
        return fallback(f"θ-eigenspace on the dominant states has dimension {len(basis)}, expected 1")
    vec = basis[0]
    if vec[i0] == 0:
        return fallback("θ-eigenvector vanishes at the initial state")
    scale = vec[i0].inverse()
    vec = [x * scale for x in vec]
    if any(x < 0 for x in vec):
        return fallback("θ-eigenvector is not nonnegative")
    a = {q: zero for q in d.states}
    for q, x in zip(pos, vec):
        a[q] = x
        if x == 0:
            classes[q] = GrowthClass.SUBDOMINANT
    dev = max((abs(float(a[q]) - estimates[q]) for q in d.states), default=0.0)
    if dev > crosscheck_tol:
        log.warning("exact a-vector deviates from the numeric limit estimate by %.3g", dev)
    return GrowthProfile(f, theta, a, degree, classes, Exactness.EXACT, estimates, dev)


def check_rel_identity(d: Dfa, g: GrowthProfile) -> bool:
    """Σ_σ a_{q.σ} = θ·a_q for every state."""
    return all(
        sum((g.a_of(t) for _, t in d.out(q)), g.field.zero) == g.theta * g.a_of(q)
        for q in d.states
    )


# ---------------------------------------------------------------------------
# hypothesis

@dataclass
class HypothesisReport:
    verdict: str
    reasons: list
    degree: int | None = None
    theta: str | None = None
    constant: float | None = None

    def lines(self) -> list[str]:
        out = [f"verdict: {self.verdict}"]
        if self.theta is not None:
            out.append(f"theta: {self.theta}")
        if self.degree is not None:
            out.append(f"degree: {self.degree}")
        if self.constant is not None:
            out.append(f"constant: {self.constant:.12g}")
        out += [f"reason: {r}" for r in self.reasons]
        return out


def check_hypothesis(d: Dfa, t: CountingTables | None = None) -> HypothesisReport:
    """Sufficient checks that the language supports real-number representations.

    Never reports failure: a negative outcome is INCONCLUSIVE with reasons.
    """
    reasons = []
    try:
        d = trim(d)
    except Exception as exc:
        return HypothesisReport("INCONCLUSIVE", [f"L empty ({exc})"])
    comps, _ = scc_decompose(d)
    if not any(c.nontrivial for c in comps):
        return HypothesisReport("INCONCLUSIVE", ["L finite"])
    rich = False
    for c in comps:
        if not (c.nontrivial and c.coaccessible):
            continue
        cs = set(c.states)
        edges = sum(1 for q in c.states for _, x in d.out(q) if x in cs)
        if edges > len(c.states):
            rich = True
    if not rich:
        return HypothesisReport("INCONCLUSIVE", ["every cycle component is a single simple cycle (L_inf countable)"])
    reasons.append("L infinite; a coaccessible component carries two distinct cycles")
    try:
        f = perron_theta(d)
    except SubExponentialError as exc:
        return HypothesisReport("INCONCLUSIVE", reasons + [str(exc)])
    if t is None:
        t = count_u_v(d, DEFAULT_HORIZON)
    N = t.horizon
    th = float(f.theta)
    deg = fitted_degree(t, d.initial, th)
    start = (3 * N) // 4
    u = t.u[d.initial]
    if any(u[n] == 0 for n in range(start, N + 1)):
        return HypothesisReport("INCONCLUSIVE", reasons + ["u(n) vanishes infinitely often"], deg, f.theta.to_decimal(12))
    with mpmath.workdps(max(50, int(N * 0.31 * max(1.0, mpmath.log(th, 2))) + 30)):
        lo, hi = f.theta.enclose(Fraction(1, 2 ** (4 * N)))
        T = (mpmath.mpf(lo.numerator) / lo.denominator + mpmath.mpf(hi.numerator) / hi.denominator) / 2
        c = [mpmath.mpf(u[n]) / (mpmath.mpf(n) ** deg * T ** n) for n in range(start, N + 1)]
        limit = c[-1]
        devs = [abs(x - limit) for x in c[:-1]]
        monotone = all(b <= a * (1 + mpmath.mpf(10) ** -20) for a, b in zip(devs, devs[1:]))
        spread = devs[0] / limit if limit else mpmath.inf
    if monotone and spread < 0.05:
        reasons.append(f"u(n)/(n^{deg} θ^n) settles over n in [{start}, {N}]")
        return HypothesisReport("PASS", reasons, deg, f.theta.to_decimal(12), float(limit))
    reasons.append(f"u(n)/(n^{deg} θ^n) does not settle over n in [{start}, {N}]")
    return HypothesisReport("INCONCLUSIVE", reasons, deg, f.theta.to_decimal(12), float(limit))


# ---------------------------------------------------------------------------
# simplification

def simplify_language(d: Dfa, g: GrowthProfile) -> Dfa:
    """Drop every state with a_q = 0 together with its edges."""
    keep = {q for q in d.states if g.positive(q)}
    if d.initial not in keep:
        raise InternalError("initial state has a_q0 = 0")
    for (p, _), q in d.delta.items():
        if q in keep and p not in keep and p in g.classes:
            # a_q > 0 and p.σ = q force a_p > 0
            raise InternalError(f"state {p} has a = 0 but reaches dominant state {q}")
    return restrict(d, keep)


# ---------------------------------------------------------------------------
# β coefficients

@dataclass
class BetaCoeffs:
    states: tuple
    seq: dict
    preperiod: dict = None
    period: dict = None
    r: int | None = None
    p: int | None = None

    def vector(self, j: int) -> tuple:
        return tuple(self.seq[q][j] for q in self.states)


def transducer_labels(d: Dfa) -> dict:
    """``(p, σ) -> (σ, n_0, …, n_r)`` with n_i = #{τ<σ : p.τ = q_i} + [i = 0]."""
    out = {}
    for p in d.states:
        seen: dict = {q: 0 for q in d.states}
        for a, t in d.out(p):
            out[(p, a)] = (a,) + tuple(seen[q] + (1 if q == d.initial else 0) for q in d.states)
            seen[t] += 1
    return out


def _beta_step(d: Dfa, state, letter) -> dict:
    counts = {q: (1 if q == d.initial else 0) for q in d.states}
    for a, t in d.out(state):
        if a == letter:
            break
        counts[t] += 1
    return counts


def beta_coefficients(d: Dfa, w, J: int | None = None) -> BetaCoeffs:
    """β_{q,j} for j < J along the word ``w`` (finite tuple or :class:`UpWord`)."""
    if isinstance(w, UpWord):
        return _beta_up(d, w, J)
    w = d.alphabet.parse_word(w)
    J = len(w) if J is None else min(J, len(w))
    seq = {q: [] for q in d.states}
    q = d.initial
    for j in range(len(w)):
        nxt = d.step(q, w[j])
        if nxt is None:
            raise NotALeftFactorError(f"prefix of length {j + 1} enters the sink")
        if j < J:
            for s, c in _beta_step(d, q, w[j]).items():
                seq[s].append(c)
        q = nxt
    return BetaCoeffs(d.states, seq)


def up_state_cycle(d: Dfa, w: UpWord) -> tuple[int, int]:
    """Start and length of the periodic part of the (state, letter) sequence along ``w``."""
    u, v = w.preperiod, w.period
    q = d.run(u)
    if q is None:
        raise NotALeftFactorError("preperiod enters the sink")
    seen = {q: 0}
    for k in range(1, len(d.states) + 2):
        q = d.run(v, q)
        if q is None:
            raise NotALeftFactorError("word enters the sink")
        if q in seen:
            k0 = seen[q]
            return len(u) + k0 * len(v), (k - k0) * len(v)
        seen[q] = k
    raise InternalError("no state repetition within #Q periods")  # pragma: no cover


def _beta_up(d: Dfa, w: UpWord, J: int | None) -> BetaCoeffs:
    start, per = up_state_cycle(d, w)
    total = max(start + 2 * per, J or 0)
    seq = {q: [] for q in d.states}
    q = d.initial
    for j in range(total):
        a = w.letter(j)
        for s, c in _beta_step(d, q, a).items():
            seq[s].append(c)
        q = d.step(q, a)
    pre, prd = {}, {}
    for s in d.states:
        b = seq[s]
        p_s = per
        for dv in sorted(x for x in range(1, per + 1) if per % x == 0):
            if all(b[j] == b[j + dv] for j in range(start, start + per)):
                p_s = dv
                break
        r_s = start
        while r_s > 0 and b[r_s - 1] == b[r_s - 1 + p_s]:
            r_s -= 1
        pre[s], prd[s] = r_s, p_s
    r = max(pre.values())
    p = 1
    for x in prd.values():
        p = lcm(p, x)
    if J is not None:
        seq = {s: b[:J] if J <= len(b) else b for s, b in seq.items()}
    return BetaCoeffs(d.states, seq, pre, prd, r, p)
