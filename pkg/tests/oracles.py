"""Brute-force reference implementations, independent of the library algorithms."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from numera.automata import Alphabet, Dfa, Nfa


def all_words(alphabet, max_len):
    for n in range(max_len + 1):
        for w in itertools.product(alphabet.letters, repeat=n):
            yield w


def language_sorted(d: Dfa, max_len: int) -> list:
    """Accepted words up to max_len, sorted genealogically by plain enumeration."""
    words = [w for w in all_words(d.alphabet, max_len) if d.accepts(w)]
    return sorted(words, key=lambda w: (len(w), [d.alphabet.rank(a) for a in w]))


def counts(d: Dfa, q, n: int) -> int:
    """u_q(n) by explicit enumeration of Σ^n."""
    return sum(1 for w in itertools.product(d.alphabet.letters, repeat=n) if d.run(w, q) in d.finals)


def counts_dp(d: Dfa, n_max: int) -> dict:
    """u_q(n) for all q, n ≤ n_max by dynamic programming over Python ints."""
    u = {q: [1 if q in d.finals else 0] for q in d.states}
    for n in range(1, n_max + 1):
        for q in d.states:
            u[q].append(sum(u[t][n - 1] for _, t in d.out(q)))
    return u


def limit_interval(d: Dfa, w: tuple, n: int) -> tuple[float, float]:
    """Endpoints of I_w from the quotient of counting functions at a finite horizon."""
    u = counts_dp(d, n)
    v = [sum(u[d.initial][:k + 1]) for k in range(n + 1)]
    ell = len(w)
    below = Fraction(0)
    upto = Fraction(0)
    for m in itertools.product(d.alphabet.letters, repeat=ell):
        q = d.run(m)
        if q is None:
            continue
        key = [d.alphabet.rank(a) for a in m]
        wkey = [d.alphabet.rank(a) for a in w]
        if key < wkey:
            below += u[q][n - ell]
        if key <= wkey:
            upto += u[q][n - ell]
    base = Fraction(v[n - 1])
    return float((base + below) / v[n]), float((base + upto) / v[n])


def sum_below(d: Dfa, a: dict, w: tuple, zero):
    """Σ a_{q0.m} over m ∈ Σ^|w|, m < w, by enumeration."""
    total = zero
    wkey = [d.alphabet.rank(x) for x in w]
    for m in itertools.product(d.alphabet.letters, repeat=len(w)):
        if [d.alphabet.rank(x) for x in m] < wkey:
            q = d.run(m)
            if q is not None:
                total = total + a[q]
    return total


def coaccessible_states(d: Dfa) -> set:
    live = set(d.finals)
    changed = True
    while changed:
        changed = False
        for (p, _), q in d.delta.items():
            if q in live and p not in live:
                live.add(p)
                changed = True
    return live


def reachable_states(d: Dfa) -> set:
    seen = {d.initial}
    changed = True
    while changed:
        changed = False
        for (p, _), q in d.delta.items():
            if p in seen and q not in seen:
                seen.add(q)
                changed = True
    return seen


def _strongly_connected_nontrivial(d: Dfa, S: frozenset) -> bool:
    """Some closed walk inside S visits every state of S."""
    if not S:
        return False
    for p in S:
        seen, todo = set(), [p]
        while todo:
            x = todo.pop()
            for _, t in d.out(x):
                if t in S and t not in seen:
                    seen.add(t)
                    todo.append(t)
        if not S <= seen:
            return False
    return True


def maximal_cycle_sets_by_subsets(d: Dfa) -> set:
    """Maximal cycle sets by enumerating every subset of useful states."""
    useful = sorted(coaccessible_states(d) & reachable_states(d), key=d.states.index)
    good = []
    for r in range(1, len(useful) + 1):
        for S in itertools.combinations(useful, r):
            S = frozenset(S)
            if _strongly_connected_nontrivial(d, S):
                good.append(S)
    return {S for S in good if not any(S < T for T in good)}


def per_oracle(d: Dfa, w: tuple, cycle_states) -> bool:
    if not w:
        return False
    for q in cycle_states:
        p = q
        for _ in range(len(d.states)):
            p = d.run(w, p)
            if p is None:
                break
            if p == q:
                return True
    return False


def random_nfa(rng: random.Random, n: int = 4, letters=("a", "b"), density: float = 0.35) -> Nfa:
    states = tuple(f"s{i}" for i in range(n))
    delta = frozenset((p, a, q) for p in states for a in letters for q in states if rng.random() < density)
    inits = frozenset(s for s in states if rng.random() < 0.4) or frozenset([states[0]])
    finals = frozenset(s for s in states if rng.random() < 0.4) or frozenset([states[-1]])
    return Nfa(Alphabet(tuple(letters)), states, inits, finals, delta)


def random_dfa(rng: random.Random, n: int, letters=("a", "b"), density: float = 0.7) -> Dfa:
    states = tuple(f"p{i}" for i in range(n))
    delta = {(p, a): rng.choice(states) for p in states for a in letters if rng.random() < density}
    finals = frozenset(s for s in states if rng.random() < 0.5) or frozenset([states[0]])
    return Dfa(Alphabet(tuple(letters)), states, states[0], finals, delta)


def binary_digits(x: Fraction, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x *= 2
        d = int(x >= 1)
        out.append(d)
        x -= d
    return out


def up_prefix(pre, per, n):
    return [pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)] for i in range(n)]
