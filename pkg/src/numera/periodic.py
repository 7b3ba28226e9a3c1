"""Periods, preperiods and ultimately periodic words of the infinite-word language.

ℒ∞ is the set of infinite words all of whose prefixes are left factors of L.
Its ultimately periodic members are described through the maximal cycle
sets of the automaton: a period is a word that, pumped a bounded number of
times, returns to its starting state inside one cycle set.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable

from .automata import (Dfa, Nfa, UpWord, accessible, coaccessible, format_automaton, minimize,
                       restrict, scc_decompose)
from .errors import DomainError, EmptyLanguageError, ExplosionError

DEFAULT_CAP = 10**6


@dataclass(frozen=True)
class CycleSet:
    states: tuple
    start: object
    witness: tuple  # closed walk from ``start`` visiting every state


@dataclass(frozen=True)
class CycleSets:
    sets: tuple

    def __iter__(self):
        return iter(self.sets)

    def __len__(self):
        return len(self.sets)

    def union(self) -> frozenset:
        return frozenset(q for c in self.sets for q in c.states)


def _useful(d: Dfa) -> Dfa:
    keep = accessible(d) & coaccessible(d)
    return restrict(d, keep) if d.initial in keep else restrict(d, {d.initial})


def _bfs_path(d: Dfa, src, accept: Callable, allowed: set | None = None, nonempty: bool = False):
    """Shortest, then lexicographically least, path from ``src`` to a state satisfying ``accept``."""
    if not nonempty and accept(src):
        return (), src
    parent = {}
    todo = deque()
    for a, t in d.out(src):
        if allowed is not None and t not in allowed:
            continue
        if t not in parent:
            parent[t] = (None, a)
            todo.append(t)
    # states reached by a nonempty path; src may reappear here
    while todo:
        q = todo.popleft()
        if accept(q):
            path = []
            cur = q
            while cur is not None:
                prev, a = parent[cur]
                path.append(a)
                cur = prev
            return tuple(reversed(path)), q
        for a, t in d.out(q):
            if allowed is not None and t not in allowed:
                continue
            if t not in parent:
                parent[t] = (q, a)
                todo.append(t)
    return None


def maximal_cycle_sets(d: Dfa) -> CycleSets:
    """Maximal cycle sets: the nontrivial SCCs of the trimmed automaton.

    A closed walk stays in one SCC, and a nontrivial SCC has a closed walk
    through all its states, so the maximal sets are exactly these SCCs.
    """
    u = _useful(d)
    live = coaccessible(u)
    comps, _ = scc_decompose(u)
    order = {q: i for i, q in enumerate(d.states)}
    out = []
    for c in comps:
        if not c.nontrivial or c.states[0] not in live:
            continue
        members = set(c.states)
        start = min(c.states, key=order.__getitem__)
        walk = []
        cur = start
        unseen = members - {start}
        while unseen:
            step, cur = _bfs_path(u, cur, unseen.__contains__, members)
            walk.extend(step)
            unseen.discard(cur)
        back, _ = _bfs_path(u, cur, lambda q: q == start, members, nonempty=True)
        walk.extend(back)
        out.append(CycleSet(tuple(sorted(c.states, key=order.__getitem__)), start, tuple(walk)))
    out.sort(key=lambda c: order[c.start])
    return CycleSets(tuple(out))


def cycle_states(d: Dfa) -> frozenset:
    return maximal_cycle_sets(d).union()


def shortest_path_into(d: Dfa, q, targets) -> tuple | None:
    return _bfs_path(d, q, lambda s: s in targets)


def shortest_cycle(d: Dfa, q) -> tuple:
    found = _bfs_path(d, q, lambda s: s == q, nonempty=True)
    if found is None:
        raise DomainError(f"state {q!r} lies on no cycle")
    return found[0]


def build_period_nfa(d: Dfa, c: CycleSets | None = None) -> Nfa:
    """Union of the automata (C_i, p, δ restricted to C_i, {p}) over every p ∈ C_i."""
    if c is None:
        c = maximal_cycle_sets(d)
    states, inits, finals, delta = [], set(), set(), set()
    for i, cs in enumerate(c):
        members = set(cs.states)
        for p in cs.states:
            name = lambda q, p=p, i=i: (i, p, q)
            states.extend(name(q) for q in cs.states)
            inits.add(name(p))
            finals.add(name(p))
            for q in cs.states:
                for a, t in d.out(q):
                    if t in members:
                        delta.add((name(q), a, name(t)))
    return Nfa(d.alphabet, tuple(states), frozenset(inits), frozenset(finals), frozenset(delta))


def _cycle_copy(d: Dfa, cs: CycleSet, p) -> Nfa:
    members = set(cs.states)
    delta = frozenset((q, a, t) for q in cs.states for a, t in d.out(q) if t in members)
    return Nfa(d.alphabet, cs.states, frozenset([p]), frozenset([p]), delta)


def _empty_dfa(d_alphabet) -> Dfa:
    return Dfa(d_alphabet, ("r0",), "r0", frozenset(), {})


def _relation_dfa(m: Nfa, accept: Callable, cap: int = DEFAULT_CAP) -> Dfa:
    """Determinise over transition relations R_u ⊆ Q×Q.

    The state reached by u is (R_u, u ≠ ε); ``accept(R, nonempty)`` decides
    finality.  Relations are kept as frozensets of pairs.
    """
    letter_rel = {a: frozenset((p, q) for p in m.states for q in m.succ(p, a)) for a in m.alphabet}
    ident = frozenset((q, q) for q in m.states)
    start = (ident, False)
    ids = {start: 0}
    order = [start]
    delta = {}
    todo = deque([start])
    while todo:
        S = todo.popleft()
        R, _ = S
        for a in m.alphabet:
            step = letter_rel[a]
            by_src: dict = {}
            for p, q in step:
                by_src.setdefault(p, []).append(q)
            T_rel = frozenset((s, t) for s, mid in R for t in by_src.get(mid, ()))
            if not T_rel:
                continue
            T = (T_rel, True)
            if T not in ids:
                if len(ids) >= cap:
                    raise ExplosionError(f"determinisation exceeded {cap} states")
                ids[T] = len(ids)
                order.append(T)
                todo.append(T)
            delta[(f"r{ids[S]}", a)] = f"r{ids[T]}"
    states = tuple(f"r{i}" for i in range(len(order)))
    finals = frozenset(f"r{ids[S]}" for S in order if accept(*S))
    return Dfa(m.alphabet, states, "r0", finals, delta)


def _root_accepts(m: Nfa, R, k: int) -> bool:
    succ: dict = {}
    for p, q in R:
        succ.setdefault(p, set()).add(q)
    cur = set(m.initials)
    for _ in range(k):
        cur = {q for p in cur for q in succ.get(p, ())}
        if not cur:
            return False
    return bool(cur & m.finals)


def _canonical(dfa: Dfa) -> Dfa:
    try:
        return minimize(dfa)
    except EmptyLanguageError:
        return _empty_dfa(dfa.alphabet)


def kth_root(m: Nfa, k: int, cap: int = DEFAULT_CAP) -> Dfa:
    """Minimal DFA for {u : u^k ∈ L(m)}."""
    if k < 1:
        raise DomainError("k must be at least 1")
    return _canonical(_relation_dfa(m, lambda R, _ne: _root_accepts(m, R, k), cap))


def per_language(d: Dfa, cap: int = DEFAULT_CAP) -> Dfa:
    """Periods of ℒ∞: nonempty words in some k-th root of the period NFA, 1 ≤ k ≤ #Q."""
    c = maximal_cycle_sets(d)
    if not len(c):
        return _empty_dfa(d.alphabet)
    m = build_period_nfa(d, c)
    kmax = len(d.states)
    return _canonical(_relation_dfa(
        m, lambda R, ne: ne and any(_root_accepts(m, R, k) for k in range(1, kmax + 1)), cap))


def aper_language(d: Dfa) -> Dfa:
    """Preperiods of ℒ∞: words leading from q0 into a maximal cycle set."""
    u = _useful(d)
    targets = maximal_cycle_sets(d).union()
    if not targets:
        return _empty_dfa(d.alphabet)
    return _canonical(u.with_(finals=targets & set(u.states)))


@dataclass(frozen=True)
class OmegaBlock:
    state: object
    prefixes: Dfa   # words m with q0.m = state
    periods: Dfa    # nonempty v with state.v^k = state inside its cycle set, some k ≤ #Q


@dataclass(frozen=True)
class OmegaRegExpr:
    blocks: tuple

    def __len__(self):
        return len(self.blocks)

    def contains(self, w: UpWord, kmax: int) -> bool:
        """Decide u·v^ω ∈ ∪ W·V^ω by trying each split point and pumping."""
        u, v = w.preperiod, w.period
        for i in range(len(u), len(u) + len(v) * (kmax + 1)):
            head = w.prefix(i)
            rot = tuple(w.letter(i + j) for j in range(len(v)))
            for b in self.blocks:
                if not b.prefixes.accepts(head):
                    continue
                for t in range(1, kmax + 1):
                    if b.periods.accepts(rot * t):
                        return True
        return False

    def serialize(self) -> str:
        parts = []
        for b in self.blocks:
            parts.append(f"# block {b.state}\n[prefix]\n{format_automaton(b.prefixes)}"
                         f"[period]\n{format_automaton(b.periods)}")
        return "\n".join(parts)


def uper_omega(d: Dfa, cap: int = DEFAULT_CAP) -> OmegaRegExpr:
    u = _useful(d)
    kmax = len(d.states)
    blocks = []
    for cs in maximal_cycle_sets(d):
        for q in cs.states:
            pre = _canonical(u.with_(finals=frozenset([q])))
            m = _cycle_copy(u, cs, q)
            per = _canonical(_relation_dfa(
                m, lambda R, ne, m=m: ne and any(_root_accepts(m, R, k) for k in range(1, kmax + 1)), cap))
            blocks.append(OmegaBlock(q, pre, per))
    return OmegaRegExpr(tuple(blocks))


def is_up_in_Linfty(d: Dfa, w: UpWord) -> bool:
    """Every prefix of u·v^ω is a left factor of L."""
    live = coaccessible(d)
    q = d.initial
    if q not in live:
        return False
    for a in w.preperiod:
        q = d.step(q, a)
        if q is None or q not in live:
            return False
    seen = set()
    while q not in seen:
        seen.add(q)
        for a in w.period:
            q = d.step(q, a)
            if q is None or q not in live:
                return False
    return True
