"""The automaton of cell-rescaling maps and numbers with periodic representations.

Each edge q --σ--> q.σ carries the increasing affine map sending the cell
A'_{q,σ} onto [0, 1].  Composing the maps along a closed walk gives an
expanding map whose fixed point is the relative position, inside the
corresponding cell chain, of a number represented by the pumped walk.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .algnum import AlgNum
from .automata import Alphabet, Dfa, UpWord
from .counting import GrowthProfile
from .errors import InternalError, NoUniqueFixedPointError
from .realline import AffineMap, f_I_inverse, partition_table, value_of_up

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    src: object
    letter: str
    dst: object
    map: AffineMap

    @property
    def token(self) -> str:
        return f"{self.src}.{self.letter}"

    @property
    def label(self) -> str:
        return f"id_{self.letter}" if self.map.is_identity() else f"f_{self.letter}"


@dataclass(frozen=True)
class FLAutomaton:
    nodes: tuple
    initial: object
    edges: tuple  # ordered by (node order, letter order)

    def out(self, q) -> tuple:
        return tuple(e for e in self.edges if e.src == q)

    def edge(self, src, letter) -> Edge:
        for e in self.edges:
            if e.src == src and e.letter == letter:
                return e
        raise KeyError((src, letter))


@dataclass(frozen=True)
class UPValue:
    value: AlgNum
    word: UpWord
    state: object
    path: tuple   # edges from the initial node to ``state``
    cycle: tuple  # closed walk at ``state``

    def describe(self) -> str:
        p = "·".join(e.label for e in self.path) or "ε"
        c = "∘".join(e.label for e in reversed(self.cycle))
        return f"path = {p} cycle = {c}"


def build_FL(g: GrowthProfile, d: Dfa) -> FLAutomaton:
    table = partition_table(g, d)
    nodes = tuple(q for q in d.states if q in table)
    edges = tuple(Edge(q, c.letter, c.target, c.rescale) for q in nodes for c in table[q].cells)
    return FLAutomaton(nodes, d.initial, edges)


def compose(path) -> AffineMap:
    """f_t ∘ … ∘ f_1 for the edges f_1, …, f_t of ``path``."""
    path = list(path)
    F = path[0].map
    for e in path[1:]:
        F = e.map.compose(F)
    return F


def compose_fixed_point(path) -> AlgNum:
    path = list(path)
    if not path:
        raise ValueError("empty path")
    for e, nxt in zip(path, path[1:] + path[:1]):
        if e.dst != nxt.src:
            raise ValueError("edges do not form a closed walk")
    F = compose(path)
    if F.slope == 1:
        raise NoUniqueFixedPointError("the composed map has slope 1")
    return F.fixed_point()


def value_along(g: GrowthProfile, path, y: AlgNum) -> AlgNum:
    """f_I^{-1} ∘ g_1^{-1} ∘ … ∘ g_s^{-1}(y) for the edges g_1, …, g_s of ``path``."""
    for e in reversed(list(path)):
        y = e.map.inverse()(y)
    return f_I_inverse(g, y)


def _walks(fl: FLAutomaton, start, length: int):
    """All walks of exactly ``length`` edges from ``start``, in lexicographic edge order."""
    if length == 0:
        yield ()
        return
    stack = [((), start)]
    out_of = {q: fl.out(q) for q in fl.nodes}
    while stack:
        walk, q = stack.pop()
        if len(walk) == length:
            yield walk
            continue
        for e in reversed(out_of[q]):
            stack.append((walk + (e,), e.dst))


def enumerate_up_values(g: GrowthProfile, d: Dfa, cycle_len_max: int, path_len_max: int,
                        fl: FLAutomaton | None = None) -> list[UPValue]:
    """Values with an ultimately periodic representation ν·φ^ω within the bounds.

    Candidates are ordered by (cycle length, cycle edges, path length, path
    edges) and deduplicated by exact value, keeping the first witness.
    """
    if fl is None:
        fl = build_FL(g, d)
    out: list[UPValue] = []
    seen: set = set()
    paths_to: dict = {q: [] for q in fl.nodes}
    for ell in range(path_len_max + 1):
        for p in _walks(fl, fl.initial, ell):
            end = p[-1].dst if p else fl.initial
            paths_to[end].append(p)
    for clen in range(1, cycle_len_max + 1):
        cycles = []
        for q in fl.nodes:
            cycles.extend(w for w in _walks(fl, q, clen) if w[-1].dst == q)
        rank = {e: i for i, e in enumerate(fl.edges)}
        cycles.sort(key=lambda w: tuple(rank[e] for e in w))
        for cyc in cycles:
            q = cyc[0].src
            F = compose(cyc)
            if F.slope == 1:
                log.info("skipping identity cycle %s", "·".join(e.token for e in cyc))
                continue
            x = F.fixed_point()
            for p in paths_to[q]:
                v = value_along(g, p, x)
                if v in seen:
                    continue
                word = UpWord(tuple(e.letter for e in p), tuple(e.letter for e in cyc))
                check = value_of_up(g, d, word)
                if check != v:
                    raise InternalError(f"{word} evaluates to {check}, expected {v}")
                seen.add(v)
                out.append(UPValue(v, word, q, p, cyc))
    return out


def phi_nu_automata(fl: FLAutomaton, q) -> tuple[Dfa, Dfa]:
    """DFAs over edge tokens for the closed walks at q and the walks from the initial node to q."""
    alphabet = Alphabet(tuple(e.token for e in fl.edges))
    delta = {(e.src, e.token): e.dst for e in fl.edges}
    phi = Dfa(alphabet, fl.nodes, q, frozenset([q]), delta)
    nu = Dfa(alphabet, fl.nodes, fl.initial, frozenset([q]), delta)
    return phi, nu
