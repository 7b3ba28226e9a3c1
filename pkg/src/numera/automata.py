"""Finite automata over a totally ordered alphabet.

Transition functions are partial: a missing transition goes to an implicit
sink that is never materialised.  Words are tuples of letter tokens; most
fixtures use one-character letters, so :meth:`Alphabet.parse_word` also
accepts a plain string.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .errors import DeterminismError, EmptyLanguageError, ExplosionError, FormatError

State = Hashable
Word = tuple


@dataclass(frozen=True)
class Alphabet:
    letters: tuple

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters):
            raise FormatError(f"duplicate letters in alphabet {self.letters}")
        object.__setattr__(self, "_rank", {a: i for i, a in enumerate(self.letters)})

    def rank(self, letter) -> int:
        return self._rank[letter]

    def __contains__(self, letter) -> bool:
        return letter in self._rank

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def less(self, a, b) -> bool:
        return self._rank[a] < self._rank[b]

    def parse_word(self, text) -> Word:
        if isinstance(text, tuple):
            return text
        text = text.strip()
        if text in ("", "ε", "eps"):
            return ()
        if " " in text or any(len(a) != 1 for a in self.letters):
            toks = tuple(text.split())
        else:
            toks = tuple(text)
        for t in toks:
            if t not in self._rank:
                raise FormatError(f"letter {t!r} not in alphabet {' '.join(self.letters)}")
        return toks

    def format_word(self, w: Sequence) -> str:
        if all(len(a) == 1 for a in self.letters):
            return "".join(w)
        return " ".join(w)

    def gen_key(self, w: Sequence) -> tuple:
        """Sort key for the genealogical (radix) order."""
        return (len(w), tuple(self._rank[a] for a in w))


@dataclass(frozen=True, eq=False)
class Dfa:
    alphabet: Alphabet
    states: tuple
    initial: State
    finals: frozenset
    delta: Mapping  # (state, letter) -> state
    provenance: Mapping = field(default=None, compare=False)

    def __post_init__(self):
        known = set(self.states)
        if self.initial not in known:
            raise FormatError(f"initial state {self.initial!r} not declared")
        if not set(self.finals) <= known:
            raise FormatError(f"final states {set(self.finals) - known} not declared")
        for (p, a), q in self.delta.items():
            if p not in known or q not in known:
                raise FormatError(f"transition {p} {a} {q} uses an undeclared state")
            if a not in self.alphabet:
                raise FormatError(f"transition {p} {a} {q} uses an undeclared letter")
        out = {q: [] for q in self.states}
        for a in self.alphabet:
            for q in self.states:
                t = self.delta.get((q, a))
                if t is not None:
                    out[q].append((a, t))
        object.__setattr__(self, "_out", {q: tuple(v) for q, v in out.items()})

    def step(self, q, letter):
        return self.delta.get((q, letter))

    def run(self, word: Iterable, start=None):
        q = self.initial if start is None else start
        for a in word:
            q = self.delta.get((q, a))
            if q is None:
                return None
        return q

    def accepts(self, word: Iterable) -> bool:
        return self.run(word) in self.finals

    def out(self, q) -> tuple:
        """Outgoing ``(letter, target)`` pairs of ``q`` in alphabet order."""
        return self._out[q]

    def adjacency(self) -> dict:
        """``A[p][q]`` = number of letters leading from ``p`` to ``q``."""
        A = {p: {q: 0 for q in self.states} for p in self.states}
        for (p, _), q in self.delta.items():
            A[p][q] += 1
        return A

    def with_(self, **changes) -> "Dfa":
        kw = dict(alphabet=self.alphabet, states=self.states, initial=self.initial,
                  finals=self.finals, delta=self.delta, provenance=None)
        kw.update(changes)
        return Dfa(**kw)

    def __eq__(self, other):
        if not isinstance(other, Dfa):
            return NotImplemented
        return (self.alphabet == other.alphabet and self.states == other.states
                and self.initial == other.initial and self.finals == other.finals
                and dict(self.delta) == dict(other.delta))

    __hash__ = None

    def __repr__(self):
        return f"Dfa({len(self.states)} states, alphabet={' '.join(self.alphabet)})"


@dataclass(frozen=True, eq=False)
class Nfa:
    alphabet: Alphabet
    states: tuple
    initials: frozenset
    finals: frozenset
    delta: frozenset  # of (p, letter, q)

    def __post_init__(self):
        known = set(self.states)
        if not (set(self.initials) <= known and set(self.finals) <= known):
            raise FormatError("initial/final states must be declared")
        succ: dict = {}
        for p, a, q in self.delta:
            if p not in known or q not in known:
                raise FormatError(f"transition {p} {a} {q} uses an undeclared state")
            succ.setdefault((p, a), set()).add(q)
        object.__setattr__(self, "_succ", {k: frozenset(v) for k, v in succ.items()})

    def succ(self, p, letter) -> frozenset:
        return self._succ.get((p, letter), frozenset())

    def accepts(self, word: Iterable) -> bool:
        cur = set(self.initials)
        for a in word:
            cur = {q for p in cur for q in self.succ(p, a)}
            if not cur:
                return False
        return bool(cur & self.finals)


@dataclass(frozen=True)
class UpWord:
    """The ultimately periodic word ``preperiod · period^ω`` in canonical form."""

    preperiod: tuple
    period: tuple

    def __post_init__(self):
        if not self.period:
            raise ValueError("period must be nonempty")
        u, v = _canonical(tuple(self.preperiod), tuple(self.period))
        object.__setattr__(self, "preperiod", u)
        object.__setattr__(self, "period", v)

    def letter(self, i: int):
        u, v = self.preperiod, self.period
        return u[i] if i < len(u) else v[(i - len(u)) % len(v)]

    def prefix(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def format(self, alphabet: Alphabet | None = None) -> str:
        toks = [str(a) for a in self.preperiod + self.period]
        if alphabet is not None:
            sep = "" if all(len(a) == 1 for a in alphabet.letters) else " "
        else:
            sep = "" if all(len(a) == 1 for a in toks) else " "
        pre, per = toks[:len(self.preperiod)], toks[len(self.preperiod):]
        return f"{sep.join(pre)}({sep.join(per)})^w"

    def __str__(self):
        return self.format()

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet | None = None) -> "UpWord":
        m = re.fullmatch(r"\s*(.*?)\s*\(\s*(.+?)\s*\)\s*\^\s*(?:w|ω|omega)\s*", text)
        if not m:
            raise FormatError(f"cannot parse ultimately periodic word {text!r}; expected u(v)^w")
        if alphabet is None:
            split = (lambda s: tuple(s.split())) if " " in text.strip() else tuple
            return cls(split(m.group(1)), split(m.group(2)))
        return cls(alphabet.parse_word(m.group(1)), alphabet.parse_word(m.group(2)))


def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


def _canonical(u: tuple, v: tuple) -> tuple[tuple, tuple]:
    v = _primitive_root(v)
    while u and u[-1] == v[-1]:
        v = (v[-1],) + v[:-1]
        u = u[:-1]
    return u, v


# ---------------------------------------------------------------------------
# text format

def parse_automaton(text: str) -> Dfa:
    """Parse the line-oriented automaton format (``alphabet:``, ``states:``,
    ``initial:``, ``final:``, ``trans:`` lines; ``#`` starts a comment)."""
    alphabet = states = initial = finals = None
    trans = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise FormatError(f"line {lineno}: expected 'key: value'")
        key, _, rest = line.partition(":")
        key, toks = key.strip().lower(), rest.split()
        if key == "alphabet":
            alphabet = Alphabet(tuple(toks))
        elif key == "states":
            states = tuple(toks)
        elif key == "initial":
            if len(toks) != 1:
                raise FormatError(f"line {lineno}: exactly one initial state expected")
            initial = toks[0]
        elif key in ("final", "finals"):
            finals = frozenset(toks)
        elif key == "trans":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: transitions are 'trans: source letter target'")
            trans.append((lineno, *toks))
        else:
            raise FormatError(f"line {lineno}: unknown key {key!r}")
    if alphabet is None or states is None:
        raise FormatError("missing 'alphabet:' or 'states:' line")
    if initial is None:
        raise FormatError("no initial state")
    if not finals:
        raise FormatError("no final state")
    if len(set(states)) != len(states):
        raise FormatError("duplicate state names")
    delta = {}
    known = set(states)
    for lineno, p, a, q in trans:
        if p not in known or q not in known:
            raise FormatError(f"line {lineno}: undeclared state in 'trans: {p} {a} {q}'")
        if a not in alphabet:
            raise FormatError(f"line {lineno}: undeclared letter {a!r}")
        if (p, a) in delta and delta[(p, a)] != q:
            raise DeterminismError(f"line {lineno}: second transition from {p} on {a}")
        delta[(p, a)] = q
    return Dfa(alphabet, states, initial, finals, delta)


def format_automaton(d: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(d.alphabet),
        "states: " + " ".join(map(str, d.states)),
        f"initial: {d.initial}",
        "final: " + " ".join(str(q) for q in d.states if q in d.finals),
    ]
    for q in d.states:
        for a, t in d.out(q):
            lines.append(f"trans: {q} {a} {t}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structure

def accessible(d: Dfa) -> set:
    seen = {d.initial}
    todo = [d.initial]
    while todo:
        p = todo.pop()
        for _, q in d.out(p):
            if q not in seen:
                seen.add(q)
                todo.append(q)
    return seen


def coaccessible(d: Dfa) -> set:
    pred: dict = {q: set() for q in d.states}
    for (p, _), q in d.delta.items():
        pred[q].add(p)
    seen = set(d.finals)
    todo = list(seen)
    while todo:
        q = todo.pop()
        for p in pred[q]:
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def restrict(d: Dfa, keep: set, initial=None) -> Dfa:
    states = tuple(q for q in d.states if q in keep)
    delta = {(p, a): q for (p, a), q in d.delta.items() if p in keep and q in keep}
    return Dfa(d.alphabet, states, d.initial if initial is None else initial,
               frozenset(d.finals) & keep, delta)


def trim(d: Dfa) -> Dfa:
    keep = accessible(d) & coaccessible(d)
    if d.initial not in keep:
        raise EmptyLanguageError("no final state is reachable from the initial state")
    return restrict(d, keep)


def minimize(d: Dfa) -> Dfa:
    """Minimal DFA by partition refinement (Moore) over the accessible part.

    Each merged class is named after its first member in the input's state
    order; ``provenance`` maps every output state to the input states it
    absorbed.  A class equivalent to the implicit sink is dropped.
    """
    reach = accessible(d)
    states = [q for q in d.states if q in reach]
    SINK = object()
    letters = d.alphabet.letters
    live = coaccessible(d)
    # dead states are all equivalent to the implicit sink
    block = {q: (0 if q not in live else (2 if q in d.finals else 1)) for q in states}
    block[SINK] = 0
    nblocks = len(set(block.values()))
    while True:
        sig = {SINK: (block[SINK],) + (block[SINK],) * len(letters)}
        for q in states:
            sig[q] = (block[q],) + tuple(block[d.delta.get((q, a), SINK)] for a in letters)
        labels: dict = {}
        new = {q: labels.setdefault(sig[q], len(labels)) for q in [SINK] + states}
        block = new
        if len(labels) == nblocks:
            break
        nblocks = len(labels)
    sink_label = block[SINK]
    rep: dict = {}
    members: dict = {}
    for q in states:
        b = block[q]
        if b == sink_label:
            continue
        rep.setdefault(b, q)
        members.setdefault(rep[b], []).append(q)
    if block[d.initial] == sink_label:
        raise EmptyLanguageError("language is empty")
    new_states = tuple(rep[block[q]] for q in states if block[q] != sink_label and rep[block[q]] == q)
    delta = {}
    for q in new_states:
        for a, t in d.out(q):
            if block[t] != sink_label:
                delta[(q, a)] = rep[block[t]]
    finals = frozenset(q for q in new_states if q in d.finals)
    prov = {q: tuple(members[q]) for q in new_states}
    return Dfa(d.alphabet, new_states, rep[block[d.initial]], finals, delta, provenance=prov)


@dataclass(frozen=True)
class SCC:
    states: tuple
    nontrivial: bool
    coaccessible: bool


def scc_decompose(d: Dfa) -> tuple[list[SCC], set]:
    """Strongly connected components (Tarjan) and the condensation DAG edges.

    Components are returned in reverse topological order (sinks first), and
    DAG edges are pairs of component indices.
    """
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    comps: list[list] = []
    counter = 0
    for root in d.states:
        if root in index:
            continue
        work = [(root, iter(d.out(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for _, w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(d.out(w))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    order = {q: i for i, q in enumerate(d.states)}
    live = coaccessible(d)
    which = {}
    result = []
    for i, comp in enumerate(comps):
        comp.sort(key=order.__getitem__)
        cs = set(comp)
        nontrivial = any(t in cs for q in comp for _, t in d.out(q))
        result.append(SCC(tuple(comp), nontrivial, comp[0] in live))
        for q in comp:
            which[q] = i
    dag = {(which[p], which[q]) for (p, _), q in d.delta.items() if which[p] != which[q]}
    return result, dag


def is_finite_language(d: Dfa) -> bool:
    t = trim(d)
    return not any(c.nontrivial for c in scc_decompose(t)[0])


# ---------------------------------------------------------------------------
# ranking

def genealogical_val(d: Dfa, w) -> int:
    """Position of ``w`` in the genealogically ordered language (from 0)."""
    from .counting import count_u_v
    from .errors import NotInLanguageError

    w = d.alphabet.parse_word(w)
    if not d.accepts(w):
        raise NotInLanguageError(f"{d.alphabet.format_word(w)!r} is not in the language")
    t = count_u_v(d, len(w))
    n = sum(t.u[d.initial][i] for i in range(len(w)))
    q = d.initial
    for i, a in enumerate(w):
        rest = len(w) - i - 1
        for b, p in d.out(q):
            if b == a:
                break
            n += t.u[p][rest]
        q = d.step(q, a)
    return n


def genealogical_rep(d: Dfa, n: int) -> Word:
    """The ``n``-th word of the language in genealogical order (from 0)."""
    from .counting import count_u_v

    if n < 0:
        raise ValueError("n must be non-negative")
    horizon = 16
    while True:
        t = count_u_v(d, horizon)
        total = 0
        for length in range(horizon + 1):
            c = t.u[d.initial][length]
            if n < total + c:
                return _unrank(d, t, length, n - total)
            total += c
        if is_finite_language(d):
            raise ValueError(f"the language has only {total} words")
        horizon *= 2


def _unrank(d: Dfa, t, length: int, k: int) -> Word:
    q = d.initial
    out = []
    for i in range(length):
        rest = length - i - 1
        for a, p in d.out(q):
            c = t.u[p][rest]
            if k < c:
                out.append(a)
                q = p
                break
            k -= c
        else:  # pragma: no cover - counts are exact
            raise AssertionError("unranking overran the counts")
    return tuple(out)


def words_upto(d: Dfa, max_len: int) -> Iterator[Word]:
    """Accepted words of length <= max_len in genealogical order."""
    from .counting import count_u_v

    t = count_u_v(d, max_len)
    for length in range(max_len + 1):
        for k in range(t.u[d.initial][length]):
            yield _unrank(d, t, length, k)


# ---------------------------------------------------------------------------
# determinisation

def determinize(n: Nfa, cap: int = 10**6) -> Dfa:
    start = frozenset(n.initials)
    ids = {start: 0}
    order = [start]
    delta = {}
    todo = deque([start])
    while todo:
        S = todo.popleft()
        for a in n.alphabet:
            T = frozenset(q for p in S for q in n.succ(p, a))
            if not T:
                continue
            if T not in ids:
                if len(ids) >= cap:
                    raise ExplosionError(f"determinisation exceeded {cap} states")
                ids[T] = len(ids)
                order.append(T)
                todo.append(T)
            delta[(f"s{ids[S]}", a)] = f"s{ids[T]}"
    states = tuple(f"s{i}" for i in range(len(order)))
    finals = frozenset(f"s{ids[S]}" for S in order if S & n.finals)
    return Dfa(n.alphabet, states, "s0", finals, delta)


def dfa_to_nfa(d: Dfa) -> Nfa:
    return Nfa(d.alphabet, d.states, frozenset([d.initial]), frozenset(d.finals),
               frozenset((p, a, q) for (p, a), q in d.delta.items()))


def without_empty_word(d: Dfa) -> Dfa:
    """Same language minus the empty word (the initial state gets a non-final copy)."""
    if d.initial not in d.finals:
        return d
    fresh = "_init"
    while fresh in d.states:
        fresh = "_" + fresh
    delta = dict(d.delta)
    for a, t in d.out(d.initial):
        delta[(fresh, a)] = t
    return Dfa(d.alphabet, (fresh,) + d.states, fresh, d.finals, delta)


def rename_states(d: Dfa, prefix: str = "q") -> Dfa:
    """Renumber states in breadth-first order from the initial state."""
    order = [d.initial]
    seen = {d.initial}
    i = 0
    while i < len(order):
        for _, t in d.out(order[i]):
            if t not in seen:
                seen.add(t)
                order.append(t)
        i += 1
    order += [q for q in d.states if q not in seen]
    name = {q: f"{prefix}{k}" for k, q in enumerate(order)}
    delta = {(name[p], a): name[q] for (p, a), q in d.delta.items()}
    return Dfa(d.alphabet, tuple(name[q] for q in order), name[d.initial],
               frozenset(name[q] for q in d.finals), delta)
