import itertools
import random

import pytest

from numera.automata import Alphabet, Nfa, UpWord, parse_automaton
from numera.errors import DomainError
from numera.fixtures import load
from numera.periodic import (aper_language, build_period_nfa, is_up_in_Linfty, kth_root, maximal_cycle_sets,
                             per_language, uper_omega)
from oracles import all_words, maximal_cycle_sets_by_subsets, per_oracle, random_dfa, random_nfa

TWO_SCC = """alphabet: a b
states: p q r
initial: p
final: q r
trans: p a p
trans: p b q
trans: q b q
trans: q a r
trans: r a r
"""


def test_cycle_sets_fixtures():
    c = maximal_cycle_sets(load("ex5"))
    assert [set(x.states) for x in c] == [{"q0", "q1", "q2"}]
    assert c.sets[0].witness == tuple("aacb")
    assert [set(x.states) for x in maximal_cycle_sets(load("evena"))] == [{"e", "o"}]
    assert [x.states for x in maximal_cycle_sets(load("binary"))] == [("q1",)]


def test_cycle_set_witness_covers_its_states():
    for name in ("ex5", "evena", "fib", "binary"):
        d = load(name)
        for c in maximal_cycle_sets(d):
            q, seen = c.start, {c.start}
            for a in c.witness:
                q = d.step(q, a)
                seen.add(q)
                assert q in c.states
            assert q == c.start and seen == set(c.states)


def test_cycle_sets_against_subset_enumeration():
    rng = random.Random(5)
    for _ in range(60):
        d = random_dfa(rng, rng.randint(2, 6))
        got = {frozenset(c.states) for c in maximal_cycle_sets(d)}
        assert got == maximal_cycle_sets_by_subsets(d)


def test_period_nfa_sizes():
    assert len(build_period_nfa(load("ex5")).states) == 9
    m = build_period_nfa(load("binary"))
    assert len(m.states) == 1 and m.accepts(()) and m.accepts(("0", "1"))
    assert len(build_period_nfa(parse_automaton(TWO_SCC)).states) == 3


def test_kth_root_examples():
    ab = Nfa(Alphabet(("a", "b")), ("x", "y"), frozenset(["x"]), frozenset(["x"]),
             frozenset([("x", "a", "y"), ("y", "b", "x")]))
    r2 = kth_root(ab, 2)
    for u in all_words(ab.alphabet, 6):
        assert r2.accepts(u) == ab.accepts(u)
    even = Nfa(Alphabet(("a",)), ("x", "y"), frozenset(["x"]), frozenset(["x"]),
               frozenset([("x", "a", "y"), ("y", "a", "x")]))
    assert all(kth_root(even, 2).accepts(("a",) * n) for n in range(8))
    with pytest.raises(DomainError):
        kth_root(even, 0)


def test_kth_root_identity_on_fixtures():
    from numera.automata import dfa_to_nfa

    for name in ("ex5", "binary", "evena", "fib"):
        d = load(name)
        r = kth_root(dfa_to_nfa(d), 1)
        assert all(r.accepts(w) == d.accepts(w) for w in all_words(d.alphabet, 5))


def test_kth_root_random():
    rng = random.Random(2024)
    for _ in range(20):
        m = random_nfa(rng)
        for k in (1, 2, 3):
            r = kth_root(m, k)
            for u in all_words(m.alphabet, 5):
                assert r.accepts(u) == m.accepts(u * k)


@pytest.mark.parametrize("name", ["ex5", "evena", "binary", "fib"])
def test_per_language_oracle(name):
    d = load(name)
    per = per_language(d)
    cyc = maximal_cycle_sets(d).union()
    for w in all_words(d.alphabet, 6):
        assert per.accepts(w) == per_oracle(d, w, cyc)


def test_per_examples():
    per = per_language(load("ex5"))
    assert per.accepts(tuple("acc")) and per.accepts(tuple("ab"))
    assert not per.accepts(("b",)) and not per.accepts(())
    b = per_language(load("binary"))
    assert all(b.accepts(w) == bool(w) for w in all_words(b.alphabet, 6))


def test_aper():
    d = load("ex5")
    a = aper_language(d)
    assert a.accepts(("a",)) and a.accepts(tuple("ab")) and a.accepts(tuple("aac")) and a.accepts(())
    assert not a.accepts(("b",))
    b = aper_language(load("binary"))
    assert all(b.accepts(w) == (load("binary").run(w) == "q1") for w in all_words(b.alphabet, 6))


def test_uper_blocks():
    assert len(uper_omega(load("ex5"))) == 3
    e = uper_omega(load("binary"))
    assert len(e) == 1 and e.blocks[0].state == "q1"
    assert all(e.blocks[0].periods.accepts(w) == bool(w) for w in all_words(e.blocks[0].periods.alphabet, 5))
    finite = parse_automaton("alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n")
    assert len(uper_omega(finite)) == 0
    assert "[prefix]" in uper_omega(load("ex5")).serialize()


def test_up_membership():
    d = load("ex5")
    assert is_up_in_Linfty(d, UpWord(("a",), tuple("acc")))
    assert not is_up_in_Linfty(d, UpWord((), ("b",)))
    assert is_up_in_Linfty(d, UpWord(("a",), ("c", "c")))


@pytest.mark.parametrize("name", ["ex5", "evena", "fib"])
def test_uper_agrees_with_direct_membership(name):
    d = load(name)
    e = uper_omega(d)
    for pl in range(3):
        for vl in range(1, 4):
            for u in itertools.product(d.alphabet.letters, repeat=pl):
                for v in itertools.product(d.alphabet.letters, repeat=vl):
                    w = UpWord(u, v)
                    direct = is_up_in_Linfty(d, w)
                    assert e.contains(w, len(d.states)) == direct
                    rot = UpWord(u + v[:1], v[1:] + v[:1])
                    assert is_up_in_Linfty(d, rot) == direct


def test_periods_are_pumpable_after_some_preperiod():
    d = load("ex5")
    per, aper = per_language(d), aper_language(d)
    prefixes = [m for m in all_words(d.alphabet, 4) if aper.accepts(m)]
    for w in all_words(d.alphabet, 4):
        if not w:
            continue
        found = any(is_up_in_Linfty(d, UpWord(m, w)) for m in prefixes)
        assert per.accepts(w) == found
