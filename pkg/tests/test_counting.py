import itertools
from fractions import Fraction

import pytest

from numera.automata import UpWord, parse_automaton
from numera.counting import (GrowthClass, beta_coefficients, charpoly, check_hypothesis, check_rel_identity,
                             count_u_v, growth_profile, perron_theta, simplify_language, transducer_labels)
from numera.errors import NotALeftFactorError, SubExponentialError
from numera.fixtures import NAMES, load
from oracles import all_words, counts, counts_dp

# ex5 plus a state z reached by "b" from q0 whose language b a* grows linearly
EX5_TAIL = """alphabet: a b c
states: q0 q1 q2 z
initial: q0
final: q0 q1 q2 z
trans: q0 a q1
trans: q0 b z
trans: z a z
trans: q1 a q2
trans: q1 b q0
trans: q1 c q1
trans: q2 c q1
"""


@pytest.mark.parametrize("name", NAMES)
def test_counts_match_enumeration(name):
    d = load(name)
    t = count_u_v(d, 8)
    for q in d.states:
        for n in range(9):
            assert t.u[q][n] == counts(d, q, n)
            assert t.v[q][n] == sum(t.u[q][: n + 1])


def test_ex5_counts():
    t = count_u_v(load("ex5"), 7)
    assert t.u["q0"] == [1, 1, 3, 5, 11, 21, 43, 85]


def test_charpoly():
    assert charpoly([[1, 1], [1, 0]]) == (Fraction(-1), Fraction(-1), Fraction(1))


def test_ex5_growth(ex5):
    assert ex5.F.minpoly == (Fraction(-2), Fraction(1))
    assert ex5.g.theta == 2
    assert {q: ex5.g.a_of(q) for q in ex5.d.states} == {"q0": 1, "q1": 2, "q2": 1}
    assert ex5.g.poly_degree == 0


def test_fib_growth(fib):
    t = fib.g.theta
    assert t * t == t + 1
    assert fib.g.a_of("q1") == t and fib.g.a_of("q2") == t + 1


def test_binary_and_evena_growth(binary, evena):
    assert binary.g.theta == 2 and binary.g.a_of("q1") == 2
    assert evena.g.theta == 2 and evena.g.a_of("o") == 1


@pytest.mark.parametrize("name", NAMES)
def test_a_vector_limits(name):
    d = load(name)
    g = growth_profile(d)
    u = counts_dp(d, 120)
    v = {q: sum(u[q]) for q in d.states}
    for q in d.states:
        assert abs(float(g.a_of(q)) - v[q] / v[d.initial]) < 1e-9


@pytest.mark.parametrize("name", NAMES)
def test_sum_identity(name):
    d = load(name)
    assert check_rel_identity(d, growth_profile(d))


def test_subexponential_rejected():
    d = parse_automaton("alphabet: a\nstates: p\ninitial: p\nfinal: p\ntrans: p a p\n")
    with pytest.raises(SubExponentialError):
        perron_theta(d)


def test_subdominant_state_and_simplify():
    d = parse_automaton(EX5_TAIL)
    g = growth_profile(d)
    assert g.classes["z"] is GrowthClass.SUBDOMINANT
    assert g.a_of("z") == 0
    s = simplify_language(d, g)
    assert set(s.states) == {"q0", "q1", "q2"}
    for w in all_words(d.alphabet, 5):
        visits_z = any(d.run(w[:i]) == "z" for i in range(len(w) + 1))
        assert s.accepts(w) == (d.accepts(w) and not visits_z)


def test_hypothesis_check():
    assert check_hypothesis(load("ex5")).verdict == "PASS"
    assert check_hypothesis(load("fib")).verdict == "PASS"
    finite = parse_automaton("alphabet: a\nstates: p q\ninitial: p\nfinal: q\ntrans: p a q\n")
    assert check_hypothesis(finite).verdict == "INCONCLUSIVE"
    single = parse_automaton("alphabet: a b\nstates: p\ninitial: p\nfinal: p\ntrans: p a p\n")
    assert check_hypothesis(single).verdict == "INCONCLUSIVE"


def test_evena_transducer_labels():
    labels = transducer_labels(load("evena"))
    assert labels == {("e", "a"): ("a", 1, 0), ("e", "b"): ("b", 1, 1),
                      ("o", "a"): ("a", 1, 0), ("o", "b"): ("b", 2, 0)}


def _beta_direct(d, w):
    """β_{q,j} straight from the definition."""
    out = {q: [] for q in d.states}
    for j in range(len(w)):
        prefix = w[:j]
        p = d.run(prefix)
        for q in d.states:
            c = sum(1 for s in d.alphabet.letters
                    if d.alphabet.rank(s) < d.alphabet.rank(w[j]) and d.step(p, s) == q)
            out[q].append(c + (1 if q == d.initial else 0))
    return out


@pytest.mark.parametrize("name", ["evena", "ex5", "fib"])
def test_beta_matches_definition(name):
    d = load(name)
    for n in range(1, 7):
        for w in itertools.product(d.alphabet.letters, repeat=n):
            if d.run(w) is None:
                continue
            assert beta_coefficients(d, w).seq == _beta_direct(d, w)


def test_beta_on_periodic_word():
    d = load("ex5")
    b = beta_coefficients(d, UpWord(("a",), tuple("acc")), 7)
    assert b.seq["q0"] == [1, 1, 1, 2, 1, 1, 2]
    assert b.seq["q2"] == [0, 0, 0, 1, 0, 0, 1]
    assert (b.r, b.p) == (1, 3)


def test_beta_rejects_non_left_factor():
    with pytest.raises(NotALeftFactorError):
        beta_coefficients(load("ex5"), ("b",))
