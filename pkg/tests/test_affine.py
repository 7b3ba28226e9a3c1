from fractions import Fraction as F

import pytest

from numera.affine import (Edge, build_FL, compose, compose_fixed_point, enumerate_up_values,
                           phi_nu_automata, value_along)
from numera.automata import UpWord
from numera.errors import NoUniqueFixedPointError
from numera.realline import AffineMap, represent, value_of_up


@pytest.fixture(scope="module")
def fl5(ex5):
    return build_FL(ex5.g, ex5.d)


@pytest.fixture(scope="module")
def enum53(ex5, fl5):
    return enumerate_up_values(ex5.g, ex5.d, 5, 3, fl5)


def _maps(fl):
    return {(e.src, e.letter): (e.dst, e.label, e.map.slope, e.map.offset) for e in fl.edges}


def test_ex5_edges(fl5):
    assert _maps(fl5) == {
        ("q0", "a"): ("q1", "id_a", 1, 0),
        ("q1", "a"): ("q2", "f_a", 4, 0),
        ("q1", "b"): ("q0", "f_b", 4, -1),
        ("q1", "c"): ("q1", "f_c", 2, -1),
        ("q2", "c"): ("q1", "id_c", 1, 0),
    }
    assert fl5.nodes == ("q0", "q1", "q2")


def test_binary_edges(binary):
    fl = build_FL(binary.g, binary.d)
    m = _maps(fl)
    assert m[("q1", "0")] == ("q1", "f_0", 2, 0)
    assert m[("q1", "1")] == ("q1", "f_1", 2, -1)
    assert m[("q0", "1")][1] == "id_1"


@pytest.mark.parametrize("name", ["ex5", "binary", "fib", "evena"])
def test_cells_tile_the_unit_interval(request, name):
    s = request.getfixturevalue(name)
    fl = build_FL(s.g, s.d)
    for q in fl.nodes:
        assert sum((1 / e.map.slope for e in fl.out(q)), s.F.zero) == 1
        # consecutive cells: each map sends its cell's left end to 0
        lo = s.F.zero
        for e in fl.out(q):
            assert e.map(lo) == 0
            lo = lo + 1 / e.map.slope


def _path(fl, *tokens):
    return [fl.edge(*t.split(".")) for t in tokens]


@pytest.mark.parametrize("tokens,fixed,value,word", [
    (("q0.a", "q1.b"), F(1, 3), F(2, 3), ((), "ab")),
    (("q0.a", "q1.a", "q2.c", "q1.b"), F(1, 15), F(8, 15), ((), "aacb")),
    (("q0.a", "q1.a", "q2.c", "q1.c", "q1.b"), F(5, 31), F(18, 31), ((), "aaccb")),
])
def test_fixed_points_at_the_initial_node(ex5, fl5, tokens, fixed, value, word):
    path = _path(fl5, *tokens)
    x = compose_fixed_point(path)
    assert x == fixed
    assert value_along(ex5.g, [], x) == value
    assert value_of_up(ex5.g, ex5.d, UpWord(tuple(word[0]), tuple(word[1]))) == value


def test_fixed_point_with_nontrivial_path(ex5, fl5):
    cyc = _path(fl5, "q1.c", "q1.a", "q2.c", "q1.c")
    x = compose_fixed_point(cyc)
    assert x == F(3, 5)
    assert compose(cyc)(x) == x
    assert value_along(ex5.g, _path(fl5, "q0.a"), x) == F(4, 5)
    assert value_along(ex5.g, _path(fl5, "q0.a", "q1.a", "q2.c"), x) == F(23, 40)


def test_compose_order(fl5):
    fa, fc = fl5.edge("q1", "a"), fl5.edge("q1", "c")
    # f_c first, then f_a
    F2 = compose([fc, fa])
    assert F2(F(3, 4)) == fa.map(fc.map(F(3, 4)))


def test_identity_cycle_has_no_unique_fixed_point():
    e = Edge("x", "a", "x", AffineMap(F(1), F(0)))
    with pytest.raises(NoUniqueFixedPointError):
        compose_fixed_point([e])


def test_open_path_rejected(fl5):
    with pytest.raises(ValueError):
        compose_fixed_point(_path(fl5, "q0.a"))


def _find(values, v):
    return next(u for u in values if u.value == v)


def test_enumeration_examples(ex5, fl5):
    vals = enumerate_up_values(ex5.g, ex5.d, 5, 1, fl5)
    for v, w in [(F(2, 3), "(ab)^w"), (F(8, 15), "(aacb)^w"), (F(18, 31), "(aaccb)^w"),
                 (F(4, 5), "a(cacc)^w")]:
        assert _find(vals, v).word == UpWord.parse(w)
    vals = enumerate_up_values(ex5.g, ex5.d, 4, 3, fl5)
    assert _find(vals, F(23, 40)).word == UpWord.parse("aac(cacc)^w")


def test_binary_enumeration(binary):
    vals = enumerate_up_values(binary.g, binary.d, 1, 1)
    got = {u.value: u.word for u in vals}
    assert got[F(1, 2)] == UpWord(("1",), ("0",))
    assert got[F(1)] == UpWord((), ("1",))


def test_enumeration_is_deterministic_and_deduplicated(ex5, fl5, enum53):
    again = enumerate_up_values(ex5.g, ex5.d, 5, 3, fl5)
    assert [u.value for u in again] == [u.value for u in enum53]
    assert len({u.value for u in enum53}) == len(enum53)


def test_emitted_values_are_valid(ex5, enum53):
    th = ex5.g.theta
    for u in enum53:
        assert 1 / th <= u.value <= 1
        assert value_of_up(ex5.g, ex5.d, u.word) == u.value
        F_ = compose(u.cycle)
        x = F_.fixed_point()
        assert F_(x) == x
        assert F_.slope > 1


def test_engine_agreement(ex5, enum53):
    for u in enum53:
        r = represent(ex5.g, ex5.d, u.value, table=ex5.table)
        assert r.periodic
        assert value_of_up(ex5.g, ex5.d, r.up) == u.value


def test_phi_nu(fl5):
    phi, nu = phi_nu_automata(fl5, "q1")
    assert phi.accepts(("q1.c",))
    assert phi.accepts(("q1.a", "q2.c"))
    assert phi.accepts(("q1.a", "q2.c", "q1.c", "q1.c"))
    assert not phi.accepts(("q1.a",))
    assert nu.accepts(("q0.a",))
    assert not nu.accepts(())


def test_describe(ex5, fl5):
    u = _find(enumerate_up_values(ex5.g, ex5.d, 5, 1, fl5), F(4, 5))
    assert u.describe() == "path = id_a cycle = f_c∘id_c∘f_a∘f_c"
