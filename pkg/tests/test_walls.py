import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bsloci.model import STRICT, Divisor, ResolutionData, TestElement
from bsloci.polyhedra import form
from bsloci.verify import grid_pattern_oracle, random_instance
from bsloci.walls import (
    candidate_forms,
    is_subpattern,
    membership,
    pattern,
    region_of_constancy,
    wall_complex,
    wall_sources,
)


def element(cusp, name):
    return next(h for h in cusp.test_elements if h.name == name)


def test_membership_examples(cusp):
    x, one = element(cusp, "x"), element(cusp, "1")
    point = (F(3, 5), F(9, 10))
    # E0 level floor(2*3/5 + 9/10) - 1 = 1
    assert membership(x, point, cusp.data)
    assert not membership(one, point, cusp.data)
    assert membership(one, (F(1, 4), F(1, 4)), cusp.data)


def test_pattern_examples(cusp):
    H = [element(cusp, n) for n in ("1", "x", "y", "f1", "f2")]
    assert pattern((0, 0), cusp.data, H) == (True,) * 5
    assert pattern((F(3, 5), F(9, 10)), cusp.data, H) == (False, True, True, True, True)
    assert pattern((F(3, 2), F(1, 2)), cusp.data, H) == (False, False, False, True, False)


def test_is_subpattern():
    assert is_subpattern((True, False), (True, True))
    assert not is_subpattern((True, True), (False, True))


def test_candidate_forms_examples(cusp):
    got = candidate_forms(cusp.data, [(0, 2), (0, 2)])
    assert got == [form((1, 0), -1), form((0, 1), -1), form((2, 1), -2), form((2, 1), -3), form((2, 1), -4), form((2, 1), -5)]
    # a wall through the box corner only is not a candidate
    assert form((1, 0), -2) not in got


def test_wall_sources(cusp):
    assert wall_sources(cusp.data, form((2, 1), -4)) == (("E0", 3),)
    assert wall_sources(cusp.data, form((1, 0), -2)) == (("E1", 2),)
    assert wall_sources(cusp.data, form((1, 1), -2)) == ()


def test_cusp_jump_forms(cusp):
    wc = wall_complex(cusp.data, cusp.test_elements, [(0, 3), (0, 4)])
    expected = {form((1, 0), -c) for c in (1, 2)} | {form((0, 1), -c) for c in (1, 2, 3)}
    expected |= {form((2, 1), -c) for c in range(2, 10)}
    assert set(wc.jump_forms()) == expected
    assert len(expected) == 13


def test_cusp_grid_oracle(cusp):
    box = [(0, 3), (0, 4)]
    wc = wall_complex(cusp.data, cusp.test_elements, box)
    rep = grid_pattern_oracle(cusp.data, cusp.test_elements, box, 7, wc)
    assert rep.ok and rep.checked > 300


def test_single_element_single_divisor():
    data = ResolutionData(1, (Divisor("E", (1,), 0, STRICT),))
    wc = wall_complex(data, [TestElement("1", (0,))], [(0, 3)])
    assert wc.jump_forms() == [form((1,), -1)]


def test_huge_orders_hide_every_jump(cusp):
    big = TestElement("big", (50, 50, 100))
    wc = wall_complex(cusp.data, [big], [(0, 3), (0, 3)])
    assert wc.jumps == ()


def test_no_elements_rejected(cusp):
    with pytest.raises(ValueError):
        wall_complex(cusp.data, [], [(0, 1), (0, 1)])


def test_pattern_at_on_wall(cusp):
    wc = wall_complex(cusp.data, cusp.test_elements, [(0, 2), (0, 2)])
    with pytest.raises(ValueError, match="on wall"):
        wc.pattern_at((1, F(1, 3)))


def test_region_of_constancy(cusp):
    wc = wall_complex(cusp.data, cusp.test_elements, [(0, 2), (0, 2)])
    origin_cell = wc.arrangement.locate((F(1, 10), F(1, 10)))
    cells = region_of_constancy((F(1, 10), F(1, 10)), wc)
    # only the cells where every element is still a member
    assert cells == [origin_cell]
    top = region_of_constancy((F(19, 10), F(19, 10)), wc)
    assert len(top) == len(wc.arrangement.cells)


@settings(max_examples=50, deadline=None)
@given(st.tuples(st.fractions(0, 3), st.fractions(0, 3)), st.tuples(st.fractions(0, 1), st.fractions(0, 1)))
def test_patterns_antitone(point, step):
    from bsloci.model import load
    from bsloci import data_path

    cusp = load(data_path("cusp_line.json"))
    higher = tuple(p + d for p, d in zip(point, step))
    lo = pattern(point, cusp.data, cusp.test_elements)
    hi = pattern(higher, cusp.data, cusp.test_elements)
    assert is_subpattern(hi, lo)


def test_integer_translation(cusp):
    # moving up by one along E0's level set is multiplication by the E0 order
    rng = random.Random(3)
    for _ in range(100):
        lam = (F(rng.randint(0, 30), 10), F(rng.randint(0, 30), 10))
        shifted = (lam[0] + 1, lam[1])
        for h in cusp.test_elements:
            f1h = TestElement("f1*" + h.name, tuple(a + b for a, b in zip(h.orders, (1, 0, 2))))
            assert membership(f1h, shifted, cusp.data) == membership(h, lam, cusp.data)


def test_jump_forms_are_candidates():
    rng = random.Random(5)
    for _ in range(10):
        data, a, H = random_instance(rng)
        box = [(0, 3)] * data.r
        wc = wall_complex(data, H, box)
        cands = set(candidate_forms(data, box))
        assert set(wc.jump_forms()) <= cands
        for j in wc.jumps:
            assert j.sources
