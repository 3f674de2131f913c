"""Acceptance gate: one PASS/FAIL line per criterion in the terminal summary."""
import json
import math
import os
import random
import subprocess
import sys
import time
from fractions import Fraction as F

import pytest

from bsloci import bounds as B
from bsloci.cli import main
from bsloci.polyhedra import AffineForm, HalfSpace, LE, LT, form, intersect
from bsloci.regions import klt_region, lct, lct_polytope
from bsloci.verify import (
    grid_pattern_oracle,
    monomial_bfunction_table,
    monomial_data,
    random_instance,
    vertex_oracle,
)
from bsloci.walls import is_subpattern, pattern, wall_complex

criterion = pytest.mark.criterion

GOLDEN_LOWER = {form((1, 0), 1), form((0, 1), 1), form((0, 1), 2)} | {form((2, 1), c) for c in range(2, 6)}
SUITE_SECONDS = 30


def hs_set(hs):
    return {(h.form, h.sense) for h in hs}


@criterion("AC1 golden reproduction")
def test_ac1_golden(cusp):
    start = time.perf_counter()
    rep = B.report(*cusp)
    lct_poly = lct_polytope(cusp.data)
    klt = klt_region(cusp.data, cusp.a)
    elapsed = time.perf_counter() - start

    assert B.forms(rep.lower) == GOLDEN_LOWER
    assert hs_set(lct_poly.hrep) == {
        (form((1, 0), -1), LE),
        (form((0, 1), -1), LE),
        (form((2, 1), -2), LE),
    }
    assert hs_set(klt.halfspaces) == {
        (form((1, 0), -2), LT),
        (form((0, 1), -3), LT),
        (form((2, 1), -6), LT),
    }
    assert elapsed < 1.0


@criterion("AC2 sandwich")
def test_ac2_sandwich(cusp):
    data, a, H = cusp
    p13 = B.forms(B.prop13_components(data, a))
    jw = B.forms(B.jumping_wall_components(data, a, H))
    up = B.forms(B.upper_family(data, 7))
    assert p13 == {form((1, 0), 1), form((0, 1), 1), form((0, 1), 2)}
    assert p13 <= jw <= up


@criterion("AC3 exclusion of lambda1 = 2")
def test_ac3_exclusion(cusp):
    data, a, H = cusp
    wall = form((1, 0), -2)
    wc = wall_complex(data, H, [(0, F(5, 2)), (0, F(7, 2))])
    assert wall in wc.jump_forms()
    emitted = B.forms(B.jumping_wall_components(data, a, H, complex=wc))
    assert form((1, 0), 2) not in emitted


@criterion("AC4 monomial suite")
@pytest.mark.parametrize("N", [1, 2, 3])
def test_ac4_monomials(N):
    data = monomial_data(N)
    table = monomial_bfunction_table(3)
    key = "x" if N == 1 else f"x^{N}"
    zeros = sorted(F(-c.form.constant, c.form.coeffs[0]) for c in B.prop13_components(data, (1,)))
    assert zeros == table[key]
    assert lct(data) == F(1, N)


def _instances(seed, count=10):
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(count)]


@criterion("AC5a antitone patterns")
def test_ac5a_antitone(cusp):
    start = time.perf_counter()
    rng = random.Random(51)
    cases = [(cusp.data, cusp.test_elements)] + [(d, H) for d, _, H in _instances(1)]
    for data, H in cases:
        for _ in range(500):
            lo = tuple(F(rng.randint(0, 28), 7) for _ in range(data.r))
            hi = tuple(x + F(rng.randint(0, 14), 7) for x in lo)
            assert is_subpattern(pattern(hi, data, H), pattern(lo, data, H))
    assert time.perf_counter() - start < SUITE_SECONDS


@criterion("AC5b grid pattern oracle")
def test_ac5b_grid_oracle(cusp):
    start = time.perf_counter()
    rep = grid_pattern_oracle(cusp.data, cusp.test_elements, [(0, 4), (0, 4)], 7)
    assert rep.ok, rep.mismatches[:3]
    rng = random.Random(52)
    for data, _, H in _instances(2):
        side = rng.randint(2, 4)
        rep = grid_pattern_oracle(data, H, [(0, side)] * 2, 7)
        assert rep.ok, rep.mismatches[:3]
    assert time.perf_counter() - start < SUITE_SECONDS


@criterion("AC5c vertex oracle")
def test_ac5c_vertex_oracle():
    start = time.perf_counter()
    rng = random.Random(53)
    for _ in range(50):
        r = rng.choice([1, 2, 3])
        hs = []
        for _ in range(rng.randint(1, 10)):
            coeffs = tuple(rng.randint(-3, 3) for _ in range(r))
            if not any(coeffs):
                coeffs = (1,) + (0,) * (r - 1)
            hs.append(HalfSpace(AffineForm(coeffs, rng.randint(-4, 4)), LE))
        assert list(intersect(hs, r).vertices) == vertex_oracle(hs)
    assert time.perf_counter() - start < SUITE_SECONDS


@criterion("AC5d sign checks")
def test_ac5d_signs(cusp):
    start = time.perf_counter()
    cases = [tuple(cusp)] + _instances(4)
    for data, a, H in cases:
        for c in B.report(data, a, H, box=[(0, 3)] * data.r).lower:
            assert B.sign_check(c.form, a), (c, a)
    assert time.perf_counter() - start < SUITE_SECONDS


def _slope(f):
    # primitive direction and the constant per unit of it
    g = math.gcd(*f.coeffs)
    return tuple(c // g for c in f.coeffs), F(f.constant, g)


@criterion("AC5e lct-facet minimality")
def test_ac5e_minimality(cusp):
    start = time.perf_counter()
    cases = [tuple(cusp)] + _instances(5)
    for data, a, H in cases:
        rep = B.report(data, a, H, box=[(0, 3)] * data.r)
        facet_const = dict(_slope(c.form) for c in rep.lct_facet)
        for c in rep.lower:
            direction, b = _slope(c.form)
            if direction in facet_const:
                assert b >= facet_const[direction], (c, data)
    assert time.perf_counter() - start < SUITE_SECONDS


def _cli_report(path, seed):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    out = subprocess.run(
        [sys.executable, "-m", "bsloci", "report", path], capture_output=True, env=env, check=True
    )
    return out.stdout


@criterion("AC6 determinism")
def test_ac6_determinism(cusp_path, capsys):
    first, second = _cli_report(cusp_path, 1), _cli_report(cusp_path, 2)
    assert first == second
    assert main(["report", cusp_path]) == 0
    assert capsys.readouterr().out.encode() == first
    lower = json.loads(first)["lower"]
    assert len(lower) == 7
