import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bsloci.polyhedra import (
    EQ,
    LE,
    LT,
    AffineForm,
    ArrangementTooLarge,
    HalfSpace,
    decompose,
    eq,
    facets,
    form,
    ge,
    gt,
    intersect,
    le,
    lt,
    strict_feasible,
    strictly_positive_part,
)
from bsloci.verify import vertex_oracle

# the five half-spaces of the cusp-line LCT polytope
LCT5 = [le((1, 0), 1), le((0, 1), 1), le((2, 1), 2), ge((1, 0), 0), ge((0, 1), 0)]


def key(h):
    return (h.form, h.sense)


def test_affine_form_normalizes_to_coprime_integers():
    f = AffineForm((F(2, 3), F(4, 3)), F(-2))
    assert f.coeffs == (1, 2) and f.constant == -3


def test_affine_form_keeps_sign_but_canonical_flips():
    f = form((-2, -4), 6)
    assert f.coeffs == (-1, -2) and f.constant == 3
    assert f.canonical() == form((1, 2), -3)


def test_affine_form_rejects_floats():
    with pytest.raises(TypeError):
        form((0.5, 1), 0)


@given(st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.fractions(min_value=F(1, 100), max_value=100))
def test_normalization_invariant_under_positive_scaling(values, t):
    f = form(values[:2], values[2])
    g = form([t * v for v in values[:2]], t * values[2])
    assert f == g


def test_intersect_lct_vertices():
    p = intersect(LCT5)
    expected = [(0, 0), (0, 1), (F(1, 2), 1), (1, 0)]
    assert list(p.vertices) == expected
    assert list(p.vertices) == vertex_oracle(LCT5)


def test_intersect_drops_the_vertex_only_constraint():
    # x1 <= 1 touches the polygon only at (1, 0), so it supports no facet
    p = intersect(LCT5)
    assert {key(h) for h in p.hrep} == {key(h) for h in LCT5[1:]}


def test_irredundant_constraints_have_witnesses():
    p = intersect(LCT5)
    for h in p.hrep:
        others = [g for g in p.hrep if g is not h]
        beyond = HalfSpace(h.form.negate(), LT)
        assert strict_feasible(others + [beyond]) is not None


def test_intersect_empty_with_certificate():
    hs = [le((1,), 0), ge((1,), 1)]
    p = intersect(hs)
    assert p.is_empty
    assert p.certificate is not None and p.certificate.check(hs)


def test_strictly_infeasible_closure_is_empty():
    hs = [lt((1,), 0), gt((1,), 0)]
    p = intersect(hs)
    assert p.is_empty and p.certificate.check(hs) and p.certificate.strict


def test_whole_line():
    p = intersect([], dim=1)
    assert p.vertices == ()
    assert p.lines == ((1,),)
    assert not p.is_empty


def test_facets_of_unit_square():
    square = [ge((1, 0), 0), ge((0, 1), 0), le((1, 0), 1), le((0, 1), 1)]
    fs = facets(intersect(square))
    assert len(fs) == 4
    right = next(f for f in fs if f.form == form((1, 0), -1))
    assert right.point == (1, F(1, 2))
    assert strictly_positive_part(right) == (1, F(1, 2))
    assert sum(f.coordinate for f in fs) == 2


def test_facet_points_are_relative_interior():
    for f in facets(intersect(LCT5)):
        assert f.form(f.point) == 0
        others = [h for h in intersect(LCT5).hrep if h.form != f.form]
        assert all(h.form(f.point) < 0 for h in others)


def test_facet_positive_part():
    fs = {f.form: f for f in facets(intersect(LCT5))}
    diag = fs[form((2, 1), -2)]
    p = strictly_positive_part(diag)
    assert p == (F(3, 4), F(1, 2))
    assert 2 * p[0] + p[1] == 2 and 0 < p[0] < 1 and 0 < p[1] < 1
    # the coordinate facets have no positive points
    assert strictly_positive_part(fs[form((-1, 0), 0)]) is None


def test_vertex_face_has_no_positive_point():
    # x1 = 1 meets the polygon in the single point (1, 0)
    face = intersect(LCT5 + [eq((1, 0), 1)])
    assert face.points == ((1, 0),)
    assert strictly_positive_part(face) is None


def test_facets_rejects_lower_dimensional():
    with pytest.raises(ValueError, match="not full-dimensional"):
        facets(intersect([eq((1, 0), 0), le((0, 1), 1), ge((0, 1), 0)]))


def test_strict_feasible_examples():
    klt = [lt((1, 0), 2), lt((0, 1), 3), lt((2, 1), 6), ge((1, 0), 0), ge((0, 1), 0)]
    p = strict_feasible(klt + [eq((2, 1), 5)])
    assert p == (F(3, 2), 2)
    assert strict_feasible([lt((1,), 0), gt((1,), 0)]) is None
    q = strict_feasible([lt((1,), 1)])
    assert q is not None and q[0] < 1


def test_strict_feasible_boundary_only():
    # x1 < 2 and x1 = 2 cannot hold together
    assert strict_feasible([lt((1, 0), 2), eq((1, 0), 2), ge((0, 1), 0), le((0, 1), 1)]) is None


def test_decompose_trivial():
    arr = decompose([(0, 2), (0, 2)], [form((1, 0), -1)])
    assert len(arr.cells) == 2 and len(arr.facets) == 1
    f = arr.facets[0]
    assert f.point[0] == 1 and 0 < f.point[1] < 2
    empty = decompose([(0, 2), (0, 2)], [])
    assert len(empty.cells) == 1 and empty.facets == ()


def test_decompose_budget():
    forms = [form((1, 0), -k) for k in range(1, 6)]
    with pytest.raises(ArrangementTooLarge) as exc:
        decompose([(0, 6), (0, 1)], forms, budget=3)
    assert exc.value.count > 3


def _grid_cell_count(box, forms, q):
    # sign-vector classes seen on the grid i/q, off every line
    seen = set()
    ranges = [range(int(lo * q) + 1, int(hi * q)) for lo, hi in box]
    for nums in itertools.product(*ranges):
        vals = [sum(c * x for c, x in zip(f.coeffs, nums)) + f.constant * q for f in forms]
        if all(vals):
            seen.add(tuple(v > 0 for v in vals))
    return len(seen)


def test_decompose_cusp_candidates_matches_grid(cusp):
    from bsloci.walls import candidate_forms

    box = [(0, 3), (0, 3)]
    forms = candidate_forms(cusp.data, box)
    arr = decompose(box, forms)
    assert len(arr.cells) == _grid_cell_count(box, forms, 24) == 26


def test_decompose_facet_samples_on_exactly_one_form(cusp):
    from bsloci.walls import candidate_forms

    box = [(0, 3), (0, 4)]
    arr = decompose(box, candidate_forms(cusp.data, box))
    for f in arr.facets:
        zeros = [i for i, g in enumerate(arr.forms) if g(f.point) == 0]
        assert zeros == [f.form_index]
        assert arr.locate(f.point) is None
    for i, c in enumerate(arr.cells):
        assert arr.locate(c.point) == i


# ---------------------------------------------------------------------------
# random instances against the brute-force vertex oracle

halfspace = st.builds(
    lambda cs, b, s: HalfSpace(AffineForm(tuple(cs), b), s),
    st.lists(st.integers(-3, 3), min_size=2, max_size=2).filter(any),
    st.integers(-4, 4),
    st.just(LE),
)


def bounded(hs, dim):
    box = [le([int(i == j) for i in range(dim)], 5) for j in range(dim)]
    box += [ge([int(i == j) for i in range(dim)], -5) for j in range(dim)]
    return list(hs) + box


@settings(max_examples=60, deadline=None)
@given(st.lists(halfspace, min_size=0, max_size=6))
def test_vertices_match_oracle_2d(hs):
    hs = bounded(hs, 2)
    p = intersect(hs)
    assert list(p.vertices) == vertex_oracle(hs)


halfspace3 = st.builds(
    lambda cs, b: HalfSpace(AffineForm(tuple(cs), b), LE),
    st.lists(st.integers(-2, 2), min_size=3, max_size=3).filter(any),
    st.integers(-3, 3),
)


@settings(max_examples=25, deadline=None)
@given(st.lists(halfspace3, min_size=1, max_size=6))
def test_vertices_match_oracle_3d(hs):
    hs = bounded(hs, 3)
    p = intersect(hs)
    assert list(p.vertices) == vertex_oracle(hs)


@settings(max_examples=40, deadline=None)
@given(st.lists(halfspace, min_size=1, max_size=7))
def test_irredundancy_property(hs):
    p = intersect(bounded(hs, 2))
    if p.is_empty or not p.is_full_dimensional():
        return
    for h in p.hrep:
        others = [g for g in p.hrep if g is not h]
        assert strict_feasible(others + [HalfSpace(h.form.negate(), LT)]) is not None


@settings(max_examples=40, deadline=None)
@given(st.lists(halfspace, min_size=1, max_size=7))
def test_empty_iff_certificate(hs):
    p = intersect(hs, 2)
    if p.is_empty:
        assert p.certificate is not None and p.certificate.check(hs)
    else:
        assert all(p.contains(v) for v in p.points)


@settings(max_examples=30, deadline=None)
@given(st.lists(halfspace, min_size=1, max_size=5), st.integers(1, 5))
def test_scaling_inputs_does_not_change_result(hs, t):
    scaled = [HalfSpace(AffineForm(tuple(t * c for c in h.form.coeffs), t * h.form.constant), h.sense) for h in hs]
    assert intersect(hs, 2) == intersect(scaled, 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.builds(lambda c, b: AffineForm(tuple(c), b), st.lists(st.integers(-2, 2), min_size=2, max_size=2).filter(any), st.integers(-4, 4)), max_size=5))
def test_decompose_cells_partition_grid(forms):
    box = [(-2, 2), (-2, 2)]
    arr = decompose(box, forms)
    q = 5
    for nums in itertools.product(range(-2 * q + 1, 2 * q), repeat=2):
        point = (F(nums[0], q), F(nums[1], q))
        on_cut = any(f(point) == 0 for f in arr.forms)
        inside = [i for i, c in enumerate(arr.cells) if c.polyhedron.contains(point)]
        assert len(inside) == (0 if on_cut else 1)
