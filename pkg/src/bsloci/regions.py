"""LCT polytope and KLT_a region of a resolution."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import ResolutionData
from .polyhedra import (
    EQ,
    LT,
    AffineForm,
    HalfSpace,
    Point,
    Polyhedron,
    facets,
    intersect,
    le,
    lt,
    orthant,
    strictly_positive_part,
)


def divisor_halfspace(data: ResolutionData, i: int, shift: Sequence[int] | None = None, strict=False) -> HalfSpace:
    """``sum_j N_Ej (lambda_j - shift_j) <= k_E + 1`` (``<`` when strict)."""
    d = data.divisors[i]
    rhs = d.k + 1
    if shift is not None:
        rhs += sum(n * s for n, s in zip(d.orders, shift))
    make = lt if strict else le
    return make(d.orders, rhs, tags=(d.name,))


@dataclass(frozen=True)
class LctFacet:
    """A divisor hyperplane ``sum N_E lambda = k_E + 1`` bounding LCT(F).

    ``face`` is LCT(F) intersected with the hyperplane; ``full`` says whether
    it has codimension one in LCT(F).  ``witness`` is a relative-interior point
    of the face with all coordinates positive, if one exists.
    """

    form: AffineForm
    divisors: tuple[int, ...]
    face: Polyhedron
    witness: Point | None
    full: bool

    @property
    def halfspace(self) -> HalfSpace:
        return HalfSpace(self.form)


@dataclass(frozen=True)
class LctPolytope:
    polyhedron: Polyhedron
    facets: tuple[LctFacet, ...]
    coordinate_facets: tuple[int, ...]

    @property
    def hrep(self) -> list[HalfSpace]:
        """Divisor inequalities bounding the polytope (orthant omitted)."""
        return [f.halfspace for f in self.facets]

    @property
    def vertices(self):
        return self.polyhedron.vertices

    def interval(self) -> tuple[Fraction, Fraction]:
        if self.polyhedron.dim != 1:
            raise ValueError("interval form only exists for r = 1")
        v = sorted(p[0] for p in self.polyhedron.points)
        return v[0], v[-1]


def lct_polytope(data: ResolutionData) -> LctPolytope:
    """``LCT(F) = {lambda >= 0 : sum_j N_Ej lambda_j <= k_E + 1 for all E}``.

    The bounding hyperplanes are the facets of the polyhedron cut out by the
    divisor inequalities alone that touch the orthant; a hyperplane whose
    trace on LCT(F) is lower dimensional (``full=False``) is still listed.
    """
    r = data.r
    divisor_hs = [divisor_halfspace(data, i) for i in range(len(data.divisors))]
    poly = intersect(divisor_hs + orthant(r), r)
    unbounded = intersect(divisor_hs, r)
    names = data.names

    records = []
    for f in facets(unbounded):
        face = intersect(list(poly.hrep) + [HalfSpace(f.form, EQ)], r)
        if face.is_empty:
            continue
        support = tuple(sorted(names.index(t) for t in f.tags))
        records.append(
            LctFacet(f.form, support, face, strictly_positive_part(face), face.affine_dim == r - 1)
        )
    records.sort(key=lambda rec: (rec.divisors, rec.form.coeffs))
    coords = tuple(
        sorted(h.form.coordinate_index() for h in poly.hrep if h.form.coordinate_index() is not None)
    )
    return LctPolytope(poly, tuple(records), coords)


def lct(data: ResolutionData) -> Fraction:
    """Log-canonical threshold ``min_E (k_E + 1) / N_E`` for ``r = 1``."""
    if data.r != 1:
        raise ValueError("lct is defined here for r = 1 only")
    return min(Fraction(d.k + 1, d.orders[0]) for d in data.divisors if d.orders[0] > 0)


@dataclass(frozen=True)
class KltRegion:
    """Open region ``{lambda >= 0 : sum N_E (lambda - a) < k_E + 1}``.

    ``halfspaces`` holds the irredundant strict constraints; ``constraints``
    all of them, used for membership.
    """

    halfspaces: tuple[HalfSpace, ...]
    constraints: tuple[HalfSpace, ...]
    closure: Polyhedron
    box: tuple[tuple[Fraction, Fraction], ...]

    @property
    def dim(self) -> int:
        return self.closure.dim

    def contains(self, point: Sequence) -> bool:
        return contains(self, point)


def klt_region(data: ResolutionData, a: Sequence[int]) -> KltRegion:
    r = data.r
    strict = [divisor_halfspace(data, i, a, strict=True) for i in range(len(data.divisors))]
    poly = intersect(strict + orthant(r), r)
    if poly.is_empty or not poly.is_bounded:
        raise ValueError("KLT region closure must be a nonempty polytope")
    kept = tuple(h for h in poly.hrep if h.sense == LT)
    box = tuple((Fraction(0), max(p[j] for p in poly.points)) for j in range(r))
    closure = intersect([h.closure() for h in poly.hrep], r)
    return KltRegion(kept, tuple(strict), closure, box)


def contains(region: KltRegion, point: Sequence) -> bool:
    """Exact membership of ``point`` in the open KLT region."""
    if any(Fraction(x) < 0 for x in point):
        return False
    return all(h.satisfied(point) for h in region.constraints)
