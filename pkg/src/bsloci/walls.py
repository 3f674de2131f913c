"""Mixed multiplier ideals on a finite test set, and their jumping walls.

``J(F^lambda)`` is represented by its trace on a user supplied list of test
elements ``h``: ``h`` is a member iff ``ord_E(h) + k_E >= floor(sum_j lambda_j
N_Ej)`` for every divisor ``E``.  The trace is exact on the test set; whether
it sees every jump of the ideal depends on the test set being rich enough.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .model import ResolutionData, TestElement
from .polyhedra import (
    DEFAULT_CELL_BUDGET,
    AffineForm,
    Arrangement,
    ArrangementFacet,
    Point,
    as_point,
    decompose,
)
from .regions import klt_region

Pattern = tuple[bool, ...]


def _level(orders: Sequence[int], point: Sequence[Fraction]) -> int:
    return math.floor(sum((n * x for n, x in zip(orders, point) if n), Fraction(0)))


def membership(h: TestElement, point: Sequence, data: ResolutionData) -> bool:
    point = as_point(point)
    return all(
        h.orders[i] + d.k >= _level(d.orders, point) for i, d in enumerate(data.divisors)
    )


def pattern(point: Sequence, data: ResolutionData, elements: Sequence[TestElement]) -> Pattern:
    point = as_point(point)
    levels = [_level(d.orders, point) - d.k for d in data.divisors]
    return tuple(all(o >= lv for o, lv in zip(h.orders, levels)) for h in elements)


def is_subpattern(p: Pattern, q: Pattern) -> bool:
    """True if every member in ``p`` is a member in ``q``."""
    return all(y or not x for x, y in zip(p, q))


def wall_form(orders: Sequence[int], level: int) -> AffineForm:
    """The hyperplane ``sum_j orders_j lambda_j = level`` as a canonical form."""
    return AffineForm(tuple(orders), -level).canonical()


def candidate_forms(data: ResolutionData, box: Sequence) -> list[AffineForm]:
    """Hyperplanes ``sum N_E lambda = k_E + c`` (``c >= 1``) meeting the open box."""
    box = [tuple(map(Fraction, b)) for b in box]
    out: list[AffineForm] = []
    for d in data.divisors:
        lo = sum(n * b[0] for n, b in zip(d.orders, box))
        hi = sum(n * b[1] for n, b in zip(d.orders, box))
        if lo == hi:
            continue
        c = 1
        while d.k + c < hi:
            if d.k + c > lo:
                f = wall_form(d.orders, d.k + c)
                if f not in out:
                    out.append(f)
            c += 1
    return out


def wall_sources(data: ResolutionData, f: AffineForm) -> tuple[tuple[str, int], ...]:
    """Pairs ``(E, c)`` with ``sum N_E lambda = k_E + c`` equal to the hyperplane ``f``."""
    out = []
    coeffs = f.coeffs
    piv = next(j for j, c in enumerate(coeffs) if c)
    for d in data.divisors:
        t = Fraction(d.orders[piv], coeffs[piv])
        if t <= 0 or any(n != t * c for n, c in zip(d.orders, coeffs)):
            continue
        level = -t * f.constant
        c = level - d.k
        if c.denominator == 1 and c >= 1:
            out.append((d.name, int(c)))
    return tuple(out)


@dataclass(frozen=True)
class JumpFacet:
    facet: ArrangementFacet
    form: AffineForm
    sources: tuple[tuple[str, int], ...]

    @property
    def point(self) -> Point:
        return self.facet.point


@dataclass(frozen=True)
class WallComplex:
    arrangement: Arrangement
    elements: tuple[TestElement, ...]
    patterns: tuple[Pattern, ...]
    jumps: tuple[JumpFacet, ...]

    @property
    def box(self):
        return self.arrangement.box

    def jump_forms(self) -> list[AffineForm]:
        out = []
        for j in self.jumps:
            if j.form not in out:
                out.append(j.form)
        return out

    def pattern_at(self, point: Sequence) -> Pattern:
        i = self.arrangement.locate(as_point(point))
        if i is None:
            raise ValueError("point on wall, region undefined at this resolution of the model")
        return self.patterns[i]


def default_box(data: ResolutionData, a: Sequence[int]) -> tuple[tuple[Fraction, Fraction], ...]:
    """Bounding box of the closure of KLT_a(F), enlarged by 1/2."""
    klt = klt_region(data, a)
    half = Fraction(1, 2)
    return tuple((lo, hi + half) for lo, hi in klt.box)


def wall_complex(
    data: ResolutionData,
    elements: Sequence[TestElement],
    box: Sequence,
    budget: int = DEFAULT_CELL_BUDGET,
) -> WallComplex:
    if not elements:
        raise ValueError("at least one test element required")
    elements = tuple(elements)
    arr = decompose(box, candidate_forms(data, box), budget)
    patterns = tuple(pattern(c.point, data, elements) for c in arr.cells)
    jumps = []
    for f in arr.facets:
        low, high = patterns[f.below], patterns[f.above]
        if high != low:
            # crossing a wall upward only raises floors
            assert is_subpattern(high, low)
            form = arr.forms[f.form_index]
            jumps.append(JumpFacet(f, form, wall_sources(data, form)))
    return WallComplex(arr, elements, patterns, tuple(jumps))


def region_of_constancy(point: Sequence, complex: WallComplex) -> list[int]:
    """Cells where every member of the test set at ``point`` stays a member.

    This is the test-set proxy for ``R_F(lambda) = {lambda' : J(lambda) in J(lambda')}``.
    """
    here = complex.pattern_at(point)
    return [i for i, p in enumerate(complex.patterns) if is_subpattern(here, p)]
