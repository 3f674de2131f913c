"""Upper and lower bounds for the codimension-one part of Z(B_F^a).

Components are hyperplanes ``sum_j l_j s_j + b = 0`` kept as normalized
:class:`AffineForm` objects in the ``s`` variables; two components are equal
iff their forms are equal.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .model import ResolutionData, SchemaError, TestElement
from .polyhedra import DEFAULT_CELL_BUDGET, EQ, AffineForm, HalfSpace, strict_feasible
from .regions import klt_region, lct_polytope
from .walls import WallComplex, default_box, wall_complex

PROP13 = "prop13"
LCT_FACET = "lct-facet"
JUMPING_WALL = "jumping-wall"
UPPER = "upper-candidate"
REFERENCE = "reference"
PROVENANCES = (PROP13, LCT_FACET, JUMPING_WALL, UPPER, REFERENCE)


def component_form(orders: Sequence[int], constant) -> AffineForm:
    """``sum_j orders_j s_j + constant``"""
    return AffineForm(tuple(orders), constant)


@dataclass(frozen=True)
class Component:
    form: AffineForm
    provenance: str
    sources: tuple[tuple[str, int], ...] = ()
    witness: tuple[AffineForm, ...] = field(default=(), compare=False)

    def __str__(self) -> str:
        return self.form.render("s")


def _dedup(components: Iterable[Component]) -> list[Component]:
    """One component per form, merging sources."""
    order: list[AffineForm] = []
    merged: dict[AffineForm, Component] = {}
    for c in components:
        if c.form not in merged:
            order.append(c.form)
            merged[c.form] = c
            continue
        old = merged[c.form]
        sources = old.sources + tuple(s for s in c.sources if s not in old.sources)
        merged[c.form] = Component(c.form, old.provenance, sources, old.witness)
    return sorted(merged.values(), key=sort_key)


def sort_key(c: Component):
    return (c.form.coeffs, c.form.constant)


def forms(components: Iterable[Component]) -> set[AffineForm]:
    return {c.form for c in components}


def sign_check(form: AffineForm, a: Sequence[int]) -> bool:
    """``l >= 0``, ``b > 0`` and ``l_j > 0`` for some ``j`` with ``a_j != 0``."""
    return (
        all(c >= 0 for c in form.coeffs)
        and form.constant > 0
        and any(c > 0 and x != 0 for c, x in zip(form.coeffs, a))
    )


def default_c_max(data: ResolutionData, a: Sequence[int]) -> int:
    return 2 * max(d.k + sum(x * n for x, n in zip(a, d.orders)) for d in data.divisors)


def upper_family(data: ResolutionData, c_max: int) -> list[Component]:
    """Candidates ``sum N_E s + k_E + c`` for ``1 <= c <= c_max``.

    No bound on ``c`` is known in general for ``r > 1``, so ``c_max`` is a
    truncation chosen by the caller.
    """
    if c_max < 1:
        raise ValueError("c_max must be at least 1")
    out = []
    for d in data.divisors:
        for c in range(1, c_max + 1):
            out.append(Component(component_form(d.orders, d.k + c), UPPER, ((d.name, c),)))
    return _dedup(out)


def prop13_components(data: ResolutionData, a: Sequence[int]) -> list[Component]:
    """Components from components of D: ``sum N_C s + c`` for ``c = 1..m``.

    ``m = sum_j N_Cj a_j``; each component carries the local generator
    ``prod_{c=1}^m (sum N_C s + c)`` as its witness.
    """
    out = []
    for d in data.divisors:
        if not d.is_strict_transform:
            continue
        m = sum(n * x for n, x in zip(d.orders, a))
        if m <= 0:
            continue
        witness = tuple(component_form(d.orders, c) for c in range(1, m + 1))
        for c in range(1, m + 1):
            out.append(Component(component_form(d.orders, c), PROP13, ((d.name, c),), witness))
    return _dedup(out)


def lct_facet_components(data: ResolutionData, a: Sequence[int]) -> list[Component]:
    """``sum N_E s + k_E + 1`` for bounding hyperplanes of LCT(F).

    Eligible when some supporting divisor ``E`` has ``a_j != 0`` and
    ``N_Ej != 0`` for a common ``j``; the divisor that fired is recorded.
    """
    out = []
    for rec in lct_polytope(data).facets:
        for i in rec.divisors:
            d = data.divisors[i]
            if any(x != 0 and n != 0 for x, n in zip(a, d.orders)):
                out.append(Component(component_form(d.orders, d.k + 1), LCT_FACET, ((d.name, 1),)))
                break
    return _dedup(out)


def jump_meets_klt(complex: WallComplex, jump, klt) -> bool:
    system = complex.arrangement.facet_system(jump.facet) + list(klt.constraints)
    return strict_feasible(system, klt.dim) is not None


def jumping_wall_components(
    data: ResolutionData,
    a: Sequence[int],
    elements: Sequence[TestElement],
    box: Sequence | None = None,
    budget: int = DEFAULT_CELL_BUDGET,
    complex: WallComplex | None = None,
) -> list[Component]:
    """Components from jump facets whose relative interior meets KLT_a(F)."""
    if complex is None:
        complex = wall_complex(data, elements, box if box is not None else default_box(data, a), budget)
    klt = klt_region(data, a)
    out = []
    for jump in complex.jumps:
        if not jump_meets_klt(complex, jump, klt):
            continue
        # the wall sum N lambda = k + c gives the component sum N s + k + c
        f = jump.form
        out.append(Component(AffineForm(f.coeffs, -f.constant), JUMPING_WALL, jump.sources))
    return _dedup(out)


def upstairs_b(
    data: ResolutionData, a: Sequence[int], stratum: Sequence[int] | None = None
) -> list[tuple[AffineForm, int]]:
    """Factored ``prod_E prod_{c=1}^{m_E} (sum N_E s + k_E + c)``, ``m_E = sum a_j N_Ej``.

    Restricted to the divisors of ``stratum`` when given; equal factors are
    collected with multiplicity, in order of first appearance.
    """
    if stratum is None:
        indices = range(len(data.divisors))
    else:
        if data.strata is None or tuple(stratum) not in {tuple(s) for s in data.strata}:
            raise ValueError(f"stratum {list(stratum)} is not one of the data's strata")
        indices = stratum
    counts: dict[AffineForm, int] = {}
    for i in indices:
        d = data.divisors[i]
        m = sum(x * n for x, n in zip(a, d.orders))
        for c in range(1, m + 1):
            f = component_form(d.orders, d.k + c)
            counts[f] = counts.get(f, 0) + 1
    return list(counts.items())


def parse_reference(source) -> list[Component]:
    """Reference zero locus as a list of ``{"coeffs": [...], "b": b}`` objects."""
    if isinstance(source, (str, Path)) and not str(source).lstrip().startswith("["):
        text = Path(source).read_text()
    elif isinstance(source, str):
        text = source
    else:
        text = json.dumps(source)
    try:
        doc = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    if not isinstance(doc, list):
        raise SchemaError("reference must be a list of linear factors")
    out = []
    for i, item in enumerate(doc):
        loc = f"reference[{i}]"
        if not isinstance(item, dict) or set(item) != {"coeffs", "b"}:
            raise SchemaError("only linear factors {coeffs, b} are accepted", loc)
        if not isinstance(item["coeffs"], list):
            raise SchemaError("coeffs must be a list", loc)
        coeffs = tuple(_rational(v, f"{loc}.coeffs") for v in item["coeffs"])
        b = _rational(item["b"], f"{loc}.b")
        if not any(coeffs):
            raise SchemaError("constant factor", loc)
        out.append(Component(AffineForm(coeffs, b), REFERENCE))
    return _dedup(out)


def _no_float(s):
    raise SchemaError(f"non-exact number {s}; write rationals as \"p/q\"")


def _rational(v, locus) -> Fraction:
    if isinstance(v, bool):
        raise SchemaError("expected a rational", locus)
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except ValueError:
            pass
    raise SchemaError(f"expected an integer or \"p/q\", got {v!r}", locus)


@dataclass(frozen=True)
class BoundsReport:
    lower: tuple[Component, ...]
    upper: tuple[Component, ...]
    reference: tuple[Component, ...] | None
    prop13: tuple[Component, ...]
    lct_facet: tuple[Component, ...]
    jumping_wall: tuple[Component, ...]
    c_max: int
    box: tuple[tuple[Fraction, Fraction], ...]
    real_mode: bool

    @property
    def lower_in_upper(self) -> bool:
        return forms(self.lower) <= forms(self.upper)

    @property
    def lower_in_reference(self) -> bool | None:
        return None if self.reference is None else forms(self.lower) <= forms(self.reference)

    @property
    def reference_in_upper(self) -> bool | None:
        return None if self.reference is None else forms(self.reference) <= forms(self.upper)

    @property
    def locus(self) -> str:
        # real data bounds the local ideal at the chosen point
        return "Z(B_{F,x}^a)" if self.real_mode else "Z(B_F^a)"


def report(
    data: ResolutionData,
    a: Sequence[int],
    elements: Sequence[TestElement],
    box: Sequence | None = None,
    c_max: int | None = None,
    reference: Sequence[Component] | None = None,
    budget: int = DEFAULT_CELL_BUDGET,
) -> BoundsReport:
    box = tuple(tuple(map(Fraction, b)) for b in (box if box is not None else default_box(data, a)))
    c_max = c_max if c_max is not None else default_c_max(data, a)
    p13 = prop13_components(data, a)
    lf = lct_facet_components(data, a)
    jw = jumping_wall_components(data, a, elements, box, budget)
    lower = []
    for group in (p13, lf, jw):
        for c in group:
            if c.form not in {x.form for x in lower}:
                lower.append(c)
    lower.sort(key=sort_key)
    return BoundsReport(
        lower=tuple(lower),
        upper=tuple(upper_family(data, c_max)),
        reference=None if reference is None else tuple(reference),
        prop13=tuple(p13),
        lct_facet=tuple(lf),
        jumping_wall=tuple(jw),
        c_max=c_max,
        box=box,
        real_mode=data.real_mode,
    )


def provenance_of(rep: BoundsReport, f: AffineForm) -> list[str]:
    out = []
    for name, group in ((PROP13, rep.prop13), (LCT_FACET, rep.lct_facet), (JUMPING_WALL, rep.jumping_wall)):
        if any(c.form == f for c in group):
            out.append(name)
    return out
