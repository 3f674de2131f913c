"""Exact rational polyhedra.

Everything here works over :class:`fractions.Fraction`; there is no tolerance
parameter anywhere.  Polyhedra are given by half-spaces ``form(x) <= 0``,
``form(x) < 0`` or ``form(x) = 0`` and converted to generators with the double
description method on the homogenized cone.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Rat = Fraction
Point = tuple[Fraction, ...]

LE = "<="
LT = "<"
EQ = "="
SENSES = (LE, LT, EQ)

DEFAULT_CELL_BUDGET = 100_000


class ArrangementTooLarge(RuntimeError):
    def __init__(self, count: int, budget: int):
        super().__init__(f"arrangement too large: {count} cells exceeds budget {budget}")
        self.count = count
        self.budget = budget


def as_rat(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point input is not accepted; use Fraction or str")
    return Fraction(x)


def as_point(xs: Iterable) -> Point:
    return tuple(as_rat(x) for x in xs)


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


def _primitive(values: Sequence[Fraction]) -> list[int]:
    """Positive rescaling of ``values`` to coprime integers."""
    den = 1
    for v in values:
        den = _lcm(den, v.denominator)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


@dataclass(frozen=True)
class AffineForm:
    """The affine function ``coeffs . x + constant``.

    Stored as coprime integers; the constructor rescales by a positive factor
    only, so the sign (and therefore any half-space built on the form) is
    preserved.  Use :meth:`canonical` to identify hyperplanes.
    """

    coeffs: tuple[int, ...]
    constant: int = 0

    def __post_init__(self):
        values = [as_rat(c) for c in self.coeffs] + [as_rat(self.constant)]
        ints = _primitive(values)
        object.__setattr__(self, "coeffs", tuple(ints[:-1]))
        object.__setattr__(self, "constant", ints[-1])

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, point: Sequence) -> Fraction:
        total = Fraction(self.constant)
        for c, x in zip(self.coeffs, point):
            if c:
                total += c * x
        return total

    def is_constant(self) -> bool:
        return not any(self.coeffs)

    def negate(self) -> AffineForm:
        return AffineForm(tuple(-c for c in self.coeffs), -self.constant)

    def canonical(self) -> AffineForm:
        """Sign-normalized copy: first nonzero coefficient positive."""
        lead = next((c for c in self.coeffs if c), self.constant)
        return self.negate() if lead < 0 else self

    def coordinate_index(self) -> int | None:
        """``j`` if this is the orthant form ``-x_j`` (i.e. ``x_j >= 0``)."""
        if self.constant != 0:
            return None
        nz = [j for j, c in enumerate(self.coeffs) if c]
        if len(nz) == 1 and self.coeffs[nz[0]] == -1:
            return nz[0]
        return None

    def render(self, var: str = "x", flip_constant: bool = False) -> str:
        terms = []
        for j, c in enumerate(self.coeffs):
            if not c:
                continue
            name = f"{var}{j + 1}"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            terms.append(("-" if c < 0 else "+", body))
        const = -self.constant if flip_constant else self.constant
        if const or not terms:
            terms.append(("-" if const < 0 else "+", str(abs(const))))
        out = ""
        for i, (sign, body) in enumerate(terms):
            if i == 0:
                out = body if sign == "+" else f"-{body}"
            else:
                out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.render()


def form(coeffs: Sequence, constant=0) -> AffineForm:
    return AffineForm(tuple(coeffs), constant)


@dataclass(frozen=True)
class HalfSpace:
    """``form(x) <sense> 0`` with ``sense`` one of ``<=``, ``<``, ``=``."""

    form: AffineForm
    sense: str = LE
    tags: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.sense not in SENSES:
            raise ValueError(f"unknown sense {self.sense!r}")

    @property
    def strict(self) -> bool:
        return self.sense == LT

    def satisfied(self, point: Sequence) -> bool:
        v = self.form(point)
        if self.sense == LE:
            return v <= 0
        if self.sense == LT:
            return v < 0
        return v == 0

    def closure(self) -> HalfSpace:
        return HalfSpace(self.form, LE, self.tags) if self.sense == LT else self

    def with_sense(self, sense: str) -> HalfSpace:
        return HalfSpace(self.form, sense, self.tags)

    def __str__(self) -> str:
        # print as "terms <sense> rhs"
        lhs = AffineForm(self.form.coeffs, 0).render()
        return f"{lhs} {self.sense} {Fraction(-self.form.constant)}"


def _halfspace(coeffs, rhs, sense, tags, flip=False) -> HalfSpace:
    coeffs = [as_rat(c) for c in coeffs]
    rhs = as_rat(rhs)
    if flip:
        f = AffineForm(tuple(-c for c in coeffs), rhs)
    else:
        f = AffineForm(tuple(coeffs), -rhs)
    return HalfSpace(f, sense, frozenset(tags))


def le(coeffs, rhs, tags=()) -> HalfSpace:
    """``coeffs . x <= rhs``"""
    return _halfspace(coeffs, rhs, LE, tags)


def lt(coeffs, rhs, tags=()) -> HalfSpace:
    return _halfspace(coeffs, rhs, LT, tags)


def ge(coeffs, rhs, tags=()) -> HalfSpace:
    return _halfspace(coeffs, rhs, LE, tags, flip=True)


def gt(coeffs, rhs, tags=()) -> HalfSpace:
    return _halfspace(coeffs, rhs, LT, tags, flip=True)


def eq(coeffs, rhs, tags=()) -> HalfSpace:
    return _halfspace(coeffs, rhs, EQ, tags)


def orthant(dim: int) -> list[HalfSpace]:
    return [ge(unit(dim, j), 0) for j in range(dim)]


def unit(dim: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i == j else 0 for i in range(dim))


# ---------------------------------------------------------------------------
# small exact linear algebra


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    rows = [list(map(Fraction, v)) for v in vectors if any(v)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                k = rows[i][col] / p
                rows[i] = [a - k * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def _primitive_vec(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in _primitive([Fraction(x) for x in v]))


# ---------------------------------------------------------------------------
# double description


def _double_description(rows: list[Sequence[Fraction]], d: int):
    """Generators of the cone ``{y in Q^d : a . y >= 0 for a in rows}``.

    Returns ``(lines, rays)`` where rays are ``(vector, tight row indices)``.
    Adjacency uses the combinatorial test, which is exact for extreme rays
    of the pointed part of the cone.
    """
    lines: list[tuple[Fraction, ...]] = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    rays: list[tuple[tuple[Fraction, ...], frozenset]] = []
    for idx, a in enumerate(rows):
        k = next((i for i, l in enumerate(lines) if _dot(a, l) != 0), None)
        if k is not None:
            pivot = lines[k]
            s = _dot(a, pivot)
            if s < 0:
                pivot = tuple(-x for x in pivot)
                s = -s
            new_lines = []
            for i, l in enumerate(lines):
                if i == k:
                    continue
                t = _dot(a, l)
                new_lines.append(l if t == 0 else tuple(x - (t / s) * p for x, p in zip(l, pivot)))
            new_rays = []
            for r, z in rays:
                t = _dot(a, r)
                v = r if t == 0 else _primitive_vec([x - (t / s) * p for x, p in zip(r, pivot)])
                new_rays.append((v, z | {idx}))
            new_rays.append((_primitive_vec(pivot), frozenset(range(idx))))
            lines, rays = new_lines, new_rays
            continue

        pos, zero, neg = [], [], []
        for r, z in rays:
            t = _dot(a, r)
            if t > 0:
                pos.append((r, z, t))
            elif t < 0:
                neg.append((r, z, t))
            else:
                zero.append((r, z))
        result = [(r, z) for r, z, _ in pos] + [(r, z | {idx}) for r, z in zero]
        min_common = d - len(lines) - 2
        all_z = [z for _, z in rays]
        for rp, zp, tp in pos:
            for rn, zn, tn in neg:
                common = zp & zn
                if len(common) < min_common:
                    continue
                adjacent = True
                for z in all_z:
                    if z is zp or z is zn:
                        continue
                    if common <= z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                v = [tp * xn - tn * xp for xp, xn in zip(rp, rn)]
                result.append((_primitive_vec(v), common | {idx}))
        rays = result
    return lines, rays


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class Certificate:
    """Nonnegative combination of input half-spaces that is contradictory.

    ``multipliers`` pairs input indices with weights (weights on equalities
    may be negative).  The combined form has zero linear part and constant
    ``constant``; the system is infeasible because ``constant > 0`` or
    ``constant >= 0`` with ``strict`` set.
    """

    multipliers: tuple[tuple[int, Fraction], ...]
    constant: Fraction
    strict: bool

    def check(self, halfspaces: Sequence[HalfSpace]) -> bool:
        dim = halfspaces[0].form.dim if halfspaces else 0
        coeffs = [Fraction(0)] * dim
        const = Fraction(0)
        strict = False
        for i, w in self.multipliers:
            h = halfspaces[i]
            if w < 0 and h.sense != EQ:
                return False
            if w == 0:
                continue
            coeffs = [c + w * a for c, a in zip(coeffs, h.form.coeffs)]
            const += w * h.form.constant
            strict = strict or h.sense == LT
        if any(coeffs) or const != self.constant or strict != self.strict:
            return False
        return const > 0 or (strict and const >= 0)


@dataclass(frozen=True)
class Polyhedron:
    """H-representation plus the V-representation of its closure.

    ``points`` are representatives of the minimal faces (the vertices when
    ``lines`` is empty).  The set is ``conv(points) + cone(rays) + span(lines)``.
    An empty polyhedron has no points and carries a :class:`Certificate`.
    """

    dim: int
    hrep: tuple[HalfSpace, ...]
    points: tuple[Point, ...] = ()
    rays: tuple[Point, ...] = ()
    lines: tuple[Point, ...] = ()
    certificate: Certificate | None = None

    @property
    def is_empty(self) -> bool:
        return not self.points

    @property
    def vertices(self) -> tuple[Point, ...]:
        return () if self.lines else self.points

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    @property
    def affine_dim(self) -> int:
        if self.is_empty:
            return -1
        p0 = self.points[0]
        vecs = [tuple(a - b for a, b in zip(p, p0)) for p in self.points[1:]]
        return _rank(vecs + list(self.rays) + list(self.lines))

    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def relint_point(self) -> Point:
        if self.is_empty:
            raise ValueError("empty polyhedron has no interior point")
        n = len(self.points)
        return tuple(
            sum((p[j] for p in self.points), Fraction(0)) / n + sum((r[j] for r in self.rays), Fraction(0))
            for j in range(self.dim)
        )

    def contains(self, point: Sequence) -> bool:
        return all(h.satisfied(point) for h in self.hrep)

    def tight(self, h: HalfSpace) -> tuple[list[Point], list[Point]]:
        """Points and rays of the closure on which ``h`` holds with equality."""
        pts = [p for p in self.points if h.form(p) == 0]
        lin = AffineForm(h.form.coeffs, 0)
        rs = [r for r in self.rays if lin(r) == 0]
        return pts, rs

    def face_dim(self, h: HalfSpace) -> int:
        pts, rs = self.tight(h)
        if not pts:
            return -1
        vecs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
        return _rank(vecs + rs + list(self.lines))

    def is_implicit_equality(self, h: HalfSpace) -> bool:
        pts, rs = self.tight(h)
        return len(pts) == len(self.points) and len(rs) == len(self.rays)


def _merge(halfspaces: Sequence[HalfSpace]) -> list[HalfSpace]:
    """Merge half-spaces with identical forms (keeping the strictest sense)."""
    order: list[tuple] = []
    merged: dict[tuple, HalfSpace] = {}
    for h in halfspaces:
        f = h.form.canonical() if h.sense == EQ else h.form
        key = (f, h.sense == EQ)
        if key not in merged:
            order.append(key)
            merged[key] = HalfSpace(f, h.sense, h.tags)
            continue
        old = merged[key]
        sense = LT if LT in (old.sense, h.sense) else old.sense
        merged[key] = HalfSpace(f, sense, old.tags | h.tags)
    return [merged[k] for k in order]


def _generators(halfspaces: Sequence[HalfSpace], dim: int):
    """Vertices/rays/lines of the closure of ``halfspaces`` via DD."""
    rows: list[list[Fraction]] = []
    for h in halfspaces:
        # l.x + b <= 0  <=>  -l.x - b*t >= 0
        row = [Fraction(-c) for c in h.form.coeffs] + [Fraction(-h.form.constant)]
        rows.append(row)
        if h.sense == EQ:
            rows.append([-x for x in row])
    rows.append([Fraction(0)] * dim + [Fraction(1)])
    lines, rays = _double_description(rows, dim + 1)
    points, recession = [], []
    for r, _ in rays:
        t = r[-1]
        if t > 0:
            points.append(tuple(x / t for x in r[:-1]))
        else:
            recession.append(_primitive_vec(r[:-1]))
    lin = [_primitive_vec(l[:-1]) for l in lines]
    return sorted(points), sorted(recession), sorted(lin)


def infeasibility_certificate(halfspaces: Sequence[HalfSpace]) -> Certificate | None:
    """Fourier-Motzkin elimination tracking multipliers.

    Returns a certificate if the system (with strictness) is infeasible.
    """
    if not halfspaces:
        return None
    dim = halfspaces[0].form.dim
    rows = []
    for i, h in enumerate(halfspaces):
        coeffs = tuple(Fraction(c) for c in h.form.coeffs)
        const = Fraction(h.form.constant)
        rows.append((coeffs, const, h.sense == LT, ((i, Fraction(1)),)))
        if h.sense == EQ:
            rows.append((tuple(-c for c in coeffs), -const, False, ((i, Fraction(-1)),)))

    def combine(m1, w1, m2, w2):
        acc: dict[int, Fraction] = {}
        for i, w in m1:
            acc[i] = acc.get(i, Fraction(0)) + w1 * w
        for i, w in m2:
            acc[i] = acc.get(i, Fraction(0)) + w2 * w
        return tuple(sorted((i, w) for i, w in acc.items() if w))

    for var in range(dim):
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        keep = [r for r in rows if r[0][var] == 0]
        seen = set()
        for cp, bp, sp, mp in pos:
            for cn, bn, sn, mn in neg:
                wp, wn = -cn[var], cp[var]
                coeffs = tuple(wp * x + wn * y for x, y in zip(cp, cn))
                const = wp * bp + wn * bn
                key_vals = _primitive(list(coeffs) + [const])
                key = (tuple(key_vals), sp or sn)
                if key in seen:
                    continue
                seen.add(key)
                keep.append((coeffs, const, sp or sn, combine(mp, wp, mn, wn)))
        rows = keep
    for coeffs, const, strict, mult in rows:
        if const > 0 or (strict and const >= 0):
            # rescale the certificate to the original equality signs
            return Certificate(mult, const, strict)
    return None


def intersect(halfspaces: Iterable[HalfSpace], dim: int | None = None) -> Polyhedron:
    """Intersection of half-spaces with an irredundant H-representation."""
    halfspaces = list(halfspaces)
    if dim is None:
        if not halfspaces:
            raise ValueError("dimension required for an empty half-space list")
        dim = halfspaces[0].form.dim
    for h in halfspaces:
        if h.form.dim != dim:
            raise ValueError(f"half-space {h} has dimension {h.form.dim}, expected {dim}")
    merged = _merge(halfspaces)
    points, rays, lines = _generators(merged, dim)
    poly = Polyhedron(dim, tuple(merged), tuple(points), tuple(rays), tuple(lines))

    if poly.points and any(h.strict for h in merged):
        p = poly.relint_point()
        if not all(h.satisfied(p) for h in merged):
            points = []
    if not points:
        cert = infeasibility_certificate(halfspaces)
        return Polyhedron(dim, tuple(merged), certificate=cert)

    return Polyhedron(dim, tuple(_irredundant(poly)), poly.points, poly.rays, poly.lines)


def _irredundant(poly: Polyhedron) -> list[HalfSpace]:
    d = poly.affine_dim
    kept: list[HalfSpace] = []
    if d == poly.dim:
        for h in poly.hrep:
            if h.form.is_constant():
                continue
            if poly.face_dim(h) == d - 1:
                kept.append(h)
        return kept
    # lower dimensional: independent implicit equalities, then one
    # constraint per facet of the relative boundary
    eqs: list[HalfSpace] = []
    normals: list[tuple] = []
    faces = set()
    for h in poly.hrep:
        if h.form.is_constant():
            continue
        if poly.is_implicit_equality(h):
            vec = tuple(h.form.coeffs) + (h.form.constant,)
            if _rank(normals + [vec]) > len(normals):
                normals.append(vec)
                eqs.append(HalfSpace(h.form.canonical(), EQ, h.tags))
            continue
        if poly.face_dim(h) == d - 1:
            pts, rs = poly.tight(h)
            key = (frozenset(pts), frozenset(rs))
            if key in faces:
                continue
            faces.add(key)
            kept.append(h)
    return eqs + kept


def strict_feasible(halfspaces: Iterable[HalfSpace], dim: int | None = None) -> Point | None:
    """A rational point satisfying every constraint with its strictness, or None."""
    halfspaces = list(halfspaces)
    if dim is None:
        if not halfspaces:
            raise ValueError("dimension required for an empty half-space list")
        dim = halfspaces[0].form.dim
    merged = _merge(halfspaces)
    points, rays, lines = _generators(merged, dim)
    if not points:
        return None
    p = Polyhedron(dim, tuple(merged), tuple(points), tuple(rays), tuple(lines)).relint_point()
    if all(h.satisfied(p) for h in merged):
        return p
    return None


def relative_interior_system(poly: Polyhedron) -> list[HalfSpace]:
    """Constraints whose solution set is the relative interior of ``poly``."""
    out = []
    for h in poly.hrep:
        if h.sense == EQ or poly.is_implicit_equality(h):
            out.append(h.with_sense(EQ))
        else:
            out.append(h.with_sense(LT))
    return out


@dataclass(frozen=True)
class Facet:
    form: AffineForm
    tags: frozenset
    point: Point
    coordinate: bool
    face: Polyhedron


def facets(p: Polyhedron) -> list[Facet]:
    """Facets of a full-dimensional polyhedron.

    ``point`` lies in the relative interior of the facet.  ``coordinate`` marks
    the orthant facets ``x_j = 0``.
    """
    if p.is_empty or not p.is_full_dimensional():
        raise ValueError("polyhedron not full-dimensional")
    out = []
    for h in p.hrep:
        pts, rs = p.tight(h)
        face = Polyhedron(
            p.dim,
            tuple(h.with_sense(EQ) if g is h else g for g in p.hrep),
            tuple(pts),
            tuple(rs),
            p.lines,
        )
        out.append(Facet(h.form, h.tags, face.relint_point(), h.form.coordinate_index() is not None, face))
    return out


def strictly_positive_part(f: Facet | Polyhedron) -> Point | None:
    """Relative-interior point of the face with every coordinate > 0, or None."""
    face = f.face if isinstance(f, Facet) else f
    if face.is_empty:
        return None
    system = relative_interior_system(face)
    system += [gt(unit(face.dim, j), 0) for j in range(face.dim)]
    return strict_feasible(system, face.dim)


# ---------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True)
class Cell:
    signs: tuple[int, ...]
    point: Point
    polyhedron: Polyhedron


@dataclass(frozen=True)
class ArrangementFacet:
    """Face ``forms[form_index] = 0`` between the cells ``below`` and ``above``.

    ``below`` is the cell on the negative side of the form.
    """

    form_index: int
    below: int
    above: int
    point: Point


@dataclass(frozen=True)
class Arrangement:
    box: tuple[tuple[Fraction, Fraction], ...]
    forms: tuple[AffineForm, ...]
    cells: tuple[Cell, ...]
    facets: tuple[ArrangementFacet, ...]

    def locate(self, point: Sequence) -> int | None:
        """Index of the open cell containing ``point`` (None if on a cut)."""
        signs = []
        for f in self.forms:
            v = f(point)
            if v == 0:
                return None
            signs.append(1 if v > 0 else -1)
        return self._index().get(tuple(signs))

    def _index(self) -> dict:
        cache = self.__dict__.get("_cell_index")
        if cache is None:
            cache = {c.signs: i for i, c in enumerate(self.cells)}
            object.__setattr__(self, "_cell_index", cache)
        return cache

    def facet_system(self, facet: ArrangementFacet) -> list[HalfSpace]:
        """Constraints describing the relative interior of ``facet``."""
        cell = self.cells[facet.below]
        target = self.forms[facet.form_index]
        out = [HalfSpace(target, EQ)]
        for h in cell.polyhedron.hrep:
            if h.form == target:
                continue
            out.append(h.with_sense(LT))
        return out


def box_halfspaces(box: Sequence[tuple[Fraction, Fraction]], sense: str = LE) -> list[HalfSpace]:
    dim = len(box)
    out = []
    for j, (lo, hi) in enumerate(box):
        e = unit(dim, j)
        out.append(_halfspace(e, lo, sense, ("box",), flip=True))
        out.append(_halfspace(e, hi, sense, ("box",)))
    return out


def decompose(box: Sequence, forms: Sequence[AffineForm], budget: int = DEFAULT_CELL_BUDGET) -> Arrangement:
    """Cells of the arrangement of ``forms`` inside ``box``.

    Cells are open sign-vector classes with nonempty interior; facets are the
    codimension-one faces separating two cells.  Output is sorted canonically.
    """
    box = tuple((as_rat(lo), as_rat(hi)) for lo, hi in box)
    dim = len(box)
    if any(lo >= hi for lo, hi in box):
        raise ValueError("box must be full-dimensional")
    corners = list(itertools.product(*box))
    uniq: list[AffineForm] = []
    for f in forms:
        if f.dim != dim:
            raise ValueError(f"form {f} has dimension {f.dim}, expected {dim}")
        if f.is_constant():
            raise ValueError(f"form {f} is constant")
        f = f.canonical()
        values = [f(c) for c in corners]
        # forms missing the open box cut nothing
        if f not in uniq and min(values) < 0 < max(values):
            uniq.append(f)
    forms = uniq

    start = intersect(box_halfspaces(box, LT), dim)
    cells: list[tuple[tuple[int, ...], Polyhedron]] = [((), start)]
    for f in forms:
        nxt = []
        for signs, poly in cells:
            values = [f(v) for v in poly.points]
            if all(v >= 0 for v in values):
                nxt.append((signs + (1,), poly))
            elif all(v <= 0 for v in values):
                nxt.append((signs + (-1,), poly))
            else:
                lo = intersect(list(poly.hrep) + [HalfSpace(f, LT)], dim)
                hi = intersect(list(poly.hrep) + [HalfSpace(f.negate(), LT)], dim)
                nxt.append((signs + (-1,), lo))
                nxt.append((signs + (1,), hi))
        cells = nxt
        if len(cells) > budget:
            raise ArrangementTooLarge(len(cells), budget)
    cells.sort(key=lambda c: c[0])
    cell_objs = tuple(Cell(s, p.relint_point(), p) for s, p in cells)
    index = {c.signs: i for i, c in enumerate(cell_objs)}

    out_facets = []
    for i, cell in enumerate(cell_objs):
        for h in cell.polyhedron.hrep:
            if h.form not in forms:
                continue
            k = forms.index(h.form)
            if cell.signs[k] != -1:
                continue
            flipped = cell.signs[:k] + (1,) + cell.signs[k + 1:]
            j = index.get(flipped)
            if j is None:
                raise AssertionError("facet without neighbour cell")
            pts = [p for p in cell.polyhedron.points if h.form(p) == 0]
            n = len(pts)
            sample = tuple(sum((p[t] for p in pts), Fraction(0)) / n for t in range(dim))
            out_facets.append(ArrangementFacet(k, i, j, sample))
    out_facets.sort(key=lambda f: (f.form_index, f.below, f.above))
    return Arrangement(box, tuple(forms), cell_objs, tuple(out_facets))
