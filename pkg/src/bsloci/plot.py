"""SVG figures: bounds in s-space and the jumping-wall picture in lambda-space.

SVG coordinates are decimal (6 significant digits) and for display only; the
exact vertex lists of the shaded regions are attached as ``data-vertices``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .bounds import BoundsReport
from .model import ResolutionData, TestElement
from .polyhedra import AffineForm, HalfSpace, decompose, eq, intersect, orthant, unit
from .regions import divisor_halfspace
from .walls import pattern, wall_complex

PANEL = 320
MARGIN = 40


def _num(x) -> str:
    return f"{float(x):.6g}"


def _exact(points) -> str:
    return " ".join(",".join(str(c) for c in p) for p in points)


def _ccw(points):
    """Order the vertices of a convex polygon counter-clockwise."""
    if len(points) < 3:
        return list(points)
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(float(p[1] - cy), float(p[0] - cx)))


def parse_slice(spec: str | None, r: int) -> dict[int, Fraction]:
    """``"3=1/2,4=0"`` -> {2: 1/2, 3: 0} (1-based coordinates in the text)."""
    fixed: dict[int, Fraction] = {}
    if spec:
        for part in spec.split(","):
            key, _, value = part.partition("=")
            j = int(key) - 1
            if not 0 <= j < r:
                raise ValueError(f"slice coordinate {key} out of range 1..{r}")
            fixed[j] = Fraction(value)
    if r - len(fixed) != 2:
        raise ValueError(f"plot needs exactly two free coordinates; r={r}, fixed {len(fixed)}")
    return fixed


class _Frame:
    def __init__(self, x0, box, labels):
        (self.xlo, self.xhi), (self.ylo, self.yhi) = box
        self.x0 = x0
        self.labels = labels

    def xy(self, p):
        x = self.x0 + MARGIN + (Fraction(p[0]) - self.xlo) / (self.xhi - self.xlo) * PANEL
        y = MARGIN + PANEL - (Fraction(p[1]) - self.ylo) / (self.yhi - self.ylo) * PANEL
        return _num(x), _num(y)

    def frame(self, title):
        x, y = self.x0 + MARGIN, MARGIN
        out = [
            f'<rect x="{x}" y="{y}" width="{PANEL}" height="{PANEL}" fill="none" stroke="#888"/>',
            f'<text x="{x}" y="{y - 10}" font-size="13">{escape(title)}</text>',
            f'<text x="{x + PANEL - 30}" y="{y + PANEL + 18}" font-size="12">{escape(self.labels[0])}</text>',
            f'<text x="{x - 34}" y="{y + 12}" font-size="12">{escape(self.labels[1])}</text>',
        ]
        for val, axis in ((self.xlo, 0), (self.xhi, 0), (self.ylo, 1), (self.yhi, 1)):
            if axis == 0:
                px, py = self.xy((val, self.ylo))
                out.append(f'<text x="{px}" y="{float(py) + 14:.6g}" font-size="10">{val}</text>')
            else:
                px, py = self.xy((self.xlo, val))
                out.append(f'<text x="{float(px) - 22:.6g}" y="{py}" font-size="10">{val}</text>')
        return out

    def polygon(self, pts, ident, fill):
        pts = _ccw(pts)
        coords = " ".join(",".join(self.xy(p)) for p in pts)
        return (
            f'<polygon id="{ident}" points="{coords}" fill="{fill}" stroke="#555" '
            f'data-vertices="{_exact(pts)}"/>'
        )

    def segment(self, p, q, cls, extra=""):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        return f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" {extra}/>'


def _clip_line(coeffs, b, box):
    """Endpoints of ``coeffs . u = b`` inside a 2D box, or None."""
    hs = [eq(coeffs, b)]
    for j, (lo, hi) in enumerate(box):
        e = unit(2, j)
        hs.append(HalfSpace(AffineForm(tuple(-x for x in e), lo)))
        hs.append(HalfSpace(AffineForm(e, -hi)))
    poly = intersect(hs, 2)
    if poly.is_empty or len(poly.points) < 2:
        return None
    return poly.points[0], poly.points[-1]


def _sliced_polygon(halfspaces, fixed, free, r):
    hs = list(halfspaces) + [eq(unit(r, j), v) for j, v in fixed.items()]
    poly = intersect(hs, r)
    if poly.is_empty:
        return []
    return [tuple(p[j] for j in free) for p in poly.points]


def _lift(point2, fixed, free, r):
    out = [Fraction(0)] * r
    for j, v in fixed.items():
        out[j] = v
    for j, v in zip(free, point2):
        out[j] = v
    return tuple(out)


def jump_segments(data, elements, a, box2, fixed, free):
    """Jump facets of the walls restricted to the slice, as segments."""
    r = data.r
    if not fixed:
        wc = wall_complex(data, elements, box2)
        arr = wc.arrangement
        segs = []
        for j in wc.jumps:
            cell = arr.cells[j.facet.below].polyhedron
            pts = [p for p in cell.points if j.form(p) == 0]
            segs.append((pts[0], pts[-1], j.form))
        return segs
    forms = []
    for d in data.divisors:
        shift = sum(d.orders[j] * v for j, v in fixed.items())
        coeffs = tuple(d.orders[j] for j in free)
        if not any(coeffs):
            continue
        lo = shift + sum(c * b[0] for c, b in zip(coeffs, box2))
        hi = shift + sum(c * b[1] for c, b in zip(coeffs, box2))
        m = max(d.k + 1, math.floor(lo) + 1)
        while m < hi:
            forms.append(AffineForm(coeffs, shift - m).canonical())
            m += 1
    arr = decompose(box2, forms)
    pats = [pattern(_lift(c.point, fixed, free, r), data, elements) for c in arr.cells]
    segs = []
    for f in arr.facets:
        if pats[f.below] != pats[f.above]:
            form = arr.forms[f.form_index]
            cell = arr.cells[f.below].polyhedron
            pts = [p for p in cell.points if form(p) == 0]
            segs.append((pts[0], pts[-1], form))
    return segs


def render_svg(
    data: ResolutionData,
    a: Sequence[int],
    elements: Sequence[TestElement],
    rep: BoundsReport,
    box: Sequence | None = None,
    slice_spec: str | None = None,
) -> str:
    r = data.r
    fixed = parse_slice(slice_spec, r)
    free = [j for j in range(r) if j not in fixed]
    box2 = tuple(tuple(map(Fraction, rep.box[j] if box is None else box[j])) for j in free)

    n = len(data.divisors)
    lct_hs = [divisor_halfspace(data, i) for i in range(n)] + orthant(r)
    klt_hs = [divisor_halfspace(data, i, a, strict=False) for i in range(n)] + orthant(r)
    lct_pts = _sliced_polygon(lct_hs, fixed, free, r)
    klt_pts = _sliced_polygon(klt_hs, fixed, free, r)

    names = [f"s{j + 1}" for j in free]
    left = _Frame(0, box2, [f"-{names[0]}", f"-{names[1]}"])
    right = _Frame(PANEL + 2 * MARGIN, box2, [f"l{free[0] + 1}", f"l{free[1] + 1}"])
    width = 2 * (PANEL + 2 * MARGIN)
    height = PANEL + 2 * MARGIN
    body = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" data-note="decimal coordinates are presentation only">'
    ]
    if fixed:
        desc = ", ".join(f"l{j + 1}={v}" for j, v in sorted(fixed.items()))
        body.append(f"<desc>slice {escape(desc)}</desc>")

    body += left.frame(f"{rep.locus}: lower (solid), upper (dashed)")
    lower_forms = {c.form for c in rep.lower}
    for group, cls, style in ((rep.upper, "upper", 'stroke="#bbb" stroke-dasharray="4 3"'), (rep.lower, "lower", 'stroke="#c00" stroke-width="2"')):
        for comp in group:
            if cls == "upper" and comp.form in lower_forms:
                continue
            f = comp.form
            if fixed:
                b = f.constant - sum(f.coeffs[j] * v for j, v in fixed.items())
            else:
                b = f.constant
            coeffs = tuple(f.coeffs[j] for j in free)
            if not any(coeffs):
                continue
            # s = -u: l.s + b = 0 becomes l.u = b
            ends = _clip_line(coeffs, b, box2)
            if ends:
                body.append(left.segment(ends[0], ends[1], cls, f'{style} data-form="{escape(f.render("s"))}"'))

    body += right.frame("jumping walls, KLT_a (light), LCT (dark)")
    if len(klt_pts) >= 3:
        body.append(right.polygon(klt_pts, "klt", "#dde8f7"))
    if len(lct_pts) >= 3:
        body.append(right.polygon(lct_pts, "lct", "#7f9cc6"))
    for p, q, f in jump_segments(data, elements, a, box2, fixed, free):
        body.append(right.segment(p, q, "jump", f'stroke="#000" stroke-width="1.5" data-form="{escape(str(f))}"'))
    body.append("</svg>")
    return "\n".join(body) + "\n"
