"""Command line interface: ``bsloci <command> INPUT [options]``.

Every command prints one JSON document with sorted keys; rationals are
rendered as ``"p/q"`` strings.  Exit codes: 1 invalid input, 2 arrangement
budget exhausted, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from . import bounds as B
from .model import SchemaError, load, validate
from .polyhedra import DEFAULT_CELL_BUDGET, ArrangementTooLarge, LT
from .regions import klt_region, lct, lct_polytope
from .verify import grid_pattern_oracle, random_instance, vertex_oracle
from .walls import candidate_forms, default_box, wall_complex

OUTPUT_VERSION = "bsloci-out-1"

TRACE_NOTE = (
    "multiplier ideals are represented by their trace on the supplied test elements; "
    "jumps invisible to the test set are not detected"
)
C_BOUND_NOTE = "no universal bound on c is known for r > 1; the upper family is truncated at c_max"


class UsageError(ValueError):
    pass


def rat(x) -> str:
    return str(Fraction(x))


def point_json(p):
    return [rat(x) for x in p]


def equation(form, var="l") -> str:
    """``sum coeffs * var = rhs`` for a hyperplane given as ``coeffs . x + constant``."""
    lhs = type(form)(form.coeffs, 0).render(var)
    return f"{lhs} = {rat(-form.constant)}"


def component_json(c: B.Component, provenance=None) -> dict:
    out = {
        "coeffs": [rat(x) for x in c.form.coeffs],
        "b": rat(c.form.constant),
        "text": c.form.render("s"),
        "sources": [[name, n] for name, n in c.sources],
    }
    if provenance is not None:
        out["provenance"] = provenance
    return out


def parse_box(text: str | None, r: int):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != r:
        raise UsageError(f"--box: expected {r} intervals lo:hi, got {len(parts)}")
    box = []
    for part in parts:
        lo, sep, hi = part.partition(":")
        try:
            lo, hi = Fraction(lo), Fraction(hi)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--box: cannot parse interval {part!r}")
        if not sep or lo < 0 or lo >= hi:
            raise UsageError(f"--box: interval {part!r} must satisfy 0 <= lo < hi")
        box.append((lo, hi))
    return tuple(box)


def budget() -> int:
    value = os.environ.get("BSLOCI_CELL_BUDGET")
    return int(value) if value else DEFAULT_CELL_BUDGET


def document(command: str, body: dict) -> dict:
    return {"version": OUTPUT_VERSION, "command": command, **body}


# ---------------------------------------------------------------------------
# commands


def cmd_lct(problem, args) -> dict:
    data = problem.data
    poly = lct_polytope(data)
    body = {
        "facets": [
            {
                "equation": equation(f.form),
                "divisors": [data.divisors[i].name for i in f.divisors],
                "codimension_one": f.full,
                "positive_witness": None if f.witness is None else point_json(f.witness),
            }
            for f in poly.facets
        ],
        "coordinate_facets": [f"l{j + 1} = 0" for j in poly.coordinate_facets],
        "vertices": [point_json(p) for p in poly.vertices],
    }
    if data.r == 1:
        body["interval"] = ["0", rat(lct(data))]
    return document("lct", body)


def cmd_klt(problem, args) -> dict:
    data, a = problem.data, problem.a
    klt = klt_region(data, a)
    return document(
        "klt",
        {
            "a": list(a),
            "halfspaces": [
                {"inequality": equation(h.form).replace(" = ", " < "), "divisors": sorted(h.tags)}
                for h in klt.halfspaces
            ],
            "closure_vertices": [point_json(p) for p in klt.closure.vertices],
            "bounding_box": [[rat(lo), rat(hi)] for lo, hi in klt.box],
        },
    )


def _box(problem, args):
    return parse_box(args.box, problem.data.r) or default_box(problem.data, problem.a)


def cmd_walls(problem, args) -> dict:
    data, a = problem.data, problem.a
    box = _box(problem, args)
    wc = wall_complex(data, problem.test_elements, box, budget())
    klt = klt_region(data, a)
    return document(
        "walls",
        {
            "note": TRACE_NOTE,
            "box": [[rat(lo), rat(hi)] for lo, hi in box],
            "candidates": [equation(f) for f in candidate_forms(data, box)],
            "cells": len(wc.arrangement.cells),
            "facets": len(wc.arrangement.facets),
            "jumps": [
                {
                    "equation": equation(j.form),
                    "sources": [[n, c] for n, c in j.sources],
                    "point": point_json(j.point),
                    "meets_klt": B.jump_meets_klt(wc, j, klt),
                }
                for j in wc.jumps
            ],
        },
    )


def _reference(args):
    return None if args.reference is None else B.parse_reference(args.reference)


def cmd_bounds(problem, args) -> dict:
    data, a = problem.data, problem.a
    box = _box(problem, args)
    c_max = args.c_max or B.default_c_max(data, a)
    body = {
        "note": C_BOUND_NOTE,
        "c_max": c_max,
        "upper": [component_json(c) for c in B.upper_family(data, c_max)],
        "prop13": [
            dict(component_json(c), generator=[w.render("s") for w in c.witness])
            for c in B.prop13_components(data, a)
        ],
        "lct_facet": [component_json(c) for c in B.lct_facet_components(data, a)],
        "jumping_wall": [
            component_json(c) for c in B.jumping_wall_components(data, a, problem.test_elements, box, budget())
        ],
        "upstairs_b": {
            "all": [[f.render("s"), m] for f, m in B.upstairs_b(data, a)],
        },
    }
    for s in data.strata or ():
        key = "+".join(data.divisors[i].name for i in s)
        body["upstairs_b"][key] = [[f.render("s"), m] for f, m in B.upstairs_b(data, a, s)]
    return document("bounds", body)


def report_json(rep: B.BoundsReport) -> dict:
    body = {
        "note": TRACE_NOTE,
        "c_bound_note": C_BOUND_NOTE,
        "locus": rep.locus,
        "real_mode": rep.real_mode,
        "c_max": rep.c_max,
        "box": [[rat(lo), rat(hi)] for lo, hi in rep.box],
        "lower": [component_json(c, B.provenance_of(rep, c.form)) for c in rep.lower],
        "upper": [component_json(c) for c in rep.upper],
        "reference": None if rep.reference is None else [component_json(c) for c in rep.reference],
        "flags": {
            "lower_in_upper": rep.lower_in_upper,
            "lower_in_reference": rep.lower_in_reference,
            "reference_in_upper": rep.reference_in_upper,
            "lower_equals_reference": None
            if rep.reference is None
            else B.forms(rep.lower) == B.forms(rep.reference),
        },
    }
    return document("report", body)


def cmd_report(problem, args) -> dict:
    rep = B.report(
        problem.data,
        problem.a,
        problem.test_elements,
        _box(problem, args),
        args.c_max,
        _reference(args),
        budget(),
    )
    return report_json(rep)


def cmd_verify(problem, args) -> dict:
    data, a = problem.data, problem.a
    box = _box(problem, args)
    q = args.denominator
    grid = grid_pattern_oracle(data, problem.test_elements, box, q)
    checks = {
        "grid_pattern": {"checked": grid.checked, "mismatches": len(grid.mismatches)},
    }
    lct_poly = lct_polytope(data).polyhedron
    klt = klt_region(data, a)
    for name, poly in (("lct_vertices", lct_poly), ("klt_vertices", klt.closure)):
        hs = [h.closure() for h in poly.hrep]
        if len(hs) <= 12 and data.r <= 3:
            expected = vertex_oracle(hs)
            checks[name] = {"checked": len(expected), "mismatches": int(list(poly.vertices) != expected)}
    if args.random:
        rng = random.Random(args.seed)
        bad = 0
        for _ in range(args.random):
            d, _a, H = random_instance(rng)
            side = rng.randint(2, 4)
            bad += len(grid_pattern_oracle(d, H, [(0, side)] * d.r, q).mismatches)
        checks["random_grid_pattern"] = {"checked": args.random, "seed": args.seed, "mismatches": bad}
    ok = all(c["mismatches"] == 0 for c in checks.values())
    return document("verify", {"denominator": q, "checks": checks, "ok": ok})


def cmd_plot(problem, args) -> str:
    from .plot import render_svg

    rep = B.report(problem.data, problem.a, problem.test_elements, _box(problem, args), args.c_max, None, budget())
    return render_svg(problem.data, problem.a, problem.test_elements, rep, slice_spec=args.slice)


COMMANDS = {
    "lct": cmd_lct,
    "klt": cmd_klt,
    "walls": cmd_walls,
    "bounds": cmd_bounds,
    "report": cmd_report,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsloci", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("input", help="resolution data in the bsloci-1 JSON format")
    parser.add_argument("--box", help="lo:hi per coordinate, comma separated, e.g. 0:3,0:7/2")
    parser.add_argument("--c-max", type=int, help="truncation of the upper family")
    parser.add_argument("--denominator", type=int, default=7, help="grid denominator for verify")
    parser.add_argument("--reference", help="reference zero locus (list of linear factors)")
    parser.add_argument("--slice", help="fix coordinates for plotting, e.g. 3=1/2 (r > 2)")
    parser.add_argument("-o", "--output", help="write to this file instead of stdout")
    parser.add_argument("--seed", type=int, default=0, help="seed for random oracle runs")
    parser.add_argument("--random", type=int, default=0, help="number of random instances for verify")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        problem = load(args.input)
        violations = validate(problem.data, problem.a, problem.test_elements)
        if violations:
            for v in violations:
                print(f"invalid input: {v}", file=sys.stderr)
            return 1
        if args.c_max is not None and args.c_max < 1:
            raise UsageError("--c-max must be at least 1")
        if args.command == "verify" and args.denominator < 2:
            raise UsageError("--denominator must be at least 2")
        result = COMMANDS[args.command](problem, args)
    except ArrangementTooLarge as exc:
        print(f"error: {exc} (raise BSLOCI_CELL_BUDGET or shrink --box)", file=sys.stderr)
        return 2
    except (SchemaError, UsageError, ValueError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3

    text = result if isinstance(result, str) else json.dumps(result, sort_keys=True, indent=2) + "\n"
    try:
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
