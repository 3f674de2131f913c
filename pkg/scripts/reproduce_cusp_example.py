#!/usr/bin/env python3
"""Print the cusp-line bounds, LCT and KLT, and compare with the bundled reference."""
import sys

from bsloci import bounds as B
from bsloci import data_path
from bsloci.model import load
from bsloci.regions import klt_region, lct_polytope


def main() -> int:
    data, a, elements = load(data_path("cusp_line.json"))
    reference = B.parse_reference(data_path("cusp_line_bs.json"))
    rep = B.report(data, a, elements, reference=reference)

    print("LCT facets:")
    for rec in lct_polytope(data).facets:
        print("  ", rec.halfspace.form.render("l"), "<= 0")
    print("KLT_a half-spaces:")
    for h in klt_region(data, a).halfspaces:
        print("  ", h.form.render("l"), "< 0")
    print(f"lower bound for {rep.locus}:")
    for c in rep.lower:
        print(f"   {c.form.render('s'):<18} {', '.join(B.provenance_of(rep, c.form))}")
    same = B.forms(rep.lower) == B.forms(reference)
    print("matches reference:", same)
    print("lower in upper (c_max=%d):" % rep.c_max, rep.lower_in_upper)
    return 0 if same and rep.lower_in_upper else 1


if __name__ == "__main__":
    sys.exit(main())
