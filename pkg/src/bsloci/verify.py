"""Brute-force oracles, kept independent of the engines they check.

The grid oracle uses integer arithmetic on numerators over a common
denominator; the vertex oracle solves linear systems with sympy.  Neither
touches :mod:`bsloci.polyhedra` arithmetic.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import sympy

from .model import Divisor, ResolutionData, TestElement, EXCEPTIONAL, STRICT


@dataclass
class OracleReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def grid_pattern_oracle(data: ResolutionData, elements, box, denominator: int, complex=None) -> OracleReport:
    """Compare cell patterns of a wall complex with direct evaluation on a grid.

    Every point ``i / denominator`` in the open box that lies on no candidate
    wall is located in the complex by its sign vector and its pattern is
    recomputed from the floor criterion.
    """
    if denominator < 2:
        raise ValueError("denominator must be at least 2")
    elements = list(elements)
    if not elements:
        return OracleReport()
    if complex is None:
        from .walls import wall_complex

        complex = wall_complex(data, elements, box)
    q = denominator
    box = [(Fraction(lo), Fraction(hi)) for lo, hi in box]
    ranges = [range(math.floor(lo * q) + 1, math.ceil(hi * q)) for lo, hi in box]
    arr = complex.arrangement
    cell_of = {c.signs: i for i, c in enumerate(arr.cells)}
    report = OracleReport()
    for nums in itertools.product(*ranges):
        # sum_j N_Ej * nums_j = q * (value of sum N lambda); floors in integers
        values = [sum(n * x for n, x in zip(d.orders, nums)) for d in data.divisors]
        on_wall = any(v % q == 0 and v // q >= d.k + 1 for v, d in zip(values, data.divisors))
        if on_wall:
            continue
        signs = []
        for f in arr.forms:
            v = sum(c * x for c, x in zip(f.coeffs, nums)) + f.constant * q
            signs.append(1 if v > 0 else -1)
        report.checked += 1
        expected = tuple(
            all(h.orders[i] + d.k >= v // q for i, (v, d) in enumerate(zip(values, data.divisors)))
            for h in elements
        )
        idx = cell_of.get(tuple(signs))
        got = None if idx is None else complex.patterns[idx]
        if got != expected:
            point = tuple(Fraction(x, q) for x in nums)
            report.mismatches.append((point, expected, got))
    return report


def vertex_oracle(halfspaces, max_halfspaces: int = 12, max_dim: int = 3) -> list[tuple[Fraction, ...]]:
    """Vertices of the closure by solving every square subsystem with sympy."""
    halfspaces = list(halfspaces)
    if len(halfspaces) > max_halfspaces:
        raise ValueError(f"{len(halfspaces)} half-spaces exceeds oracle budget {max_halfspaces}")
    if not halfspaces:
        return []
    r = halfspaces[0].form.dim
    if r > max_dim:
        raise ValueError(f"dimension {r} exceeds oracle budget {max_dim}")
    rows = [[sympy.Integer(c) for c in h.form.coeffs] for h in halfspaces]
    consts = [sympy.Integer(h.form.constant) for h in halfspaces]
    found = set()
    for subset in itertools.combinations(range(len(halfspaces)), r):
        A = sympy.Matrix([rows[i] for i in subset])
        if A.rank() < r:
            continue
        b = sympy.Matrix([-consts[i] for i in subset])
        x = A.LUsolve(b)
        ok = True
        for row, c, h in zip(rows, consts, halfspaces):
            v = sum(a * xi for a, xi in zip(row, x)) + c
            if v > 0 or (h.sense == "=" and v != 0):
                ok = False
                break
        if ok:
            found.add(tuple(Fraction(int(xi.p), int(xi.q)) for xi in x))
    return sorted(found)


def monomial_bfunction_roots(N: int) -> list[Fraction]:
    """Roots of the Bernstein-Sato polynomial of ``x^N``.

    Derivation: ``d^N/dx^N x^(N(s+1)) = prod_{i=0}^{N-1} (N s + N - i) x^(N s)``,
    so ``prod_{c=1}^N (s + c/N)`` is a b-function; it is minimal since its
    roots are the poles of the archimedean zeta function ``int |x|^(2Ns)``
    at ``s = -c/N``.  The coefficient is recomputed symbolically here.
    """
    x, s = sympy.symbols("x s", positive=True)
    expr = sympy.diff(x ** (N * (s + 1)), x, N) / x ** (N * s)
    poly = sympy.Poly(sympy.expand(sympy.simplify(expr)), s)
    roots = sympy.roots(poly)
    return sorted(Fraction(int(sympy.Rational(r).p), int(sympy.Rational(r).q)) for r in roots)


def monomial_bfunction_table(max_power: int = 3) -> dict[str, list[Fraction]]:
    """Zero sets ``{-c/N : 1 <= c <= N}`` of ``b_{x^N}`` for ``N <= max_power``."""
    return {("x" if n == 1 else f"x^{n}"): monomial_bfunction_roots(n) for n in range(1, max_power + 1)}


def monomial_data(N: int) -> ResolutionData:
    """``f = x^N`` on the line: one strict transform with order ``N``."""
    return ResolutionData(1, (Divisor("x=0", (N,), 0, STRICT),))


def random_instance(rng: random.Random, r: int = 2, max_divisors: int = 4, max_order: int = 2, max_k: int = 2):
    """Random valid resolution data with a test set of monomial-like elements."""
    while True:
        n = rng.randint(1, max_divisors)
        divisors = []
        for i in range(n):
            orders = tuple(rng.randint(0, max_order) for _ in range(r))
            if not any(orders):
                orders = tuple(1 if j == i % r else 0 for j in range(r))
            strict = rng.random() < 0.4
            k = 0 if strict else rng.randint(0, max_k)
            divisors.append(Divisor(f"E{i}", orders, k, STRICT if strict else EXCEPTIONAL))
        if all(any(d.orders[j] for d in divisors) for j in range(r)):
            break
    data = ResolutionData(r, tuple(divisors))
    elements = [TestElement("1", (0,) * n)]
    for t in range(rng.randint(3, 10)):
        elements.append(TestElement(f"h{t}", tuple(rng.randint(0, 4) for _ in range(n))))
    a = tuple(rng.randint(0, 2) for _ in range(r))
    if not any(sum(x * m for x, m in zip(a, d.orders)) > 0 for d in divisors):
        a = (1,) * r
    return data, a, elements
