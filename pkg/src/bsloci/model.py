"""Numerical data of a log resolution and its JSON format.

The only mathematical input to the package is the order matrix
``N[E][j] = ord_E(f_j)``, the relative canonical coefficients ``k_E``, the
kind of each divisor and a finite set of test elements ``h`` given by their
divisorial orders ``ord_E(h)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

SCHEMA_VERSION = "bsloci-1"

STRICT = "strict-transform"
EXCEPTIONAL = "exceptional"
KINDS = (STRICT, EXCEPTIONAL)


class SchemaError(ValueError):
    """Malformed input document; ``locus`` names the offending field or line."""

    def __init__(self, message: str, locus: str = ""):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus


@dataclass(frozen=True)
class Divisor:
    name: str
    orders: tuple[int, ...]
    k: int
    kind: str = EXCEPTIONAL

    @property
    def is_strict_transform(self) -> bool:
        return self.kind == STRICT


@dataclass(frozen=True)
class TestElement:
    name: str
    orders: tuple[int, ...]

    __test__ = False  # not a pytest class


@dataclass(frozen=True)
class ResolutionData:
    r: int
    divisors: tuple[Divisor, ...]
    strata: tuple[tuple[int, ...], ...] | None = None
    real_mode: bool = False
    dim: int | None = None

    @property
    def names(self) -> list[str]:
        return [d.name for d in self.divisors]

    def index(self, name: str) -> int:
        return self.names.index(name)

    def restrict(self, stratum: Sequence[int]) -> ResolutionData:
        """Data seen at a point lying exactly on the divisors of ``stratum``."""
        return ResolutionData(self.r, tuple(self.divisors[i] for i in stratum), None, self.real_mode, self.dim)


WeightVector = tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.subject}: {self.message}"


def validate(
    data: ResolutionData,
    a: Sequence[int] | None = None,
    test_elements: Sequence[TestElement] = (),
    max_stratum_size: int | None = None,
) -> list[Violation]:
    """Every violated hypothesis on the data; empty when all hold."""
    out: list[Violation] = []
    if data.r < 1:
        out.append(Violation("r", "number of polynomials must be positive"))
    if not data.divisors:
        out.append(Violation("divisors", "at least one divisor required"))
    seen = set()
    for d in data.divisors:
        if d.name in seen:
            out.append(Violation(d.name, "duplicate divisor name"))
        seen.add(d.name)
        if len(d.orders) != data.r:
            out.append(Violation(d.name, f"orders has length {len(d.orders)}, expected r={data.r}"))
        if any(n < 0 for n in d.orders):
            out.append(Violation(d.name, "orders must be nonnegative"))
        if d.k < 0:
            out.append(Violation(d.name, "k must be nonnegative"))
        if sum(d.orders) <= 0:
            out.append(Violation(d.name, "divisor not in support of mu*f (all orders zero)"))
        if d.kind not in KINDS:
            out.append(Violation(d.name, f"unknown kind {d.kind!r}"))
        if d.kind == STRICT and d.k != 0:
            out.append(Violation(d.name, "strict transform must have k=0"))
    for j in range(data.r):
        if data.divisors and all(len(d.orders) == data.r and d.orders[j] == 0 for d in data.divisors):
            out.append(Violation(f"column {j + 1}", f"f{j + 1} vanishes on no divisor (is a unit)"))

    bound = max_stratum_size if max_stratum_size is not None else data.dim
    for s, stratum in enumerate(data.strata or ()):
        for i in stratum:
            if not 0 <= i < len(data.divisors):
                out.append(Violation(f"strata[{s}]", f"divisor index {i} out of range"))
        if len(set(stratum)) != len(stratum):
            out.append(Violation(f"strata[{s}]", "repeated divisor index"))
        if bound is not None and len(stratum) > bound:
            out.append(Violation(f"strata[{s}]", f"size {len(stratum)} exceeds dimension bound {bound}"))

    if a is not None:
        if len(a) != data.r:
            out.append(Violation("a", f"length {len(a)}, expected r={data.r}"))
        elif any(x < 0 for x in a):
            out.append(Violation("a", "entries must be nonnegative"))
        elif not any(
            sum(x * n for x, n in zip(a, d.orders)) > 0 for d in data.divisors if len(d.orders) == data.r
        ):
            out.append(Violation("a", "prod f_j^a_j is a unit: no divisor with sum a_j N_Ej > 0"))

    n = len(data.divisors)
    for h in test_elements:
        if len(h.orders) != n:
            out.append(Violation(h.name, f"orders has length {len(h.orders)}, expected {n} divisors"))
        if any(x < 0 for x in h.orders):
            out.append(Violation(h.name, "orders must be nonnegative"))
        if h.name == "1" and any(h.orders):
            out.append(Violation(h.name, "the unit element must have all-zero orders"))
    return out


# ---------------------------------------------------------------------------
# JSON


class Problem(NamedTuple):
    data: ResolutionData
    a: WeightVector
    test_elements: tuple[TestElement, ...]


def _reject_float(s: str):
    raise SchemaError(f"non-integer number {s} (floating point is not accepted)")


def _int(value, locus: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"expected an integer, got {value!r}", locus)
    return value


def _int_list(value, locus: str, length: int | None = None, owner: str = "") -> tuple[int, ...]:
    if not isinstance(value, list):
        raise SchemaError(f"expected a list, got {value!r}", locus)
    if length is not None and len(value) != length:
        who = f" of {owner}" if owner else ""
        raise SchemaError(f"orders{who} has length {len(value)}, expected {length}", locus)
    return tuple(_int(v, f"{locus}[{i}]") for i, v in enumerate(value))


def from_dict(doc: dict) -> Problem:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    version = doc.get("version")
    if version != SCHEMA_VERSION:
        raise SchemaError(f"schema version {version!r} not supported (expected {SCHEMA_VERSION!r})", "version")
    if "r" not in doc:
        raise SchemaError("missing field", "r")
    r = _int(doc["r"], "r")
    if r < 1:
        raise SchemaError("must be positive", "r")
    raw_divisors = doc.get("divisors")
    if not isinstance(raw_divisors, list) or not raw_divisors:
        raise SchemaError("at least one divisor required", "divisors")
    divisors = []
    for i, d in enumerate(raw_divisors):
        loc = f"divisors[{i}]"
        if not isinstance(d, dict):
            raise SchemaError("expected an object", loc)
        name = d.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError("missing name", f"{loc}.name")
        orders = _int_list(d.get("orders"), f"{loc}.orders", r, owner=f"divisor {name}")
        k = _int(d.get("k"), f"{loc}.k")
        kind = d.get("kind", EXCEPTIONAL)
        if kind not in KINDS:
            raise SchemaError(f"unknown kind {kind!r} for divisor {name}", f"{loc}.kind")
        divisors.append(Divisor(name, orders, k, kind))

    strata = None
    if doc.get("strata") is not None:
        if not isinstance(doc["strata"], list):
            raise SchemaError("expected a list", "strata")
        strata = tuple(_int_list(s, f"strata[{i}]") for i, s in enumerate(doc["strata"]))
    real_mode = doc.get("real_mode", False)
    if not isinstance(real_mode, bool):
        raise SchemaError("expected true/false", "real_mode")
    dim = doc.get("dim")
    if dim is not None:
        dim = _int(dim, "dim")

    if "a" not in doc:
        raise SchemaError("missing field", "a")
    a = _int_list(doc["a"], "a")
    if len(a) != r:
        raise SchemaError(f"length {len(a)}, expected r={r}", "a")

    elements = []
    for i, h in enumerate(doc.get("test_elements", [])):
        loc = f"test_elements[{i}]"
        if not isinstance(h, dict) or not isinstance(h.get("name"), str):
            raise SchemaError("expected an object with a name", loc)
        orders = _int_list(h.get("orders"), f"{loc}.orders", len(divisors), owner=f"test element {h['name']}")
        elements.append(TestElement(h["name"], orders))
    return Problem(ResolutionData(r, tuple(divisors), strata, real_mode, dim), a, tuple(elements))


def to_dict(data: ResolutionData, a: Sequence[int], test_elements: Sequence[TestElement] = ()) -> dict:
    doc = {
        "version": SCHEMA_VERSION,
        "r": data.r,
        "real_mode": data.real_mode,
        "divisors": [
            {"name": d.name, "orders": list(d.orders), "k": d.k, "kind": d.kind} for d in data.divisors
        ],
        "a": list(a),
        "test_elements": [{"name": h.name, "orders": list(h.orders)} for h in test_elements],
    }
    if data.strata is not None:
        doc["strata"] = [list(s) for s in data.strata]
    if data.dim is not None:
        doc["dim"] = data.dim
    return doc


def loads(text: str) -> Problem:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return from_dict(doc)


def load(source) -> Problem:
    """Load a problem from a path or from JSON text."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        return loads(Path(source).read_text())
    return loads(source)


def dumps(data: ResolutionData, a: Sequence[int], test_elements: Sequence[TestElement] = ()) -> str:
    return json.dumps(to_dict(data, a, test_elements), sort_keys=True, indent=2) + "\n"


def save(path, data: ResolutionData, a: Sequence[int], test_elements: Sequence[TestElement] = ()) -> None:
    Path(path).write_text(dumps(data, a, test_elements))
