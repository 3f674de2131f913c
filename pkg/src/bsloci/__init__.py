"""Bounds for Bernstein-Sato zero loci from log resolution data."""
from importlib import resources

from .model import Divisor, ResolutionData, TestElement, load, validate
from .regions import klt_region, lct_polytope
from .walls import wall_complex
from .bounds import report


def data_path(name: str):
    """Path of a bundled dataset, e.g. ``data_path("cusp_line.json")``."""
    return resources.files(__package__).joinpath("data", name)


__all__ = [
    "Divisor",
    "ResolutionData",
    "TestElement",
    "load",
    "validate",
    "lct_polytope",
    "klt_region",
    "wall_complex",
    "report",
    "data_path",
]
