"""Exact and certified computations of asymptotic distance bounds for
self-dual codes, modular lattices, Z4 codes and quantum codes."""

from .families import FamilyError, FamilyId, FamilyInstance, get_family, parse_family
from .quadratic import DomainError, Quad
from .series import OrderError, TruncatedSeries, poly, series

__all__ = [
    "DomainError", "FamilyError", "FamilyId", "FamilyInstance", "OrderError", "Quad",
    "TruncatedSeries", "get_family", "parse_family", "poly", "series",
]
__version__ = "0.1.0"
