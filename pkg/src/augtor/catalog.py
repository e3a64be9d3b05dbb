"""A small built-in table of Alexander polynomials."""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import CatalogLookupError, DomainError
from .parsing import parse_poly
from .poly import LaurentPoly


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    delta: LaurentPoly
    kind: str  # knot, link or synthetic
    linking_number: int | None
    provenance: str


_KNOTS = [
    ("3_1", "t^2-t+1", "trefoil; Rolfsen table, equals Phi_6"),
    ("4_1", "t^2-3t+1", "figure-eight knot; Rolfsen table"),
    ("5_1", "t^4-t^3+t^2-t+1", "(2,5) torus knot; Rolfsen table, equals Phi_10"),
    ("5_2", "2t^2-3t+2", "three-twist knot; Rolfsen table"),
    ("6_1", "2t^2-5t+2", "stevedore knot; Rolfsen table"),
    ("6_2", "t^4-3t^3+3t^2-3t+1", "Rolfsen table"),
    ("6_3", "t^4-3t^3+5t^2-3t+1", "Rolfsen table"),
]

_CATALOG = {name: CatalogEntry(name, parse_poly(text), "knot", None, prov) for name, text, prov in _KNOTS}

_EX43 = re.compile(r"ex4\.3:m=(-?\d+)$")


def catalog_names() -> list:
    return list(_CATALOG) + ["ex4.3:m=<m>"]


def catalog_entries() -> list:
    return list(_CATALOG.values())


def catalog_lookup(name: str) -> CatalogEntry:
    """Entry by name; "ex4.3:m=<m>" builds the synthetic module R/(m(t - 1))."""
    if name in _CATALOG:
        return _CATALOG[name]
    m = _EX43.match(name)
    if m:
        value = int(m.group(1))
        if value == 0:
            raise DomainError("ex4.3 needs m != 0")
        delta = LaurentPoly((-value, value))
        return CatalogEntry(name, delta, "synthetic", None, f"synthetic cyclic module R/({value}(t-1))")
    raise CatalogLookupError(f"unknown catalog name {name!r}; available: {', '.join(catalog_names())}")
