"""Curve invariants read off the Newton polygon."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConsistencyError, FiveSigmaUnsupported, NoInteriorHull, NotTetragonal, NotTwoDimensional
from .lattice import (
    SIGMA,
    UPSILON,
    LatticePolygon,
    equivalent,
    interior_hull,
    lattice_width,
    normal_form,
    strip_map_for,
)

TWO_UPSILON = UPSILON.scale(2)


def _require_2d(delta):
    if delta.dimension < 2:
        raise NotTwoDimensional("curve invariants need a two-dimensional Newton polygon")


def genus(delta: LatticePolygon) -> int:
    _require_2d(delta)
    return len(delta.interior_points)


def is_two_upsilon(delta: LatticePolygon) -> bool:
    return len(delta.points) == len(TWO_UPSILON.points) and normal_form(delta) == normal_form(TWO_UPSILON)


def sigma_multiple(delta: LatticePolygon):
    """d >= 2 with delta equivalent to d*Sigma, or None."""
    if len(delta.vertices) != 3:
        return None
    d = lattice_width(delta)[0]
    if d < 2:
        return None
    return d if equivalent(delta, SIGMA.scale(d))[0] else None


def gonality(delta: LatticePolygon, cross_check: bool = True) -> int:
    _require_2d(delta)
    lw = lattice_width(delta)[0]
    value = lw - 1 if (is_two_upsilon(delta) or sigma_multiple(delta)) else lw
    if cross_check:
        inner = interior_hull(delta)
        if inner is not None:
            alt = 3 if is_two_upsilon(delta) else lattice_width(inner)[0] + 2
            if alt != value:
                raise ConsistencyError(f"gonality rules disagree: {value} vs {alt} for {delta}")
    return value


def is_hyperelliptic(delta: LatticePolygon) -> bool:
    _require_2d(delta)
    inner = interior_hull(delta)
    return inner is not None and len(inner.points) >= 2 and inner.dimension == 1


def is_tetragonal(delta: LatticePolygon) -> bool:
    _require_2d(delta)
    inner = interior_hull(delta)
    if inner is None:
        return False
    return lattice_width(inner)[0] == 2 and not is_two_upsilon(delta)


def B_pair(delta: LatticePolygon):
    """``(B, B1)``: boundary points of the interior hull minus 4, second interior hull count minus 1."""
    _require_2d(delta)
    inner = interior_hull(delta)
    if inner is None:
        raise NoInteriorHull("the polygon has no interior lattice points")
    if inner.dimension < 2:
        return len(inner.points) - 4, -1
    return len(inner.boundary_points) - 4, len(inner.interior_points) - 1


def schreyer_invariants(delta: LatticePolygon):
    if not is_tetragonal(delta):
        raise NotTetragonal("Schreyer invariants are defined for tetragonal polygons")
    B, B1 = B_pair(delta)
    b1, b2 = max(B, B1), min(B, B1)
    g = genus(delta)
    if b1 + b2 != g - 5 or not (-1 <= b2 <= b1 <= g - 4):
        raise ConsistencyError(f"Schreyer invariants {b1},{b2} violate the genus constraint for g={g}")
    return b1, b2


def strip_rows(gamma: LatticePolygon, direction) -> tuple:
    """Sorted row counts of ``gamma`` after mapping ``direction`` to the Y functional."""
    _, img = strip_map_for(gamma, direction)
    counts = img.row_counts()
    return tuple(sorted(counts.values()))


def scrollar_invariants(delta: LatticePolygon):
    """Row counts minus one of the strip-normalized interior hull, as a sorted triple.

    When the interior hull has several width-2 directions the smallest sorted
    triple is returned, which keeps the answer a unimodular invariant.
    """
    if not is_tetragonal(delta):
        raise NotTetragonal("scrollar invariants are defined for tetragonal polygons")
    if sigma_multiple(delta) == 5:
        raise FiveSigmaUnsupported("the row-count formula is not applied to the plane quintic polygon")
    inner = interior_hull(delta)
    width, dirs = lattice_width(inner)
    triples = []
    for w in dirs:
        rows = strip_rows(inner, w)
        triples.append(tuple(r - 1 for r in rows))
    best = min(triples)
    if sum(best) != genus(delta) - 3:  # pragma: no cover - guards the formula
        raise ConsistencyError(f"scrollar invariants {best} do not sum to g-3")
    return best


def canonical_basis(delta: LatticePolygon) -> list:
    _require_2d(delta)
    inner = delta.interior_points
    if not inner:
        raise NoInteriorHull("the polygon has no interior lattice points")
    return [tuple(p) for p in inner]


@dataclass
class InvariantReport:
    genus: int
    lattice_width: int
    gonality: int
    B: int | None
    B1: int | None
    schreyer: tuple | None
    scrollar: tuple | None
    flags: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "genus": self.genus,
            "lattice_width": self.lattice_width,
            "gonality": self.gonality,
            "B": self.B,
            "B1": self.B1,
            "schreyer": list(self.schreyer) if self.schreyer else None,
            "scrollar": list(self.scrollar) if self.scrollar else None,
            "flags": dict(self.flags),
        }


def invariant_report(delta: LatticePolygon) -> InvariantReport:
    _require_2d(delta)
    g = genus(delta)
    lw = lattice_width(delta)[0]
    gon = gonality(delta)
    B = B1 = None
    if g > 0:
        B, B1 = B_pair(delta)
    tet = is_tetragonal(delta)
    schreyer = schreyer_invariants(delta) if tet else None
    scrollar = None
    d = sigma_multiple(delta)
    if tet and d != 5:
        scrollar = scrollar_invariants(delta)
    flags = {
        "hyperelliptic": is_hyperelliptic(delta),
        "tetragonal": tet,
        "exceptional_2upsilon": is_two_upsilon(delta),
        "exceptional_dsigma": d,
    }
    return InvariantReport(g, lw, gon, B, B1, schreyer, scrollar, flags)
