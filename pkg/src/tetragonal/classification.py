"""The width-two interior polygons with B <= B1, Koelman types and the
intrinsicness verdicts built on them."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FamilyParameterError, TrichotomyViolation, NotInteriorPolygon, NotTetragonal, NotWidthTwo, NotWidthTwoInterior
from .invariants import B_pair, genus, is_tetragonal, scrollar_invariants, sigma_multiple
from .lattice import LatticePolygon, convex_hull, interior_hull, lattice_width, normal_form, relax, strip_normalize

KINDS = ("Gamma4k4", "Gamma4k5", "Gamma4k3", "Gamma4k1")


@dataclass(frozen=True)
class FamilyTag:
    kind: str
    k: int
    m: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise FamilyParameterError(f"unknown family {self.kind!r}")
        lo = {"Gamma4k4": 0, "Gamma4k5": 0, "Gamma4k3": 1, "Gamma4k1": 2}[self.kind]
        if self.k < lo:
            raise FamilyParameterError(f"{self.kind} needs k >= {lo}, got {self.k}")
        if self.kind == "Gamma4k5":
            if self.m is None or not 0 <= self.m <= self.k + 2:
                raise FamilyParameterError(f"Gamma4k5 needs 0 <= m <= k+2, got m={self.m}")
        elif self.m is not None:
            raise FamilyParameterError(f"{self.kind} takes no m parameter")

    @property
    def genus(self) -> int:
        return 4 * self.k + {"Gamma4k4": 4, "Gamma4k5": 5, "Gamma4k3": 3, "Gamma4k1": 1}[self.kind]

    @property
    def expected_B(self):
        """``(B, B1)`` as stated for the family."""
        k = self.k
        return {
            "Gamma4k4": (2 * k - 1, 2 * k),
            "Gamma4k5": (2 * k, 2 * k),
            "Gamma4k3": (2 * k - 1, 2 * k - 1),
            "Gamma4k1": (2 * k - 2, 2 * k - 2),
        }[self.kind]

    @property
    def params(self) -> dict:
        out = {"k": self.k}
        if self.m is not None:
            out["m"] = self.m
        return out

    def label(self) -> str:
        if self.kind == "Gamma4k5":
            return f"Gamma_{self.genus}^{self.m}"
        return f"Gamma_{self.genus}"

    def to_json(self):
        return {"tag": self.kind, "params": self.params, "label": self.label()}


def family_vertices(tag: FamilyTag):
    k, m = tag.k, tag.m
    if tag.kind == "Gamma4k4":
        return [(0, 0), (k, 0), (2 * k + 2, 1), (k + 1, 2), (1, 2)]
    if tag.kind == "Gamma4k5":
        return [(0, 0), (k, 0), (2 * k + 2, 1), (k + m, 2), (m, 2), (0, 1)]
    if tag.kind == "Gamma4k3":
        return [(0, 0), (k, 0), (2 * k + 1, 1), (k + 1, 2), (1, 2)]
    return [(0, 0), (k, 0), (2 * k, 1), (k, 2), (1, 2)]


def make_family(tag: FamilyTag, builder=None) -> LatticePolygon:
    """The literal family polygon; ``builder`` swaps the vertex formula (verifier self-tests)."""
    return convex_hull((builder or family_vertices)(tag))


def tags_for_genus(g: int) -> list:
    out = []
    r, k = g % 4, (g - g % 4) // 4
    if r == 0 and g >= 4:
        out.append(FamilyTag("Gamma4k4", k - 1))
    elif r == 1:
        if g >= 5:
            out.extend(FamilyTag("Gamma4k5", k - 1, m) for m in range(k + 2))
        if k >= 2:
            out.append(FamilyTag("Gamma4k1", k))
    elif r == 3 and k >= 1:
        out.append(FamilyTag("Gamma4k3", k))
    return out


def _check_interior_width2(gamma: LatticePolygon):
    if gamma.dimension < 2 or lattice_width(gamma)[0] != 2:
        raise NotWidthTwoInterior("expected a polygon of lattice width 2")
    rel = relax(gamma)
    if not rel.is_lattice or interior_hull(rel.polygon) != gamma:
        raise NotWidthTwoInterior("expected an interior polygon (its outward shift must be a lattice polygon)")


def matching_families(gamma: LatticePolygon, builder=None, check=True) -> list:
    """All family tags whose polygon is equivalent to ``gamma``."""
    if check:
        _check_interior_width2(gamma)
    nf = normal_form(gamma)
    g = len(gamma.points)
    return [t for t in tags_for_genus(g) if normal_form(make_family(t, builder)) == nf]


def recognize_family(gamma: LatticePolygon, builder=None):
    """The first matching family tag (families listed by kind, then m), or None."""
    tags = matching_families(gamma, builder)
    return tags[0] if tags else None


def koelman_type(gamma: LatticePolygon) -> int:
    """Number of boundary lattice points on the middle row after strip normalization."""
    if gamma.dimension < 2 or lattice_width(gamma)[0] != 2:
        raise NotWidthTwo("Koelman types are defined for lattice width 2")
    _, img = strip_normalize(gamma)
    return sum(1 for p in img.boundary_points if p.y == 1)


@dataclass
class Comparison:
    relation: str  # "less" | "equal" | "greater"
    B: int
    B1: int
    family: FamilyTag | None
    consistent: bool

    def to_json(self):
        return {
            "relation": self.relation,
            "B": self.B,
            "B1": self.B1,
            "family": self.family.to_json() if self.family else None,
            "consistent": self.consistent,
        }


def compare_BB1(gamma: LatticePolygon, strict: bool = True, builder=None) -> Comparison:
    """B vs B1 for Delta = relax(gamma), checked against the family table."""
    _check_interior_width2(gamma)
    B, B1 = B_pair(relax(gamma).polygon)
    rel = "less" if B < B1 else ("equal" if B == B1 else "greater")
    tags = matching_families(gamma, builder, check=False)
    fam = tags[0] if tags else None
    if rel == "less":
        ok = any(t.kind == "Gamma4k4" for t in tags)
    elif rel == "equal":
        ok = any(t.kind != "Gamma4k4" for t in tags)
    else:
        ok = not tags
    ok = ok and all(t.expected_B == (B, B1) for t in tags)
    if strict and not ok:
        raise TrichotomyViolation(f"B={B}, B1={B1} but families {tags} for {normal_form(gamma)}")
    return Comparison(rel, B, B1, fam, ok)


def unique_delta(gamma: LatticePolygon) -> LatticePolygon:
    """relax(gamma) for a family polygon: the largest Delta with that interior hull.

    Smaller ones can exist (see enumerate_delta_with_interior); this returns
    the outward shift, which is the polygon the family table refers to.
    """
    _check_interior_width2(gamma)
    if not matching_families(gamma, check=False):
        raise NotInteriorPolygon("unique_delta applies to the B <= B1 family polygons only")
    return relax(gamma).polygon


# ---------------------------------------------------------------- intrinsicness


@dataclass
class IntrinsicnessVerdict:
    status: str  # "guaranteed" | "conditional_on_family" | "not_guaranteed"
    g: int
    family: FamilyTag | None = None
    scrollar_expected: dict | None = None
    sufficient_condition_met: bool = False

    @property
    def g_mod_4(self):
        return self.g % 4

    def to_json(self):
        return {
            "status": self.status,
            "g": self.g,
            "g_mod_4": self.g_mod_4,
            "family": self.family.to_json() if self.family else None,
            "scrollar_expected": self.scrollar_expected,
            "sufficient_condition_met": self.sufficient_condition_met,
        }


def scrollar_disambiguation(g: int) -> dict:
    return {
        "Gamma_g": [(g - 5) // 4, (g - 1) // 4, (g - 3) // 2],
        "Gamma_g^0": [(g - 5) // 4, (g - 5) // 4, (g - 1) // 2],
    }


def intrinsicness_verdict(delta: LatticePolygon) -> IntrinsicnessVerdict:
    """Whether every non-degenerate model of the curve shares this interior hull."""
    if not is_tetragonal(delta):
        raise NotTetragonal("intrinsicness verdicts are stated for tetragonal polygons")
    g = genus(delta)
    gamma = interior_hull(delta)
    boundary = len(gamma.boundary_points)
    second = len(gamma.interior_points)
    r = g % 4
    tags = matching_families(gamma, check=False)
    if r in (2, 3):
        return IntrinsicnessVerdict("guaranteed", g, tags[0] if tags else None, None, True)
    if r == 0:
        hit = next((t for t in tags if t.kind == "Gamma4k4"), None)
        status = "not_guaranteed" if hit else "guaranteed"
        fam = hit or (tags[0] if tags else None)
        return IntrinsicnessVerdict(status, g, fam, None, boundary >= second + 5)
    hit = next((t for t in tags if t.kind == "Gamma4k5" and t.m >= 1), None)
    status = "conditional_on_family" if hit else "guaranteed"
    expected = scrollar_disambiguation(g)
    observed = None
    if sigma_multiple(delta) != 5:
        observed = list(scrollar_invariants(delta))
    expected["observed"] = observed
    expected["matches"] = [name for name in ("Gamma_g", "Gamma_g^0") if expected[name] == observed]
    fam = hit or (tags[0] if tags else None)
    return IntrinsicnessVerdict(status, g, fam, expected, boundary >= second + 4)
