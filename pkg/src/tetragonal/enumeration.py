"""Brute-force atlases of width-two interior polygons.

A width-two polygon sits, after a unimodular map, in the strip 0 <= Y <= 2
with rows ``[0, b0]``, ``[0, b1]``, ``[a2, b2]`` (translate the bottom row
to start at 0, then shear the middle row to start at 0).  Convexity of the
left and right chains forces ``a2 >= -1`` and ``b0 + b2 <= 2*b1 + 1``, so
``b2 <= 2*g_max`` and ``a2 <= b2``: every candidate lies in ``[-1, 2*g_max]``
and the default extent ``2*g_max + 4`` is never binding.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .classification import compare_BB1, koelman_type, make_family, matching_families, tags_for_genus
from .errors import NotInteriorPolygon, NotTwoDimensional
from .invariants import B_pair, gonality, is_tetragonal, scrollar_invariants, sigma_multiple
from .lattice import LatticePolygon, convex_hull, interior_hull, normal_form, relax


def strip_descriptors(g_max: int, x_extent: int | None = None) -> np.ndarray:
    """All ``(b0, b1, a2, b2)`` with at most ``g_max`` lattice points in the rows."""
    X = 2 * g_max + 4 if x_extent is None else x_extent
    budget = g_max - 3  # b0 + b1 + (b2 - a2) <= budget
    chunks = []
    for b0 in range(0, min(budget, X) + 1):
        for b1 in range(0, min(budget - b0, X) + 1):
            top = budget - b0 - b1
            a2 = np.arange(-1, X + 1, dtype=np.int64)
            length = np.arange(0, top + 1, dtype=np.int64)
            A, L = np.meshgrid(a2, length, indexing="ij")
            A = A.ravel()
            B = A + L.ravel()
            keep = (B <= X) & (b0 + B <= 2 * b1 + 1)
            A, B = A[keep], B[keep]
            if A.size:
                block = np.empty((A.size, 4), dtype=np.int64)
                block[:, 0] = b0
                block[:, 1] = b1
                block[:, 2] = A
                block[:, 3] = B
                chunks.append(block)
    if not chunks:
        return np.empty((0, 4), dtype=np.int64)
    return np.concatenate(chunks)


def descriptor_polygon(desc) -> LatticePolygon:
    b0, b1, a2, b2 = (int(v) for v in desc)
    return convex_hull([(0, 0), (b0, 0), (0, 1), (b1, 1), (a2, 2), (b2, 2)])


def is_interior_polygon(gamma: LatticePolygon) -> bool:
    if gamma.dimension < 2:
        return False
    rel = relax(gamma)
    return rel.is_lattice and interior_hull(rel.polygon) == gamma


def enumerate_width2_interior(g_max: int, x_extent: int | None = None, use_numba=None) -> list:
    """Every width-2 interior polygon with at most ``g_max`` lattice points, once
    per equivalence class, as normal-form polygons sorted by (points, normal form)."""
    if g_max < 4:
        raise ValueError("g_max must be at least 4")
    desc = strip_descriptors(g_max, x_extent)
    mask = _kernels.strip_candidate_mask(desc, use_numba=use_numba)
    seen = {}
    for row in desc[mask]:
        gamma = descriptor_polygon(row)
        nf = normal_form(gamma)
        if nf in seen:
            continue
        if is_interior_polygon(gamma):
            seen[nf] = LatticePolygon(nf)
    return sorted(seen.values(), key=lambda P: (len(P.points), normal_form(P)))


def enumerate_delta_with_interior(gamma: LatticePolygon) -> list:
    """All lattice polygons Delta with gamma <= Delta <= relax(gamma) and interior hull gamma."""
    if gamma.dimension < 2:
        raise NotTwoDimensional("interior polygons must be two-dimensional")
    rel = relax(gamma)
    if not rel.is_lattice:
        raise NotInteriorPolygon("the outward shift is not a lattice polygon")
    top = rel.polygon
    if interior_hull(top) != gamma:
        raise NotInteriorPolygon("the outward shift does not have this interior hull")
    found = {top}
    stack = [top]
    while stack:
        P = stack.pop()
        pts = set(P.points)
        for v in P.vertices:
            rest = pts - {v}
            Q = convex_hull(rest)
            if Q.dimension < 2 or Q in found:
                continue
            if interior_hull(Q) == gamma:
                found.add(Q)
                stack.append(Q)
    return sorted(found, key=lambda P: (-len(P.points), sorted(P.vertices)))


# ---------------------------------------------------------------- atlas / verifiers


@dataclass
class AtlasRow:
    polygon: LatticePolygon
    g: int
    B: int
    B1: int
    koelman: int
    families: list
    scrollar: tuple | None

    def to_json(self):
        return {
            "normal_form": [list(v) for v in self.polygon.vertices],
            "g": self.g,
            "B": self.B,
            "B1": self.B1,
            "koelman_type": self.koelman,
            "family": self.families[0].to_json() if self.families else None,
            "scrollar": list(self.scrollar) if self.scrollar else None,
        }


def atlas(g_max: int, use_numba=None) -> list:
    rows = []
    for gamma in enumerate_width2_interior(g_max, use_numba=use_numba):
        delta = relax(gamma).polygon
        B, B1 = B_pair(delta)
        scr = None
        if is_tetragonal(delta) and sigma_multiple(delta) != 5:
            scr = scrollar_invariants(delta)
        rows.append(
            AtlasRow(gamma, len(gamma.points), B, B1, koelman_type(gamma), matching_families(gamma, check=False), scr)
        )
    return rows


@dataclass
class VerificationReport:
    g_max: int
    checked: int = 0
    violations: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "g_max": self.g_max,
            "checked": self.checked,
            "violations": self.violations,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
        }


def _all_tags(g_max):
    out = []
    for g in range(4, g_max + 1):
        out.extend(tags_for_genus(g))
    return out


def verify_lemma4(g_max: int, builder=None, corpus=None) -> VerificationReport:
    """Check the B vs B1 trichotomy against the family table on the whole corpus.

    Also checks that every family polygon up to ``g_max`` appears in the corpus
    with its stated genus, B and B1.
    """
    corpus = enumerate_width2_interior(g_max) if corpus is None else corpus
    rep = VerificationReport(g_max)
    nfs = {normal_form(P) for P in corpus}
    rel_count = Counter()
    for gamma in corpus:
        rep.checked += 1
        cmp = compare_BB1(gamma, strict=False, builder=builder)
        rel_count[cmp.relation] += 1
        if not cmp.consistent:
            rep.violations.append({"normal_form": [list(v) for v in normal_form(gamma)], "B": cmp.B, "B1": cmp.B1})
    for tag in _all_tags(g_max):
        P = make_family(tag, builder)
        problems = []
        if len(P.points) != tag.genus:
            problems.append("genus")
        if P.dimension == 2 and normal_form(P) not in nfs:
            problems.append("not in corpus")
        if P.dimension == 2 and is_interior_polygon(P):
            if B_pair(relax(P).polygon) != tag.expected_B:
                problems.append("B pair")
        else:
            problems.append("not an interior polygon")
        if problems:
            rep.violations.append({"family": tag.label(), "problems": problems})
    rep.counts = dict(rel_count)
    return rep


def verify_b_sum(g_max: int, corpus=None) -> VerificationReport:
    """B + B1 = g - 5 and -1 <= min <= max <= g - 4 over the corpus; also the
    two gonality rules agree on every relax(gamma)."""
    corpus = enumerate_width2_interior(g_max) if corpus is None else corpus
    rep = VerificationReport(g_max)
    per_genus = Counter()
    for gamma in corpus:
        rep.checked += 1
        delta = relax(gamma).polygon
        g = len(gamma.points)
        per_genus[g] += 1
        B, B1 = B_pair(delta)
        lo, hi = min(B, B1), max(B, B1)
        if B + B1 != g - 5 or not (-1 <= lo <= hi <= g - 4):
            rep.violations.append({"normal_form": [list(v) for v in normal_form(gamma)], "B": B, "B1": B1, "g": g})
        try:
            gonality(delta, cross_check=True)
        except Exception as e:  # ConsistencyError
            rep.violations.append({"normal_form": [list(v) for v in normal_form(gamma)], "gonality": str(e)})
    rep.counts = dict(per_genus)
    return rep


def count_by_genus(corpus) -> dict:
    return dict(sorted(Counter(len(P.points) for P in corpus).items()))

