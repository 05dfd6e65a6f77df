"""Exact lattice-polygon geometry.

Polygons are immutable vertex cycles (counterclockwise, no redundant
vertices).  Every quantity here is an integer or a ``Fraction``; the int64
kernels in :mod:`tetragonal._kernels` are only fed range-checked inputs.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import EmptyPointSet, NotAColumnVector, NotTwoDimensional


class LatticePoint(NamedTuple):
    x: int
    y: int


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull_vertices(points):
    """Counterclockwise hull vertices of arbitrary exact points (ints or Fractions).

    Collinear non-vertex points are dropped.  Degenerate inputs give one
    point or the two segment endpoints.
    """
    pts = sorted(set((p[0], p[1]) for p in points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) == 2 and hull[0] == hull[1]:
        return hull[:1]
    return hull


@dataclass(frozen=True)
class HalfPlane:
    """``a*X + b*Y <= c`` with ``gcd(a, b) == 1``."""

    a: int
    b: int
    c: int

    def value(self, p) -> int:
        return self.a * p[0] + self.b * p[1]

    def contains(self, p) -> bool:
        return self.value(p) <= self.c

    def shifted(self, k: int = 1) -> "HalfPlane":
        return HalfPlane(self.a, self.b, self.c + k)


class LatticePolygon:
    """Convex lattice polygon given by its counterclockwise vertex cycle."""

    __slots__ = ("vertices", "__dict__")

    def __init__(self, vertices: Sequence[Sequence[int]]):
        verts = [LatticePoint(int(v[0]), int(v[1])) for v in vertices]
        if not verts:
            raise EmptyPointSet("a polygon needs at least one vertex")
        canon = hull_vertices(verts)
        if len(canon) != len(verts) or set(canon) != set(verts):
            raise ValueError(f"vertices {verts} are not a strictly convex cycle")
        if len(verts) >= 3:
            # keep the caller's starting vertex but enforce counterclockwise order
            area2 = sum(
                verts[i].x * verts[(i + 1) % len(verts)].y
                - verts[(i + 1) % len(verts)].x * verts[i].y
                for i in range(len(verts))
            )
            if area2 < 0:
                verts = [verts[0]] + verts[:0:-1]
            for i in range(len(verts)):
                if _cross(verts[i - 1], verts[i], verts[(i + 1) % len(verts)]) <= 0:
                    raise ValueError(f"vertices {verts} are not a strictly convex cycle")
        else:
            verts = [LatticePoint(*p) for p in canon]
        self.vertices = tuple(verts)

    # -- basic protocol
    def __repr__(self):
        inner = ", ".join(f"({v.x},{v.y})" for v in self.vertices)
        return f"LatticePolygon([{inner}])"

    def __eq__(self, other):
        if not isinstance(other, LatticePolygon):
            return NotImplemented
        return frozenset(self.vertices) == frozenset(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __iter__(self):
        return iter(self.vertices)

    def __len__(self):
        return len(self.vertices)

    @property
    def dimension(self) -> int:
        return min(len(self.vertices) - 1, 2)

    def translate(self, dx: int, dy: int) -> "LatticePolygon":
        return LatticePolygon([(v.x + dx, v.y + dy) for v in self.vertices])

    def scale(self, d: int) -> "LatticePolygon":
        if d <= 0:
            raise ValueError("dilation factor must be positive")
        return LatticePolygon([(d * v.x, d * v.y) for v in self.vertices])

    def edges(self):
        """Consecutive vertex pairs (counterclockwise); empty below dimension 2."""
        if self.dimension < 2:
            return []
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    @cached_property
    def halfplanes(self) -> tuple:
        out = []
        for p, q in self.edges():
            dx, dy = q.x - p.x, q.y - p.y
            g = math.gcd(dx, dy)
            a, b = dy // g, -dx // g
            out.append(HalfPlane(a, b, a * p.x + b * p.y))
        return tuple(out)

    def contains(self, p) -> bool:
        if self.dimension == 2:
            return all(h.contains(p) for h in self.halfplanes)
        if self.dimension == 0:
            return (p[0], p[1]) == tuple(self.vertices[0])
        u, v = self.vertices
        if _cross(u, v, p) != 0:
            return False
        return min(u.x, v.x) <= p[0] <= max(u.x, v.x) and min(u.y, v.y) <= p[1] <= max(u.y, v.y)

    def on_boundary(self, p) -> bool:
        if self.dimension < 2:
            return self.contains(p)
        return self.contains(p) and any(h.value(p) == h.c for h in self.halfplanes)

    # -- cached lattice-point data
    @cached_property
    def _rows(self):
        return _scan_rows(self, strict=False)

    @cached_property
    def _interior_rows(self):
        if self.dimension < 2:
            return {}
        return _scan_rows(self, strict=True)

    @cached_property
    def points(self) -> tuple:
        return tuple(
            LatticePoint(x, y) for y, (lo, hi) in sorted(self._rows.items()) for x in range(lo, hi + 1)
        )

    @cached_property
    def interior_points(self) -> tuple:
        return tuple(
            LatticePoint(x, y)
            for y, (lo, hi) in sorted(self._interior_rows.items())
            for x in range(lo, hi + 1)
        )

    @cached_property
    def boundary_points(self) -> tuple:
        inner = set(self.interior_points)
        return tuple(p for p in self.points if p not in inner)

    def row_counts(self) -> dict:
        return {y: hi - lo + 1 for y, (lo, hi) in self._rows.items()}


def _scan_rows(P: LatticePolygon, strict: bool) -> dict:
    """Map row y -> (lo, hi) of lattice points, skipping empty rows."""
    verts = P.vertices
    if P.dimension == 0:
        v = verts[0]
        return {v.y: (v.x, v.x)}
    if P.dimension == 1:
        u, v = verts
        g = math.gcd(v.x - u.x, v.y - u.y)
        sx, sy = (v.x - u.x) // g, (v.y - u.y) // g
        rows = {}
        for t in range(g + 1):
            x, y = u.x + t * sx, u.y + t * sy
            lo, hi = rows.get(y, (x, x))
            rows[y] = (min(lo, x), max(hi, x))
        return rows
    hp = P.halfplanes
    _kernels.check_range([c for v in verts for c in v])
    a = np.array([h.a for h in hp], dtype=np.int64)
    b = np.array([h.b for h in hp], dtype=np.int64)
    c = np.array([h.c - (1 if strict else 0) for h in hp], dtype=np.int64)
    ymin = min(v.y for v in verts)
    ymax = max(v.y for v in verts)
    lo, hi = _kernels.row_ranges(a, b, c, ymin, ymax)
    return {ymin + k: (int(lo[k]), int(hi[k])) for k in range(len(lo)) if hi[k] >= lo[k]}


# ---------------------------------------------------------------- constructors


def convex_hull(points) -> LatticePolygon:
    pts = [(int(p[0]), int(p[1])) for p in points]
    if not pts:
        raise EmptyPointSet("convex hull of an empty point set")
    return LatticePolygon(hull_vertices(pts))


_PAREN_PAIR = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


def parse_polygon(text: str) -> LatticePolygon:
    """Parse ``"x1,y1; x2,y2; ..."``, ``"(x1,y1),(x2,y2)"`` or a JSON array of pairs; returns the hull."""
    text = text.strip()
    if text.startswith("["):
        pairs = json.loads(text)
    elif text.startswith("("):
        pairs = [(int(a), int(b)) for a, b in _PAREN_PAIR.findall(text)]
        if _PAREN_PAIR.sub("", text).strip(" ,"):
            raise ValueError(f"cannot read vertex list {text!r}")
    else:
        pairs = []
        for chunk in text.split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            parts = [s.strip() for s in chunk.split(",")]
            if len(parts) != 2:
                raise ValueError(f"cannot read vertex {chunk!r}")
            pairs.append((int(parts[0]), int(parts[1])))
    return convex_hull(pairs)


def format_polygon(P: LatticePolygon) -> str:
    return "; ".join(f"{v.x},{v.y}" for v in P.vertices)


SIGMA = LatticePolygon([(0, 0), (1, 0), (0, 1)])
UPSILON = LatticePolygon([(-1, -1), (1, 0), (0, 1)])


def lattice_points(P: LatticePolygon, flagged: bool = False):
    """All lattice points sorted by (y, x); with ``flagged`` each is paired with
    a boolean telling whether it lies on the boundary."""
    if not flagged:
        return list(P.points)
    inner = set(P.interior_points)
    return [(p, p not in inner) for p in P.points]


def interior_hull(P: LatticePolygon):
    """Convex hull of the interior lattice points, or ``None`` when there are none."""
    if P.dimension < 2:
        raise NotTwoDimensional("interior hull needs a two-dimensional polygon")
    pts = P.interior_points
    if not pts:
        return None
    return convex_hull(pts)


def double_area(P: LatticePolygon) -> int:
    v = P.vertices
    if len(v) < 3:
        return 0
    return sum(v[i].x * v[(i + 1) % len(v)].y - v[(i + 1) % len(v)].x * v[i].y for i in range(len(v)))


def boundary_count(P: LatticePolygon) -> int:
    if P.dimension < 2:
        return len(P.points)
    return sum(math.gcd(q.x - p.x, q.y - p.y) for p, q in P.edges())


def pick_check(P: LatticePolygon) -> bool:
    if P.dimension < 2:
        raise NotTwoDimensional("Pick's identity needs a two-dimensional polygon")
    return double_area(P) == 2 * len(P.interior_points) + len(P.boundary_points) - 2


# ---------------------------------------------------------------- relax


class Relaxation(NamedTuple):
    vertices: tuple
    is_lattice: bool

    @property
    def polygon(self) -> LatticePolygon:
        if not self.is_lattice:
            raise ValueError("outward shift has non-integral vertices")
        return LatticePolygon([(int(x), int(y)) for x, y in self.vertices])


def relax(G: LatticePolygon) -> Relaxation:
    """Intersection of the half-planes obtained by pushing every edge out by one."""
    if G.dimension < 2:
        raise NotTwoDimensional("outward shift needs a two-dimensional polygon")
    shifted = [h.shifted() for h in G.halfplanes]
    cands = []
    for i in range(len(shifted)):
        for j in range(i + 1, len(shifted)):
            h1, h2 = shifted[i], shifted[j]
            det = h1.a * h2.b - h2.a * h1.b
            if det == 0:
                continue
            x = Fraction(h1.c * h2.b - h2.c * h1.b, det)
            y = Fraction(h1.a * h2.c - h2.a * h1.c, det)
            if all(h.a * x + h.b * y <= h.c for h in shifted):
                cands.append((x, y))
    verts = hull_vertices(cands)
    is_lattice = all(x.denominator == 1 and y.denominator == 1 for x, y in verts)
    return Relaxation(tuple(verts), is_lattice)


# ---------------------------------------------------------------- unimodular maps


@dataclass(frozen=True)
class UnimodularMap:
    """``p -> A p + t`` with integer ``A`` of determinant +-1."""

    a11: int
    a12: int
    a21: int
    a22: int
    tx: int = 0
    ty: int = 0

    def __post_init__(self):
        if self.det not in (1, -1):
            raise ValueError(f"linear part has determinant {self.det}, not +-1")

    @property
    def det(self) -> int:
        return self.a11 * self.a22 - self.a12 * self.a21

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def translation(cls, tx, ty):
        return cls(1, 0, 0, 1, tx, ty)

    def apply(self, p) -> LatticePoint:
        return LatticePoint(
            self.a11 * p[0] + self.a12 * p[1] + self.tx, self.a21 * p[0] + self.a22 * p[1] + self.ty
        )

    def apply_linear(self, v):
        return (self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1])

    def apply_polygon(self, P: LatticePolygon) -> LatticePolygon:
        return convex_hull([self.apply(v) for v in P.vertices])

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self o other`` (apply ``other`` first)."""
        return UnimodularMap(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
            self.a11 * other.tx + self.a12 * other.ty + self.tx,
            self.a21 * other.tx + self.a22 * other.ty + self.ty,
        )

    def inverse(self) -> "UnimodularMap":
        d = self.det
        b11, b12, b21, b22 = self.a22 * d, -self.a12 * d, -self.a21 * d, self.a11 * d
        return UnimodularMap(
            b11, b12, b21, b22, -(b11 * self.tx + b12 * self.ty), -(b21 * self.tx + b22 * self.ty)
        )

    def dual_apply(self, w):
        """Transform a linear functional so that ``<dual(w), A p> = <w, p>``."""
        inv = self.inverse()
        return (w[0] * inv.a11 + w[1] * inv.a21, w[0] * inv.a12 + w[1] * inv.a22)


def _complete_row(p: int, q: int):
    """Integers (r, s) with ``r*q - s*p == 1`` for primitive (p, q)."""
    g, u, v = _ext_gcd(p, q)
    assert g == 1
    # u*p + v*q == 1  ->  r = v, s = -u
    return v, -u


def _ext_gcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qt = old_r // r
        old_r, r = r, old_r - qt * r
        old_s, s = s, old_s - qt * s
        old_t, t = t, old_t - qt * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


# ---------------------------------------------------------------- lattice width


def _sign_normalize(w):
    if w[0] < 0 or (w[0] == 0 and w[1] < 0):
        return (-w[0], -w[1])
    return (w[0], w[1])


def lattice_width(P: LatticePolygon):
    """``(width, directions)``: minimal extent over primitive functionals and
    every functional attaining it (sign-normalized, sorted)."""
    verts = P.vertices
    if P.dimension == 0:
        return 0, [(0, 1), (1, 0)]
    if P.dimension == 1:
        u, v = verts
        g = math.gcd(v.x - u.x, v.y - u.y)
        return 0, [_sign_normalize(((v.y - u.y) // g, -(v.x - u.x) // g))]
    _kernels.check_range([c for v in verts for c in v])
    V = np.array(verts, dtype=np.int64)
    seeds = [(1, 0), (0, 1)] + [(h.a, h.b) for h in P.halfplanes]
    best = int(_kernels.directional_widths(V, np.array(seeds, dtype=np.int64)).min())
    # any w with width <= best has |<w, d1>|, |<w, d2>| <= best
    d1 = (verts[1].x - verts[0].x, verts[1].y - verts[0].y)
    d2 = (verts[2].x - verts[1].x, verts[2].y - verts[1].y)
    det = d1[0] * d2[1] - d1[1] * d2[0]
    rng = np.arange(-best, best + 1, dtype=np.int64)
    s, t = np.meshgrid(rng, rng, indexing="ij")
    s = s.ravel()
    t = t.ravel()
    # solve w.d1 = s, w.d2 = t
    wx_num = s * d2[1] - t * d1[1]
    wy_num = t * d1[0] - s * d2[0]
    keep = (wx_num % det == 0) & (wy_num % det == 0)
    wx = wx_num[keep] // det
    wy = wy_num[keep] // det
    nonzero = (wx != 0) | (wy != 0)
    wx, wy = wx[nonzero], wy[nonzero]
    prim = np.gcd(wx, wy) == 1
    cand = np.stack([wx[prim], wy[prim]], axis=1)
    widths = _kernels.directional_widths(V, cand)
    width = int(widths.min())
    dirs = sorted({_sign_normalize((int(a), int(b))) for (a, b), w in zip(cand, widths) if w == width})
    return width, dirs


def width_along(P: LatticePolygon, w) -> int:
    vals = [w[0] * v.x + w[1] * v.y for v in P.vertices]
    return max(vals) - min(vals)


def strip_normalize(P: LatticePolygon):
    """Map ``P`` into ``0 <= Y <= lw(P)`` with the width functional becoming Y.

    The lexicographically smallest width direction is used; the result is
    then translated so the lowest row starts at X=0 and sheared so the
    leftmost point of the top row has ``0 <= X < lw``.
    """
    if P.dimension < 2:
        raise NotTwoDimensional("strip normalization needs a two-dimensional polygon")
    width, dirs = lattice_width(P)
    return strip_map_for(P, dirs[0], width)


def strip_map_for(P: LatticePolygon, w, width=None):
    p, q = w
    r, s = _complete_row(p, q)
    # rows (r, s) and (p, q): determinant r*q - s*p == 1
    U = UnimodularMap(r, s, p, q)
    img = U.apply_polygon(P)
    ymin = min(v.y for v in img.vertices)
    ymax = max(v.y for v in img.vertices)
    if width is None:
        width = ymax - ymin
    low = min(pt.x for pt in img.points if pt.y == ymin)
    U = UnimodularMap.translation(-low, -ymin).compose(U)
    img = U.apply_polygon(P)
    if width > 0:
        top_left = min(pt.x for pt in img.points if pt.y == width)
        k = -(top_left // width)
        U = UnimodularMap(1, k, 0, 1).compose(U)
    return U, U.apply_polygon(P)


# ---------------------------------------------------------------- normal form


def _edge_frames(P: LatticePolygon):
    """Yield ``(encoding, map)`` for every edge/orientation starting frame."""
    for reflect in (False, True):
        R = UnimodularMap(-1, 0, 0, 1) if reflect else UnimodularMap.identity()
        Q = R.apply_polygon(P)
        verts = Q.vertices
        n = len(verts)
        for i in range(n):
            p0, p1, prev = verts[i], verts[(i + 1) % n], verts[i - 1]
            dx, dy = p1.x - p0.x, p1.y - p0.y
            g = math.gcd(dx, dy)
            dx, dy = dx // g, dy // g
            r, s = _complete_row(-dy, dx)  # r*dx + s*dy == 1
            A = UnimodularMap(r, s, -dy, dx)
            A = UnimodularMap.translation(*(-c for c in A.apply(p0))).compose(A)
            pv = A.apply(prev)
            k = -(pv.x // pv.y)
            A = UnimodularMap(1, k, 0, 1).compose(A)
            M = A.compose(R)
            yield _encode([M.apply(v) for v in P.vertices]), M


def _encode(points):
    """Counterclockwise vertex tuple starting at the origin."""
    cyc = hull_vertices(points)
    k = cyc.index((0, 0))
    return tuple(tuple(p) for p in cyc[k:] + cyc[:k])


def normal_form_with_map(P: LatticePolygon):
    if P.dimension == 0:
        v = P.vertices[0]
        return ((0, 0),), UnimodularMap.translation(-v.x, -v.y)
    if P.dimension == 1:
        u, v = P.vertices
        dx, dy = v.x - u.x, v.y - u.y
        g = math.gcd(dx, dy)
        r, s = _complete_row(-dy // g, dx // g)
        A = UnimodularMap(r, s, -dy // g, dx // g)
        A = UnimodularMap.translation(*(-c for c in A.apply(u))).compose(A)
        return ((0, 0), (g, 0)), A
    return min(_edge_frames(P), key=lambda em: em[0])


def normal_form(P: LatticePolygon) -> tuple:
    """Canonical vertex tuple; equal exactly for unimodularly equivalent polygons."""
    return normal_form_with_map(P)[0]


def normal_form_polygon(P: LatticePolygon) -> LatticePolygon:
    return LatticePolygon(normal_form(P))


def equivalent(P: LatticePolygon, Q: LatticePolygon):
    """``(True, U)`` with ``U(P) == Q`` when equivalent, else ``(False, None)``."""
    if P.dimension != Q.dimension or len(P.points) != len(Q.points):
        return False, None
    nf_p, map_p = normal_form_with_map(P)
    nf_q, map_q = normal_form_with_map(Q)
    if nf_p != nf_q:
        return False, None
    U = map_q.inverse().compose(map_p)
    if U.apply_polygon(P) != Q:  # pragma: no cover - guards the construction
        raise AssertionError("equivalence witness failed to validate")
    return True, U


# ---------------------------------------------------------------- column vectors


@dataclass(frozen=True)
class ColumnVectorWitness:
    v: tuple
    base_edge: int


def is_column_vector(P: LatticePolygon, v, edge_index: int) -> bool:
    h = P.halfplanes[edge_index]
    for u in P.points:
        if h.value(u) == h.c:
            continue
        if not P.contains((u.x + v[0], u.y + v[1])):
            return False
    return True


def column_vectors(P: LatticePolygon) -> list:
    """All (v, base edge) pairs with ``u + v`` in P for every lattice point u off the edge."""
    if P.dimension < 2:
        raise NotTwoDimensional("column vectors need a two-dimensional polygon")
    out = []
    for idx, h in enumerate(P.halfplanes):
        off = [u for u in P.points if h.value(u) != h.c]
        u0 = off[0]
        # v must send u0 into P, so v ranges over (P - u0) minus the origin
        for p in P.points:
            v = (p.x - u0.x, p.y - u0.y)
            if v == (0, 0) or math.gcd(*v) != 1:
                continue
            if all(P.contains((u.x + v[0], u.y + v[1])) for u in off):
                out.append(ColumnVectorWitness(v, idx))
    return out


def column_frame(P: LatticePolygon, witness: ColumnVectorWitness) -> UnimodularMap:
    """Map sending ``witness.v`` to (0, -1) and its base edge onto Y=0 with P above."""
    if not is_column_vector(P, witness.v, witness.base_edge):
        raise NotAColumnVector(f"{witness.v} is not a column vector for edge {witness.base_edge}")
    p, q = P.edges()[witness.base_edge]
    g = math.gcd(q.x - p.x, q.y - p.y)
    d = ((q.x - p.x) // g, (q.y - p.y) // g)
    v = witness.v
    det = d[0] * v[1] - d[1] * v[0]
    if det not in (1, -1):
        raise NotAColumnVector(f"{v} is not unimodular against its base edge")
    # A [d v] = [[e, 0], [0, -1]] with e = -det keeps A unimodular and P above the edge
    e = -det
    inv = (v[1] * det, -v[0] * det, -d[1] * det, d[0] * det)  # [d v]^{-1}
    a11, a12 = e * inv[0], e * inv[1]
    a21, a22 = -inv[2], -inv[3]
    A = UnimodularMap(a11, a12, a21, a22)
    img_p = A.apply(p)
    return UnimodularMap.translation(-img_p.x, -img_p.y).compose(A)
