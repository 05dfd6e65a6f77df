import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tetragonal.errors import EmptyPointSet, LatticeOverflowError, NotAColumnVector, NotTwoDimensional
from tetragonal.lattice import (
    SIGMA,
    UPSILON,
    ColumnVectorWitness,
    LatticePolygon,
    UnimodularMap,
    column_frame,
    column_vectors,
    convex_hull,
    double_area,
    equivalent,
    format_polygon,
    interior_hull,
    is_column_vector,
    lattice_points,
    lattice_width,
    normal_form,
    normal_form_with_map,
    parse_polygon,
    pick_check,
    relax,
    strip_normalize,
    width_along,
)

from conftest import brute_points, random_hull, random_unimodular

EXAMPLE1 = LatticePolygon([(0, 0), (6, 2), (6, 4), (0, 2)])


def brute_width(P, bound=14):
    best, dirs = None, []
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1 or (a < 0 or (a == 0 and b < 0)):
                continue
            w = width_along(P, (a, b))
            if best is None or w < best:
                best, dirs = w, [(a, b)]
            elif w == best:
                dirs.append((a, b))
    return best, sorted(dirs)


def pts_hull(coords):
    return convex_hull([tuple(c) for c in coords])


point_lists = st.lists(st.tuples(st.integers(-8, 8), st.integers(-8, 8)), min_size=3, max_size=9)


# ---------------------------------------------------------------- construction


def test_hull_drops_collinear_and_interior_points():
    P = convex_hull([(0, 0), (1, 0), (2, 0), (1, 1), (0, 2), (1, 0)])
    assert set(P.vertices) == {(0, 0), (2, 0), (0, 2)}


def test_clockwise_input_is_reoriented():
    P = LatticePolygon([(0, 0), (0, 1), (1, 0)])
    assert double_area(P) == 1


def test_non_convex_cycle_rejected():
    with pytest.raises(ValueError):
        LatticePolygon([(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)])


def test_empty_hull():
    with pytest.raises(EmptyPointSet):
        convex_hull([])


def test_lower_dimensional_hulls():
    assert convex_hull([(3, 3)]).dimension == 0
    seg = convex_hull([(0, 0), (2, 2), (1, 1)])
    assert seg.dimension == 1 and len(seg.points) == 3
    with pytest.raises(NotTwoDimensional):
        interior_hull(seg)


def test_parse_and_format_round_trip():
    P = parse_polygon("0,0; 6,2; 6,4; 0,2")
    assert P == EXAMPLE1
    assert parse_polygon(format_polygon(P)) == P
    assert parse_polygon("[[0,0],[1,0],[0,1]]") == SIGMA
    with pytest.raises(ValueError):
        parse_polygon("0,0; 1")


# ---------------------------------------------------------------- points


@given(point_lists)
def test_points_match_brute_force(pts):
    P = convex_hull(pts)
    if P.dimension < 2:
        return
    inside, strict = brute_points(P.vertices)
    assert sorted(P.points) == inside
    assert sorted(P.interior_points) == strict


def test_example1_point_counts():
    # 17 lattice points, 9 interior, twice the area 24
    assert len(EXAMPLE1.points) == 17
    assert len(EXAMPLE1.interior_points) == 9
    assert double_area(EXAMPLE1) == 24
    assert pick_check(EXAMPLE1)
    flagged = lattice_points(EXAMPLE1, flagged=True)
    assert sum(1 for _, b in flagged if b) == 8


def test_pick_on_1000_random_hulls():
    rng = random.Random(20240601)
    for _ in range(1000):
        assert pick_check(random_hull(rng, n=rng.randint(3, 9), box=9))


def test_interior_hull_of_example1():
    inner = interior_hull(EXAMPLE1)
    assert inner.row_counts() == {1: 2, 2: 5, 3: 2}
    assert interior_hull(inner) == LatticePolygon([(2, 2), (4, 2)])
    assert interior_hull(SIGMA.scale(2)) is None


def test_overflow_guard():
    big = LatticePolygon([(0, 0), (2**31, 0), (0, 1)])
    with pytest.raises(LatticeOverflowError):
        lattice_width(big)


# ---------------------------------------------------------------- relax


def test_relax_of_square_is_lattice_square():
    rel = relax(LatticePolygon([(1, 1), (2, 1), (2, 2), (1, 2)]))
    assert rel.is_lattice
    assert rel.polygon == LatticePolygon([(0, 0), (3, 0), (3, 3), (0, 3)])


def test_relax_of_sigma_is_lattice():
    rel = relax(SIGMA)
    assert rel.is_lattice
    assert rel.polygon == SIGMA.scale(4).translate(-1, -1)


def test_relax_non_lattice_example():
    rel = relax(LatticePolygon([(0, 0), (3, 0), (0, 1)]))
    assert not rel.is_lattice
    assert (Fraction(-1), Fraction(5, 3)) in rel.vertices
    with pytest.raises(ValueError):
        rel.polygon


def test_relax_example1_interior_recovers_a_superset():
    inner = interior_hull(EXAMPLE1)
    big = relax(inner).polygon
    assert set(EXAMPLE1.points) <= set(big.points)
    assert interior_hull(big) == inner


@given(point_lists)
def test_relax_contains_polygon_and_interior_hull(pts):
    G = convex_hull(pts)
    if G.dimension < 2:
        return
    rel = relax(G)
    if rel.is_lattice:
        D = rel.polygon
        assert set(G.points) <= set(D.interior_points)


# ---------------------------------------------------------------- unimodular maps


def test_map_algebra():
    rng = random.Random(7)
    for _ in range(50):
        U, V = random_unimodular(rng), random_unimodular(rng)
        p = (rng.randint(-9, 9), rng.randint(-9, 9))
        assert U.compose(V).apply(p) == U.apply(V.apply(p))
        assert U.inverse().apply(U.apply(p)) == p
        assert U.det in (1, -1)


def test_non_unimodular_map_rejected():
    with pytest.raises(ValueError):
        UnimodularMap(2, 0, 0, 1)


# ---------------------------------------------------------------- lattice width


@pytest.mark.parametrize(
    "P, width",
    [
        (SIGMA, 1),
        (SIGMA.scale(3), 3),
        (UPSILON.scale(2), 4),
        (EXAMPLE1, 4),
        (interior_hull(EXAMPLE1), 2),
        (LatticePolygon([(0, 0), (3, 0), (3, 3), (0, 3)]), 3),
    ],
)
def test_lattice_width_values(P, width):
    assert lattice_width(P)[0] == width


def test_width_directions_of_3sigma():
    assert lattice_width(SIGMA.scale(3)) == (3, [(0, 1), (1, 0), (1, 1)])


@given(point_lists)
def test_width_matches_brute_force(pts):
    P = convex_hull(pts)
    if P.dimension < 2:
        return
    assert lattice_width(P) == brute_width(P)


@given(point_lists, st.integers(0, 10**6))
def test_strip_normalize_bounds(pts, seed):
    P = convex_hull(pts)
    if P.dimension < 2:
        return
    U, img = strip_normalize(P)
    w = lattice_width(P)[0]
    assert U.apply_polygon(P) == img
    assert min(v.y for v in img) == 0 and max(v.y for v in img) == w
    assert min(p.x for p in img.points if p.y == 0) == 0
    assert 0 <= min(p.x for p in img.points if p.y == w) < w


# ---------------------------------------------------------------- normal form


@given(point_lists, st.integers(0, 10**6))
def test_normal_form_is_invariant(pts, seed):
    P = convex_hull(pts)
    U = random_unimodular(random.Random(seed))
    assert normal_form(U.apply_polygon(P)) == normal_form(P)


@given(point_lists)
def test_normal_form_idempotent(pts):
    P = convex_hull(pts)
    nf = normal_form(P)
    assert normal_form(LatticePolygon(nf)) == nf
    _, M = normal_form_with_map(P)
    assert set(M.apply_polygon(P).vertices) == set(nf)


@given(point_lists, point_lists, point_lists, st.integers(0, 10**6))
def test_equivalence_relation_axioms(a, b, c, seed):
    P, Q, R = convex_hull(a), convex_hull(b), convex_hull(c)
    U = random_unimodular(random.Random(seed))
    assert equivalent(P, P)[0]
    ok, W = equivalent(P, U.apply_polygon(P))
    assert ok and W.apply_polygon(P) == U.apply_polygon(P)
    assert equivalent(P, Q)[0] == equivalent(Q, P)[0]
    if equivalent(P, Q)[0] and equivalent(Q, R)[0]:
        assert equivalent(P, R)[0]


def test_invariants_separate_inequivalent():
    # same point count, different boundary counts
    A = LatticePolygon([(0, 0), (2, 0), (0, 2)])
    B = LatticePolygon([(0, 0), (4, 0), (0, 1)])
    assert len(A.points) == len(B.points) and not equivalent(A, B)[0]
    rect = LatticePolygon([(0, 0), (2, 0), (2, 1), (0, 1)])
    skew = LatticePolygon([(0, 0), (2, 0), (3, 1), (1, 1)])
    assert equivalent(rect, skew)[0]
    assert not equivalent(rect, LatticePolygon([(0, 0), (3, 0), (1, 1), (0, 1)]))[0]


# ---------------------------------------------------------------- column vectors


def brute_column_vectors(P, box=6):
    out = set()
    inside = set(brute_points(P.vertices)[0])
    for idx, h in enumerate(P.halfplanes):
        off = [u for u in inside if h.value(u) != h.c]
        for a in range(-box, box + 1):
            for b in range(-box, box + 1):
                if math.gcd(a, b) != 1:
                    continue
                if all((u[0] + a, u[1] + b) in inside for u in off):
                    out.add(((a, b), idx))
    return out


@pytest.mark.parametrize(
    "P",
    [SIGMA, SIGMA.scale(3), LatticePolygon([(0, 0), (2, 0), (2, 2), (0, 2)]), EXAMPLE1, UPSILON.scale(2),
     LatticePolygon([(0, 0), (4, 0), (1, 2), (0, 2)])],
)
def test_column_vectors_match_brute_force(P):
    assert {(w.v, w.base_edge) for w in column_vectors(P)} == brute_column_vectors(P)


def test_column_vector_counts():
    assert len(column_vectors(SIGMA.scale(3))) == 6
    assert column_vectors(EXAMPLE1) == []


def test_column_frame():
    P = SIGMA.scale(2)
    for w in column_vectors(P):
        A = column_frame(P, w)
        assert A.apply_linear(w.v) == (0, -1)
        img = A.apply_polygon(P)
        assert min(v.y for v in img) == 0
        p, q = P.edges()[w.base_edge]
        assert A.apply(p).y == 0 and A.apply(q).y == 0
    with pytest.raises(NotAColumnVector):
        column_frame(P, ColumnVectorWitness((1, 1), 0))
    assert not is_column_vector(P, (1, 1), 0)
