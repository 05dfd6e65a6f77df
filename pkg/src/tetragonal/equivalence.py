"""Sampling-based checks of explicit curve isomorphisms over large prime fields.

A failure comes with a witness point and is conclusive; success is evidence,
reported together with (p, n, seed) so it can be replayed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import BadPrime, NotAColumnVector, NotTwoDimensional
from .laurent import LaurentPolynomial, newton_polygon, parse_laurent, reduce_mod_p
from .lattice import ColumnVectorWitness, LatticePolygon, column_frame, interior_hull, is_column_vector
from .univariate import GF, UPoly, univariate_roots_mod_p

DEFAULT_PRIME = 2**31 - 1
DEFAULT_TRIALS = 100
DEFAULT_SEED = 0


# ---------------------------------------------------------------- sampling


@dataclass
class SampleSet:
    p: int
    points: list
    warning: str | None = None


def _as_mod_p(f: LaurentPolynomial, p: int) -> LaurentPolynomial:
    if f.modulus == p:
        return f
    return reduce_mod_p(f, p)


def y_polynomial_at(f: LaurentPolynomial, x: int, p: int) -> UPoly:
    """f(x, y) * y^(-min j) as a polynomial in y over GF(p)."""
    F = GF(p)
    jmin = min(j for _, j in f.terms)
    jmax = max(j for _, j in f.terms)
    coeffs = [0] * (jmax - jmin + 1)
    for (i, j), c in f.terms.items():
        coeffs[j - jmin] = (coeffs[j - jmin] + c * pow(x, i, p)) % p
    return UPoly(F, coeffs)


def sample_curve_points(f: LaurentPolynomial, p: int = DEFAULT_PRIME, n: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED) -> SampleSet:
    """Up to ``n`` points of the curve f = 0 in the torus over GF(p)."""
    if newton_polygon(f).dimension < 2:
        raise NotTwoDimensional("sampling needs a two-dimensional Newton polygon")
    fp = _as_mod_p(f, p)
    rng = random.Random(seed)
    if p <= 4 * n + 64:
        xs = list(range(1, p))
        rng.shuffle(xs)
    else:
        xs = _distinct_draws(rng, p, 20 * n + 50)
    points = []
    for x in xs:
        g = y_polynomial_at(fp, x, p)
        if g.is_zero():
            continue  # a whole vertical line lies on the curve; skip it
        for y in univariate_roots_mod_p(g, p, rng):
            if y != 0:
                points.append((x, y))
                if len(points) >= n:
                    return SampleSet(p, points)
    return SampleSet(p, points, f"only {len(points)} of {n} requested points found")


def _distinct_draws(rng, p, count):
    seen = set()
    out = []
    while len(out) < count:
        x = rng.randrange(1, p)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


# ---------------------------------------------------------------- rational maps


@dataclass(frozen=True)
class RationalMap:
    """``(x, y) -> (nx/dx, ny/dy)`` with Laurent polynomial numerators/denominators."""

    nx: LaurentPolynomial
    dx: LaurentPolynomial
    ny: LaurentPolynomial
    dy: LaurentPolynomial

    @classmethod
    def parse(cls, x_num, x_den, y_num, y_den):
        return cls(*(parse_laurent(s) for s in (x_num, x_den, y_num, y_den)))

    @classmethod
    def identity(cls):
        return cls.parse("x", "1", "y", "1")

    def __call__(self, pt, p):
        """Image in the torus over GF(p), or None where undefined / off the torus."""
        x, y = pt
        vals = [_as_mod_p(h, p).evaluate(x, y) for h in (self.nx, self.dx, self.ny, self.dy)]
        if vals[1] == 0 or vals[3] == 0:
            return None
        X = vals[0] * pow(vals[1], -1, p) % p
        Y = vals[2] * pow(vals[3], -1, p) % p
        if X == 0 or Y == 0:
            return None
        return X, Y

    def to_json(self):
        return {"x": [str(self.nx), str(self.dx)], "y": [str(self.ny), str(self.dy)]}


@dataclass
class DirectionReport:
    verified: int = 0
    undefined_at: int = 0
    failed: int = 0
    witness: tuple | None = None
    sampled: int = 0

    def to_json(self):
        return {
            "verified": self.verified,
            "undefined_at": self.undefined_at,
            "failed": self.failed,
            "witness": list(self.witness) if self.witness else None,
            "sampled": self.sampled,
        }


def _check_direction(src, dst, there, back, p, n, seed) -> DirectionReport:
    rep = DirectionReport()
    dstp = _as_mod_p(dst, p)
    samples = sample_curve_points(src, p, n, seed)
    rep.sampled = len(samples.points)
    for P in samples.points:
        Q = there(P, p)
        if Q is None:
            rep.undefined_at += 1
            continue
        if dstp.evaluate(*Q) != 0:
            rep.failed += 1
            rep.witness = rep.witness or P
            continue
        R = back(Q, p)
        if R is None:
            rep.undefined_at += 1
            continue
        if R != tuple(P):
            rep.failed += 1
            rep.witness = rep.witness or P
            continue
        rep.verified += 1
    return rep


@dataclass
class BirationalReport:
    forward: DirectionReport
    backward: DirectionReport
    p: int
    n: int
    seed: int

    @property
    def verdict(self):
        bad = self.forward.failed or self.backward.failed
        empty = not (self.forward.verified and self.backward.verified)
        return "refuted" if bad or empty else "verified"

    def to_json(self):
        return {
            "verdict": self.verdict,
            "forward": self.forward.to_json(),
            "backward": self.backward.to_json(),
            "p": self.p,
            "n": self.n,
            "seed": self.seed,
        }


def verify_birational_pair(f, f_prime, phi: RationalMap, psi: RationalMap, p=DEFAULT_PRIME, n=DEFAULT_TRIALS, seed=DEFAULT_SEED):
    """phi: C_f -> C_f', psi: C_f' -> C_f checked as mutually inverse on samples of both curves."""
    fwd = _check_direction(f, f_prime, phi, psi, p, n, seed)
    bwd = _check_direction(f_prime, f, psi, phi, p, n, seed)
    return BirationalReport(fwd, bwd, p, n, seed)


def example_0mod4(g: int):
    """The pair (f, f', phi, psi) of the genus-g family with g divisible by 4."""
    if g % 4 or g < 4:
        raise ValueError("the family needs g divisible by 4")
    a = g // 2
    e = g // 4 + 1
    f = parse_laurent(f"1 - x^2*y^4 - x^{a + 2}*y^2")
    fp = parse_laurent(f"x^{a + 1}*y^4 - x^{a + 1} + 4*y^2")
    phi = RationalMap.parse("x", "1", "1 - x*y^2", f"x^{e}*y")
    psi = RationalMap.parse("x", "1", "2*y", f"x^{e} + x^{e}*y^2")
    return f, fp, phi, psi


# ---------------------------------------------------------------- matrices


@dataclass
class ProjectiveMatrix:
    """Square matrix acting on canonical coordinates; ``rows[r]`` and ``cols[c]``
    are the exponent labels of row r and column c."""

    entries: list
    rows: list
    cols: list

    def __post_init__(self):
        self.entries = [[Fraction(a) for a in r] for r in self.entries]
        self.rows = [tuple(r) for r in self.rows]
        self.cols = [tuple(c) for c in self.cols]
        n = len(self.entries)
        if any(len(r) != n for r in self.entries) or len(self.rows) != n or len(self.cols) != n:
            raise ValueError("matrix and labels must be square and consistent")

    @property
    def size(self):
        return len(self.entries)

    def __matmul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        if self.cols != other.rows:
            raise ValueError("label mismatch in product")
        n = self.size
        out = [[sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        return ProjectiveMatrix(out, self.rows, other.cols)

    def is_identity(self) -> bool:
        n = self.size
        return self.rows == self.cols and all(
            self.entries[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
        )

    def mod_p(self, p):
        out = []
        for r in self.entries:
            row = []
            for a in r:
                if a.denominator % p == 0:
                    raise BadPrime(f"{p} divides a matrix denominator")
                row.append(a.numerator * pow(a.denominator, -1, p) % p)
            out.append(row)
        return out

    def to_json(self):
        return {
            "rows": [list(r) for r in self.rows],
            "cols": [list(c) for c in self.cols],
            "entries": [[str(a) for a in r] for r in self.entries],
        }


def projective_image(M: ProjectiveMatrix, Q, p: int | None = None):
    """``M @ Q`` for a coordinate vector Q (exact, or mod p when given)."""
    if p is None:
        return [sum(a * Fraction(q) for a, q in zip(row, Q)) for row in M.entries]
    Mp = M.mod_p(p)
    return [sum(a * q for a, q in zip(row, Q)) % p for row in Mp]


def _solve_mod_p(A, b, p):
    """Solve A x = b over GF(p); None if A is singular."""
    n = len(A)
    M = [list(A[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] % p), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, p)
        M[col] = [v * inv % p for v in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                factor = M[r][col]
                M[r] = [(vr - factor * vc) % p for vr, vc in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def canonical_coordinates(labels, pt, p):
    x, y = pt
    return [pow(x, i, p) * pow(y, j, p) % p for i, j in labels]


def _unimodular_triangle(labels):
    """Indices (a, b, c) with labels[b] - labels[a], labels[c] - labels[a] a lattice basis."""
    idx = {lab: k for k, lab in enumerate(labels)}
    for base in ((0, 0),) + tuple(labels):
        if base not in idx:
            continue
        for d1, d2 in (((1, 0), (0, 1)), ((1, 0), (1, 1)), ((0, 1), (1, 1)), ((1, 0), (-1, 1)), ((1, -1), (0, 1))):
            b = (base[0] + d1[0], base[1] + d1[1])
            c = (base[0] + d2[0], base[1] + d2[1])
            if b in idx and c in idx:
                return idx[base], idx[b], idx[c], d1, d2
    raise ValueError("labels contain no unimodular triangle; cannot recover the affine point")


def _recover_point(labels, vec, p):
    a, b, c, d1, d2 = _unimodular_triangle(labels)
    z = vec[a]
    if z == 0:
        return None
    inv = pow(z, -1, p)
    u = vec[b] * inv % p  # (x, y)^d1
    w = vec[c] * inv % p  # (x, y)^d2
    if u == 0 or w == 0:
        return None
    # invert [d1; d2] over the integers: (x, y) = u^A w^B etc.
    det = d1[0] * d2[1] - d1[1] * d2[0]
    ex = (d2[1] * det, -d1[1] * det)
    ey = (-d2[0] * det, d1[0] * det)
    X = pow(u, ex[0], p) * pow(w, ex[1], p) % p
    Y = pow(u, ey[0], p) * pow(w, ey[1], p) % p
    return X, Y


@dataclass
class ThetaReport:
    orientations: dict
    p: int
    n: int
    seed: int
    labels_match: bool = True

    @property
    def verifying(self):
        return sorted(k for k, r in self.orientations.items() if r.failed == 0 and r.verified > 0)

    @property
    def verdict(self):
        return "verified" if self.verifying else "refuted"

    @property
    def orientation(self):
        v = self.verifying
        return v[0] if len(v) == 1 else (v or None)

    def to_json(self):
        return {
            "verdict": self.verdict,
            "orientation": self.orientation,
            "orientations": {k: r.to_json() for k, r in self.orientations.items()},
            "p": self.p,
            "n": self.n,
            "seed": self.seed,
        }


def interior_labels(f: LaurentPolynomial) -> set:
    inner = interior_hull(newton_polygon(f))
    return set() if inner is None else {tuple(q) for q in inner.points}


def verify_theta(f, f_prime, M: ProjectiveMatrix, p=DEFAULT_PRIME, n=DEFAULT_TRIALS, seed=DEFAULT_SEED) -> ThetaReport:
    """Check the linear map M between canonical embeddings in both orientations.

    Row labels index the interior points of Newton(f), column labels those of
    Newton(f').  ``f_prime_to_f``: canonical point w of a sample on f', image
    M w, read off (x, y) and test f.  ``f_to_f_prime``: canonical point v of a
    sample on f, solve M w = v, read off (x, y) from w and test f'.
    """
    if set(M.rows) != interior_labels(f) or set(M.cols) != interior_labels(f_prime):
        raise ValueError("matrix labels must equal the interior lattice points of the two polygons")
    Mp = M.mod_p(p)
    fp = _as_mod_p(f, p)
    fpp = _as_mod_p(f_prime, p)

    def a_dir():
        rep = DirectionReport()
        pts = sample_curve_points(f_prime, p, n, seed).points
        rep.sampled = len(pts)
        for P in pts:
            w = canonical_coordinates(M.cols, P, p)
            v = [sum(a * b for a, b in zip(row, w)) % p for row in Mp]
            Q = _recover_point(M.rows, v, p)
            _tally(rep, P, Q, fp)
        return rep

    def b_dir():
        rep = DirectionReport()
        pts = sample_curve_points(f, p, n, seed).points
        rep.sampled = len(pts)
        for P in pts:
            v = canonical_coordinates(M.rows, P, p)
            w = _solve_mod_p(Mp, v, p)
            Q = None if w is None else _recover_point(M.cols, w, p)
            _tally(rep, P, Q, fpp)
        return rep

    return ThetaReport({"f_prime_to_f": a_dir(), "f_to_f_prime": b_dir()}, p, n, seed)


def _tally(rep, P, Q, target):
    if Q is None:
        rep.undefined_at += 1
    elif target.evaluate(*Q) != 0:
        rep.failed += 1
        rep.witness = rep.witness or tuple(P)
    else:
        rep.verified += 1


# ---------------------------------------------------------------- column-vector automorphisms


def e_v_lambda_matrix(delta: LatticePolygon, witness: ColumnVectorWitness, lam) -> ProjectiveMatrix:
    """Matrix of the torus automorphism attached to a column vector.

    After the frame map sends v to (0, -1) and the base edge to Y = 0, the
    automorphism is (x, y) -> (x, y + lam); coordinate (i, j) of the image is
    sum_m binom(j, m) lam^(j-m) X_(i, m).  Labels are the original points.
    """
    if delta.dimension < 2:
        raise NotTwoDimensional("column vectors need a two-dimensional polygon")
    if not is_column_vector(delta, witness.v, witness.base_edge):
        raise NotAColumnVector(f"{witness.v} fails the column-vector property for edge {witness.base_edge}")
    A = column_frame(delta, witness)
    lam = Fraction(lam)
    labels = [tuple(q) for q in delta.points]
    norm = {tuple(A.apply(q)): k for k, q in enumerate(labels)}
    size = len(labels)
    entries = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), t in norm.items():
        for m in range(j + 1):
            s = norm.get((i, m))
            if s is None:  # pragma: no cover - excluded by the column-vector property
                raise NotAColumnVector("column below a point leaves the polygon")
            entries[t][s] += comb(j, m) * lam ** (j - m)
    return ProjectiveMatrix(entries, labels, labels)


def normalized_coordinates(delta: LatticePolygon, witness: ColumnVectorWitness, pt, p):
    """Canonical coordinates of Tor(delta) at the point with frame coordinates ``pt``."""
    A = column_frame(delta, witness)
    x, y = pt
    out = []
    for q in delta.points:
        i, j = A.apply(q)
        out.append(pow(x, i, p) * pow(y, j, p) % p)
    return out
