"""Laurent polynomials in x, y with exact coefficients.

Coefficients are ``Fraction`` over the rationals, or ints in ``[0, p)``
when a ``modulus`` is set by :func:`reduce_mod_p`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime, LaurentSyntaxError, NotAFace, NotTwoDimensional, ZeroPolynomial
from .lattice import HalfPlane, LatticePoint, LatticePolygon, UnimodularMap, convex_hull
from .univariate import GF, QQ, UPoly, bivariate_from_terms


class LaurentPolynomial:
    __slots__ = ("terms", "modulus")

    def __init__(self, terms, modulus=None):
        clean = {}
        for (i, j), c in dict(terms).items():
            c = int(c) % modulus if modulus is not None else Fraction(c)
            if c != 0:
                key = (int(i), int(j))
                clean[key] = clean.get(key, 0) + c
                if modulus is not None:
                    clean[key] %= modulus
        self.terms = {k: v for k, v in clean.items() if v != 0}
        self.modulus = modulus

    def __repr__(self):
        return f"LaurentPolynomial({format_laurent(self)!r})"

    def __str__(self):
        return format_laurent(self)

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.terms == other.terms and self.modulus == other.modulus

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.modulus))

    def is_zero(self):
        return not self.terms

    @property
    def support(self):
        return sorted(self.terms, key=lambda k: (k[1], k[0]))

    def coefficient(self, i, j):
        return self.terms.get((i, j), 0)

    def _wrap(self, terms):
        return LaurentPolynomial(terms, self.modulus)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return self._wrap(out)

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return self._wrap({k: c * other for k, c in self.terms.items()})
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return self._wrap(out)

    __rmul__ = __mul__

    def times_monomial(self, a: int, b: int):
        return self._wrap({(i + a, j + b): c for (i, j), c in self.terms.items()})

    def x_derivative_log(self):
        """x * df/dx."""
        return self._wrap({(i, j): c * i for (i, j), c in self.terms.items()})

    def y_derivative_log(self):
        """y * df/dy."""
        return self._wrap({(i, j): c * j for (i, j), c in self.terms.items()})

    def substitute(self, U: UnimodularMap):
        """Monomial change of variables acting on exponents by ``U``."""
        return self._wrap({tuple(U.apply(k)): c for k, c in self.terms.items()})

    def evaluate(self, x, y):
        """Value at a torus point; works for Fractions and, with a modulus, ints."""
        if self.modulus is None:
            acc = Fraction(0)
            for (i, j), c in self.terms.items():
                acc += c * Fraction(x) ** i * Fraction(y) ** j
            return acc
        p = self.modulus
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c * pow(x, i, p) * pow(y, j, p)
        return acc % p

    def min_exponents(self):
        return min(i for i, _ in self.terms), min(j for _, j in self.terms)

    def cleared_terms(self, shift=None):
        """Terms multiplied by the monomial making all exponents >= 0 and minimal."""
        a, b = self.min_exponents() if shift is None else shift
        return {(i - a, j - b): c for (i, j), c in self.terms.items()}

    def to_bivariate(self, shift=None):
        """UPoly in y over K[x] after clearing the monomial denominator."""
        dom = GF(self.modulus) if self.modulus is not None else QQ
        return bivariate_from_terms(self.cleared_terms(shift), dom)


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])|(\^)|(\*)|(/)|(\+)|(-))")


def parse_laurent(text: str) -> LaurentPolynomial:
    """Parse ``term (('+'|'-') term)*`` with optional ``*``, ``a/b`` coefficients
    and possibly negative exponents."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise LaurentSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kinds = ("int", "var", "^", "*", "/", "+", "-")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                start = m.start(m.lastindex)
                tokens.append((kind, val, start))
                break
        pos = m.end()
    tokens.append(("end", "", n))
    parser = _Parser(tokens)
    terms = parser.poly()
    out = {}
    for k, c in terms:
        out[k] = out.get(k, 0) + c
    f = LaurentPolynomial(out)
    if f.is_zero():
        raise ZeroPolynomial("all terms cancel")
    return f


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind):
        tok = self.toks[self.i]
        if tok[0] != kind:
            want = "integer" if kind == "int" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise LaurentSyntaxError(f"expected {want}, found {got}", tok[2])
        self.i += 1
        return tok

    def poly(self):
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[0] == "-" else 1
            terms.append(self.term(sign))
        if self.peek()[0] != "end":
            tok = self.peek()
            raise LaurentSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return terms

    def term(self, sign):
        coeff = Fraction(sign)
        seen = False
        if self.peek()[0] == "int":
            num = int(self.take("int")[1])
            if self.peek()[0] == "/":
                self.take("/")
                tok = self.take("int")
                if int(tok[1]) == 0:
                    raise LaurentSyntaxError("zero denominator", tok[2])
                coeff *= Fraction(num, int(tok[1]))
            else:
                coeff *= num
            seen = True
        ex = [0, 0]
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take("*")
                if self.peek()[0] != "var":
                    tok = self.peek()
                    raise LaurentSyntaxError("expected 'x' or 'y' after '*'", tok[2])
                continue
            if kind != "var":
                break
            var = self.take("var")[1]
            e = 1
            if self.peek()[0] == "^":
                self.take("^")
                neg = False
                if self.peek()[0] == "-":
                    self.take("-")
                    neg = True
                e = int(self.take("int")[1])
                e = -e if neg else e
            ex[0 if var == "x" else 1] += e
            seen = True
        if not seen:
            tok = self.peek()
            raise LaurentSyntaxError("expected a term", tok[2])
        return (ex[0], ex[1]), coeff


def _fmt_coeff(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_laurent(f: LaurentPolynomial) -> str:
    """Canonical text: terms by descending x then descending y exponent."""
    if f.is_zero():
        return "0"
    parts = []
    for (i, j) in sorted(f.terms, key=lambda k: (-k[0], -k[1])):
        c = f.terms[(i, j)]
        mono = []
        if i:
            mono.append("x" if i == 1 else f"x^{i}")
        if j:
            mono.append("y" if j == 1 else f"y^{j}")
        mono_s = "*".join(mono)
        neg = c < 0 if f.modulus is None else False
        mag = -c if neg else c
        if not mono_s:
            body = _fmt_coeff(mag)
        elif mag == 1:
            body = mono_s
        else:
            body = f"{_fmt_coeff(mag)}*{mono_s}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


# ---------------------------------------------------------------- faces


def newton_polygon(f: LaurentPolynomial) -> LatticePolygon:
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no Newton polygon")
    return convex_hull(f.terms.keys())


@dataclass(frozen=True)
class Face:
    """A face of a lattice polygon: ``kind`` is ``"vertex"``, ``"edge"`` or ``"full"``."""

    kind: str
    points: tuple
    halfplane: HalfPlane | None = None
    index: int | None = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.kind == "vertex":
            out["point"] = list(self.points[0])
        elif self.kind == "edge":
            out["endpoints"] = [list(self.points[0]), list(self.points[-1])]
            out["lattice_points"] = len(self.points)
        return out


def faces(P: LatticePolygon) -> list:
    """Vertices, then edges (counterclockwise), then the full face."""
    if P.dimension < 2:
        raise NotTwoDimensional("faces are only enumerated for two-dimensional polygons")
    out = [Face("vertex", (v,), None, k) for k, v in enumerate(P.vertices)]
    for k, ((p, q), h) in enumerate(zip(P.edges(), P.halfplanes)):
        out.append(Face("edge", _edge_points(p, q), h, k))
    out.append(Face("full", tuple(P.points)))
    return out


def _edge_points(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    g = math.gcd(dx, dy)
    return tuple(LatticePoint(p[0] + t * dx // g, p[1] + t * dy // g) for t in range(g + 1))


def _is_face_of(tau: Face, P: LatticePolygon) -> bool:
    if tau.kind == "full":
        return set(tau.points) == set(P.points)
    if tau.kind == "vertex":
        return tau.points[0] in P.vertices
    ends = {tau.points[0], tau.points[-1]}
    return any(ends == {p, q} for p, q in P.edges()) and len(tau.points) >= 2


def face_restriction(f: LaurentPolynomial, tau: Face) -> LaurentPolynomial:
    P = newton_polygon(f)
    if not _is_face_of(tau, P):
        raise NotAFace(f"{tau.kind} {[tuple(p) for p in tau.points[:2]]} is not a face of the Newton polygon")
    pts = set(tau.points)
    return f._wrap({k: c for k, c in f.terms.items() if k in pts})


def edge_univariate(f: LaurentPolynomial, tau: Face) -> UPoly:
    """``g(T) = sum_t c_{u0 + t w} T^t`` along the edge (counterclockwise start)."""
    if tau.kind != "edge":
        raise NotAFace("edge_univariate needs an edge face")
    face_restriction(f, tau)  # validates
    dom = GF(f.modulus) if f.modulus is not None else QQ
    return UPoly(dom, [dom.convert(f.terms.get(tuple(p), 0)) for p in tau.points])


def edge_face(f: LaurentPolynomial, p, q) -> Face:
    """The edge face of Newton(f) with endpoints p and q (either order)."""
    P = newton_polygon(f)
    for face in faces(P):
        if face.kind == "edge" and {face.points[0], face.points[-1]} == {tuple(p), tuple(q)}:
            return face
    raise NotAFace(f"{p}-{q} is not an edge of the Newton polygon")


def reduce_mod_p(f: LaurentPolynomial, p: int) -> LaurentPolynomial:
    out = {}
    for k, c in f.terms.items():
        c = Fraction(c)
        if c.denominator % p == 0:
            raise BadPrime(f"{p} divides the denominator of coefficient {c}")
        out[k] = c.numerator * pow(c.denominator, -1, p) % p
    return LaurentPolynomial(out, modulus=p)
