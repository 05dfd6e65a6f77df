"""Exact dense univariate polynomials over small coefficient domains.

Domains: the rationals (:data:`QQ`), prime fields (:class:`GF`),
polynomial rings over those (:class:`PolyRing`, used to treat bivariate
polynomials as polynomials in y over K[x]) and quotient rings K[x]/(m)
with dynamic evaluation (:class:`QuotientRing`).

A quotient ring never decides a zero test it cannot justify: when an
element shares a nontrivial factor with the modulus it raises
:class:`ZeroDivisorSplit` carrying that factor, and the caller re-runs the
computation on both halves of the modulus.
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction

from .errors import BadPrime


class ZeroDivisorSplit(Exception):
    """Raised inside K[x]/(m) computations; ``factor`` is a proper monic divisor of m."""

    def __init__(self, factor):
        super().__init__(f"modulus splits off {factor}")
        self.factor = factor


# ---------------------------------------------------------------- domains


class _Rationals:
    is_field = True
    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    def convert(self, a):
        return Fraction(a)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a == 0

    def inv(self, a):
        return Fraction(1) / a

    def exquo(self, a, b):
        return Fraction(a) / b

    def __repr__(self):
        return "QQ"


QQ = _Rationals()


class GF:
    is_field = True

    def __init__(self, p: int):
        if not _cached_prime(p):
            raise BadPrime(f"{p} is not a prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1 % p

    def __eq__(self, other):
        return isinstance(other, GF) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def convert(self, a):
        if isinstance(a, Fraction):
            if a.denominator % self.p == 0:
                raise ZeroDivisionError(f"{self.p} divides the denominator of {a}")
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def is_zero(self, a):
        return a % self.p == 0

    def inv(self, a):
        return pow(a, -1, self.p)

    def exquo(self, a, b):
        return a * pow(b, -1, self.p) % self.p


class PolyRing:
    """K[x] for a field K; elements are :class:`UPoly` over K."""

    is_field = False

    def __init__(self, base):
        self.base = base
        self.zero = UPoly(base, [])
        self.one = UPoly(base, [base.one])
        self.characteristic = base.characteristic

    def __eq__(self, other):
        return isinstance(other, PolyRing) and other.base == self.base

    def __hash__(self):
        return hash(("PolyRing", self.base))

    def __repr__(self):
        return f"{self.base!r}[x]"

    def convert(self, a):
        if isinstance(a, UPoly):
            return a
        return UPoly(self.base, [self.base.convert(a)])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a):
        return a.is_zero()

    def exquo(self, a, b):
        q, r = divmod(a, b)
        if not r.is_zero():
            raise ArithmeticError(f"{b} does not divide {a}")
        return q

    def gcd(self, a, b):
        return gcd(a, b)


class QuotientRing:
    """K[x]/(m) with dynamic evaluation; ``m`` must be squarefree and monic."""

    is_field = True

    def __init__(self, modulus: "UPoly"):
        if modulus.degree() < 1:
            raise ValueError("modulus must have positive degree")
        self.modulus = modulus.monic()
        self.base = modulus.dom
        self.characteristic = self.base.characteristic
        self.zero = UPoly(self.base, [])
        self.one = UPoly(self.base, [self.base.one])
        self.gen = self.reduce(UPoly(self.base, [self.base.zero, self.base.one]))

    def __repr__(self):
        return f"{self.base!r}[x]/({self.modulus})"

    def reduce(self, a: "UPoly") -> "UPoly":
        return a % self.modulus

    def convert(self, a):
        if isinstance(a, UPoly):
            return self.reduce(a)
        return UPoly(self.base, [self.base.convert(a)])

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return -a

    def is_zero(self, a):
        if a.is_zero():
            return True
        g = gcd(a, self.modulus)
        if g.degree() > 0:
            raise ZeroDivisorSplit(g)
        return False

    def inv(self, a):
        g, s, _ = xgcd(a, self.modulus)
        if g.degree() > 0:
            raise ZeroDivisorSplit(g)
        if g.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return self.reduce(s.scale(self.base.inv(g.coeffs[0])))

    def exquo(self, a, b):
        return self.mul(a, self.inv(b))


# ---------------------------------------------------------------- polynomials


class UPoly:
    """Dense polynomial, coefficients stored low to high degree."""

    __slots__ = ("dom", "coeffs")

    def __init__(self, dom, coeffs):
        coeffs = list(coeffs)
        while coeffs and dom.is_zero(coeffs[-1]):
            coeffs.pop()
        self.dom = dom
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_ints(cls, dom, values):
        return cls(dom, [dom.convert(v) for v in values])

    @classmethod
    def monomial(cls, dom, k, c=None):
        c = dom.one if c is None else c
        return cls(dom, [dom.zero] * k + [c])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.dom.zero

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.dom.zero

    def __repr__(self):
        return f"UPoly({self.dom!r}, {list(self.coeffs)})"

    def __str__(self):
        return format_upoly(self, "T")

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return self.is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return UPoly(self.dom, [self.dom.neg(a) for a in self.coeffs])

    def __add__(self, other):
        d = self.dom
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(d, [d.add(self.coeff(k), other.coeff(k)) for k in range(n)])

    def __sub__(self, other):
        d = self.dom
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(d, [d.sub(self.coeff(k), other.coeff(k)) for k in range(n)])

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(self.dom.convert(other))
        d = self.dom
        if self.is_zero() or other.is_zero():
            return UPoly(d, [])
        out = [d.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if d.is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = d.add(out[i + j], d.mul(a, b))
        return UPoly(d, out)

    def scale(self, c):
        return UPoly(self.dom, [self.dom.mul(a, c) for a in self.coeffs])

    def shift(self, k: int):
        """Multiply by T^k."""
        if self.is_zero():
            return self
        return UPoly(self.dom, [self.dom.zero] * k + list(self.coeffs))

    def __divmod__(self, other):
        d = self.dom
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        inv_lc = d.inv(other.lc())
        r = list(self.coeffs)
        db = other.degree()
        q = [d.zero] * max(len(r) - db, 0)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if d.is_zero(c):
                continue
            c = d.mul(c, inv_lc)
            q[k - db] = c
            for j, b in enumerate(other.coeffs):
                r[k - db + j] = d.sub(r[k - db + j], d.mul(c, b))
        return UPoly(d, q), UPoly(d, r[:db] if db > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        out = UPoly(self.dom, [self.dom.one])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(self.dom.inv(self.lc()))

    def derivative(self):
        d = self.dom
        out = []
        for k in range(1, len(self.coeffs)):
            out.append(d.mul(self.coeffs[k], d.convert(k)))
        return UPoly(d, out)

    def __call__(self, t):
        d = self.dom
        acc = d.zero
        for a in reversed(self.coeffs):
            acc = d.add(d.mul(acc, t), a)
        return acc

    def map_coeffs(self, dom, fn):
        return UPoly(dom, [fn(a) for a in self.coeffs])

    def low_degree(self) -> int:
        """Largest k with T^k dividing self (``-1`` for zero)."""
        for k, a in enumerate(self.coeffs):
            if not self.dom.is_zero(a):
                return k
        return -1

    def strip_low(self):
        """Remove the power of T dividing self."""
        k = self.low_degree()
        if k <= 0:
            return self
        return UPoly(self.dom, self.coeffs[k:])


def format_upoly(p: UPoly, var="T") -> str:
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree(), -1, -1):
        c = p.coeffs[k]
        if p.dom.is_zero(c):
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if isinstance(c, UPoly):
            cs = f"({format_upoly(c, 'x')})"
        else:
            cs = str(c)
        if mono and cs == "1":
            parts.append(mono)
        elif mono and cs == "-1":
            parts.append("-" + mono)
        elif mono:
            parts.append(f"{cs}*{mono}")
        else:
            parts.append(cs)
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------- gcd & friends


def gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd over a field-like domain (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: UPoly, b: UPoly):
    """``(g, s, t)`` with ``s*a + t*b == g`` (g not normalized)."""
    d = a.dom
    one = UPoly(d, [d.one])
    zero = UPoly(d, [])
    r0, r1, s0, s1, t0, t1 = a, b, one, zero, zero, one
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    return r0, s0, t0


def squarefree_part(p: UPoly) -> UPoly:
    """``p / gcd(p, p')`` made monic; valid in characteristic 0 and for deg p < char."""
    if p.degree() <= 0:
        return p.monic()
    g = gcd(p, p.derivative())
    return (p // g).monic()


def is_squarefree(p: UPoly) -> bool:
    return gcd(p, p.derivative()).degree() <= 0


def prem(a: UPoly, b: UPoly) -> UPoly:
    """Pseudo-remainder ``lc(b)^(deg a - deg b + 1) * a mod b`` without division."""
    d = a.dom
    db = b.degree()
    r = a
    lb = b.lc()
    e = a.degree() - db + 1
    if e <= 0:
        return a
    while not r.is_zero() and r.degree() >= db:
        k = r.degree() - db
        lr = r.lc()
        r = r.scale(lb) - b.shift(k).scale(lr)
        e -= 1
    if e > 0:
        r = r.scale(_power(d, lb, e))
    return r


def _power(d, a, n):
    out = d.one
    for _ in range(n):
        out = d.mul(out, a)
    return out


def resultant(a: UPoly, b: UPoly):
    """Resultant over an integral domain via the subresultant PRS."""
    d = a.dom
    if a.is_zero() or b.is_zero():
        return d.zero
    s = d.one
    if a.degree() < b.degree():
        a, b = b, a
        if a.degree() % 2 and b.degree() % 2:
            s = d.neg(s)
    if b.degree() == 0:
        return d.mul(s, _power(d, b.lc(), a.degree()))
    g = d.one
    h = d.one
    while b.degree() > 0:
        delta = a.degree() - b.degree()
        if a.degree() % 2 and b.degree() % 2:
            s = d.neg(s)
        r = prem(a, b)
        if r.is_zero():
            return d.zero
        a = b
        div = d.mul(g, _power(d, h, delta))
        b = UPoly(d, [d.exquo(c, div) for c in r.coeffs])
        g = a.lc()
        if delta == 0:
            pass
        else:
            h = d.exquo(_power(d, g, delta), _power(d, h, delta - 1))
    # b is a nonzero constant here
    da = a.degree()
    h = d.exquo(_power(d, b.lc(), da), _power(d, h, da - 1))
    return d.mul(s, h)


def sylvester_resultant(a: UPoly, b: UPoly):
    """Determinant of the Sylvester matrix by fraction-free elimination (test aid)."""
    d = a.dom
    m, n = a.degree(), b.degree()
    size = m + n
    if size == 0:
        return d.one
    rows = []
    for i in range(n):
        rows.append([d.zero] * i + list(reversed(a.coeffs)) + [d.zero] * (n - 1 - i))
    for i in range(m):
        rows.append([d.zero] * i + list(reversed(b.coeffs)) + [d.zero] * (m - 1 - i))
    return _bareiss(d, rows)


def _bareiss(d, M):
    M = [list(r) for r in M]
    n = len(M)
    sign = d.one
    prev = d.one
    for k in range(n - 1):
        if d.is_zero(M[k][k]):
            for i in range(k + 1, n):
                if not d.is_zero(M[i][k]):
                    M[k], M[i] = M[i], M[k]
                    sign = d.neg(sign)
                    break
            else:
                return d.zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = d.sub(d.mul(M[i][j], M[k][k]), d.mul(M[i][k], M[k][j]))
                M[i][j] = d.exquo(num, prev)
        prev = M[k][k]
    return d.mul(sign, M[n - 1][n - 1])


# ---------------------------------------------------------------- bivariate helpers
# A bivariate polynomial is a UPoly in y over PolyRing(K): coefficient k is a
# polynomial in x.


def content(p: UPoly) -> UPoly:
    """gcd in K[x] of the coefficients of p in K[x][y] (monic)."""
    R = p.dom
    g = R.zero
    for c in p.coeffs:
        g = gcd(g, c)
        if g.degree() == 0:
            break
    return g


def primitive_part(p: UPoly) -> UPoly:
    c = content(p)
    if c.is_zero():
        return p
    return UPoly(p.dom, [p.dom.exquo(a, c) for a in p.coeffs])


def bivariate_gcd(a: UPoly, b: UPoly) -> UPoly:
    """gcd in K[x][y] by the primitive pseudo-remainder sequence."""
    R = a.dom
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ca, cb = content(a), content(b)
    cg = gcd(ca, cb)
    a, b = primitive_part(a), primitive_part(b)
    if a.degree() < b.degree():
        a, b = b, a
    while b.degree() > 0:
        r = prem(a, b)
        if r.is_zero():
            break
        a, b = b, primitive_part(r)
    if b.degree() == 0 and not b.is_zero():
        return UPoly(R, [cg])
    g = primitive_part(b)
    lcx = g.lc().lc()
    g = UPoly(R, [c.scale(R.base.inv(lcx)) for c in g.coeffs])
    return UPoly(R, [cg * c for c in g.coeffs])


def bivariate_from_terms(terms: dict, dom=QQ) -> UPoly:
    """``{(i, j): c}`` with i, j >= 0 to a UPoly in y over dom[x]."""
    R = PolyRing(dom)
    if not terms:
        return UPoly(R, [])
    ymax = max(j for _, j in terms)
    xmax = max(i for i, _ in terms)
    rows = [[dom.zero] * (xmax + 1) for _ in range(ymax + 1)]
    for (i, j), c in terms.items():
        rows[j][i] = dom.add(rows[j][i], dom.convert(c))
    return UPoly(R, [UPoly(dom, r) for r in rows])


def bivariate_terms(p: UPoly) -> dict:
    out = {}
    for j, cx in enumerate(p.coeffs):
        for i, c in enumerate(cx.coeffs):
            if not cx.dom.is_zero(c):
                out[(i, j)] = c
    return out


def bivariate_degree_x(p: UPoly) -> int:
    return max((c.degree() for c in p.coeffs), default=-1)


def strip_x_power(p: UPoly) -> UPoly:
    """Divide a bivariate polynomial by the largest power of x dividing it."""
    k = min((c.low_degree() for c in p.coeffs if not c.is_zero()), default=0)
    if k <= 0:
        return p
    return UPoly(p.dom, [UPoly(c.dom, c.coeffs[k:]) if not c.is_zero() else c for c in p.coeffs])


def specialize_x(p: UPoly, x0, dom) -> UPoly:
    """Substitute x = x0 in a bivariate polynomial; result is a UPoly in y over dom."""
    return UPoly(dom, [c(x0) for c in p.coeffs])


# ---------------------------------------------------------------- finite fields


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@functools.lru_cache(maxsize=256)
def _cached_prime(n: int) -> bool:
    return is_probable_prime(n)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(rng: random.Random, bits: int = 31) -> int:
    while True:
        n = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(n):
            return n


def _powmod(base: UPoly, e: int, mod: UPoly) -> UPoly:
    out = UPoly(base.dom, [base.dom.one])
    base = base % mod
    while e:
        if e & 1:
            out = (out * base) % mod
        base = (base * base) % mod
        e >>= 1
    return out


def univariate_roots_mod_p(g: UPoly, p: int, rng: random.Random | None = None) -> list:
    """All roots in GF(p) of ``g`` (coefficients already in GF(p)), sorted."""
    F = GF(p)
    if not isinstance(g.dom, GF) or g.dom.p != p:
        g = UPoly(F, [F.convert(c) for c in g.coeffs])
    if g.is_zero():
        raise ValueError("the zero polynomial vanishes everywhere")
    if g.degree() == 0:
        return []
    if p == 2:
        return [t for t in (0, 1) if g(t) == 0]
    X = UPoly(F, [0, 1])
    h = gcd(g, _powmod(X, p, g) - X)
    rng = rng or random.Random(0)
    roots = []
    _split_linear(h, F, rng, roots)
    return sorted(roots)


def _split_linear(h: UPoly, F: GF, rng, roots):
    if h.degree() <= 0:
        return
    if h.degree() == 1:
        roots.append(F.neg(F.mul(h.coeffs[0], F.inv(h.coeffs[1]))))
        return
    p = F.p
    one = UPoly(F, [1])
    while True:
        a = rng.randrange(p)
        w = _powmod(UPoly(F, [a, 1]), (p - 1) // 2, h) - one
        d = gcd(h, w)
        if 0 < d.degree() < h.degree():
            _split_linear(d, F, rng, roots)
            _split_linear(h // d, F, rng, roots)
            return
