"""Integer kernels for the lattice hot loops.

Every kernel exists twice: an ``@njit`` loop version and a vectorized numpy
version.  ``TETRAGONAL_DISABLE_NUMBA=1`` (or a missing numba install) selects
the numpy versions.  Both operate on int64 arrays; callers guard the input
range with :func:`check_range` so products never wrap.
"""

import os

import numpy as np

from .errors import LatticeOverflowError

# |coordinate| bound; products of two such values plus a sum stay below 2**63.
SAFE_COORD = 2**30

_DISABLED = os.environ.get("TETRAGONAL_DISABLE_NUMBA", "").strip().lower() in (
    "1",
    "true",
    "yes",
)

try:
    if _DISABLED:
        raise ImportError
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def check_range(values):
    arr = np.asarray(values, dtype=object)
    if arr.size and max(abs(int(v)) for v in arr.ravel()) >= SAFE_COORD:
        raise LatticeOverflowError(
            f"coordinate magnitude exceeds {SAFE_COORD}; int64 kernels would overflow"
        )


# ---------------------------------------------------------------- numpy path


def _row_ranges_np(a, b, c, ymin, ymax):
    ys = np.arange(ymin, ymax + 1, dtype=np.int64)[:, None]
    r = c[None, :] - b[None, :] * ys
    big = np.int64(2**62)
    pos = a > 0
    neg = a < 0
    zer = a == 0
    with np.errstate(divide="ignore"):
        safe_a = np.where(a == 0, 1, a)
        hi_each = np.where(pos[None, :], r // safe_a[None, :], big)
        lo_each = np.where(neg[None, :], -((-r) // safe_a[None, :]), -big)
    lo = lo_each.max(axis=1)
    hi = hi_each.min(axis=1)
    blocked = (zer[None, :] & (r < 0)).any(axis=1)
    hi = np.where(blocked, lo - 1, hi)
    return lo, hi


def _widths_np(verts, dirs):
    proj = dirs @ verts.T
    return proj.max(axis=1) - proj.min(axis=1)


def _strip_mask_np(desc):
    b0, b1, a2, b2 = (desc[:, k].astype(np.int64) for k in range(4))
    n = desc.shape[0]
    zero = np.zeros(n, dtype=np.int64)
    ok = (b0 >= 0) & (b1 >= 0) & (a2 <= b2) & (a2 >= -1) & (b0 + b2 <= 2 * b1 + 1)
    ok &= ~((b0 == 0) & (b1 == 0) & (a2 == 0) & (b2 == 0))

    xs = np.stack([zero, b0, zero, b1, a2, b2], axis=1)
    ys = np.array([0, 0, 1, 1, 2, 2], dtype=np.int64)
    ext = xs.max(axis=1) - xs.min(axis=1)
    ok &= ext >= 2
    for p in range(-2, 3):
        vals = p * xs + ys[None, :]
        ok &= (vals.max(axis=1) - vals.min(axis=1)) >= 2

    # edge slots in counterclockwise order; exactly the valid ones form the cycle
    rv = 2 * b1 > b0 + b2
    lv = a2 > 0
    one = np.ones(n, dtype=np.int64)
    two = 2 * one
    slots = [
        ((zero, zero), (b0, zero), b0 > 0),
        ((b0, zero), (b1, one), rv),
        ((b1, one), (b2, two), rv),
        ((b0, zero), (b2, two), ~rv),
        ((b2, two), (a2, two), b2 > a2),
        ((a2, two), (zero, one), lv),
        ((zero, one), (zero, zero), lv),
        ((a2, two), (zero, zero), ~lv),
    ]
    la, lb, lc, valid = [], [], [], []
    for (px, py), (qx, qy), v in slots:
        dx = qx - px
        dy = qy - py
        g = np.gcd(dx, dy)
        g = np.where(g == 0, 1, g)
        aa = dy // g
        bb = -dx // g
        la.append(aa)
        lb.append(bb)
        lc.append(aa * px + bb * py + 1)
        valid.append(v)
    la = np.stack(la, axis=1)
    lb = np.stack(lb, axis=1)
    lc = np.stack(lc, axis=1)
    valid = np.stack(valid, axis=1)
    doubled = np.concatenate([valid, valid], axis=1)
    rows = np.arange(n)
    for k in range(8):
        window = doubled[:, k + 1 : k + 9]
        nxt = (k + 1 + window.argmax(axis=1)) % 8
        a1, b1_, c1 = la[:, k], lb[:, k], lc[:, k]
        a2_, b2_, c2 = la[rows, nxt], lb[rows, nxt], lc[rows, nxt]
        det = a1 * b2_ - a2_ * b1_
        det_safe = np.where(det == 0, 1, det)
        xnum = c1 * b2_ - c2 * b1_
        ynum = a1 * c2 - a2_ * c1
        integral = (xnum % det_safe == 0) & (ynum % det_safe == 0) & (det != 0)
        ok &= ~valid[:, k] | integral
    return ok


# ---------------------------------------------------------------- numba path

if HAS_NUMBA:

    @njit(cache=True)
    def _row_ranges_nb(a, b, c, ymin, ymax):
        nrows = ymax - ymin + 1
        lo = np.empty(nrows, dtype=np.int64)
        hi = np.empty(nrows, dtype=np.int64)
        for k in range(nrows):
            y = ymin + k
            l = -(2**62)
            h = 2**62
            blocked = False
            for e in range(a.shape[0]):
                r = c[e] - b[e] * y
                if a[e] > 0:
                    v = r // a[e]
                    if v < h:
                        h = v
                elif a[e] < 0:
                    v = -((-r) // a[e])
                    if v > l:
                        l = v
                elif r < 0:
                    blocked = True
            lo[k] = l
            hi[k] = l - 1 if blocked else h
        return lo, hi

    @njit(cache=True)
    def _widths_nb(verts, dirs):
        out = np.empty(dirs.shape[0], dtype=np.int64)
        for k in range(dirs.shape[0]):
            mn = 2**62
            mx = -(2**62)
            for i in range(verts.shape[0]):
                v = dirs[k, 0] * verts[i, 0] + dirs[k, 1] * verts[i, 1]
                if v < mn:
                    mn = v
                if v > mx:
                    mx = v
            out[k] = mx - mn
        return out

    @njit(cache=True)
    def _gcd(a, b):
        a = abs(a)
        b = abs(b)
        while b:
            a, b = b, a % b
        return a

    @njit(cache=True)
    def _strip_one(b0, b1, a2, b2):
        if b0 < 0 or b1 < 0 or a2 > b2 or a2 < -1 or b0 + b2 > 2 * b1 + 1:
            return False
        if b0 == 0 and b1 == 0 and a2 == 0 and b2 == 0:
            return False
        xs = np.array([0, b0, 0, b1, a2, b2], dtype=np.int64)
        ys = np.array([0, 0, 1, 1, 2, 2], dtype=np.int64)
        if xs.max() - xs.min() < 2:
            return False
        for p in range(-2, 3):
            mn = 2**62
            mx = -(2**62)
            for i in range(6):
                v = p * xs[i] + ys[i]
                mn = min(mn, v)
                mx = max(mx, v)
            if mx - mn < 2:
                return False
        # collect the counterclockwise vertex cycle
        vx = np.empty(6, dtype=np.int64)
        vy = np.empty(6, dtype=np.int64)
        n = 0
        vx[n] = 0
        vy[n] = 0
        n += 1
        if b0 > 0:
            vx[n] = b0
            vy[n] = 0
            n += 1
        if 2 * b1 > b0 + b2:
            vx[n] = b1
            vy[n] = 1
            n += 1
        vx[n] = b2
        vy[n] = 2
        n += 1
        if b2 > a2:
            vx[n] = a2
            vy[n] = 2
            n += 1
        if a2 > 0:
            vx[n] = 0
            vy[n] = 1
            n += 1
        la = np.empty(n, dtype=np.int64)
        lb = np.empty(n, dtype=np.int64)
        lc = np.empty(n, dtype=np.int64)
        for i in range(n):
            j = (i + 1) % n
            dx = vx[j] - vx[i]
            dy = vy[j] - vy[i]
            g = _gcd(dx, dy)
            la[i] = dy // g
            lb[i] = -dx // g
            lc[i] = la[i] * vx[i] + lb[i] * vy[i] + 1
        for i in range(n):
            j = (i + 1) % n
            det = la[i] * lb[j] - la[j] * lb[i]
            if det == 0:
                return False
            xnum = lc[i] * lb[j] - lc[j] * lb[i]
            ynum = la[i] * lc[j] - la[j] * lc[i]
            if xnum % det != 0 or ynum % det != 0:
                return False
        return True

    @njit(cache=True)
    def _strip_mask_nb(desc):
        out = np.empty(desc.shape[0], dtype=np.bool_)
        for k in range(desc.shape[0]):
            out[k] = _strip_one(desc[k, 0], desc[k, 1], desc[k, 2], desc[k, 3])
        return out


def row_ranges(a, b, c, ymin, ymax, use_numba=None):
    """Integer x-interval ``[lo, hi]`` of ``{a*x + b*y <= c}`` for each row y.

    Rows with ``hi < lo`` are empty.
    """
    a = np.ascontiguousarray(a, dtype=np.int64)
    b = np.ascontiguousarray(b, dtype=np.int64)
    c = np.ascontiguousarray(c, dtype=np.int64)
    if _pick(use_numba):
        return _row_ranges_nb(a, b, c, np.int64(ymin), np.int64(ymax))
    return _row_ranges_np(a, b, c, ymin, ymax)


def directional_widths(verts, dirs, use_numba=None):
    verts = np.ascontiguousarray(verts, dtype=np.int64).reshape(-1, 2)
    dirs = np.ascontiguousarray(dirs, dtype=np.int64).reshape(-1, 2)
    if _pick(use_numba):
        return _widths_nb(verts, dirs)
    return _widths_np(verts, dirs)


def strip_candidate_mask(desc, use_numba=None):
    """Cheap necessary test on strip descriptors ``(b0, b1, a2, b2)``.

    The rows are ``[0, b0]`` at Y=0, ``[0, b1]`` at Y=1 and ``[a2, b2]`` at
    Y=2.  True means: the rows are exactly the lattice rows of their hull, the
    hull has lattice width 2, and the outward shifts of adjacent edges meet in
    lattice points.  Survivors still need the exact interior-polygon check.
    """
    desc = np.ascontiguousarray(desc, dtype=np.int64).reshape(-1, 4)
    if _pick(use_numba):
        return _strip_mask_nb(desc)
    return _strip_mask_np(desc)


def _pick(use_numba):
    if use_numba is None:
        return HAS_NUMBA
    if use_numba and not HAS_NUMBA:
        raise RuntimeError("numba kernels requested but numba is unavailable or disabled")
    return bool(use_numba)
