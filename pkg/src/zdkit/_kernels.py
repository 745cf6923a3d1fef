"""Hot numeric kernels.

Every kernel exists twice: a numba ``@njit`` loop and a vectorised numpy
twin.  The public names at the bottom of the module are bound to one or the
other once, at import time.  Set ``ZDKIT_DISABLE_JIT=1`` to force the numpy
path (numba is also skipped automatically when it cannot be imported).

Diagonal-pairing masks use this bit layout::

    bit 0: (+, +)   bit 1: (+, -)   bit 2: (-, +)   bit 3: (-, -)

where ``(s1, s2)`` are the slopes of ``e_U1 + s1 e_L1`` and ``e_U2 + s2 e_L2``.
"""

import os

import numpy as np

_FALSY = {"", "0", "false", "no", "off"}


def _jit_requested():
    return os.environ.get("ZDKIT_DISABLE_JIT", "0").strip().lower() in _FALSY


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _jit_requested()

PAIRINGS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


# -- numpy implementations ----------------------------------------------------


def sign_table_numpy(trips, size):
    sign = np.zeros((size, size), dtype=np.int8)
    sign[0, :] = 1
    sign[:, 0] = 1
    idx = np.arange(1, size)
    sign[idx, idx] = -1
    if len(trips):
        p, q, r = trips[:, 0], trips[:, 1], trips[:, 2]
        for x, y in ((p, q), (q, r), (r, p)):
            sign[x, y] = 1
            sign[y, x] = -1
    return sign


def dense_mul_numpy(x, y, sign):
    size = x.shape[0]
    out = np.zeros(size, dtype=np.int64)
    i = np.flatnonzero(x)
    j = np.flatnonzero(y)
    if i.size == 0 or j.size == 0:
        return out
    terms = np.outer(x[i], y[j]) * sign[np.ix_(i, j)]
    np.add.at(out, np.bitwise_xor.outer(i, j).ravel(), terms.ravel())
    return out


def zd_masks_numpy(ls, x, sign):
    l1 = ls[:, None]
    l2 = ls[None, :]
    u1 = l1 ^ x
    u2 = l2 ^ x
    s_uu = sign[u1, u2].astype(np.int64)
    s_ll = sign[l1, l2].astype(np.int64)
    s_ul = sign[u1, l2].astype(np.int64)
    s_lu = sign[l1, u2].astype(np.int64)
    mask = np.zeros(s_uu.shape, dtype=np.uint8)
    for bit, (s1, s2) in enumerate(PAIRINGS):
        zero = (s_uu + s1 * s2 * s_ll == 0) & (s2 * s_ul + s1 * s_lu == 0)
        mask |= zero.astype(np.uint8) << bit
    return mask


# -- numba implementations ----------------------------------------------------


def _sign_table_loop(trips, size):
    sign = np.zeros((size, size), dtype=np.int8)
    for k in range(size):
        sign[0, k] = 1
        sign[k, 0] = 1
        if k:
            sign[k, k] = -1
    for t in range(trips.shape[0]):
        p = trips[t, 0]
        q = trips[t, 1]
        r = trips[t, 2]
        sign[p, q] = 1
        sign[q, p] = -1
        sign[q, r] = 1
        sign[r, q] = -1
        sign[r, p] = 1
        sign[p, r] = -1
    return sign


def _dense_mul_loop(x, y, sign):
    size = x.shape[0]
    out = np.zeros(size, dtype=np.int64)
    for i in range(size):
        xi = x[i]
        if xi == 0:
            continue
        for j in range(size):
            yj = y[j]
            if yj != 0:
                out[i ^ j] += xi * yj * sign[i, j]
    return out


def _zd_masks_loop(ls, x, sign):
    m = ls.shape[0]
    mask = np.zeros((m, m), dtype=np.uint8)
    for a in range(m):
        l1 = ls[a]
        u1 = l1 ^ x
        for b in range(m):
            l2 = ls[b]
            u2 = l2 ^ x
            s_uu = np.int64(sign[u1, u2])
            s_ll = np.int64(sign[l1, l2])
            s_ul = np.int64(sign[u1, l2])
            s_lu = np.int64(sign[l1, u2])
            bits = 0
            if s_uu + s_ll == 0 and s_ul + s_lu == 0:
                bits |= 1
            if s_uu - s_ll == 0 and -s_ul + s_lu == 0:
                bits |= 2
            if s_uu - s_ll == 0 and s_ul - s_lu == 0:
                bits |= 4
            if s_uu + s_ll == 0 and -s_ul - s_lu == 0:
                bits |= 8
            mask[a, b] = bits
    return mask


if HAVE_NUMBA:
    sign_table_jit = njit(cache=False)(_sign_table_loop)
    dense_mul_jit = njit(cache=False)(_dense_mul_loop)
    zd_masks_jit = njit(cache=False)(_zd_masks_loop)
else:  # pragma: no cover
    sign_table_jit = _sign_table_loop
    dense_mul_jit = _dense_mul_loop
    zd_masks_jit = _zd_masks_loop


if USE_NUMBA:
    sign_table = sign_table_jit
    dense_mul = dense_mul_jit
    zd_masks = zd_masks_jit
else:
    sign_table = sign_table_numpy
    dense_mul = dense_mul_numpy
    zd_masks = zd_masks_numpy


def backend():
    return "numba" if USE_NUMBA else "numpy"
