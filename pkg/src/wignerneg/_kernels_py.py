"""Pure-numpy fallback with the same interface as the compiled kernels."""
import math

import numpy as np

BACKEND = "python"

_BLOCK = 64
_X_ZERO = 1490.0


def _wl(n, x):
    w0 = np.where(x > _X_ZERO, 0.0, np.exp(-0.5 * np.minimum(x, _X_ZERO)))
    if n == 0:
        return w0
    w1 = (1.0 - x) * w0
    for k in range(1, n):
        ik = 1.0 / (k + 1.0)
        w0, w1 = w1, (2.0 * k + 1.0 - x) * w1 * ik - (k * ik) * w0
    return w1


def _rows(kind, params, q, p):
    q = q[:, None]
    if kind == 0:
        n = int(params[0])
        s, phi, q0, p0 = params[1:5]
        ch, sh, c, sn = math.cosh(s), math.sinh(s), math.cos(phi), math.sin(phi)
        dq = q - q0
        dp = p[None, :] - p0
        re = ch * dq + sh * (c * dq + sn * dp)
        im = -ch * dp + sh * (c * dp - sn * dq)
        sign = (-1.0 if n % 2 else 1.0) / math.pi
        return sign * _wl(n, 2.0 * (re * re + im * im))
    q0, p0, n2 = params[:3]
    col_a = np.exp(-((p - p0) ** 2))[None, :]
    col_b = np.cos(2.0 * p * q0)[None, :]
    a = 0.5 * (np.exp(-((q + q0) ** 2)) + np.exp(-((q - q0) ** 2)))
    b = np.exp(-q * q)
    return n2 / math.pi * col_a * (a + col_b * b)


def _neg_tri(a, b, c):
    s = np.sort(np.stack([a, b, c]), axis=0)
    lo, mid, hi = s
    mean = (a + b + c) / 3.0
    with np.errstate(divide="ignore", invalid="ignore"):
        one = -lo ** 3 / (3.0 * (lo - mid) * (lo - hi))
        two = hi ** 3 / (3.0 * (hi - lo) * (hi - mid)) - mean
    out = np.where(mid >= 0.0, one, two)
    out = np.where(hi <= 0.0, -mean, out)
    return np.where(lo >= 0.0, 0.0, out)


def grid_values(kind, params, qmin, qmax, nq, pmin, pmax, np_, nthreads=1):
    q = qmin + np.arange(nq) * ((qmax - qmin) / (nq - 1))
    p = pmin + np.arange(np_) * ((pmax - pmin) / (np_ - 1))
    out = np.empty((nq, np_))
    for i0 in range(0, nq, _BLOCK):
        out[i0:i0 + _BLOCK] = _rows(kind, params, q[i0:i0 + _BLOCK], p)
    return out


def strip_integrals(kind, params, qmin, qmax, nq, pmin, pmax, np_, nthreads=1):
    hq = (qmax - qmin) / (nq - 1)
    q = qmin + np.arange(nq) * hq
    p = pmin + np.arange(np_) * ((pmax - pmin) / (np_ - 1))
    nstrips = nq - 1
    neg = np.empty(nstrips)
    tot = np.empty(nstrips)
    for i0 in range(0, nstrips, _BLOCK):
        i1 = min(i0 + _BLOCK, nstrips)
        w = _rows(kind, params, q[i0:i1 + 1], p)
        a, b = w[:-1, :-1], w[1:, :-1]
        c, d = w[1:, 1:], w[:-1, 1:]
        neg[i0:i1] = (_neg_tri(a, b, c) + _neg_tri(a, c, d)).sum(axis=1)
        tot[i0:i1] = ((2.0 * a + b + 2.0 * c + d) / 3.0).sum(axis=1)
    return neg, tot
