# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled grid kernels: Wigner values on a lattice and per-strip integrals.

Kind codes: 0 = squeezed displaced Fock, params (n, s, phi, q0, p0);
1 = cat, params (q0, p0, N^2).
"""
import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport exp, cos, sin, cosh, sinh, M_PI
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    BLOCK = 16

# exp(-x/2) is exactly 0.0 beyond this
cdef double X_ZERO = 1490.0

BACKEND = "cython"


cdef void _row(int kind, double* par, double q, double pmin, double hp, Py_ssize_t np_,
               double* colA, double* colB, double* xs, double* w0, double* out) noexcept nogil:
    # xs and w0 are scratch rows of length np_; the recurrence runs across the
    # whole row per order so the inner loop vectorizes
    cdef Py_ssize_t j
    cdef int n, k
    cdef double dq, dp, re, im, sign, ch, sh, c, s, a, b, pref, ik, ck, t
    if kind == 0:
        n = <int>par[0]
        ch = cosh(par[1]); sh = sinh(par[1]); c = cos(par[2]); s = sin(par[2])
        sign = -1.0 / M_PI if n % 2 else 1.0 / M_PI
        dq = q - par[3]
        for j in range(np_):
            dp = pmin + j * hp - par[4]
            re = ch * dq + sh * (c * dq + s * dp)
            im = -ch * dp + sh * (c * dp - s * dq)
            xs[j] = 2.0 * (re * re + im * im)
            w0[j] = 0.0 if xs[j] > X_ZERO else exp(-0.5 * xs[j])
        if n == 0:
            for j in range(np_):
                out[j] = sign * w0[j]
            return
        for j in range(np_):
            out[j] = (1.0 - xs[j]) * w0[j]
        for k in range(1, n):
            a = 2.0 * k + 1.0
            ik = 1.0 / (k + 1.0)
            ck = k * ik
            for j in range(np_):
                t = (a - xs[j]) * out[j] * ik - ck * w0[j]
                w0[j] = out[j]
                out[j] = t
        for j in range(np_):
            out[j] = sign * out[j]
    else:
        pref = par[2] / M_PI
        a = 0.5 * (exp(-(q + par[0]) * (q + par[0])) + exp(-(q - par[0]) * (q - par[0])))
        b = exp(-q * q)
        for j in range(np_):
            out[j] = pref * colA[j] * (a + colB[j] * b)


cdef void _columns(int kind, double* par, double pmin, double hp, Py_ssize_t np_,
                   double* colA, double* colB) noexcept nogil:
    cdef Py_ssize_t j
    cdef double p
    if kind != 1:
        return
    for j in range(np_):
        p = pmin + j * hp
        colA[j] = exp(-(p - par[1]) * (p - par[1]))
        colB[j] = cos(2.0 * p * par[0])


cdef inline double _neg_tri(double a, double b, double c) noexcept nogil:
    # integral of max(-P1, 0) over a unit-area triangle with vertex values a, b, c
    cdef double lo, mid, hi, t
    lo = a; mid = b; hi = c
    if lo > mid:
        t = lo; lo = mid; mid = t
    if mid > hi:
        t = mid; mid = hi; hi = t
    if lo > mid:
        t = lo; lo = mid; mid = t
    if lo >= 0.0:
        return 0.0
    if hi <= 0.0:
        return -(a + b + c) / 3.0
    if mid >= 0.0:
        return -lo * lo * lo / (3.0 * (lo - mid) * (lo - hi))
    return hi * hi * hi / (3.0 * (hi - lo) * (hi - mid)) - (a + b + c) / 3.0


def grid_values(int kind, double[::1] params, double qmin, double qmax, Py_ssize_t nq,
                double pmin, double pmax, Py_ssize_t np_, int nthreads=1):
    """Wigner values at ``nq x np_`` uniform nodes (endpoints included)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nq, np_))
    cdef double[:, ::1] ov = out
    cdef double hq = (qmax - qmin) / (nq - 1)
    cdef double hp = (pmax - pmin) / (np_ - 1)
    cdef double* par = &params[0]
    cdef double* colA = <double*>malloc(np_ * sizeof(double))
    cdef double* colB = <double*>malloc(np_ * sizeof(double))
    cdef Py_ssize_t i
    cdef double* scratch
    if colA == NULL or colB == NULL:
        free(colA); free(colB)
        raise MemoryError()
    try:
        _columns(kind, par, pmin, hp, np_, colA, colB)
        for i in prange(nq, nogil=True, num_threads=max(nthreads, 1), schedule="static"):
            scratch = <double*>malloc(2 * np_ * sizeof(double))
            _row(kind, par, qmin + i * hq, pmin, hp, np_, colA, colB,
                 scratch, scratch + np_, &ov[i, 0])
            free(scratch)
    finally:
        free(colA); free(colB)
    return out


def strip_integrals(int kind, double[::1] params, double qmin, double qmax, Py_ssize_t nq,
                    double pmin, double pmax, Py_ssize_t np_, int nthreads=1):
    """Per-strip sums over the triangulated lattice.

    Each cell between node rows i and i+1 is split along its (i,j)-(i+1,j+1)
    diagonal. Returns ``(neg, tot)`` of length ``nq - 1``: for strip i, the sum
    over its triangles of the exact integral of the negative part of the
    linear interpolant, and of the interpolant itself, both per unit
    triangle area.
    """
    cdef Py_ssize_t nstrips = nq - 1
    cdef Py_ssize_t nblocks = (nstrips + BLOCK - 1) // BLOCK
    cdef cnp.ndarray[cnp.float64_t, ndim=1] neg = np.zeros(nstrips)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] tot = np.zeros(nstrips)
    cdef double[::1] negv = neg
    cdef double[::1] totv = tot
    cdef double hq = (qmax - qmin) / (nq - 1)
    cdef double hp = (pmax - pmin) / (np_ - 1)
    cdef double* par = &params[0]
    cdef double* colA = <double*>malloc(np_ * sizeof(double))
    cdef double* colB = <double*>malloc(np_ * sizeof(double))
    cdef Py_ssize_t blk, i, j, i0, i1
    cdef double* lo
    cdef double* hi
    cdef double* tmp
    cdef double* scratch
    cdef double sneg, stot, a, b, c, d
    if colA == NULL or colB == NULL:
        free(colA); free(colB)
        raise MemoryError()
    try:
        _columns(kind, par, pmin, hp, np_, colA, colB)
        for blk in prange(nblocks, nogil=True, num_threads=max(nthreads, 1), schedule="dynamic"):
            lo = <double*>malloc(np_ * sizeof(double))
            hi = <double*>malloc(np_ * sizeof(double))
            scratch = <double*>malloc(2 * np_ * sizeof(double))
            i0 = blk * BLOCK
            i1 = i0 + BLOCK
            if i1 > nstrips:
                i1 = nstrips
            _row(kind, par, qmin + i0 * hq, pmin, hp, np_, colA, colB, scratch, scratch + np_, lo)
            for i in range(i0, i1):
                _row(kind, par, qmin + (i + 1) * hq, pmin, hp, np_, colA, colB,
                     scratch, scratch + np_, hi)
                sneg = 0.0
                stot = 0.0
                for j in range(np_ - 1):
                    a = lo[j]; b = hi[j]; c = hi[j + 1]; d = lo[j + 1]
                    sneg = sneg + _neg_tri(a, b, c) + _neg_tri(a, c, d)
                    stot = stot + (2.0 * a + b + 2.0 * c + d) / 3.0
                negv[i] = sneg
                totv[i] = stot
                tmp = lo; lo = hi; hi = tmp
            free(lo)
            free(hi)
            free(scratch)
    finally:
        free(colA); free(colB)
    return neg, tot
