# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot quadrature kernel.

Same contract as ``_kernels_py.weighted_kernel_sum``.  The inner loop is
written in explicit real arithmetic (one real divide per node instead of a
library complex division) and the reduction over nodes is a fixed-topology
pairwise sum, so results are reproducible for a given input regardless of
how callers parallelize across points.
"""

from libc.math cimport atan2, cos, exp, log, sin

import numpy as np

cdef struct _C:
    double re
    double im


cdef inline _C _principal_pow(double wr, double wi, int npow) noexcept nogil:
    # w**(npow/2): exact integer power for even npow, principal log otherwise
    cdef _C out
    cdef double ar, ai, tr, mag, ang, half
    cdef int k
    if wi == 0.0:
        wi = 0.0  # normalize -0.0 so the cut maps upward
    if npow % 2 == 0:
        ar = 1.0
        ai = 0.0
        for k in range(npow // 2):
            tr = ar * wr - ai * wi
            ai = ar * wi + ai * wr
            ar = tr
        out.re = ar
        out.im = ai
        return out
    half = 0.5 * npow
    mag = exp(half * 0.5 * log(wr * wr + wi * wi))
    ang = half * atan2(wi, wr)
    out.re = mag * cos(ang)
    out.im = mag * sin(ang)
    return out


cdef _C _pair_sum(
    const double* zr,
    const double* zi,
    const double* nodes,
    double cr,
    double ci,
    const double* wfr,
    const double* wfi,
    int npow,
    Py_ssize_t n,
    Py_ssize_t lo,
    Py_ssize_t hi,
) noexcept nogil:
    cdef _C acc, left, right, den
    cdef Py_ssize_t mid, i, j
    cdef double wr, wi, dr, di, s, inv_re, inv_im, node
    acc.re = 0.0
    acc.im = 0.0
    if hi - lo <= 64:
        for i in range(lo, hi):
            wr = 0.0
            wi = 0.0
            for j in range(n):
                node = nodes[i * n + j]
                dr = zr[j] - cr * node
                di = zi[j] - ci * node
                wr += dr * dr - di * di
                wi += 2.0 * dr * di
            den = _principal_pow(wr, wi, npow)
            s = den.re * den.re + den.im * den.im
            inv_re = den.re / s
            inv_im = -den.im / s
            acc.re += wfr[i] * inv_re - wfi[i] * inv_im
            acc.im += wfr[i] * inv_im + wfi[i] * inv_re
        return acc
    mid = lo + (hi - lo) // 2
    left = _pair_sum(zr, zi, nodes, cr, ci, wfr, wfi, npow, n, lo, mid)
    right = _pair_sum(zr, zi, nodes, cr, ci, wfr, wfi, npow, n, mid, hi)
    acc.re = left.re + right.re
    acc.im = left.im + right.im
    return acc


def weighted_kernel_sum(z, nodes, node_factor, wf, npow):
    z_arr = np.ascontiguousarray(z, dtype=np.complex128)
    nodes_arr = np.ascontiguousarray(nodes, dtype=np.float64)
    wf_arr = np.ascontiguousarray(wf, dtype=np.complex128)
    zr_arr = np.ascontiguousarray(z_arr.real)
    zi_arr = np.ascontiguousarray(z_arr.imag)
    wfr_arr = np.ascontiguousarray(wf_arr.real)
    wfi_arr = np.ascontiguousarray(wf_arr.imag)
    cdef const double[::1] zr = zr_arr
    cdef const double[::1] zi = zi_arr
    cdef const double[:, ::1] nv = nodes_arr
    cdef const double[::1] wfr = wfr_arr
    cdef const double[::1] wfi = wfi_arr
    cdef Py_ssize_t m = nv.shape[0]
    cdef Py_ssize_t n = nv.shape[1]
    cdef int np_ = int(npow)
    cdef double complex factor = node_factor
    cdef double cr = factor.real
    cdef double ci = factor.imag
    if zr.shape[0] != n:
        raise ValueError("point dimension does not match node dimension")
    if wfr.shape[0] != m:
        raise ValueError("weighted values must match the number of nodes")
    if m == 0:
        return 0j
    cdef _C total
    with nogil:
        total = _pair_sum(&zr[0], &zi[0], &nv[0, 0], cr, ci, &wfr[0], &wfi[0], np_, n, 0, m)
    return complex(total.re, total.im)
