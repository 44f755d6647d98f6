# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: batched quartic roots (companion matrix + Newton
polish) and kernel density evaluation. Mirrors ``_pure``; LAPACK's zgeev is
reached through SciPy's exported C bindings, so results match the NumPy path
to rounding."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt
from scipy.linalg.cython_lapack cimport zgeev

cnp.import_array()

BACKEND = "cython"

cdef double SQRT_2PI = sqrt(2.0 * 3.14159265358979323846)


cdef inline double complex _horner4(double complex x, double complex a0,
                                    double complex a1, double complex a2,
                                    double complex a3) noexcept nogil:
    return ((x + a0) * x + a1) * x * x + a2 * x + a3


cdef inline double complex _dhorner4(double complex x, double complex a0,
                                     double complex a1,
                                     double complex a2) noexcept nogil:
    return ((4.0 * x + 3.0 * a0) * x + 2.0 * a1) * x + a2


cdef inline double _cabs2(double complex z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef int _roots_one(double complex a0, double complex a1, double complex a2,
                    double complex a3, double complex* out) noexcept nogil:
    """Roots of the monic quartic into out[0..3]. Returns LAPACK info."""
    cdef double complex comp[16]
    cdef double complex w[4]
    cdef double complex work[64]
    cdef double rwork[8]
    cdef double complex vdum[1]
    cdef int n = 4, lda = 4, ldv = 1, lwork = 64, info = 0
    cdef char jobn = b'N'
    cdef int i, j, it
    cdef double complex x, p, dp, cand, pn

    # column-major companion: first row -a, subdiagonal ones
    for i in range(16):
        comp[i] = 0.0
    comp[0 + 4 * 0] = -a0
    comp[0 + 4 * 1] = -a1
    comp[0 + 4 * 2] = -a2
    comp[0 + 4 * 3] = -a3
    comp[1 + 4 * 0] = 1.0
    comp[2 + 4 * 1] = 1.0
    comp[3 + 4 * 2] = 1.0

    zgeev(&jobn, &jobn, &n, comp, &lda, w, vdum, &ldv, vdum, &ldv,
          work, &lwork, rwork, &info)
    if info != 0:
        return info

    for j in range(4):
        x = w[j]
        for it in range(2):
            p = _horner4(x, a0, a1, a2, a3)
            dp = _dhorner4(x, a0, a1, a2)
            if _cabs2(dp) == 0.0:
                break
            cand = x - p / dp
            pn = _horner4(cand, a0, a1, a2, a3)
            if _cabs2(pn) < _cabs2(p):
                x = cand
        out[j] = x

    # insertion sort by (real, imag)
    cdef double complex key
    for i in range(1, 4):
        key = out[i]
        j = i - 1
        while j >= 0 and (out[j].real > key.real or
                          (out[j].real == key.real and out[j].imag > key.imag)):
            out[j + 1] = out[j]
            j -= 1
        out[j + 1] = key
    return 0


def quartic_roots_batch(coeffs):
    """Roots of a batch of quartics, descending-degree coefficients.

    Parameters
    ----------
    coeffs : (m, 5) complex array; ``coeffs[i, 0]`` must be nonzero.

    Returns
    -------
    (m, 4) complex array of roots, each row sorted by (real, imag).
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if c.ndim != 2 or c.shape[1] != 5:
        raise ValueError("coeffs must have shape (m, 5)")
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] cc = c
    cdef Py_ssize_t m = cc.shape[0]
    out_arr = np.empty((m, 4), dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] oo = out_arr
    cdef Py_ssize_t i
    cdef double complex lead
    cdef int info = 0, bad = 0
    with nogil:
        for i in range(m):
            lead = cc[i, 0]
            info = _roots_one(cc[i, 1] / lead, cc[i, 2] / lead,
                              cc[i, 3] / lead, cc[i, 4] / lead, &oo[i, 0])
            if info != 0:
                bad = 1
                break
    if bad:
        raise ArithmeticError(f"zgeev failed to converge (batch row {i})")
    return out_arr


def kde_eval(samples, grid, double h, int kernel):
    """Kernel density estimate of `samples` on `grid` with bandwidth `h`.

    kernel: 0 = gaussian, 1 = epanechnikov.
    """
    s = np.ascontiguousarray(samples, dtype=np.float64).ravel()
    x = np.ascontiguousarray(grid, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ss = s
    cdef cnp.ndarray[cnp.float64_t, ndim=1] xx = x
    out_arr = np.zeros(len(x), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] oo = out_arr
    cdef Py_ssize_t k = ss.shape[0], m = xx.shape[0]
    cdef Py_ssize_t i, j
    cdef double u, acc, xi
    if k == 0:
        return out_arr
    with nogil:
        for i in range(m):
            xi = xx[i]
            acc = 0.0
            if kernel == 0:
                for j in range(k):
                    u = (xi - ss[j]) / h
                    acc += exp(-0.5 * u * u) / SQRT_2PI
            else:
                for j in range(k):
                    u = (xi - ss[j]) / h
                    if u > -1.0 and u < 1.0:
                        acc += 0.75 * (1.0 - u * u)
            oo[i] = acc / (k * h)
    return out_arr
