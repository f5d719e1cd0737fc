# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled seesaw kernel.

Same contract as ``_seesaw_py.run``: alternating top-eigenvector ascent of
<a b|W|a b> for every restart.  The effective n x n Hermitian operators are
built with explicit loops and diagonalized with LAPACK's zheev; matrices are
tiny (n <= 8) so everything lives in stack buffers.
"""

import numpy as np

from libc.math cimport fabs, sqrt
from scipy.linalg.cython_lapack cimport zheev

DEF NMAX = 8
DEF LWORK = 4 * NMAX


cdef int _top_eigvec(double complex* a_cm, int n, double complex* vec, double* val) noexcept nogil:
    """Top eigenpair of a Hermitian matrix stored column-major in a_cm.

    a_cm is overwritten; eigenvector of the largest eigenvalue is copied to
    vec and the eigenvalue to val.  Returns the LAPACK info code.
    """
    cdef char jobz = b'V'
    cdef char uplo = b'L'
    cdef int info = 0
    cdef int lda = n
    cdef int lwork = LWORK
    cdef double w[NMAX]
    cdef double complex work[LWORK]
    cdef double rwork[3 * NMAX]
    cdef int j
    zheev(&jobz, &uplo, &n, a_cm, &lda, w, work, &lwork, rwork, &info)
    if info != 0:
        return info
    for j in range(n):
        vec[j] = a_cm[j + (n - 1) * n]
    val[0] = w[n - 1]
    return 0


cdef void _m_matrix(const double complex* w4, const double complex* a, int n,
                    double complex* out_cm) noexcept nogil:
    """out[j,l] = sum_{i,k} conj(a_i) W[i,j,k,l] a_k, column-major."""
    cdef int i, j, k, l
    cdef double complex s
    for j in range(n):
        for l in range(n):
            s = 0
            for i in range(n):
                for k in range(n):
                    s = s + a[i].conjugate() * w4[((i * n + j) * n + k) * n + l] * a[k]
            out_cm[j + l * n] = s


cdef void _n_matrix(const double complex* w4, const double complex* b, int n,
                    double complex* out_cm) noexcept nogil:
    """out[i,k] = sum_{j,l} conj(b_j) W[i,j,k,l] b_l, column-major."""
    cdef int i, j, k, l
    cdef double complex s
    for i in range(n):
        for k in range(n):
            s = 0
            for j in range(n):
                for l in range(n):
                    s = s + b[j].conjugate() * w4[((i * n + j) * n + k) * n + l] * b[l]
            out_cm[i + k * n] = s


def run(w4, starts, int max_iter, double tol):
    """Alternating ascent from each start vector; see _seesaw_py.run."""
    cdef double complex[:, :, :, ::1] w = np.ascontiguousarray(w4, dtype=np.complex128)
    cdef double complex[:, ::1] s0 = np.ascontiguousarray(starts, dtype=np.complex128)
    cdef int r = s0.shape[0]
    cdef int n = s0.shape[1]
    if n > NMAX:
        raise ValueError(f"compiled kernel supports local dimension <= {NMAX}")
    if w.shape[0] != n or w.shape[1] != n or w.shape[2] != n or w.shape[3] != n:
        raise ValueError("w4 shape does not match the start vectors")

    vals_arr = np.full(r, -np.inf)
    a_arr = np.zeros((r, n), dtype=np.complex128)
    b_arr = np.zeros((r, n), dtype=np.complex128)
    iters_arr = np.zeros(r, dtype=np.int64)
    conv_arr = np.zeros(r, dtype=np.uint8)

    cdef double[::1] vals = vals_arr
    cdef double complex[:, ::1] av = a_arr
    cdef double complex[:, ::1] bv = b_arr
    cdef long long[::1] iters = iters_arr
    cdef unsigned char[::1] conv = conv_arr

    cdef double complex a[NMAX]
    cdef double complex b[NMAX]
    cdef double complex h[NMAX * NMAX]
    cdef const double complex* wp = &w[0, 0, 0, 0]
    cdef double nrm, val, prev
    cdef int ri, t, j, info

    with nogil:
        for ri in range(r):
            nrm = 0
            for j in range(n):
                nrm = nrm + s0[ri, j].real * s0[ri, j].real + s0[ri, j].imag * s0[ri, j].imag
            nrm = sqrt(nrm)
            for j in range(n):
                a[j] = s0[ri, j] / nrm
            prev = -1e300
            val = prev
            for t in range(1, max_iter + 1):
                _m_matrix(wp, a, n, h)
                info = _top_eigvec(h, n, b, &val)
                if info != 0:
                    break
                _n_matrix(wp, b, n, h)
                info = _top_eigvec(h, n, a, &val)
                if info != 0:
                    break
                iters[ri] = t
                if fabs(val - prev) < tol:
                    conv[ri] = 1
                    break
                prev = val
            vals[ri] = val
            for j in range(n):
                av[ri, j] = a[j]
                bv[ri, j] = b[j]

    return vals_arr, a_arr, b_arr, iters_arr, conv_arr.astype(bool)
