# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled synthesis/analysis cores (hot loops of the link simulator).

The large twiddle products go through BLAS dgemm on split real/imaginary
planes; the surrounding windowing, folding, and overlap-add run as fused C
loops instead of the temporaries the numpy fallback allocates.
"""

import numpy as np

from scipy.linalg.cython_blas cimport dgemm

cdef double ONE = 1.0
cdef double MINUS_ONE = -1.0
cdef double ZERO = 0.0


cdef void _spectra(double[:, ::1] out, const double[:, ::1] grid,
                   const double[:, ::1] table, double alpha, double beta) noexcept nogil:
    # out[t, q] (+)= alpha * sum_m grid[m, t] * table[m, q], via column-major
    # BLAS on the row-major buffers: out_F = table_F @ grid_F^T.
    cdef int m = <int> out.shape[1]          # rows of out_F
    cdef int n = <int> out.shape[0]          # cols of out_F
    cdef int k = <int> grid.shape[0]
    cdef int lda = <int> table.shape[1]
    cdef int ldb = <int> grid.shape[1]
    dgemm("N", "T", &m, &n, &k, &alpha,
          <double *> &table[0, 0], &lda,
          <double *> &grid[0, 0], &ldb,
          &beta, &out[0, 0], &m)


cdef void _project(double[:, ::1] out, const double[:, ::1] folded,
                   const double[:, ::1] table, double alpha, double beta) noexcept nogil:
    # out[m, t] (+)= alpha * sum_q table[m, q] * folded[t, q], via
    # out_F = folded_F^T @ table_F.
    cdef int m = <int> out.shape[1]          # rows of out_F
    cdef int n = <int> out.shape[0]          # cols of out_F
    cdef int k = <int> folded.shape[1]
    cdef int lda = <int> folded.shape[1]
    cdef int ldb = <int> table.shape[1]
    dgemm("T", "N", &m, &n, &k, &alpha,
          <double *> &folded[0, 0], &lda,
          <double *> &table[0, 0], &ldb,
          &beta, &out[0, 0], &m)


def synthesize_grid(weighted, twiddle, taps, Py_ssize_t half):
    """See _kernels_py.synthesize_grid; same contract."""
    w_re = np.ascontiguousarray(weighted.real)
    w_im = np.ascontiguousarray(weighted.imag)
    t_re = np.ascontiguousarray(twiddle.real)
    t_im = np.ascontiguousarray(twiddle.imag)
    taps = np.ascontiguousarray(taps, dtype=np.float64)

    cdef Py_ssize_t n_sub = w_re.shape[0]
    cdef Py_ssize_t instants = w_re.shape[1]
    cdef Py_ssize_t filt_len = taps.shape[0]
    cdef Py_ssize_t reps = filt_len // n_sub
    cdef Py_ssize_t length = (instants - 1) * half + filt_len

    # spectra[t, q] = sum_m weighted[m, t] * twiddle[m, q]
    s_re_arr = np.empty((instants, n_sub), dtype=np.float64)
    s_im_arr = np.empty((instants, n_sub), dtype=np.float64)
    out_re_arr = np.zeros(length, dtype=np.float64)
    out_im_arr = np.zeros(length, dtype=np.float64)

    cdef double[:, ::1] s_re = s_re_arr
    cdef double[:, ::1] s_im = s_im_arr
    cdef const double[:, ::1] wr = w_re
    cdef const double[:, ::1] wi = w_im
    cdef const double[:, ::1] tr = t_re
    cdef const double[:, ::1] ti = t_im
    cdef const double[::1] p = taps
    cdef double[::1] out_re = out_re_arr
    cdef double[::1] out_im = out_im_arr
    cdef Py_ssize_t t, q, r, base, poff

    with nogil:
        _spectra(s_re, wr, tr, 1.0, 0.0)
        _spectra(s_re, wi, ti, -1.0, 1.0)
        _spectra(s_im, wi, tr, 1.0, 0.0)
        _spectra(s_im, wr, ti, 1.0, 1.0)
        for t in range(instants):
            for r in range(reps):
                base = t * half + r * n_sub
                poff = r * n_sub
                for q in range(n_sub):
                    out_re[base + q] = out_re[base + q] + s_re[t, q] * p[poff + q]
                    out_im[base + q] = out_im[base + q] + s_im[t, q] * p[poff + q]

    out = np.empty(length, dtype=np.complex128)
    out.real = out_re_arr
    out.imag = out_im_arr
    return out


def analyze_segments(samples, twiddle_conj, taps, Py_ssize_t half,
                     Py_ssize_t instants):
    """See _kernels_py.analyze_segments; same contract."""
    s_re = np.ascontiguousarray(samples.real)
    s_im = np.ascontiguousarray(samples.imag)
    t_re = np.ascontiguousarray(twiddle_conj.real)
    t_im = np.ascontiguousarray(twiddle_conj.imag)
    taps = np.ascontiguousarray(taps, dtype=np.float64)

    cdef Py_ssize_t n_sub = t_re.shape[0]
    cdef Py_ssize_t filt_len = taps.shape[0]
    cdef Py_ssize_t reps = filt_len // n_sub

    # folded[t, q] = sum_r samples[t*half + r*n_sub + q] * taps[r*n_sub + q]
    f_re_arr = np.zeros((instants, n_sub), dtype=np.float64)
    f_im_arr = np.zeros((instants, n_sub), dtype=np.float64)
    y_re_arr = np.empty((n_sub, instants), dtype=np.float64)
    y_im_arr = np.empty((n_sub, instants), dtype=np.float64)

    cdef const double[::1] xr = s_re
    cdef const double[::1] xi = s_im
    cdef const double[:, ::1] tr = t_re
    cdef const double[:, ::1] ti = t_im
    cdef const double[::1] p = taps
    cdef double[:, ::1] fr = f_re_arr
    cdef double[:, ::1] fi = f_im_arr
    cdef double[:, ::1] yr = y_re_arr
    cdef double[:, ::1] yi = y_im_arr
    cdef Py_ssize_t t, q, r, base, poff

    with nogil:
        for t in range(instants):
            base = t * half
            for r in range(reps):
                poff = r * n_sub
                for q in range(n_sub):
                    fr[t, q] = fr[t, q] + xr[base + poff + q] * p[poff + q]
                    fi[t, q] = fi[t, q] + xi[base + poff + q] * p[poff + q]
        _project(yr, fr, tr, 1.0, 0.0)
        _project(yr, fi, ti, -1.0, 1.0)
        _project(yi, fi, tr, 1.0, 0.0)
        _project(yi, fr, ti, 1.0, 1.0)

    out = np.empty((n_sub, instants), dtype=np.complex128)
    out.real = y_re_arr
    out.imag = y_im_arr
    return out
