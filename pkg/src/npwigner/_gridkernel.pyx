# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled direct-summation kernel for number-phase Wigner grids.

One fused pass per phi column: the cos/sin values for that column live in a
per-thread scratch row, the density matrix streams as separate real and
imaginary planes (unit-stride, SIMD-friendly), and both summand families of
the defining formula accumulate separately so the imaginary residue is
tracked rather than assumed away. Columns are distributed across OpenMP
threads when more than one is available.
"""
import numpy as np

cimport openmp
from cython.parallel cimport parallel, prange
from libc.math cimport M_PI

cdef extern from "math.h" nogil:
    void sincos(double x, double *sin_out, double *cos_out)

cdef double FOUR_PI = 4.0 * M_PI


def grid_eval(q, qt, const double[::1] phis, Py_ssize_t n_max):
    """Evaluate W[n, j] at the given phases.

    q is the density matrix, qt its transpose. Returns (values, max residue).
    """
    cdef Py_ssize_t dim = q.shape[0]
    cdef Py_ssize_t s = phis.shape[0]
    if qt.shape != q.shape:
        raise ValueError("qt must match the density matrix shape")
    if not 0 <= n_max < dim:
        raise ValueError("n_max out of range")

    cdef const double[:, ::1] q_re = np.ascontiguousarray(q.real)
    cdef const double[:, ::1] q_im = np.ascontiguousarray(q.imag)
    cdef const double[:, ::1] qt_re = np.ascontiguousarray(qt.real)
    cdef const double[:, ::1] qt_im = np.ascontiguousarray(qt.imag)

    cdef int max_threads = openmp.omp_get_max_threads()
    values = np.empty((n_max + 1, s), dtype=np.float64)
    resid = np.zeros(s, dtype=np.float64)
    scratch_cos = np.empty((max_threads, dim), dtype=np.float64)
    scratch_sin = np.empty((max_threads, dim), dtype=np.float64)
    cdef double[:, ::1] out = values
    cdef double[::1] col_resid = resid
    cdef double[:, ::1] cbuf = scratch_cos
    cdef double[:, ::1] sbuf = scratch_sin
    cdef Py_ssize_t n, j, m
    cdef int tid
    cdef double phi, tr, ti, ur, ui, cm, sm, cn, sn, zr, zi, worst

    with nogil, parallel():
        tid = openmp.omp_get_thread_num()
        for j in prange(s, schedule='static'):
            phi = phis[j]
            for m in range(dim):
                sincos(m * phi, &sbuf[tid, m], &cbuf[tid, m])
            worst = 0.0
            for n in range(n_max + 1):
                tr = 0.0
                ti = 0.0
                ur = 0.0
                ui = 0.0
                for m in range(dim):
                    cm = cbuf[tid, m]
                    sm = sbuf[tid, m]
                    # t += Q[n, m] * e^{+i m phi};  u += Q[m, n] * e^{-i m phi}
                    tr = tr + q_re[n, m] * cm - q_im[n, m] * sm
                    ti = ti + q_re[n, m] * sm + q_im[n, m] * cm
                    ur = ur + qt_re[n, m] * cm + qt_im[n, m] * sm
                    ui = ui + qt_im[n, m] * cm - qt_re[n, m] * sm
                cn = cbuf[tid, n]
                sn = sbuf[tid, n]
                # z = t * e^{-i n phi} + u * e^{+i n phi}
                zr = tr * cn + ti * sn + ur * cn - ui * sn
                zi = ti * cn - tr * sn + ui * cn + ur * sn
                out[n, j] = zr / FOUR_PI
                if zi < 0.0:
                    zi = -zi
                if zi > worst:
                    worst = zi
            col_resid[j] = worst / FOUR_PI

    return values, float(resid.max(initial=0.0))
