# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled frame-integration kernel; mirrors _frame_py.integrate_frames."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, hypot, sin

cnp.import_array()

DEF B1 = 13.0 / 51.0
DEF B2 = -2.0 / 3.0
DEF B3 = 24.0 / 17.0
DEF SMALL_ANGLE = 1e-6


cdef inline void _apply_exp(double u, double v, double* f) nogil:
    # Left-multiply the 3x3 frame f (row-major) by exp([[0,u,v],[-u,0,0],[-v,0,0]]).
    cdef double rho = hypot(u, v)
    cdef double r2 = rho * rho
    cdef double alpha, beta
    if rho < SMALL_ANGLE:
        alpha = 1.0 - r2 / 6.0 + r2 * r2 / 120.0
        beta = 0.5 - r2 / 24.0 + r2 * r2 / 720.0
    else:
        alpha = sin(rho) / rho
        beta = (1.0 - cos(rho)) / r2
    cdef double r00 = 1.0 - beta * r2
    cdef double r01 = alpha * u
    cdef double r02 = alpha * v
    cdef double r11 = 1.0 - beta * u * u
    cdef double r12 = -beta * u * v
    cdef double r22 = 1.0 - beta * v * v
    cdef double a, b, c
    cdef int j
    for j in range(3):
        a = f[j]
        b = f[3 + j]
        c = f[6 + j]
        f[j] = r00 * a + r01 * b + r02 * c
        f[3 + j] = -r01 * a + r11 * b + r12 * c
        f[6 + j] = -r02 * a + r12 * b + r22 * c


def integrate_frames(double[:, ::1] phi1, double[:, ::1] phi2, double h):
    """Same contract as _frame_py.integrate_frames: stage-node samples in,
    (M + 1, 3, 3) rotation frames out."""
    cdef Py_ssize_t m = phi1.shape[0]
    out = np.empty((m + 1, 3, 3))
    cdef double[:, :, ::1] frames = out
    cdef double f[9]
    cdef Py_ssize_t n, i, j
    for i in range(3):
        for j in range(3):
            f[3 * i + j] = 1.0 if i == j else 0.0
            frames[0, i, j] = f[3 * i + j]
    with nogil:
        for n in range(m):
            _apply_exp(h * B1 * phi1[n, 0], h * B1 * phi2[n, 0], f)
            _apply_exp(h * B2 * phi1[n, 1], h * B2 * phi2[n, 1], f)
            _apply_exp(h * B3 * phi1[n, 2], h * B3 * phi2[n, 2], f)
            for i in range(3):
                for j in range(3):
                    frames[n + 1, i, j] = f[3 * i + j]
    return out
