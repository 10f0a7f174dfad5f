# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: phase-moment sweeps and Gauss-sum rows.

Same exact-integer-phase semantics as sqsieve._purecore; these exist purely
for speed on the two loops that dominate the heavy sweeps.
"""

from libc.math cimport cos, sin, M_PI

import numpy as np


def phase_moments(object nums_in, object dens_in, Py_ssize_t count):
    """w[d] = sum_r e(nums[r]*d / dens[r]) for d = 0..count-1."""
    cdef long long[::1] nums = np.ascontiguousarray(nums_in, dtype=np.int64)
    cdef long long[::1] dens = np.ascontiguousarray(dens_in, dtype=np.int64)
    cdef Py_ssize_t R = nums.shape[0]
    out = np.zeros(count, dtype=np.complex128)
    cdef double[::1] re = np.zeros(count)
    cdef double[::1] im = np.zeros(count)
    cdef Py_ssize_t r, d
    cdef long long a, den, p
    cdef double sr, si, cr, ci, t, ang
    for r in range(R):
        den = dens[r]
        a = nums[r] % den
        if a < 0:
            a += den
        ang = 2.0 * M_PI * (<double> a) / (<double> den)
        sr = cos(ang)
        si = sin(ang)
        cr = 1.0
        ci = 0.0
        p = 0  # exact integer phase a*d mod den, maintained additively
        for d in range(count):
            re[d] += cr
            im[d] += ci
            p += a
            if p >= den:
                p -= den
            if (d & 127) == 127:
                # reseed the rotation from the exact integer phase
                ang = 2.0 * M_PI * (<double> p) / (<double> den)
                cr = cos(ang)
                ci = sin(ang)
            else:
                t = cr * sr - ci * si
                ci = cr * si + ci * sr
                cr = t
    out.real = np.asarray(re)
    out.imag = np.asarray(im)
    return out


def gauss_row(long long a, long long c):
    """G(a, l; c) for all l = 0..c-1 by literal direct summation over d."""
    if c < 1:
        raise ValueError("modulus must be positive")
    a = a % c
    if a < 0:
        a += c
    cdef double[::1] tre = np.empty(c)
    cdef double[::1] tim = np.empty(c)
    cdef Py_ssize_t m, l, d
    cdef double ang
    for m in range(c):
        ang = 2.0 * M_PI * (<double> m) / (<double> c)
        tre[m] = cos(ang)
        tim[m] = sin(ang)
    out = np.empty(c, dtype=np.complex128)
    cdef double[::1] ore = np.empty(c)
    cdef double[::1] oim = np.empty(c)
    # inc[d] = a*(2d+1) mod c so that a*(d+1)^2 = a*d^2 + inc[d] (mod c)
    cdef long long[::1] inc = np.empty(c, dtype=np.int64)
    cdef long long v, step
    v = a % c
    step = (2 * a) % c
    for d in range(c):
        inc[d] = v
        v += step
        if v >= c:
            v -= c
    cdef long long ph
    cdef double acc_re, acc_im
    for l in range(c):
        acc_re = 0.0
        acc_im = 0.0
        ph = 0  # phase (a d^2 + l d) mod c at d, starting at d = 0
        for d in range(c):
            acc_re += tre[ph]
            acc_im += tim[ph]
            ph += inc[d] + l
            if ph >= c:
                ph -= c
            if ph >= c:
                ph -= c
        ore[l] = acc_re
        oim[l] = acc_im
    out.real = np.asarray(ore)
    out.imag = np.asarray(oim)
    return out
