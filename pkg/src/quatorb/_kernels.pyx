# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integrator kernels.

Mirrors quatorb._kernels_py expression for expression; compiled with FP
contraction off so both backends produce bit-identical trajectories.
"""

from libc.math cimport isfinite, sqrt

import numpy as np

BACKEND_KIND = "compiled"


cdef struct S7:
    double y0
    double y1
    double y2
    double y3
    double m1
    double m2
    double m3


cdef inline S7 _deriv(S7 s, double a1, double a2, double a3) noexcept nogil:
    cdef S7 d
    cdef double x1 = s.m1 * a1
    cdef double x2 = s.m2 * a2
    cdef double x3 = s.m3 * a3
    d.y0 = -s.y1 * x1 - s.y2 * x2 - s.y3 * x3
    d.y1 = s.y0 * x1 + s.y2 * x3 - s.y3 * x2
    d.y2 = s.y0 * x2 - s.y1 * x3 + s.y3 * x1
    d.y3 = s.y0 * x3 + s.y1 * x2 - s.y2 * x1
    d.m1 = 2.0 * (s.m2 * x3 - s.m3 * x2)
    d.m2 = 2.0 * (s.m3 * x1 - s.m1 * x3)
    d.m3 = 2.0 * (s.m1 * x2 - s.m2 * x1)
    return d


cdef inline S7 _rk4(S7 s, double a1, double a2, double a3, double dt,
                    bint project, double target) noexcept nogil:
    cdef S7 k1, k2, k3, k4, m, out
    cdef double half = 0.5 * dt
    cdef double w, nrm, scale
    k1 = _deriv(s, a1, a2, a3)
    m.y0 = s.y0 + half * k1.y0
    m.y1 = s.y1 + half * k1.y1
    m.y2 = s.y2 + half * k1.y2
    m.y3 = s.y3 + half * k1.y3
    m.m1 = s.m1 + half * k1.m1
    m.m2 = s.m2 + half * k1.m2
    m.m3 = s.m3 + half * k1.m3
    k2 = _deriv(m, a1, a2, a3)
    m.y0 = s.y0 + half * k2.y0
    m.y1 = s.y1 + half * k2.y1
    m.y2 = s.y2 + half * k2.y2
    m.y3 = s.y3 + half * k2.y3
    m.m1 = s.m1 + half * k2.m1
    m.m2 = s.m2 + half * k2.m2
    m.m3 = s.m3 + half * k2.m3
    k3 = _deriv(m, a1, a2, a3)
    m.y0 = s.y0 + dt * k3.y0
    m.y1 = s.y1 + dt * k3.y1
    m.y2 = s.y2 + dt * k3.y2
    m.y3 = s.y3 + dt * k3.y3
    m.m1 = s.m1 + dt * k3.m1
    m.m2 = s.m2 + dt * k3.m2
    m.m3 = s.m3 + dt * k3.m3
    k4 = _deriv(m, a1, a2, a3)
    w = dt / 6.0
    out.y0 = s.y0 + w * (k1.y0 + 2.0 * k2.y0 + 2.0 * k3.y0 + k4.y0)
    out.y1 = s.y1 + w * (k1.y1 + 2.0 * k2.y1 + 2.0 * k3.y1 + k4.y1)
    out.y2 = s.y2 + w * (k1.y2 + 2.0 * k2.y2 + 2.0 * k3.y2 + k4.y2)
    out.y3 = s.y3 + w * (k1.y3 + 2.0 * k2.y3 + 2.0 * k3.y3 + k4.y3)
    out.m1 = s.m1 + w * (k1.m1 + 2.0 * k2.m1 + 2.0 * k3.m1 + k4.m1)
    out.m2 = s.m2 + w * (k1.m2 + 2.0 * k2.m2 + 2.0 * k3.m2 + k4.m2)
    out.m3 = s.m3 + w * (k1.m3 + 2.0 * k2.m3 + 2.0 * k3.m3 + k4.m3)
    if project:
        nrm = sqrt(out.y0 * out.y0 + out.y1 * out.y1 + out.y2 * out.y2
                   + out.y3 * out.y3)
        scale = target / nrm
        out.y0 = out.y0 * scale
        out.y1 = out.y1 * scale
        out.y2 = out.y2 * scale
        out.y3 = out.y3 * scale
    return out


cdef inline bint _finite(S7 s) noexcept nogil:
    return (isfinite(s.y0) and isfinite(s.y1) and isfinite(s.y2)
            and isfinite(s.y3) and isfinite(s.m1) and isfinite(s.m2)
            and isfinite(s.m3))


def rk4_step(y, inv_inertia, double dt, bint project, double target):
    """One classical 4th-order step; returns the new 7-tuple."""
    cdef S7 s
    s.y0, s.y1, s.y2, s.y3, s.m1, s.m2, s.m3 = y
    cdef double a1, a2, a3
    a1, a2, a3 = inv_inertia
    cdef S7 out = _rk4(s, a1, a2, a3, dt, project, target)
    return (out.y0, out.y1, out.y2, out.y3, out.m1, out.m2, out.m3)


def integrate_loop(y_init, inv_inertia, double dt, Py_ssize_t n_steps,
                   Py_ssize_t sample_every, bint project, double target):
    """Fixed-step RK4 over n_steps, sampling every sample_every steps.

    Same contract as the pure-Python fallback: returns (step indices,
    sampled states, status) with status -1 on success or the offending
    step index on a non-finite state.
    """
    cdef S7 s
    s.y0, s.y1, s.y2, s.y3, s.m1, s.m2, s.m3 = (float(c) for c in y_init)
    cdef double a1, a2, a3
    a1, a2, a3 = (float(c) for c in inv_inertia)

    cdef Py_ssize_t m_count = n_steps // sample_every + 1
    if n_steps % sample_every != 0:
        m_count += 1
    idx_arr = np.empty(m_count, dtype=np.int64)
    st_arr = np.empty((m_count, 7), dtype=np.float64)
    cdef long long[:] idx = idx_arr
    cdef double[:, :] st = st_arr

    cdef Py_ssize_t filled = 0
    cdef Py_ssize_t k
    cdef Py_ssize_t status = -1
    idx[0] = 0
    st[0, 0] = s.y0
    st[0, 1] = s.y1
    st[0, 2] = s.y2
    st[0, 3] = s.y3
    st[0, 4] = s.m1
    st[0, 5] = s.m2
    st[0, 6] = s.m3
    filled = 1
    with nogil:
        for k in range(1, n_steps + 1):
            s = _rk4(s, a1, a2, a3, dt, project, target)
            if not _finite(s):
                status = k
                break
            if k % sample_every == 0 or k == n_steps:
                idx[filled] = k
                st[filled, 0] = s.y0
                st[filled, 1] = s.y1
                st[filled, 2] = s.y2
                st[filled, 3] = s.y3
                st[filled, 4] = s.m1
                st[filled, 5] = s.m2
                st[filled, 6] = s.m3
                filled += 1
    return idx_arr[:filled], st_arr[:filled], int(status)
