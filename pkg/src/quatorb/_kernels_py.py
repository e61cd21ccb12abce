"""Pure-Python integrator kernels (fallback backend).

State layout: 7 doubles (y0, y1, y2, y3, m1, m2, m3) where y is the
orientation quaternion (canonical run) or the pi momentum (Lie-Poisson
run) and m the body angular momentum.  The flow is

    dy = y * xi_H        dm = 2 m x xi_H        xi_H = (m1/I1, m2/I2, m3/I3)

identical for both formulations under the pi == q identification.

Every arithmetic expression here mirrors quatorb._kernels term for term;
the two backends produce bit-identical trajectories (the extension is
compiled with FP contraction off).
"""

import math

import numpy as np

BACKEND_KIND = "python"


def _deriv(y0, y1, y2, y3, m1, m2, m3, a1, a2, a3):
    # a_i = 1/I_i
    x1 = m1 * a1
    x2 = m2 * a2
    x3 = m3 * a3
    d0 = -y1 * x1 - y2 * x2 - y3 * x3
    d1 = y0 * x1 + y2 * x3 - y3 * x2
    d2 = y0 * x2 - y1 * x3 + y3 * x1
    d3 = y0 * x3 + y1 * x2 - y2 * x1
    dm1 = 2.0 * (m2 * x3 - m3 * x2)
    dm2 = 2.0 * (m3 * x1 - m1 * x3)
    dm3 = 2.0 * (m1 * x2 - m2 * x1)
    return d0, d1, d2, d3, dm1, dm2, dm3


def _rk4(y0, y1, y2, y3, m1, m2, m3, a1, a2, a3, dt, project, target):
    k1 = _deriv(y0, y1, y2, y3, m1, m2, m3, a1, a2, a3)
    half = 0.5 * dt
    k2 = _deriv(y0 + half * k1[0], y1 + half * k1[1], y2 + half * k1[2],
                y3 + half * k1[3], m1 + half * k1[4], m2 + half * k1[5],
                m3 + half * k1[6], a1, a2, a3)
    k3 = _deriv(y0 + half * k2[0], y1 + half * k2[1], y2 + half * k2[2],
                y3 + half * k2[3], m1 + half * k2[4], m2 + half * k2[5],
                m3 + half * k2[6], a1, a2, a3)
    k4 = _deriv(y0 + dt * k3[0], y1 + dt * k3[1], y2 + dt * k3[2],
                y3 + dt * k3[3], m1 + dt * k3[4], m2 + dt * k3[5],
                m3 + dt * k3[6], a1, a2, a3)
    w = dt / 6.0
    n0 = y0 + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
    n1 = y1 + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
    n2 = y2 + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
    n3 = y3 + w * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
    nm1 = m1 + w * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
    nm2 = m2 + w * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
    nm3 = m3 + w * (k1[6] + 2.0 * k2[6] + 2.0 * k3[6] + k4[6])
    if project:
        nrm = math.sqrt(n0 * n0 + n1 * n1 + n2 * n2 + n3 * n3)
        scale = target / nrm
        n0 = n0 * scale
        n1 = n1 * scale
        n2 = n2 * scale
        n3 = n3 * scale
    return n0, n1, n2, n3, nm1, nm2, nm3


def rk4_step(y, inv_inertia, dt, project, target):
    """One classical 4th-order step; returns the new 7-tuple."""
    y0, y1, y2, y3, m1, m2, m3 = y
    a1, a2, a3 = inv_inertia
    return _rk4(y0, y1, y2, y3, m1, m2, m3, a1, a2, a3, dt, project, target)


def integrate_loop(y_init, inv_inertia, dt, n_steps, sample_every, project, target):
    """Fixed-step RK4 over n_steps, sampling every sample_every steps.

    Returns (step indices, sampled states (m, 7), status); status is -1 on
    success or the index of the first step that produced a non-finite
    state (sampling stops there, already-collected samples are returned).
    """
    y0, y1, y2, y3, m1, m2, m3 = (float(c) for c in y_init)
    a1, a2, a3 = (float(c) for c in inv_inertia)
    indices = [0]
    samples = [(y0, y1, y2, y3, m1, m2, m3)]
    status = -1
    for k in range(1, n_steps + 1):
        y0, y1, y2, y3, m1, m2, m3 = _rk4(
            y0, y1, y2, y3, m1, m2, m3, a1, a2, a3, dt, project, target)
        if not (math.isfinite(y0) and math.isfinite(y1) and math.isfinite(y2)
                and math.isfinite(y3) and math.isfinite(m1)
                and math.isfinite(m2) and math.isfinite(m3)):
            status = k
            break
        if k % sample_every == 0 or k == n_steps:
            indices.append(k)
            samples.append((y0, y1, y2, y3, m1, m2, m3))
    return (np.array(indices, dtype=np.int64),
            np.array(samples, dtype=np.float64),
            status)
