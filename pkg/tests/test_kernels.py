"""Backend parity: the compiled kernel must match the pure-Python one bit for bit."""

import math

import numpy as np
import pytest

from quatorb import _backend, _kernels_py

try:
    from quatorb import _kernels
except ImportError:
    _kernels = None

needs_compiled = pytest.mark.skipif(_kernels is None,
                                    reason="compiled kernel not built")

Y0 = (0.8, 0.2, -0.4, 0.4, 0.3, -0.4, 0.5)
INV = (1.0, 0.5, 1.0 / 3.0)


def unit_y0():
    n = math.sqrt(sum(c * c for c in Y0[:4]))
    return tuple(c / n for c in Y0[:4]) + Y0[4:]


class TestPythonKernel:
    def test_sampling_indices(self):
        idx, states, status = _kernels_py.integrate_loop(
            unit_y0(), INV, 1e-3, 10, 3, True, 1.0)
        assert status == -1
        assert idx.tolist() == [0, 3, 6, 9, 10]
        assert states.shape == (5, 7)

    def test_projection_target(self):
        y = tuple(2.0 * c for c in unit_y0()[:4]) + unit_y0()[4:]
        _, states, _ = _kernels_py.integrate_loop(y, INV, 1e-3, 50, 10, True, 2.0)
        norms = np.sqrt(np.sum(states[:, 0:4] ** 2, axis=1))
        assert np.max(np.abs(norms - 2.0)) <= 1e-14

    def test_raw_does_not_project(self):
        _, proj, _ = _kernels_py.integrate_loop(unit_y0(), INV, 0.1, 100, 100, True, 1.0)
        _, raw, _ = _kernels_py.integrate_loop(unit_y0(), INV, 0.1, 100, 100, False, 1.0)
        assert not np.array_equal(proj, raw)

    def test_step_matches_loop(self):
        y = unit_y0()
        idx, states, _ = _kernels_py.integrate_loop(y, INV, 1e-2, 5, 1, True, 1.0)
        cur = y
        for i in range(1, 6):
            cur = _kernels_py.rk4_step(cur, INV, 1e-2, True, 1.0)
            assert np.array_equal(np.array(cur), states[i])

    def test_abort_on_overflow(self):
        y = (1.0, 0.0, 0.0, 0.0, 1e200, 1e200, 1e200)
        idx, states, status = _kernels_py.integrate_loop(y, INV, 1e8, 10, 1, False, 1.0)
        assert status >= 1
        assert len(idx) == status  # samples collected before the bad step


@needs_compiled
class TestCompiledParity:
    @pytest.mark.parametrize("project", [True, False])
    @pytest.mark.parametrize("dt", [1e-3, 0.05])
    def test_bitwise_trajectory(self, project, dt):
        y = unit_y0()
        ref = _kernels_py.integrate_loop(y, INV, dt, 2000, 50, project, 1.0)
        got = _kernels.integrate_loop(y, INV, dt, 2000, 50, project, 1.0)
        assert got[2] == ref[2] == -1
        assert np.array_equal(got[0], ref[0])
        assert np.array_equal(got[1], ref[1])

    def test_bitwise_single_step(self):
        y = unit_y0()
        assert _kernels.rk4_step(y, INV, 1e-3, True, 1.0) \
            == _kernels_py.rk4_step(y, INV, 1e-3, True, 1.0)

    def test_abort_parity(self):
        y = (1.0, 0.0, 0.0, 0.0, 1e200, 1e200, 1e200)
        ref = _kernels_py.integrate_loop(y, INV, 1e8, 10, 1, False, 1.0)
        got = _kernels.integrate_loop(y, INV, 1e8, 10, 1, False, 1.0)
        assert got[2] == ref[2]
        assert np.array_equal(got[1], ref[1])


class TestBackendSelection:
    def test_backend_reports_kind(self):
        assert _backend.backend_name() in ("compiled", "python")

    def test_exposed_callables(self):
        assert callable(_backend.rk4_step)
        assert callable(_backend.integrate_loop)
