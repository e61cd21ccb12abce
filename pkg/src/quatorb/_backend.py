"""Backend selection for the integrator kernels.

The compiled extension (quatorb._kernels, Cython) is used when importable;
otherwise the pure-Python reference (quatorb._kernels_py) takes over.  Set
QUATORB_BACKEND=python to force the fallback, or =compiled to require the
extension (ImportError if missing).  Both backends are bit-identical.
"""

import os

_requested = os.environ.get("QUATORB_BACKEND", "").strip().lower()
if _requested not in ("", "python", "compiled"):
    raise ImportError(
        f"QUATORB_BACKEND must be 'python' or 'compiled', got {_requested!r}")

if _requested == "python":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _requested == "compiled":
            raise
        from . import _kernels_py as _impl

rk4_step = _impl.rk4_step
integrate_loop = _impl.integrate_loop


def backend_name() -> str:
    """Either 'compiled' or 'python'."""
    return _impl.BACKEND_KIND
