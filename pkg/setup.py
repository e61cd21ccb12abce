"""Builds the optional compiled integrator kernel.

The package is fully functional without the extension (a pure-Python
fallback is selected at import); build it for fast trajectory runs:

    python setup.py build_ext --inplace
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "quatorb._kernels",
        ["src/quatorb/_kernels.pyx"],
        # -ffp-contract=off keeps the C arithmetic bit-identical to the
        # pure-Python fallback (no FMA contraction, no reassociation).
        extra_compile_args=["-O2", "-ffp-contract=off"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"})
    if cythonize is not None
    else [],
)
