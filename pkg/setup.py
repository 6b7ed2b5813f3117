"""Build script: compiles the optional native kernel module.

The package is fully functional without the extension (polyplan falls back to
the pure-Python kernels), so any build failure here is non-fatal by design:
install with POLYPLAN_SKIP_NATIVE=1 to skip compilation entirely.

-ffp-contract=off keeps the C arithmetic bit-identical to the pure-Python
twin (no fused multiply-add contraction).
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("POLYPLAN_SKIP_NATIVE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "polyplan._native",
                    ["src/polyplan/_native.pyx"],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                    language="c",
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
