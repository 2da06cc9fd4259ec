import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QPVERIFY_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "qpverify.termops._speedups",
                    ["src/qpverify/termops/_speedups.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception:
        # The compiled backend is optional; the pure-Python kernels are
        # selected at import time when the extension is missing.
        ext_modules = []

setup(ext_modules=ext_modules)
