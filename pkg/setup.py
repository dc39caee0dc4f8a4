import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup; the package falls back to
# coupledfp.kernels.pure when the extension is absent. -ffp-contract=off keeps
# the C arithmetic bit-identical to the pure-Python reference (no FMA fusing).
ext_modules = []
if os.environ.get("COUPLED_FP_SKIP_EXT", "") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "coupledfp.kernels._compiled",
                    ["src/coupledfp/kernels/_compiled.pyx"],
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
