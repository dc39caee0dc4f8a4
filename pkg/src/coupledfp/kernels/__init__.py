"""Kernel backend selection.

The compiled extension (Cython) and the pure-Python module implement the same
sweeps with identical RNG streams and arithmetic, so their outputs are
bit-for-bit equal; the compiled one is simply faster. Selection happens at
import time: the extension is preferred when importable, and the environment
variable COUPLED_FP_PURE_PYTHON=1 forces the fallback.
"""

import os

from . import pure as _pure

try:
    from . import _compiled as _compiled_mod
except ImportError:
    _compiled_mod = None

banach_sweep = None
band_sweep = None
strict_sweep = None
rand_doubles = None
stream_seed = _pure.stream_seed
KERNEL_BACKEND = ""


def use_backend(name="auto"):
    """Select the active kernel implementation: "compiled", "pure-python" or "auto".

    Primarily a hook for tests and benchmarks; normal use keeps the import-time
    default. Raises ValueError for an unknown name and RuntimeError when the
    compiled backend is requested but was not built.
    """
    global banach_sweep, band_sweep, strict_sweep, rand_doubles, KERNEL_BACKEND
    if name == "auto":
        forced = os.environ.get("COUPLED_FP_PURE_PYTHON", "").strip() not in ("", "0")
        name = "pure-python" if (forced or _compiled_mod is None) else "compiled"
    if name == "compiled":
        if _compiled_mod is None:
            raise RuntimeError("compiled kernels are not available in this build")
        impl = _compiled_mod
    elif name == "pure-python":
        impl = _pure
    else:
        raise ValueError(f"unknown kernel backend: {name!r}")
    banach_sweep = impl.banach_sweep
    band_sweep = impl.band_sweep
    strict_sweep = impl.strict_sweep
    rand_doubles = impl.rand_doubles
    KERNEL_BACKEND = name
    return name


def compiled_available():
    return _compiled_mod is not None


use_backend("auto")
