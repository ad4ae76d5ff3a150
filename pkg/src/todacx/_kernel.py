"""Backend selection for the Smith reduction kernel.

The compiled module is used when it was built and ``TODACX_PURE`` is unset.
Overflow in the compiled path falls back to the exact Python kernel.
"""

import os

from . import _snf_py

try:
    if os.environ.get("TODACX_PURE"):
        raise ImportError("pure backend requested")
    from . import _snf_core as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def smith_reduce(a, nrows, ncols, track=True):
    if _compiled is not None:
        try:
            return _compiled.smith_reduce(a, nrows, ncols, track)
        except OverflowError:
            pass
    return _snf_py.smith_reduce(a, nrows, ncols, track)


def python_smith_reduce(a, nrows, ncols, track=True):
    return _snf_py.smith_reduce(a, nrows, ncols, track)


def compiled_smith_reduce(a, nrows, ncols, track=True):
    if _compiled is None:
        raise RuntimeError("compiled kernel not built")
    return _compiled.smith_reduce(a, nrows, ncols, track)
