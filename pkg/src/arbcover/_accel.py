"""Optional numba acceleration.

Kernels are written as plain loops over numpy arrays. They are compiled with
``numba.njit`` when numba is importable and ``ARBCOVER_DISABLE_NUMBA`` is unset
(or ``0``); otherwise the same functions run as ordinary Python.
"""

import os

_flag = os.environ.get("ARBCOVER_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no")

try:
    if DISABLED:
        raise ImportError
    import numba

    HAS_NUMBA = True
except ImportError:
    numba = None
    HAS_NUMBA = False


def njit(func):
    if HAS_NUMBA:
        return numba.njit(cache=True, nogil=True)(func)
    return func


def python_version(func):
    """The uncompiled implementation behind a (possibly) jitted kernel."""
    return getattr(func, "py_func", func)
