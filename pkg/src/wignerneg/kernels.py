"""Backend selection for the grid kernels.

The compiled extension is used when importable; set ``WIGNER_PURE_PYTHON=1``
to force the numpy fallback. ``WIGNER_THREADS`` caps the worker count of the
compiled backend (unset or 0 means one worker per CPU).
"""
import os

from . import _kernels_py

KIND_SDF = 0
KIND_CAT = 1

if os.environ.get("WIGNER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = _impl.BACKEND


def default_threads():
    raw = os.environ.get("WIGNER_THREADS", "").strip()
    try:
        n = int(raw) if raw else 0
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def get_backend(name=None):
    """Return the kernel module for `name` ("cython", "python") or the active one."""
    if name is None:
        return _impl
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown backend {name!r}")
