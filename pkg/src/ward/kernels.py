"""Kernel backend selection.

The compiled extension ``ward._ckernels`` is used when it was built and
importable; otherwise the pure-Python module is used.  Setting the
environment variable ``WARD_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("WARD_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py

convolve = _impl.convolve
reciprocal = _impl.reciprocal
compose = _impl.compose


def available_backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _kernels_py}
    try:
        from . import _ckernels  # type: ignore[attr-defined]

        out["cython"] = _ckernels
    except ImportError:
        pass
    return out
