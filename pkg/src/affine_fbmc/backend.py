"""Kernel backend selection: compiled extension when available, numpy otherwise.

Set AFFINE_FBMC_BACKEND=python or =compiled to force a choice; forcing the
compiled backend raises if the extension was not built.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built; pure-python fallback
    _compiled = None

_FORCED = os.environ.get("AFFINE_FBMC_BACKEND", "").strip().lower()

if _FORCED == "python":
    kernels = _kernels_py
elif _FORCED == "compiled":
    if _compiled is None:
        raise ImportError(
            "AFFINE_FBMC_BACKEND=compiled but the affine_fbmc._kernels "
            "extension is not importable"
        )
    kernels = _compiled
elif _FORCED:
    raise ImportError(f"unknown AFFINE_FBMC_BACKEND value {_FORCED!r}")
else:
    kernels = _compiled if _compiled is not None else _kernels_py


def active_backend() -> str:
    """Name of the kernel implementation in use: "compiled" or "python"."""
    return "python" if kernels is _kernels_py else "compiled"
