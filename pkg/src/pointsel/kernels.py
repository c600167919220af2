"""Kernel backend selection.

The compiled extension is used when it imports; setting the environment
variable ``POINTSEL_PURE=1`` forces the pure-Python implementation.  Both
backends return identical results on every input.
"""

from __future__ import annotations

import os

from . import _fallback

BACKEND = "python"
_impl = _fallback

if os.environ.get("POINTSEL_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        BACKEND = "compiled"

det_value = _fallback.det_value
det_sign = _impl.det_sign
orient_sign = _impl.orient_sign
family_scan = _impl.family_scan
side_counts = _impl.side_counts
side_value = _fallback.side_value
PackedSimplices = _impl.PackedSimplices
PackedCells = _impl.PackedCells

__all__ = [
    "BACKEND",
    "det_value",
    "det_sign",
    "orient_sign",
    "family_scan",
    "side_counts",
    "side_value",
    "PackedSimplices",
    "PackedCells",
]
