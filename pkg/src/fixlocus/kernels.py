"""Backend selection for the scan kernels.

The compiled extension is preferred; set ``FIXLOCUS_PURE_PYTHON=1`` to force the
numpy fallback.  Both backends return identical results.
"""

from __future__ import annotations

import os

if os.environ.get("FIXLOCUS_PURE_PYTHON", "") not in ("", "0"):
    from fixlocus import _kernels_py as _impl
else:
    try:
        from fixlocus import _kernels as _impl
    except ImportError:
        from fixlocus import _kernels_py as _impl

BACKEND: str = _impl.BACKEND
closure = _impl.closure
conjugates = _impl.conjugates
conjugator_mask = _impl.conjugator_mask
first_conjugator = _impl.first_conjugator

__all__ = ["BACKEND", "closure", "conjugates", "conjugator_mask", "first_conjugator"]
