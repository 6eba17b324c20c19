"""Grid-kernel backend selection.

The compiled extension is preferred when importable; setting the environment
variable NPWIGNER_PURE_PYTHON to a non-empty value forces the NumPy fallback.
Both backends form their phase factors from the same m*phi products, so they
agree to accumulation order (well under 1e-13).
"""

from __future__ import annotations

import os

import numpy as np

from . import _gridkernel_py

if os.environ.get("NPWIGNER_PURE_PYTHON"):
    _impl = _gridkernel_py
    BACKEND = "python"
else:
    try:
        from . import _gridkernel as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _gridkernel_py
        BACKEND = "python"


def grid_eval(q: np.ndarray, phis: np.ndarray, n_max: int) -> tuple[np.ndarray, float]:
    """Dispatch grid evaluation to the active backend.

    Returns (values, max_imag_residue) with values shaped (n_max+1, len(phis)).
    """
    q = np.ascontiguousarray(q, dtype=np.complex128)
    qt = np.ascontiguousarray(q.T)
    phis = np.ascontiguousarray(phis, dtype=np.float64)
    return _impl.grid_eval(q, qt, phis, int(n_max))
