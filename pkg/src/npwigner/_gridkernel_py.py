"""NumPy fallback for the Wigner grid kernel.

Mirrors the compiled kernel term for term: phase factors come from the same
m*phi products, and both summand families are combined only at the end, so
the imaginary residue is a measured quantity here too.
"""

from __future__ import annotations

import numpy as np

FOUR_PI = 4.0 * np.pi


def grid_eval(
    q: np.ndarray,
    qt: np.ndarray,
    phis: np.ndarray,
    n_max: int,
) -> tuple[np.ndarray, float]:
    """Evaluate W[n, j] at the given phases; returns (values, max residue)."""
    dim = q.shape[0]
    if qt.shape != q.shape:
        raise ValueError("qt must match the density matrix shape")
    if not 0 <= n_max < dim:
        raise ValueError("n_max out of range")

    angles = np.outer(np.arange(dim, dtype=np.float64), phis)
    em_plus = np.cos(angles) + 1j * np.sin(angles)    # e^{+i m phi_j}, (dim, S)
    t = q[: n_max + 1] @ em_plus                      # sum_m Q[n,m] e^{+im phi}
    u = qt[: n_max + 1] @ em_plus.conj()              # sum_m Q[m,n] e^{-im phi}
    en = em_plus[: n_max + 1]                         # e^{+i n phi_j}
    z = t * en.conj() + u * en
    values = np.ascontiguousarray(z.real) / FOUR_PI
    resid = float(np.abs(z.imag).max(initial=0.0)) / FOUR_PI
    return values, resid
