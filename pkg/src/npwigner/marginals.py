"""Photon-number and phase marginals of the number-phase Wigner function.

Both marginals exist in an analytic form straight from the density matrix
and in a quadrature form from a sampled grid. On the uniform periodic grid
the trapezoid rule integrates e^{i j phi} exactly for 0 < |j| < phi_samples,
so with phi_samples above twice the cutoff the grid marginal is an identity
up to rounding, not an approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import TWO_PI, DensityMatrix, InvalidStateError, reduce_phase
from .wigner import IMAG_TOL, WignerGrid


@dataclass(frozen=True)
class PhotonDistribution:
    """P(n) for n = 0..len-1; warnings carry quadrature caveats, if any."""

    probabilities: np.ndarray
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        p = np.ascontiguousarray(np.asarray(self.probabilities, dtype=np.float64))
        p.setflags(write=False)
        object.__setattr__(self, "probabilities", p)

    def total(self) -> float:
        return float(self.probabilities.sum())


@dataclass(frozen=True)
class PhaseDistribution:
    """P(phi) sampled on phi_j = phi_offset + 2*pi*j/phi_samples (prob/radian)."""

    values: np.ndarray
    phi_samples: int
    phi_offset: float = 0.0

    def __post_init__(self):
        v = np.ascontiguousarray(np.asarray(self.values, dtype=np.float64))
        if v.shape != (self.phi_samples,):
            raise ValueError(f"values must have length {self.phi_samples}, got {v.shape}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def phis(self) -> np.ndarray:
        j = np.arange(self.phi_samples, dtype=np.float64)
        return (self.phi_offset + TWO_PI * j / self.phi_samples) % TWO_PI

    def integral(self) -> float:
        """Trapezoid integral over the period (uniform weights)."""
        return float(self.values.sum()) * TWO_PI / self.phi_samples


def exactness_bound(cutoff: int) -> int:
    """Smallest phi_samples for which grid quadrature is exact: 2*cutoff + 2."""
    return 2 * int(cutoff) + 2


def photon_marginal_analytic(rho: DensityMatrix) -> PhotonDistribution:
    """P(n) = Q[n, n]; the integral of W over phi collapses to the diagonal."""
    return PhotonDistribution(rho.entries.diagonal().real.copy())


def photon_marginal_from_grid(grid: WignerGrid) -> PhotonDistribution:
    """P(n) by uniform-trapezoid quadrature of each grid row over phi."""
    p = grid.values.sum(axis=1) * (TWO_PI / grid.phi_samples)
    cutoff = grid.source_cutoff if grid.source_cutoff is not None else grid.n_max
    warnings: tuple[str, ...] = ()
    if grid.phi_samples < exactness_bound(cutoff):
        warnings = (
            f"phi_samples={grid.phi_samples} below the exactness bound "
            f"{exactness_bound(cutoff)} for cutoff {cutoff}; quadrature is approximate",
        )
    return PhotonDistribution(p, warnings)


def phase_marginal(rho: DensityMatrix, phi: float) -> float:
    """P(phi) = (1/2pi) sum_{n,m} Q[n,m] e^{i(m-n) phi} = <phi|rho|phi>.

    Equals sum_n W(n, phi) over the truncated basis, to rounding.
    """
    if not rho.is_hermitian():
        raise InvalidStateError("phase marginal requires a Hermitian density matrix")
    phi = reduce_phase(phi)
    m = np.arange(rho.cutoff + 1)
    u = np.exp(1j * m * phi)
    z = complex(u.conj() @ rho.entries @ u)
    if abs(z.imag) > IMAG_TOL * TWO_PI:
        raise InvalidStateError(
            f"imaginary residue {z.imag / TWO_PI:.3e} exceeds {IMAG_TOL:g}"
        )
    return z.real / TWO_PI


def phase_distribution(
    rho: DensityMatrix, phi_samples: int = 512, phi_offset: float = 0.0
) -> PhaseDistribution:
    """Sample the phase marginal on a uniform grid."""
    phi_samples = int(phi_samples)
    if phi_samples < 1:
        raise InvalidStateError(f"phi_samples must be >= 1, got {phi_samples}")
    if not rho.is_hermitian():
        raise InvalidStateError("phase marginal requires a Hermitian density matrix")
    phi_offset = reduce_phase(phi_offset)
    j = np.arange(phi_samples, dtype=np.float64)
    phis = (phi_offset + TWO_PI * j / phi_samples) % TWO_PI
    m = np.arange(rho.cutoff + 1, dtype=np.float64)
    u = np.exp(1j * np.outer(m, phis))                     # (dim, S)
    z = np.einsum("ns,nm,ms->s", u.conj(), rho.entries, u, optimize=True)
    resid = float(np.abs(z.imag).max(initial=0.0)) / TWO_PI
    if resid > IMAG_TOL:
        raise InvalidStateError(f"imaginary residue {resid:.3e} exceeds {IMAG_TOL:g}")
    return PhaseDistribution(z.real / TWO_PI, phi_samples, phi_offset)


def phase_state_phase_dist_closed(M: int, phi0: float, phi: float) -> float:
    """P(phi) of the truncated phase state: the order-(M+1) Fejer kernel.

    At the removable singularity phi -> phi0 the limit (M+1)/(2pi) is used.
    """
    M = int(M)
    if M < 0:
        raise ValueError(f"M must be >= 0, got {M}")
    d = reduce_phase(phi) - reduce_phase(phi0)
    half_sin = math.sin(d / 2.0)
    if abs(half_sin) < 1e-8:
        return (M + 1) / TWO_PI
    ratio = math.sin((M + 1) / 2.0 * d) / half_sin
    return ratio * ratio / (2.0 * (M + 1) * math.pi)
