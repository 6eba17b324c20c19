"""States and density matrices in a truncated Fock basis.

All constructors return immutable objects. Coefficients of the form
alpha^m / sqrt(m!) are evaluated in log space (exp(m*ln|alpha| - lgamma(m+1)/2))
so that large amplitudes and cutoffs do not overflow. Phases (phi, phi0) are
reduced to [0, 2*pi) on input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammainc, gammaln

TWO_PI = 2.0 * math.pi

#: Default bound on the probability mass a state may carry above the cutoff.
DEFAULT_TAIL_TOL = 1e-10


class InvalidStateError(ValueError):
    """A state or density matrix violates a construction contract."""


class CutoffError(InvalidStateError):
    """The requested Fock cutoff cannot hold the state within tolerance."""

    def __init__(self, message: str, suggested_cutoff: int | None = None):
        super().__init__(message)
        self.suggested_cutoff = suggested_cutoff


def reduce_phase(phi: float) -> float:
    """Reduce an angle to [0, 2*pi). Idempotent on already-reduced inputs."""
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phase must be finite, got {phi!r}")
    if 0.0 <= phi < TWO_PI:
        return phi
    return phi % TWO_PI


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    arr.setflags(write=False)
    return arr


def _fmt_alpha(alpha: complex) -> str:
    alpha = complex(alpha)
    return f"{alpha.real:g}" if alpha.imag == 0.0 else str(alpha)


@dataclass(frozen=True)
class PureState:
    """Fock-basis amplitude vector c_m for m = 0..cutoff.

    tail_mass is the probability weight of the untruncated state above the
    cutoff (analytically known for coherent and cat states, zero for number
    and phase states).
    """

    amplitudes: np.ndarray
    cutoff: int
    tail_mass: float

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != self.cutoff + 1:
            raise InvalidStateError(
                f"amplitude vector must have length cutoff+1={self.cutoff + 1}, "
                f"got shape {amps.shape}"
            )
        if not (np.all(np.isfinite(amps.real)) and np.all(np.isfinite(amps.imag))):
            raise InvalidStateError("amplitudes must be finite")
        object.__setattr__(self, "amplitudes", _frozen(amps))

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def photon_probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def mean_photon_number(self) -> float:
        p = self.photon_probabilities()
        return float(np.dot(np.arange(self.cutoff + 1), p))


@dataclass(frozen=True)
class DensityMatrix:
    """Number-basis density matrix; entries[m, l] multiplies |m><l|."""

    entries: np.ndarray
    cutoff: int

    def __post_init__(self):
        q = np.asarray(self.entries, dtype=np.complex128)
        dim = self.cutoff + 1
        if q.shape != (dim, dim):
            raise InvalidStateError(
                f"entries must be {dim}x{dim} for cutoff {self.cutoff}, got {q.shape}"
            )
        if not (np.all(np.isfinite(q.real)) and np.all(np.isfinite(q.imag))):
            raise InvalidStateError("density matrix entries must be finite")
        object.__setattr__(self, "entries", _frozen(q))

    def is_hermitian(self) -> bool:
        """Exact (0-tolerance) Hermiticity; holds by construction here."""
        q = self.entries
        return bool(np.array_equal(q, q.conj().T))

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def diagonal(self) -> np.ndarray:
        return self.entries.diagonal().real.copy()

    def validate(self, tail_tol: float = DEFAULT_TAIL_TOL) -> None:
        """Raise InvalidStateError on any violated invariant."""
        if not self.is_hermitian():
            raise InvalidStateError("density matrix is not Hermitian")
        diag = self.entries.diagonal()
        if np.abs(diag.imag).max(initial=0.0) > 0.0:
            raise InvalidStateError("diagonal entries must be real")
        if diag.real.min(initial=0.0) < -1e-14:
            raise InvalidStateError(
                f"diagonal entry {diag.real.min():.3e} below -1e-14"
            )
        tr = self.trace()
        if not (1.0 - tail_tol <= tr <= 1.0 + 1e-12):
            raise InvalidStateError(
                f"trace {tr!r} outside [1 - {tail_tol:g}, 1]"
            )


# --- log-space coefficient helpers -----------------------------------------

def _coherent_log_weights(alpha_mag: float, count: int) -> np.ndarray:
    """log(|alpha|^m / sqrt(m!)) - |alpha|^2/2 for m = 0..count-1."""
    m = np.arange(count)
    if alpha_mag == 0.0:
        logs = np.full(count, -np.inf)
        logs[0] = 0.0
        return logs
    return m * math.log(alpha_mag) - alpha_mag**2 / 2.0 - 0.5 * gammaln(m + 1)


def coherent_amplitudes(alpha: complex, cutoff: int) -> np.ndarray:
    """Truncated coherent-state amplitudes, without normalization repair."""
    alpha = complex(alpha)
    mag = abs(alpha)
    logs = _coherent_log_weights(mag, cutoff + 1)
    with np.errstate(under="ignore"):
        amps = np.exp(logs).astype(np.complex128)
    m = np.arange(cutoff + 1)
    if alpha.imag == 0.0:
        if alpha.real < 0.0:
            amps[1::2] *= -1.0  # exact (-1)^m, not exp(i pi m)
    elif alpha != 0:
        amps *= np.exp(1j * np.angle(alpha) * m)
    return amps


def coherent_tail_mass(alpha: complex, cutoff: int) -> float:
    """Poisson mass above the cutoff: P(X > cutoff) for X ~ Poisson(|alpha|^2)."""
    lam = abs(complex(alpha)) ** 2
    if lam == 0.0:
        return 0.0
    return float(gammainc(cutoff + 1, lam))


def minimal_coherent_cutoff(alpha: complex, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    lam = abs(complex(alpha)) ** 2
    if lam == 0.0:
        return 0
    n = max(1, int(lam))
    while coherent_tail_mass(alpha, n) > tail_tol:
        n += max(1, n // 8)
    while n > 0 and coherent_tail_mass(alpha, n - 1) <= tail_tol:
        n -= 1
    return n


def cat_norm_sq(alpha: complex) -> float:
    """Closed-form normalization N^2 = 2(1 + exp(-2|alpha|^2))."""
    return 2.0 * (1.0 + math.exp(-2.0 * abs(complex(alpha)) ** 2))


def cat_tail_mass(alpha: complex, cutoff: int) -> float:
    """Mass of the ideal even-parity cat above the cutoff.

    Computed as 1 minus the retained even-m Poisson series over the
    closed-form normalization; accurate to float cancellation (~1e-16),
    which is ample against tail tolerances of 1e-10.
    """
    lam = abs(complex(alpha)) ** 2
    if lam == 0.0:
        return 0.0
    m = np.arange(0, cutoff + 1, 2)
    logp = -lam + m * math.log(lam) - gammaln(m + 1)
    with np.errstate(under="ignore"):
        retained = 4.0 * np.exp(logp).sum() / cat_norm_sq(alpha)
    return max(0.0, 1.0 - float(retained))


def minimal_cat_cutoff(alpha: complex, tail_tol: float = DEFAULT_TAIL_TOL) -> int:
    if abs(complex(alpha)) == 0.0:
        return 0
    n = max(1, int(abs(complex(alpha)) ** 2))
    while cat_tail_mass(alpha, n) > tail_tol:
        n += max(1, n // 8)
    while n > 0 and cat_tail_mass(alpha, n - 1) <= tail_tol:
        n -= 1
    return n


# --- state constructors -----------------------------------------------------

def make_number_state(M: int, cutoff: int) -> PureState:
    """|M> in a basis truncated at `cutoff`."""
    M, cutoff = int(M), int(cutoff)
    if cutoff < 0:
        raise InvalidStateError(f"cutoff must be >= 0, got {cutoff}")
    if not 0 <= M <= cutoff:
        raise CutoffError(
            f"number state M={M} does not fit cutoff {cutoff}; need cutoff >= {M}",
            suggested_cutoff=max(M, 0),
        )
    amps = np.zeros(cutoff + 1, dtype=np.complex128)
    amps[M] = 1.0
    return PureState(amps, cutoff, 0.0)


def make_coherent_state(
    alpha: complex, cutoff: int, tail_tol: float = DEFAULT_TAIL_TOL
) -> PureState:
    """Coherent state |alpha>, truncated; rejected if too much mass is lost."""
    cutoff = int(cutoff)
    if cutoff < 0:
        raise InvalidStateError(f"cutoff must be >= 0, got {cutoff}")
    tail = coherent_tail_mass(alpha, cutoff)
    if tail > tail_tol:
        need = minimal_coherent_cutoff(alpha, tail_tol)
        raise CutoffError(
            f"coherent state alpha={_fmt_alpha(alpha)} loses tail mass {tail:.3e} at cutoff "
            f"{cutoff} (tolerance {tail_tol:g}); smallest adequate cutoff is {need}",
            suggested_cutoff=need,
        )
    return PureState(coherent_amplitudes(alpha, cutoff), cutoff, tail)


def make_cat_state(
    alpha: complex, cutoff: int, tail_tol: float = DEFAULT_TAIL_TOL
) -> PureState:
    """Even superposition of |alpha> and |-alpha>, renormalized after truncation.

    Odd-m amplitudes are exactly zero. The normalization is computed from the
    truncated vector so the stored state has unit norm; the closed form
    N^2 = 2(1 + exp(-2|alpha|^2)) is kept as a cross-check (cat_norm_sq).
    """
    cutoff = int(cutoff)
    if cutoff < 0:
        raise InvalidStateError(f"cutoff must be >= 0, got {cutoff}")
    tail = cat_tail_mass(alpha, cutoff)
    if tail > tail_tol:
        need = minimal_cat_cutoff(alpha, tail_tol)
        raise CutoffError(
            f"cat state alpha={_fmt_alpha(alpha)} loses tail mass {tail:.3e} at cutoff "
            f"{cutoff} (tolerance {tail_tol:g}); smallest adequate cutoff is {need}",
            suggested_cutoff=need,
        )
    amps = coherent_amplitudes(alpha, cutoff) + coherent_amplitudes(-alpha, cutoff)
    amps[1::2] = 0.0  # parity selection, exact
    norm = np.linalg.norm(amps)
    if norm == 0.0:
        raise InvalidStateError("cat state amplitudes vanish at this cutoff")
    return PureState(amps / norm, cutoff, tail)


def make_phase_state(M: int, phi0: float, cutoff: int) -> PureState:
    """Uniform superposition sum_{m<=M} e^{i m phi0} |m> / sqrt(M+1)."""
    M, cutoff = int(M), int(cutoff)
    if cutoff < 0:
        raise InvalidStateError(f"cutoff must be >= 0, got {cutoff}")
    if not 0 <= M <= cutoff:
        raise CutoffError(
            f"phase state M={M} does not fit cutoff {cutoff}; need cutoff >= {M}",
            suggested_cutoff=max(M, 0),
        )
    phi0 = reduce_phase(phi0)
    amps = np.zeros(cutoff + 1, dtype=np.complex128)
    m = np.arange(M + 1)
    amps[: M + 1] = np.exp(1j * m * phi0) / math.sqrt(M + 1)
    return PureState(amps, cutoff, 0.0)


def pure_state_from_amplitudes(
    amplitudes: Sequence[complex], cutoff: int | None = None
) -> PureState:
    """Wrap caller-supplied amplitudes, normalizing them to unit norm."""
    amps = np.asarray(list(amplitudes), dtype=np.complex128)
    if amps.ndim != 1 or amps.size == 0:
        raise InvalidStateError("amplitudes must be a non-empty vector")
    if cutoff is None:
        cutoff = amps.size - 1
    cutoff = int(cutoff)
    if cutoff + 1 < amps.size:
        raise CutoffError(
            f"{amps.size} amplitudes do not fit cutoff {cutoff}",
            suggested_cutoff=amps.size - 1,
        )
    full = np.zeros(cutoff + 1, dtype=np.complex128)
    full[: amps.size] = amps
    norm = np.linalg.norm(full)
    if not np.isfinite(norm) or norm == 0.0:
        raise InvalidStateError("amplitudes must have finite nonzero norm")
    return PureState(full / norm, cutoff, 0.0)


def density_from_pure(state: PureState) -> DensityMatrix:
    """Rank-1 projector Q[m, l] = c_m * conj(c_l); Hermitian exactly.

    Hardware FMA makes a bare outer product conjugate-symmetric only to
    ~1e-18, so the Hermitian part (z + z^dagger)/2 is stored; IEEE addition
    is commutative, which makes the stored matrix exactly Hermitian.
    """
    c = state.amplitudes
    z = np.outer(c, c.conj())
    return DensityMatrix((z + z.conj().T) * 0.5, state.cutoff)


def mix(components: Sequence[tuple[float, DensityMatrix]]) -> DensityMatrix:
    """Convex combination of density matrices with a common cutoff."""
    if not components:
        raise InvalidStateError("mix requires at least one component")
    weights = np.array([w for w, _ in components], dtype=float)
    if np.any(weights < 0.0):
        raise InvalidStateError(f"mixture weights must be >= 0, got {weights.tolist()}")
    total = float(weights.sum())
    if abs(total - 1.0) > 1e-12:
        raise InvalidStateError(
            f"mixture weights must sum to 1 within 1e-12, got {total!r}"
        )
    cutoffs = {rho.cutoff for _, rho in components}
    if len(cutoffs) != 1:
        raise InvalidStateError(f"mixture components must share a cutoff, got {sorted(cutoffs)}")
    cutoff = cutoffs.pop()
    out = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    for w, rho in components:
        out += w * rho.entries
    return DensityMatrix(out, cutoff)
