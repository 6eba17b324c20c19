"""Number-phase Wigner functions for single-mode bosonic states.

Build states in a truncated Fock basis, evaluate the joint quasiprobability
W(n, phi) over photon number and phase, take its exact marginals, and
cross-validate through an independent characteristic-function route.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .fock import (
    DEFAULT_TAIL_TOL,
    CutoffError,
    DensityMatrix,
    InvalidStateError,
    PureState,
    density_from_pure,
    make_cat_state,
    make_coherent_state,
    make_number_state,
    make_phase_state,
    minimal_cat_cutoff,
    minimal_coherent_cutoff,
    mix,
    pure_state_from_amplitudes,
)
from .marginals import (
    PhaseDistribution,
    PhotonDistribution,
    phase_distribution,
    phase_marginal,
    phase_state_phase_dist_closed,
    photon_marginal_analytic,
    photon_marginal_from_grid,
)
from .oracle import (
    CharacteristicSample,
    CheckResult,
    ValidationReport,
    brute_force_marginal_check,
    characteristic_times_kernel,
    full_verification,
    sg_matrix_element,
    wigner_via_characteristic,
)
from .statespec import BuiltState, build_state
from .wigner import (
    WignerGrid,
    WignerPoint,
    cat_wigner_closed,
    coherent_wigner_closed,
    phase_state_wigner_closed,
    wigner_grid,
    wigner_np,
)

__all__ = [
    "BACKEND",
    "DEFAULT_TAIL_TOL",
    "BuiltState",
    "CharacteristicSample",
    "CheckResult",
    "CutoffError",
    "DensityMatrix",
    "InvalidStateError",
    "PhaseDistribution",
    "PhotonDistribution",
    "PureState",
    "ValidationReport",
    "WignerGrid",
    "WignerPoint",
    "brute_force_marginal_check",
    "build_state",
    "cat_wigner_closed",
    "characteristic_times_kernel",
    "coherent_wigner_closed",
    "density_from_pure",
    "full_verification",
    "make_cat_state",
    "make_coherent_state",
    "make_number_state",
    "make_phase_state",
    "minimal_cat_cutoff",
    "minimal_coherent_cutoff",
    "mix",
    "phase_distribution",
    "phase_marginal",
    "phase_state_phase_dist_closed",
    "phase_state_wigner_closed",
    "photon_marginal_analytic",
    "photon_marginal_from_grid",
    "pure_state_from_amplitudes",
    "sg_matrix_element",
    "wigner_grid",
    "wigner_np",
    "wigner_via_characteristic",
]
