import numpy as np
import pytest

from conftest import random_mixed_density
from npwigner import (
    InvalidStateError,
    brute_force_marginal_check,
    characteristic_times_kernel,
    density_from_pure,
    full_verification,
    make_cat_state,
    make_coherent_state,
    make_number_state,
    make_phase_state,
    sg_matrix_element,
    wigner_np,
    wigner_via_characteristic,
)
from npwigner.fock import TWO_PI, DensityMatrix
from npwigner.oracle import (
    CharacteristicSample,
    characteristic_sample,
    min_wigner_check,
    trapezoid_orthogonality_defect,
)

INV_2PI = 1.0 / TWO_PI


class TestShiftMatrixElement:
    def test_identity_power(self):
        assert sg_matrix_element(0, 2, 2) == 1
        assert sg_matrix_element(0, 2, 3) == 0

    def test_single_raise(self):
        assert sg_matrix_element(1, 1, 0) == 1
        assert sg_matrix_element(1, 2, 0) == 0

    def test_shift_mismatch(self):
        assert sg_matrix_element(2, 1, 0) == 0
        assert sg_matrix_element(2, 2, 0) == 1

    def test_preconditions(self):
        with pytest.raises(ValueError):
            sg_matrix_element(-1, 0, 0)
        with pytest.raises(ValueError):
            sg_matrix_element(0, -1, 0)


def displacement_matrix(k: int, theta: float, dim: int) -> np.ndarray:
    """Explicit operator product: e^{i theta k} e^{-i theta n_op} V_+^k."""
    raise_op = np.zeros((dim, dim), dtype=complex)
    for j in range(dim - 1):
        raise_op[j + 1, j] = 1.0
    power = np.linalg.matrix_power(raise_op if k >= 0 else raise_op.conj().T, abs(k))
    rotate = np.diag(np.exp(-1j * theta * np.arange(dim)))
    return np.exp(1j * theta * k) * rotate @ power


class TestCharacteristicKernel:
    def test_vacuum_identity_kernel(self):
        rho = density_from_pure(make_number_state(0, 4))
        assert characteristic_times_kernel(rho, 0, 0.0, 0, 0.0) == pytest.approx(1.0)

    def test_number_state_has_no_offdiagonal_support(self, rng):
        rho = density_from_pure(make_number_state(3, 8))
        for theta in rng.uniform(0, TWO_PI, 4):
            assert characteristic_times_kernel(rho, 1, theta, 2, 0.3) == 0.0

    def test_against_explicit_matrix_trace(self, rng):
        """Small-matrix trace oracle over several states, k of both signs."""
        states = [
            density_from_pure(make_phase_state(1, 0.0, 3)),
            density_from_pure(make_coherent_state(1.0, 6, tail_tol=1e-3)),
            random_mixed_density(2, 5),
        ]
        worst = 0.0
        for rho in states:
            dim = rho.cutoff + 1
            for k in (-2, -1, 0, 1, 3):
                if k < -rho.cutoff:
                    continue
                for theta in rng.uniform(0, TWO_PI, 3):
                    for n, phi in [(0, 0.0), (1, 1.3), (2, 4.0)]:
                        d_op = displacement_matrix(k, theta, dim)
                        z = np.trace(d_op @ rho.entries) * np.exp(
                            1j * (k * phi + n * theta)
                        )
                        got = characteristic_times_kernel(rho, k, theta, n, phi)
                        worst = max(worst, abs(got - z.real))
        assert worst < 1e-12

    def test_phase_state_two_by_two_trace(self):
        # explicit 2x2 check: the M=1, phi0=0 state at k=1, theta=0
        rho = density_from_pure(make_phase_state(1, 0.0, 1))
        d_op = displacement_matrix(1, 0.0, 2)
        expected = float(np.trace(d_op @ rho.entries).real)
        assert characteristic_times_kernel(rho, 1, 0.0, 0, 0.0) == pytest.approx(expected)
        assert expected == pytest.approx(0.5)

    def test_sample_carries_complex_value(self):
        rho = density_from_pure(make_phase_state(2, 0.4, 4))
        sample = characteristic_sample(rho, 1, 0.3, 1, 0.9)
        assert isinstance(sample, CharacteristicSample)
        assert sample.symmetrized == pytest.approx(sample.value.real)


class TestWignerViaCharacteristic:
    def test_vacuum(self):
        rho = density_from_pure(make_number_state(0, 4))
        got = wigner_via_characteristic(rho, 0, 0.9, 64)
        assert got == pytest.approx(INV_2PI, abs=1e-12)

    def test_cat_matches_direct(self):
        rho = density_from_pure(make_cat_state(2.0, 32))
        got = wigner_via_characteristic(rho, 4, 1.1, 128)
        assert got == pytest.approx(wigner_np(rho, 4, 1.1), abs=1e-10)

    def test_phase_state_peak(self):
        rho = density_from_pure(make_phase_state(20, 0.7, 24))
        got = wigner_via_characteristic(rho, 10, 0.7, 128)
        assert got == pytest.approx(INV_2PI, abs=1e-10)

    def test_undersampled_theta_rejected(self):
        rho = density_from_pure(make_coherent_state(2.0, 24))
        with pytest.raises(InvalidStateError):
            wigner_via_characteristic(rho, 0, 0.0, 2 * 24 + 2)

    def test_path_equivalence_on_random_states(self, rng):
        worst = 0.0
        for seed in range(8):
            rho = random_mixed_density(seed, 24)
            theta_samples = 2 * 24 + 3
            for _ in range(5):
                n = int(rng.integers(0, 25))
                phi = float(rng.uniform(0, TWO_PI))
                dev = abs(
                    wigner_via_characteristic(rho, n, phi, theta_samples)
                    - wigner_np(rho, n, phi)
                )
                worst = max(worst, dev)
        assert worst < 1e-10


class TestTrapezoidOrthogonality:
    def test_delta_mechanism(self):
        samples = 51
        for j in range(-(samples - 1), samples):
            assert trapezoid_orthogonality_defect(j, samples) < 1e-12

    def test_dc_term(self):
        assert trapezoid_orthogonality_defect(0, 16) == 0.0


class TestMarginalCheckReports:
    def test_number_state_deviations_tiny(self):
        report = brute_force_marginal_check(
            density_from_pure(make_number_state(5, 16)), 64
        )
        assert report.passed
        for check in report.checks:
            assert check.deviation < 1e-14

    @pytest.mark.parametrize("build", [
        lambda: make_coherent_state(4.0, 64),
        lambda: make_cat_state(4.0, 64),
    ])
    def test_reference_states_pass(self, build):
        report = brute_force_marginal_check(density_from_pure(build()), 256)
        assert report.passed
        for check in report.checks:
            assert check.deviation < 1e-10

    def test_undersampled_phi_rejected(self):
        rho = density_from_pure(make_number_state(0, 32))
        with pytest.raises(InvalidStateError):
            brute_force_marginal_check(rho, 2 * 32 + 2)


class TestFullVerification:
    def test_valid_state_passes(self):
        rho = density_from_pure(make_phase_state(6, 0.3, 12))
        report = full_verification(rho, phi_samples=64, theta_samples=27, points=6)
        assert report.passed
        names = {c.name for c in report.checks}
        assert "hermiticity" in names and "min_wigner_value" in names

    def test_non_hermitian_fails_without_crash(self):
        q = np.zeros((3, 3), dtype=complex)
        q[0, 0] = 1.0
        q[1, 0] = 0.25j
        report = full_verification(DensityMatrix(q, 2), phi_samples=16, theta_samples=9)
        assert not report.passed
        assert len(report.checks) == 1  # only the hermiticity gate ran

    def test_min_wigner_is_informational(self):
        rho = density_from_pure(make_cat_state(4.0, 64))
        check = min_wigner_check(rho)
        assert check.informational
        assert check.deviation < 0.0  # genuine negativity
        report = full_verification(rho, phi_samples=256, theta_samples=131, points=4)
        assert report.passed  # negativity does not gate
