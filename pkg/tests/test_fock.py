import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from npwigner import (
    CutoffError,
    InvalidStateError,
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
from npwigner.fock import (
    TWO_PI,
    cat_norm_sq,
    cat_tail_mass,
    coherent_amplitudes,
    coherent_tail_mass,
    reduce_phase,
)


def poisson_tail_direct(lam: float, cutoff: int) -> float:
    """Independent Poisson tail: 1 - sum of exp(log pmf) up to the cutoff."""
    logs = [-lam + m * math.log(lam) - math.lgamma(m + 1) for m in range(cutoff + 1)]
    return 1.0 - math.fsum(math.exp(v) for v in logs)


class TestNumberState:
    def test_vacuum(self):
        s = make_number_state(0, 8)
        assert s.amplitudes[0] == 1.0
        assert np.all(s.amplitudes[1:] == 0.0)
        assert s.tail_mass == 0.0

    def test_basis_vector(self):
        s = make_number_state(3, 8)
        expected = np.zeros(9)
        expected[3] = 1.0
        assert np.array_equal(s.amplitudes, expected)

    def test_out_of_range(self):
        with pytest.raises(CutoffError) as err:
            make_number_state(9, 8)
        assert err.value.suggested_cutoff == 9


class TestCoherentState:
    def test_alpha_zero_is_vacuum(self):
        s = make_coherent_state(0.0, 8)
        assert s.amplitudes[0] == 1.0
        assert np.all(s.amplitudes[1:] == 0.0)
        assert s.tail_mass == 0.0

    def test_poisson_p16_against_log_factorial_oracle(self):
        s = make_coherent_state(4.0, 64)
        expected = math.exp(-16.0) * 16.0**16 / math.factorial(16)
        assert s.photon_probabilities()[16] == pytest.approx(expected, rel=1e-12)

    def test_small_cutoff_rejected_with_suggestion(self):
        with pytest.raises(CutoffError) as err:
            make_coherent_state(4.0, 10)
        suggested = err.value.suggested_cutoff
        # the suggestion is the smallest adequate cutoff per the direct tail oracle
        assert poisson_tail_direct(16.0, suggested) <= 1e-10
        assert poisson_tail_direct(16.0, suggested - 1) > 1e-10

    def test_tail_mass_matches_direct_sum(self):
        for cutoff in (10, 20, 40):
            assert coherent_tail_mass(4.0, cutoff) == pytest.approx(
                poisson_tail_direct(16.0, cutoff), rel=1e-9, abs=1e-15
            )

    def test_norm_within_tail_window(self):
        s = make_coherent_state(3.0, 48)
        assert 1.0 - 1e-10 <= s.norm_sq() <= 1.0 + 1e-12

    def test_complex_alpha_phases(self):
        s = make_coherent_state(2.0 * np.exp(0.8j), 32)
        mag = make_coherent_state(2.0, 32)
        assert np.allclose(np.abs(s.amplitudes), np.abs(mag.amplitudes), atol=1e-15)
        angles = np.angle(s.amplitudes[:6])
        m = np.arange(6)
        assert np.allclose(np.mod(angles - 0.8 * m + np.pi, TWO_PI) - np.pi, 0.0, atol=1e-12)


class TestCatState:
    def test_alpha_zero_is_vacuum(self):
        s = make_cat_state(0.0, 4)
        assert s.amplitudes[0] == 1.0
        assert np.all(s.amplitudes[1:] == 0.0)

    def test_odd_amplitudes_exactly_zero(self):
        s = make_cat_state(4.0, 64)
        assert np.all(s.amplitudes[1::2] == 0.0)

    def test_unit_norm_after_truncation(self):
        s = make_cat_state(4.0, 64)
        assert s.norm_sq() == pytest.approx(1.0, abs=1e-14)

    def test_mean_photon_number_against_even_series_oracle(self):
        s = make_cat_state(2.0, 40)
        lam = 4.0
        # brute-force mean over the normalized even Poisson series
        norm = cat_norm_sq(2.0)
        terms = [
            4.0 * math.exp(-lam + m * math.log(lam) - math.lgamma(m + 1)) / norm
            for m in range(0, 200, 2)
        ]
        mean = math.fsum(m * t for m, t in zip(range(0, 200, 2), terms))
        assert s.mean_photon_number() == pytest.approx(mean, rel=1e-10)
        assert mean == pytest.approx(lam * math.tanh(lam), rel=1e-10)

    def test_numerical_normalization_matches_closed_form(self):
        # once the tail is below 1e-12 the truncated norm equals N^2
        alpha, cutoff = 2.0, 40
        assert cat_tail_mass(alpha, cutoff) < 1e-12
        unnorm = coherent_amplitudes(alpha, cutoff) + coherent_amplitudes(-alpha, cutoff)
        norm_sq = float(np.vdot(unnorm, unnorm).real)
        assert norm_sq == pytest.approx(cat_norm_sq(alpha), rel=1e-10)

    def test_small_cutoff_rejected(self):
        with pytest.raises(CutoffError) as err:
            make_cat_state(4.0, 10)
        assert err.value.suggested_cutoff >= 40


class TestPhaseState:
    def test_single_term_is_vacuum(self):
        s = make_phase_state(0, 2.2, 4)
        assert s.amplitudes[0] == 1.0
        assert np.all(s.amplitudes[1:] == 0.0)

    def test_m1_phi0_pi(self):
        s = make_phase_state(1, math.pi, 4)
        r = 1.0 / math.sqrt(2.0)
        assert np.allclose(s.amplitudes[:2], [r, -r], atol=1e-15)
        assert np.all(s.amplitudes[2:] == 0.0)

    def test_figure_state_uniform_probabilities(self):
        s = make_phase_state(20, 0.7, 32)
        p = s.photon_probabilities()
        assert np.allclose(p[:21], 1.0 / 21.0, atol=1e-16)
        assert np.all(p[21:] == 0.0)
        assert s.norm_sq() == pytest.approx(1.0, abs=1e-14)

    def test_m_above_cutoff_rejected(self):
        with pytest.raises(CutoffError):
            make_phase_state(20, 0.7, 16)


class TestDensityMatrix:
    def test_number_state_projector(self):
        rho = density_from_pure(make_number_state(3, 6))
        expected = np.zeros((7, 7), dtype=complex)
        expected[3, 3] = 1.0
        assert np.array_equal(rho.entries, expected)

    def test_phase_state_all_entries_half(self):
        rho = density_from_pure(make_phase_state(1, 0.0, 1))
        assert np.allclose(rho.entries, 0.5, atol=1e-16)

    def test_coherent_offdiagonal_value(self):
        rho = density_from_pure(make_coherent_state(1.0, 16))
        assert rho.entries[0, 1].real == pytest.approx(math.exp(-1.0), rel=1e-12)
        assert rho.entries[0, 1].imag == pytest.approx(0.0, abs=1e-18)

    def test_exactly_hermitian_by_construction(self):
        for rho in (
            density_from_pure(make_phase_state(20, 0.7, 24)),
            density_from_pure(make_coherent_state(2.0 + 1.0j, 32)),
            density_from_pure(make_cat_state(3.0, 40)),
        ):
            assert rho.is_hermitian()  # 0-tolerance check

    def test_diagonal_nonnegative_and_trace(self):
        rho = density_from_pure(make_coherent_state(2.0, 24))
        assert rho.diagonal().min() >= -1e-14
        assert 1.0 - 1e-10 <= rho.trace() <= 1.0 + 1e-12
        rho.validate()

    def test_rank_one_minors_vanish(self):
        rho = density_from_pure(make_coherent_state(1.2, 6, tail_tol=1e-2))
        q = rho.entries
        dim = q.shape[0]
        worst = 0.0
        for m in range(dim):
            for mp in range(m + 1, dim):
                for l in range(dim):
                    for lp in range(l + 1, dim):
                        minor = q[m, l] * q[mp, lp] - q[m, lp] * q[mp, l]
                        worst = max(worst, abs(minor))
        assert worst < 1e-12

    def test_entries_read_only(self):
        rho = density_from_pure(make_number_state(1, 4))
        with pytest.raises(ValueError):
            rho.entries[0, 0] = 5.0


class TestMix:
    def test_single_component_identity(self):
        rho = density_from_pure(make_number_state(2, 4))
        mixed = mix([(1.0, rho)])
        assert np.array_equal(mixed.entries, rho.entries)

    def test_equal_mixture_diagonal(self):
        r0 = density_from_pure(make_number_state(0, 4))
        r1 = density_from_pure(make_number_state(1, 4))
        mixed = mix([(0.5, r0), (0.5, r1)])
        assert np.allclose(np.diag(mixed.entries).real, [0.5, 0.5, 0, 0, 0], atol=1e-16)

    def test_unequal_mixture_diagonal(self):
        r0 = density_from_pure(make_number_state(0, 4))
        r2 = density_from_pure(make_number_state(2, 4))
        mixed = mix([(0.3, r0), (0.7, r2)])
        assert mixed.entries[0, 0].real == pytest.approx(0.3)
        assert mixed.entries[2, 2].real == pytest.approx(0.7)
        assert mixed.is_hermitian()

    def test_rejects_bad_weights(self):
        rho = density_from_pure(make_number_state(0, 4))
        with pytest.raises(InvalidStateError):
            mix([(0.5, rho), (0.6, rho)])
        with pytest.raises(InvalidStateError):
            mix([(-0.2, rho), (1.2, rho)])
        with pytest.raises(InvalidStateError):
            mix([])

    def test_rejects_mismatched_cutoffs(self):
        r4 = density_from_pure(make_number_state(0, 4))
        r5 = density_from_pure(make_number_state(0, 5))
        with pytest.raises(InvalidStateError):
            mix([(0.5, r4), (0.5, r5)])


class TestPurityHelpers:
    def test_pure_from_amplitudes_normalizes(self):
        s = pure_state_from_amplitudes([3.0, 4.0j], 4)
        assert s.norm_sq() == pytest.approx(1.0, abs=1e-15)
        assert abs(s.amplitudes[0]) == pytest.approx(0.6)

    def test_zero_vector_rejected(self):
        with pytest.raises(InvalidStateError):
            pure_state_from_amplitudes([0.0, 0.0])

    def test_cutoff_too_small_rejected(self):
        with pytest.raises(CutoffError):
            pure_state_from_amplitudes([1.0, 1.0, 1.0], 1)


class TestAutoCutoff:
    def test_coherent_minimal_cutoff_is_tight(self):
        n = minimal_coherent_cutoff(4.0, 1e-10)
        assert poisson_tail_direct(16.0, n) <= 1e-10
        assert poisson_tail_direct(16.0, n - 1) > 1e-10

    def test_cat_minimal_cutoff_is_tight(self):
        n = minimal_cat_cutoff(4.0, 1e-10)
        assert cat_tail_mass(4.0, n) <= 1e-10
        assert cat_tail_mass(4.0, n - 1) > 1e-10

    def test_vacuum_needs_no_room(self):
        assert minimal_coherent_cutoff(0.0) == 0
        assert minimal_cat_cutoff(0.0) == 0


class TestReducePhase:
    def test_reduction_and_idempotence(self):
        assert reduce_phase(0.0) == 0.0
        assert reduce_phase(TWO_PI) == 0.0
        assert 0.0 <= reduce_phase(-0.3) < TWO_PI
        for phi in (0.1, 3.7, 6.28):
            assert reduce_phase(reduce_phase(phi)) == reduce_phase(phi)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            reduce_phase(float("nan"))


@settings(max_examples=60, deadline=None)
@given(
    mag=st.floats(min_value=0.0, max_value=5.0),
    chi=st.floats(min_value=0.0, max_value=6.283),
    m=st.integers(min_value=0, max_value=20),
)
def test_log_space_amplitudes_match_naive_evaluation(mag, chi, m):
    """Where the naive factorial path cannot overflow, both paths agree.

    Compared as complex values relative to the magnitude; the individual
    real/imaginary parts lose relative accuracy near their trig zeros.
    """
    alpha = mag * complex(math.cos(chi), math.sin(chi))
    amps = coherent_amplitudes(alpha, 20)
    naive = math.exp(-mag * mag / 2.0) * alpha**m / math.sqrt(math.factorial(m))
    assert abs(complex(amps[m]) - naive) <= 1e-12 * abs(naive) + 1e-300


def test_cat_amplitudes_match_naive_evaluation():
    """Renormalized log-space cat amplitudes vs the direct factorial series."""
    alpha, cutoff = 2.0, 16
    s = make_cat_state(alpha, cutoff, tail_tol=1e-3)
    raw = np.array([
        (1.0 + (-1.0) ** m) * math.exp(-alpha * alpha / 2.0) * alpha**m
        / math.sqrt(math.factorial(m))
        for m in range(cutoff + 1)
    ])
    raw /= np.linalg.norm(raw)
    assert np.allclose(s.amplitudes.real, raw, rtol=1e-12, atol=1e-300)
    assert np.all(s.amplitudes.imag == 0.0)
