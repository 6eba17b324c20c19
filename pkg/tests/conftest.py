import numpy as np
import pytest

from npwigner import density_from_pure, mix, pure_state_from_amplitudes


def random_pure_density(seed: int, cutoff: int):
    """Haar-ish random pure state density matrix at the given cutoff."""
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(cutoff + 1) + 1j * rng.standard_normal(cutoff + 1)
    return density_from_pure(pure_state_from_amplitudes(amps, cutoff))


def random_mixed_density(seed: int, cutoff: int, parts: int = 3):
    """Random convex mixture of random pure states."""
    rng = np.random.default_rng(seed)
    weights = rng.dirichlet(np.ones(parts))
    weights = weights / weights.sum()
    comps = [
        (float(w), random_pure_density(int(rng.integers(0, 2**31)), cutoff))
        for w in weights
    ]
    # repair the last weight so the sum is exactly 1.0
    total_first = sum(w for w, _ in comps[:-1])
    comps[-1] = (1.0 - total_first, comps[-1][1])
    return mix(comps)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
