import numpy as np
import pytest

from mixture.model import MixtureSpec, Sample

SPEC_SEEDS = range(20)


def build_random_spec(seed):
    """Mixture of m in {2, 3} independent samples of size n in {3..6} with random coefficients."""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 4))
    components = []
    for _ in range(m):
        n = int(rng.integers(3, 7))
        a = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
        components.append((a, Sample(rng.normal(size=n))))
    return MixtureSpec(tuple(components))


@pytest.fixture
def random_spec():
    return build_random_spec


@pytest.fixture
def three_atoms():
    """Z = (X1 + X2)/2 with X from {0, 1}: atoms 0, 1/2, 1 with masses 1/4, 1/2, 1/4."""
    return MixtureSpec.shared([0.5, 0.5], Sample([0.0, 1.0]))
