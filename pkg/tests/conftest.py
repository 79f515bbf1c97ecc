import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)


def random_euler_states(rng, n, nd=1, gamma=1.4):
    """Admissible conservative states spanning many decades of rho and p."""
    rho = 10.0 ** rng.uniform(-6, 3, n)
    p = 10.0 ** rng.uniform(-6, 3, n)
    v = rng.uniform(-30.0, 30.0, (n, nd))
    ke = 0.5 * rho * np.sum(v * v, axis=-1)
    E = p / (gamma - 1.0) + ke
    return np.concatenate([rho[:, None], rho[:, None] * v, E[:, None]], axis=-1)
