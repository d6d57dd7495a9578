"""Shared test helpers: finite-difference oracles and catalog shortcuts."""

import numpy as np
import pytest

# Central-difference stencils, 4th-order accurate, for derivative orders 1-4.
FD_STENCILS = {
    1: ([-2, -1, 1, 2], [1 / 12, -8 / 12, 8 / 12, -1 / 12]),
    2: ([-2, -1, 0, 1, 2], [-1 / 12, 16 / 12, -30 / 12, 16 / 12, -1 / 12]),
    3: ([-3, -2, -1, 1, 2, 3], [1 / 8, -1, 13 / 8, -13 / 8, 1, -1 / 8]),
    4: ([-3, -2, -1, 0, 1, 2, 3], [-1 / 6, 2, -13 / 2, 28 / 3, -13 / 2, 2, -1 / 6]),
}

# Step sizes chosen so that rounding noise (eps / h^order) stays below the
# comparison tolerances; a single 1e-4 step would drown orders 3 and 4.
FD_STEPS = {1: 1e-4, 2: 1e-4, 3: 5e-3, 4: 1e-2}


def finite_difference(f, t0: float, order: int) -> float:
    offsets, weights = FD_STENCILS[order]
    h = FD_STEPS[order]
    return sum(w * f(t0 + o * h) for o, w in zip(offsets, weights)) / h**order


@pytest.fixture
def rng():
    return np.random.default_rng(0)
