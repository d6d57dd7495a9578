"""Shared profile types and the parameter-inversion helper.

A normalized curvature profile is a sampled graph of f(tau), where tau is
the smooth coordinate adapted to the singularity (half-arclength at
Euclidean cusps, the 3/5- or 3/4-power of affine arclength at affine cusps
and generic inflections).  Grids are given in tau; evaluation happens in the
original curve parameter t, so each profile evaluation inverts the smooth
monotone map tau(t) first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Evaluation switches from direct quadrature formulas to deflated-jet
# formulas inside this radius (in the original parameter t); the two routes
# are required to agree on the overlap band around it.
SWITCH_RADIUS = 0.05
OVERLAP_BAND = (0.04, 0.06)


@dataclass(frozen=True)
class NormalizedProfile:
    """Samples of a normalized curvature function on a tau-grid.

    ``f0``, ``fdot0``, ``fddot0`` are the value and first two tau-derivatives
    at tau = 0, extracted exactly from the deflated jet of f.
    """

    kind: str  # 'euclid-cusp' | 'affine-cusp' | 'inflection'
    grid: np.ndarray
    values: np.ndarray
    f0: float
    fdot0: float
    fddot0: float


def invert_monotone(tau_of_t, dtau_dt, targets, slope0: float, t_scale: float = 1.0):
    """Solve tau(t) = target for each target of a smooth increasing map.

    ``tau_of_t`` and ``dtau_dt`` must accept numpy arrays.  ``slope0`` is the
    (positive) derivative at t = 0, used to seed the iteration and as a floor
    for the Newton slope near the origin.
    """
    targets = np.asarray(targets, dtype=float)
    t = targets / slope0
    zero = targets == 0.0
    for _ in range(60):
        tau = tau_of_t(t)
        err = tau - targets
        slope = dtau_dt(t)
        slope = np.where(np.isfinite(slope) & (slope > 1e-12), slope, slope0)
        step = err / slope
        step = np.clip(step, -0.5 * t_scale, 0.5 * t_scale)
        t = np.where(zero, 0.0, t - step)
        if np.max(np.abs(err)) < 1e-13 * max(1.0, np.max(np.abs(targets))):
            break
    else:
        raise RuntimeError("parameter inversion did not converge")
    return np.where(zero, 0.0, t)
