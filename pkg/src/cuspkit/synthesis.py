"""Construction of curve germs from prescribed normalized curvature.

Three inverse problems are solved, one per singularity type:

* Euclidean cusp: given f with f(0) != 0, build a 3/2-cusp whose
  half-arclength parameter is tau and whose profile sqrt(|s_g|)*kappa_g
  equals f.  Two independent routes are provided: direct quadrature of

      gamma(tau) = 2 * integral_0^tau u (cos theta(u), sin theta(u)) du,
      theta(tau) = 2 * integral_0^tau f(u) du,

  and integration of the moving-frame system for (gamma, u1, u2).

* Affine cusp: given the tau^2-coefficient function h (the profile is
  4/25 + tau^2 h(tau)), integrate the linear system for (gamma, xi, eta)
  with xi = gamma'', eta = gamma''', whose coefficients are rational in
  tau and h.  The result has tau as its 3/5-arclength parameter, with
  [gamma', gamma''] = 125 tau^2 / 27.

* Generic inflection: given f with f(0) = -5/16 satisfying the universal
  second-order constraint 32 f'(0)^2 + 9 f''(0) = 0, integrate the linear
  system for (gamma, xi, eta) with xi = gamma', eta = gamma'''.  Inputs
  violating the constraint but with f'(0) != 0 are first composed with the
  quadratic reparametrization tau = t + c t^2 that restores it.  The result
  has tau as its 3/4-arclength parameter ([gamma', gamma''] = 64 tau / 27,
  [gamma', gamma'''] = 64/27).

All integrations use classical fixed-step RK4 (default step 1e-3) with a
half-step comparison as a built-in error estimate.  Derivatives of the
synthesized curve are reconstructed from the right-hand sides and the
frame relations, never by differencing positions; the germ at tau = 0 is
obtained by Picard iteration of the same system in jet arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import affine as _affine
from . import euclidean as _euclid
from .dsl import BinOp, Func, Neg, Num, Power, Sym, evaluate
from .jets import Jet, PlaneJet, VecJet, deflate
from .profiles import SWITCH_RADIUS

_EXPR_NODES = (Num, Sym, Neg, BinOp, Func, Power)

DEFAULT_STEP = 1e-3
GERM_ORDER = 12

AFFINE_CUSP_ETA0 = 250.0 / 27.0  # [gamma'', gamma'''](0) of the normalized cusp system
INFLECTION_ETA0 = 64.0 / 27.0  # [gamma', gamma'''](0) of the inflection system


# -- profile functions ---------------------------------------------------------


class ProfileFunction:
    """A smooth scalar function of tau, evaluable on floats, arrays and jets.

    Wraps either a DSL expression in the variable t or any callable built
    from arithmetic operators and the polymorphic functions in
    :mod:`cuspkit.jets` (so that jet evaluation works unchanged).
    """

    def __init__(self, fn: Union[Callable, float, int], label: str = ""):
        if isinstance(fn, (int, float)):
            value = float(fn)
            self._fn = lambda tau: value
            self.label = label or repr(value)
        elif isinstance(fn, _EXPR_NODES):
            self._fn = lambda tau: evaluate(fn, tau, {})
            self.label = label or "expression"
        elif callable(fn):
            self._fn = fn
            self.label = label or getattr(fn, "__name__", "profile")
        else:
            raise TypeError(f"cannot interpret {fn!r} as a profile function")

    def __call__(self, tau):
        out = self._fn(tau)
        if isinstance(out, (int, float)) and isinstance(tau, np.ndarray):
            return np.full(tau.shape, float(out))
        return out

    def jet(self, base: float, order: int) -> Jet:
        out = self._fn(Jet.variable(float(base), order))
        if isinstance(out, (int, float)):
            return Jet.constant(float(out), order, float(base))
        if not isinstance(out, Jet):
            raise TypeError(
                "profile function is not jet-evaluable; build it from DSL "
                "expressions or the polymorphic operators in cuspkit.jets"
            )
        return out

    def value_and_slope(self, taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        out = self._fn(VecJet.variable(taus, 1))
        if isinstance(out, (int, float)):
            return np.full(taus.shape, float(out)), np.zeros(taus.shape)
        return out.coeffs[0].copy(), out.coeffs[1].copy()


class ReparametrizedProfile:
    """f composed with the parameter change t = tau / (1 + c tau).

    The forward map tau(t) = t / (1 - c t) = t + c t^2 + ... carries
    d(tau)/dt = 1 and d^2(tau)/dt^2 = 2c at the origin, which is all the
    second-order germ constraint sees; unlike the inverse of the plain
    quadratic t + c t^2 it stays defined on |tau| < 1/|c|.
    """

    def __init__(self, base: ProfileFunction, c: float):
        self.base = base
        self.c = float(c)
        self.label = f"{base.label} after tau = t + {c:g} t^2 + O(t^3)"

    def _t_of_tau(self, tau):
        if self.c == 0.0:
            return tau
        denom = 1.0 + self.c * tau
        if np.any(np.asarray(denom) <= 0.0):
            raise ValueError(
                f"reparametrized profile is defined only for tau > {-1.0 / self.c:g}"
            )
        return tau / denom

    def __call__(self, tau):
        return self.base(self._t_of_tau(tau))

    def jet(self, base_tau: float, order: int) -> Jet:
        t0 = float(self._t_of_tau(base_tau))
        tau_jet = Jet.variable(float(base_tau), order)
        inner = tau_jet / (1.0 + self.c * tau_jet)
        return self.base.jet(t0, order).compose(inner)

    def value_and_slope(self, taus: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        t = self._t_of_tau(taus)
        v, s = self.base.value_and_slope(t)
        return v, s / (1.0 + self.c * taus) ** 2


def as_profile(fn, label: str = "") -> ProfileFunction:
    if isinstance(fn, (ProfileFunction, ReparametrizedProfile)):
        return fn
    return ProfileFunction(fn, label)


# -- fixed-step RK4 over a precomputed half-step grid ---------------------------


def _rk4(rhs, y0: np.ndarray, h: float, n_steps: int) -> np.ndarray:
    """Classical RK4; ``rhs(j, y)`` receives the half-grid index j = 0..2n.

    Returns the state at every full step, shape (n_steps + 1, len(y0)).
    """
    out = np.empty((n_steps + 1, len(y0)))
    out[0] = y0
    y = np.array(y0, dtype=float)
    for k in range(n_steps):
        j = 2 * k
        k1 = rhs(j, y)
        k2 = rhs(j + 1, y + (0.5 * h) * k1)
        k3 = rhs(j + 1, y + (0.5 * h) * k2)
        k4 = rhs(j + 2, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        out[k + 1] = y
    return out


def _half_grid(tau_max: float, step: float) -> tuple[np.ndarray, float, int]:
    n = max(1, math.ceil(abs(tau_max) / step))
    h = tau_max / n
    return np.linspace(0.0, tau_max, 2 * n + 1), h, n


def _picard_germ(rhs_jets, y0: list[float], order: int) -> list[Jet]:
    """Power-series solution of y' = F(tau, y) at tau = 0 by Picard iteration.

    ``rhs_jets(tau_jet, state_jets)`` must evaluate the right-hand side in
    jet arithmetic.  Each sweep gains one order, so order + 2 sweeps settle
    all retained coefficients.
    """
    tau = Jet.variable(0.0, order)
    state = [Jet.constant(v, order) for v in y0]
    for _ in range(order + 2):
        rhs = rhs_jets(tau, state)
        state = [r.truncated(order - 1).antiderivative(v) for r, v in zip(rhs, y0)]
    return state


# -- results -------------------------------------------------------------------


@dataclass
class SynthesisResult:
    """A synthesized curve germ with its sampled trace and recomputation data.

    ``samples`` holds (tau, x, y) rows on the integration grid.  ``stacks``
    holds gamma and its first four derivative vectors at each grid point,
    reconstructed from the system's right-hand sides; ``arclength`` is the
    recomputed s (Euclidean or affine) with the near-origin part taken from
    the germ jets.  ``step_error`` is the half-step Richardson estimate of
    the endpoint position error.
    """

    kind: str  # 'euclid-cusp' | 'affine-cusp' | 'inflection'
    taus: np.ndarray
    positions: np.ndarray  # shape (n, 2)
    germ: PlaneJet
    input_profile: object
    step: float
    stacks: np.ndarray | None = None  # shape (5, 2, n)
    arclength: np.ndarray | None = None
    step_error: float = math.nan
    method: str = "frame"

    @property
    def samples(self) -> np.ndarray:
        return np.column_stack([self.taus, self.positions])

    def tau_normalized(self) -> np.ndarray:
        """The adapted parameter recomputed from the synthesized data."""
        s = self.arclength
        if self.kind == "euclid-cusp":
            return np.sign(self.taus) * np.sqrt(np.abs(s))
        exponent = 0.6 if self.kind == "affine-cusp" else 0.75
        return np.sign(self.taus) * np.abs(s) ** exponent

    def profile_recomputed(self) -> np.ndarray:
        """The normalized curvature profile recomputed from the synthesis.

        Direct formulas (with the recomputed arclength) away from the
        origin, germ jets inside the switch radius.
        """
        ts = self.taus
        d = self.stacks
        out = np.empty(len(ts))
        near = np.abs(ts) < SWITCH_RADIUS
        far = ~near
        if self.kind == "euclid-cusp":
            b12 = d[1][0] * d[2][1] - d[1][1] * d[2][0]
            speed = np.hypot(d[1][0], d[1][1])
            with np.errstate(divide="ignore", invalid="ignore"):
                out[far] = (np.sqrt(np.abs(self.arclength)) * b12 / speed**3)[far]
            f_t = _euclid.euclidean_profile_jets(self.germ).f_t
        else:
            b12 = d[1][0] * d[2][1] - d[1][1] * d[2][0]
            b13 = d[1][0] * d[3][1] - d[1][1] * d[3][0]
            b14 = d[1][0] * d[4][1] - d[1][1] * d[4][0]
            b23 = d[2][0] * d[3][1] - d[2][1] * d[3][0]
            num = 3.0 * b12 * b14 + 12.0 * b12 * b23 - 5.0 * b13**2
            with np.errstate(divide="ignore", invalid="ignore"):
                kappa = num / (9.0 * np.abs(b12) ** (8.0 / 3.0))
                out[far] = (self.arclength**2 * kappa)[far]
            if self.kind == "affine-cusp":
                f_t = _affine.cusp_profile_jets(self.germ).f_t
            else:
                f_t = _affine.inflection_profile_jets(self.germ).f_t
        out[near] = f_t(ts[near])
        return out


# -- shared assembly helpers ----------------------------------------------------


def _integrate_sides(make_rhs, y0, tau_max, step, richardson=True):
    """Integrate one system over both signed ranges; return merged arrays.

    ``make_rhs(taus_half, h)`` builds the index-based RK4 right-hand side for
    the given half-step grid.  The Richardson estimate compares endpoint
    positions against a half-step rerun.
    """

    def run(sign, h_scale):
        taus, h, n = _half_grid(sign * tau_max, step * h_scale)
        rhs = make_rhs(taus, h)
        return taus[::2], _rk4(rhs, y0, h, n)

    taus_p, states_p = run(+1.0, 1.0)
    taus_m, states_m = run(-1.0, 1.0)
    taus = np.concatenate([taus_m[::-1], taus_p[1:]])
    states = np.vstack([states_m[::-1], states_p[1:]])
    err = math.nan
    if richardson:
        _, fine_p = run(+1.0, 0.5)
        _, fine_m = run(-1.0, 0.5)
        err = max(
            float(np.max(np.abs(states_p[-1][:2] - fine_p[-1][:2]))),
            float(np.max(np.abs(states_m[-1][:2] - fine_m[-1][:2]))),
        )
    return taus, states, err


def _corrected_arclength(taus: np.ndarray, s_raw: np.ndarray, tau_t_jet: Jet, s_exponent: float) -> np.ndarray:
    """Replace the near-origin part of the integrated arclength by germ data.

    The arclength integrand has a fractional-power kink at 0, which costs
    the integrator accuracy on the first few steps; the germ jets give the
    exact value at the switch boundary.  ``tau_t_jet`` is the jet of the
    adapted parameter, and |s| = |tau|^(1/s_exponent).
    """
    out = s_raw.copy()
    for sign in (1.0, -1.0):
        side = np.sign(taus) == sign
        if not np.any(side):
            continue
        boundary_candidates = np.abs(taus[side]) >= SWITCH_RADIUS
        if not np.any(boundary_candidates):
            # Whole side inside the germ region: use the jet everywhere.
            tau_n = tau_t_jet(taus[side])
            out[side] = np.sign(tau_n) * np.abs(tau_n) ** (1.0 / s_exponent)
            continue
        idx = np.where(side)[0]
        abs_side = np.abs(taus[idx])
        b = idx[np.argmin(np.where(abs_side >= SWITCH_RADIUS, abs_side, np.inf))]
        tau_b = tau_t_jet(taus[b])
        s_b = np.sign(tau_b) * abs(tau_b) ** (1.0 / s_exponent)
        inner = side & (np.abs(taus) <= np.abs(taus[b]))
        outer = side & ~inner
        tau_n = tau_t_jet(taus[inner])
        out[inner] = np.sign(tau_n) * np.abs(tau_n) ** (1.0 / s_exponent)
        out[outer] = s_b + (s_raw[outer] - s_raw[b])
    return out


# -- Euclidean cusp synthesis ----------------------------------------------------


def _euclid_frame_rhs_factory(profile, taus_half, h):
    f, fd = profile.value_and_slope(taus_half)
    denom = 1.0 + 4.0 * taus_half**2 * f**2
    q = 2.0 * taus_half / np.sqrt(denom)
    m = -2.0 * taus_half * f
    omega = 2.0 * (2.0 * f + 4.0 * taus_half**2 * f**3 + taus_half * fd) / denom

    def rhs(j, y):
        u1 = y[2:4]
        u2 = y[4:6]
        vel = q[j] * (u1 + m[j] * u2)
        return np.array(
            [
                vel[0],
                vel[1],
                omega[j] * u2[0],
                omega[j] * u2[1],
                -omega[j] * u1[0],
                -omega[j] * u1[1],
                math.hypot(vel[0], vel[1]),
            ]
        )

    return rhs


def _euclid_frame_germ(profile, order: int) -> tuple[PlaneJet, Jet]:
    f_jet = profile.jet(0.0, order)

    def rhs_jets(tau, state):
        u1x, u1y, u2x, u2y = state[2], state[3], state[4], state[5]
        f = f_jet
        denom = 1.0 + 4.0 * tau * tau * f * f
        q = 2.0 * tau / denom.sqrt()
        m = -2.0 * tau * f
        omega = 2.0 * (2.0 * f + 4.0 * tau * tau * f * f * f + tau * f.derivative()) / denom
        velx = q * (u1x + m * u2x)
        vely = q * (u1y + m * u2y)
        return [velx, vely, omega * u2x, omega * u2y, -omega * u1x, -omega * u1y]

    state = _picard_germ(rhs_jets, [0.0, 0.0, 1.0, 0.0, 0.0, 1.0], order)
    return PlaneJet(state[0], state[1]), f_jet


def synthesize_euclidean_cusp(
    f,
    tau_max: float,
    method: str = "frame",
    step: float = DEFAULT_STEP,
    richardson: bool = True,
) -> SynthesisResult:
    """Build a 3/2-cusp whose normalized Euclidean profile is f.

    ``f`` must have f(0) != 0 (curves with f(0) = 0 are not cusps).  The
    returned parameter is the half-arclength parameter: |gamma'| = 2|tau|.
    """
    profile = as_profile(f)
    f0 = float(profile(0.0))
    if f0 == 0.0:
        raise ValueError("Euclidean cusp synthesis needs f(0) != 0")
    if method not in ("frame", "quadrature"):
        raise ValueError(f"unknown method {method!r}; use 'frame' or 'quadrature'")

    germ, _ = _euclid_frame_germ(profile, GERM_ORDER)
    if not _euclid.classify(germ).is_cusp:
        raise ValueError("synthesized germ failed to classify as a cusp")

    if method == "frame":
        taus, states, err = _integrate_sides(
            lambda th, h: _euclid_frame_rhs_factory(profile, th, h),
            np.array([0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0]),
            tau_max,
            step,
            richardson,
        )
        positions = states[:, 0:2]
        # gamma' from the frame relation, gamma'' = 2 sqrt(1 + 4 tau^2 f^2) u1.
        fvals, fd = profile.value_and_slope(taus)
        denom = 1.0 + 4.0 * taus**2 * fvals**2
        q = 2.0 * taus / np.sqrt(denom)
        u1 = states[:, 2:4].T
        u2 = states[:, 4:6].T
        d1 = q * (u1 - 2.0 * taus * fvals * u2)
        d2 = 2.0 * np.sqrt(denom) * u1
        stacks = np.zeros((5, 2, len(taus)))
        stacks[0] = positions.T
        stacks[1] = d1
        stacks[2] = d2
        s_raw = states[:, 6]
    else:
        taus, positions, s_raw, d1, d2, err = _euclid_quadrature(profile, tau_max, step, richardson)
        stacks = np.zeros((5, 2, len(taus)))
        stacks[0] = positions.T
        stacks[1] = d1
        stacks[2] = d2

    jets = _euclid.euclidean_profile_jets(germ)
    s = _corrected_arclength(taus, s_raw, jets.tau_t, 0.5)
    return SynthesisResult(
        kind="euclid-cusp",
        taus=taus,
        positions=positions,
        germ=germ,
        input_profile=profile,
        step=step,
        stacks=stacks,
        arclength=s,
        step_error=err,
        method=method,
    )


def _euclid_quadrature(profile, tau_max, step, richardson):
    """Direct quadrature route: nested Gauss panels per step for theta and gamma."""
    x8, w8 = np.polynomial.legendre.leggauss(8)
    x8 = 0.5 * (x8 + 1.0)
    w8 = 0.5 * w8

    def run(sign, h_scale):
        n = max(1, math.ceil(abs(tau_max) / (step * h_scale)))
        h = sign * tau_max / n
        starts = h * np.arange(n)
        # main nodes per step: a + h x_i ; inner nodes: a + h x_i x_j
        main = starts[:, None] + h * x8[None, :]
        inner = starts[:, None, None] + h * (x8[:, None] * x8[None, :])[None, :, :]
        fm = np.asarray(profile(main.ravel()), dtype=float).reshape(main.shape)
        fi = np.asarray(profile(inner.ravel()), dtype=float).reshape(inner.shape)
        # theta at step starts (cumulative) and at main nodes
        dtheta = 2.0 * h * (fm @ w8)
        theta_start = np.concatenate([[0.0], np.cumsum(dtheta)])
        theta_main = theta_start[:-1, None] + 2.0 * h * x8[None, :] * (fi @ w8)
        # gamma increment per step and speed samples
        cx = np.cos(theta_main)
        sx = np.sin(theta_main)
        gx = h * ((2.0 * main * cx) @ w8)
        gy = h * ((2.0 * main * sx) @ w8)
        pos = np.zeros((n + 1, 2))
        pos[1:, 0] = np.cumsum(gx)
        pos[1:, 1] = np.cumsum(gy)
        ds = h * ((2.0 * np.abs(main)) @ w8)
        s = np.concatenate([[0.0], np.cumsum(ds)])
        taus = np.concatenate([[0.0], starts + h])
        # derivatives at step points from theta there
        theta_pts = theta_start
        f_pts = np.asarray(profile(taus), dtype=float)
        d1 = 2.0 * taus * np.array([np.cos(theta_pts), np.sin(theta_pts)])
        d2 = 2.0 * np.array([np.cos(theta_pts), np.sin(theta_pts)]) + 2.0 * taus * 2.0 * f_pts * np.array(
            [-np.sin(theta_pts), np.cos(theta_pts)]
        )
        return taus, pos, s, d1, d2

    tp, pp, sp, d1p, d2p = run(+1.0, 1.0)
    tm, pm, sm, d1m, d2m = run(-1.0, 1.0)
    taus = np.concatenate([tm[::-1], tp[1:]])
    positions = np.vstack([pm[::-1], pp[1:]])
    s_raw = np.concatenate([-sm[::-1], sp[1:]])
    d1 = np.concatenate([d1m[:, ::-1], d1p[:, 1:]], axis=1)
    d2 = np.concatenate([d2m[:, ::-1], d2p[:, 1:]], axis=1)
    err = math.nan
    if richardson:
        _, pp2, *_ = run(+1.0, 0.5)
        _, pm2, *_ = run(-1.0, 0.5)
        err = max(
            float(np.max(np.abs(pp[-1] - pp2[-1]))),
            float(np.max(np.abs(pm[-1] - pm2[-1]))),
        )
    return taus, positions, s_raw, d1, d2, err


# -- affine cusp synthesis --------------------------------------------------------


def _affine_cusp_coeffs(h_vals, hd_vals, taus):
    D = 18.0 + 25.0 * taus**2 * h_vals
    if np.any(D == 0.0):
        raise ValueError("affine cusp synthesis: coefficient denominator 18 + 25 tau^2 h vanishes")
    a1 = 18.0 * taus / D
    a2 = -9.0 * taus**2 / D
    b1 = -25.0 * (18.0 * taus * hd_vals + 25.0 * taus**2 * h_vals**2 + 54.0 * h_vals) / (9.0 * D)
    b2 = 25.0 * taus * (taus * hd_vals + 2.0 * h_vals) / D
    return a1, a2, b1, b2


def _affine_cusp_rhs_factory(profile, taus_half, h):
    hv, hd = profile.value_and_slope(taus_half)
    a1, a2, b1, b2 = _affine_cusp_coeffs(hv, hd, taus_half)

    def rhs(j, y):
        xi = y[2:4]
        eta = y[4:6]
        vel = a1[j] * xi + a2[j] * eta
        acc = b1[j] * xi + b2[j] * eta
        b12 = vel[0] * xi[1] - vel[1] * xi[0]
        return np.array(
            [vel[0], vel[1], eta[0], eta[1], acc[0], acc[1], abs(b12) ** (1.0 / 3.0)]
        )

    return rhs


def _affine_cusp_germ(profile, order: int) -> PlaneJet:
    h_jet = profile.jet(0.0, order)

    def rhs_jets(tau, state):
        xix, xiy, etax, etay = state[2], state[3], state[4], state[5]
        hd = h_jet.derivative()
        D = 18.0 + 25.0 * tau * tau * h_jet
        a1 = 18.0 * tau / D
        a2 = -9.0 * tau * tau / D
        b1 = (
            -25.0
            * (18.0 * tau * hd + 25.0 * tau * tau * h_jet * h_jet + 54.0 * h_jet)
            / (9.0 * D)
        )
        b2 = 25.0 * tau * (tau * hd + 2.0 * h_jet) / D
        return [
            a1 * xix + a2 * etax,
            a1 * xiy + a2 * etay,
            etax,
            etay,
            b1 * xix + b2 * etax,
            b1 * xiy + b2 * etay,
        ]

    state = _picard_germ(rhs_jets, [0.0, 0.0, 1.0, 0.0, 0.0, AFFINE_CUSP_ETA0], order)
    return PlaneJet(state[0], state[1])


def synthesize_affine_cusp(
    h, tau_max: float, step: float = DEFAULT_STEP, richardson: bool = True
) -> SynthesisResult:
    """Build a 3/2-cusp whose normalized affine profile is 4/25 + tau^2 h(tau).

    tau is the 3/5-arclength parameter of the result.
    """
    profile = as_profile(h)
    germ = _affine_cusp_germ(profile, GERM_ORDER)
    if not _euclid.classify(germ).is_cusp:
        raise ValueError("synthesized germ failed to classify as a cusp")

    y0 = np.array([0.0, 0.0, 1.0, 0.0, 0.0, AFFINE_CUSP_ETA0, 0.0])
    taus, states, err = _integrate_sides(
        lambda th, hh: _affine_cusp_rhs_factory(profile, th, hh), y0, tau_max, step, richardson
    )

    hv, hd = profile.value_and_slope(taus)
    a1, a2, b1, b2 = _affine_cusp_coeffs(hv, hd, taus)
    xi = states[:, 2:4].T
    eta = states[:, 4:6].T
    stacks = np.zeros((5, 2, len(taus)))
    stacks[0] = states[:, 0:2].T
    stacks[1] = a1 * xi + a2 * eta
    stacks[2] = xi
    stacks[3] = eta
    stacks[4] = b1 * xi + b2 * eta

    jets = _affine.cusp_profile_jets(germ)
    s = _corrected_arclength(taus, states[:, 6], jets.tau_t, 0.6)
    return SynthesisResult(
        kind="affine-cusp",
        taus=taus,
        positions=states[:, 0:2],
        germ=germ,
        input_profile=profile,
        step=step,
        stacks=stacks,
        arclength=s,
        step_error=err,
    )


# -- generic inflection synthesis ---------------------------------------------------


def _inflection_gh_jets(profile, order: int) -> tuple[Jet, Jet, Jet]:
    f_jet = profile.jet(0.0, order)
    if abs(f_jet.value() - _affine.INFLECTION_PROFILE_VALUE) > 1e-9:
        raise ValueError(
            f"inflection synthesis needs f(0) = -5/16, got f(0) = {f_jet.value()}"
        )
    g_jet = deflate(f_jet - _affine.INFLECTION_PROFILE_VALUE, 1, tol=1e-9)
    constraint = 9.0 * float(g_jet.derivative().value()) + 16.0 * float(g_jet.value()) ** 2
    scale = max(1.0, abs(float(g_jet.value())) ** 2)
    if abs(constraint) > 1e-8 * scale:
        raise ValueError(
            "profile violates the inflection germ constraint "
            f"32 f'(0)^2 + 9 f''(0) = 0 (residual {2*constraint:.3e})"
        )
    h_jet = deflate(9.0 * g_jet.derivative() + 16.0 * g_jet * g_jet, 1, tol=max(1e-9, 1e-7 * scale))
    return f_jet, g_jet, h_jet


def restore_inflection_constraint(profile) -> tuple[object, float]:
    """Reparametrize f so the universal inflection constraint holds at 0.

    Returns (possibly wrapped profile, c).  Inputs already satisfying
    32 f'(0)^2 + 9 f''(0) = 0 are returned unchanged with c = 0; otherwise
    f'(0) must be nonzero and tau = t + c t^2 with
    c = (32 f'(0)^2 + 9 f''(0)) / (18 f'(0)) restores the constraint.
    """
    profile = as_profile(profile)
    f_jet = profile.jet(0.0, 4)
    if abs(f_jet.value() - _affine.INFLECTION_PROFILE_VALUE) > 1e-9:
        raise ValueError(
            f"inflection synthesis needs f(0) = -5/16, got f(0) = {f_jet.value()}"
        )
    fd = float(f_jet.coeffs[1])
    fdd = 2.0 * float(f_jet.coeffs[2])
    residual = 32.0 * fd**2 + 9.0 * fdd
    scale = max(1.0, fd**2, abs(fdd))
    if abs(residual) <= 1e-9 * scale:
        return profile, 0.0
    if abs(fd) <= 1e-9:
        raise ValueError(
            "profile is outside the admissible class: f'(0) = 0 but f''(0) != 0 "
            "cannot be repaired by reparametrization"
        )
    c = residual / (18.0 * fd)
    return ReparametrizedProfile(profile, c), c


def _inflection_coeff_arrays(profile, f_jet, g_jet, h_jet, taus):
    f_v, fd_v = profile.value_and_slope(taus)
    g = np.empty_like(taus)
    hh = np.empty_like(taus)
    near = np.abs(taus) < SWITCH_RADIUS
    far = ~near
    if np.any(near):
        g[near] = g_jet(taus[near])
        hh[near] = h_jet(taus[near])
    if np.any(far):
        tf = taus[far]
        gf = (f_v[far] - _affine.INFLECTION_PROFILE_VALUE) / tf
        gd = (fd_v[far] - gf) / tf
        g[far] = gf
        hh[far] = (9.0 * gd + 16.0 * gf**2) / tf
    return 16.0 * g / 9.0, taus.copy(), -16.0 * hh / 81.0, -16.0 * g / 9.0


def _inflection_rhs_factory(profile, jets, taus_half, h):
    a11, a12, a21, a22 = _inflection_coeff_arrays(profile, *jets, taus_half)

    def rhs(j, y):
        xi = y[2:4]
        eta = y[4:6]
        acc = a11[j] * xi + a12[j] * eta
        jerk = a21[j] * xi + a22[j] * eta
        b12 = xi[0] * acc[1] - xi[1] * acc[0]
        return np.array(
            [xi[0], xi[1], acc[0], acc[1], jerk[0], jerk[1], abs(b12) ** (1.0 / 3.0)]
        )

    return rhs


def _inflection_germ(g_jet: Jet, h_jet: Jet, order: int) -> PlaneJet:
    def rhs_jets(tau, state):
        xix, xiy, etax, etay = state[2], state[3], state[4], state[5]
        a11 = 16.0 * g_jet / 9.0
        a21 = -16.0 * h_jet / 81.0
        return [
            xix,
            xiy,
            a11 * xix + tau * etax,
            a11 * xiy + tau * etay,
            a21 * xix - a11 * etax,
            a21 * xiy - a11 * etay,
        ]

    state = _picard_germ(rhs_jets, [0.0, 0.0, 1.0, 0.0, 0.0, INFLECTION_ETA0], order)
    return PlaneJet(state[0], state[1])


def synthesize_inflection(
    f, tau_max: float, step: float = DEFAULT_STEP, richardson: bool = True
) -> SynthesisResult:
    """Build a generic inflection whose normalized affine profile is f.

    Requires f(0) = -5/16.  If f violates the universal constraint
    32 f'(0)^2 + 9 f''(0) = 0 it is first reparametrized by tau = t + c t^2
    (which needs f'(0) != 0); the profile actually realized is then the
    reparametrized one, available as ``result.input_profile``.  tau is the
    3/4-arclength parameter of the result.
    """
    profile, _ = restore_inflection_constraint(f)
    f_jet, g_jet, h_jet = _inflection_gh_jets(profile, GERM_ORDER)
    germ = _inflection_germ(g_jet, h_jet, GERM_ORDER)
    if not _euclid.classify(germ).is_inflection:
        raise ValueError("synthesized germ failed to classify as a generic inflection")

    y0 = np.array([0.0, 0.0, 1.0, 0.0, 0.0, INFLECTION_ETA0, 0.0])
    jets3 = (f_jet, g_jet, h_jet)
    taus, states, err = _integrate_sides(
        lambda th, hh: _inflection_rhs_factory(profile, jets3, th, hh),
        y0,
        tau_max,
        step,
        richardson,
    )

    a11, a12, a21, a22 = _inflection_coeff_arrays(profile, f_jet, g_jet, h_jet, taus)
    xi = states[:, 2:4].T
    eta = states[:, 4:6].T
    stacks = np.zeros((5, 2, len(taus)))
    stacks[0] = states[:, 0:2].T
    stacks[1] = xi
    stacks[2] = a11 * xi + a12 * eta
    stacks[3] = eta
    stacks[4] = a21 * xi + a22 * eta

    jets = _affine.inflection_profile_jets(germ)
    s = _corrected_arclength(taus, states[:, 6], jets.tau_t, 0.75)
    return SynthesisResult(
        kind="inflection",
        taus=taus,
        positions=states[:, 0:2],
        germ=germ,
        input_profile=profile,
        step=step,
        stacks=stacks,
        arclength=s,
        step_error=err,
    )


# -- round trips ------------------------------------------------------------------


def synthesize(kind: str, fn, tau_max: float, step: float = DEFAULT_STEP, **kw) -> SynthesisResult:
    if kind == "euclid-cusp":
        return synthesize_euclidean_cusp(fn, tau_max, step=step, **kw)
    if kind == "affine-cusp":
        return synthesize_affine_cusp(fn, tau_max, step=step, **kw)
    if kind == "inflection":
        return synthesize_inflection(fn, tau_max, step=step, **kw)
    raise ValueError(
        f"unknown synthesis kind {kind!r}; use 'euclid-cusp', 'affine-cusp', or 'inflection'"
    )


def roundtrip(fn, kind: str, tau_max: float, step: float = DEFAULT_STEP) -> float:
    """Synthesize, recompute the profile from the result, compare.

    For the affine cusp the prescribed function is h (the profile being
    4/25 + tau^2 h); for the other kinds it is the profile itself.  Returns
    the sup-norm deviation between the recomputed profile and the prescribed
    one evaluated at the recomputed adapted parameter.
    """
    result = synthesize(kind, fn, tau_max, step=step, richardson=False)
    tau_n = result.tau_normalized()
    recomputed = result.profile_recomputed()
    profile = result.input_profile
    if kind == "affine-cusp":
        target = _affine.CUSP_PROFILE_VALUE + tau_n**2 * np.asarray(profile(tau_n))
    else:
        target = np.asarray(profile(tau_n))
    return float(np.max(np.abs(recomputed - target)))
