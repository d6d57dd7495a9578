"""Equi-affine invariants of plane curves at cusps and generic inflections.

The affine curvature of a plane curve,

    kappa_A = (3 [g',g''][g',g''''] + 12 [g',g''][g'',g'''] - 5 [g',g''']^2)
              / (9 [g',g'']^(8/3)),

diverges both at 3/2-cusps (where [g',g''] vanishes to second order) and at
inflection points (first-order zero).  The combination f = (s_A)^2 * kappa_A,
with s_A the affine arclength, extends smoothly through both singularities:

* at a 3/2-cusp, f(0) = 4/25 and f'(0) = 0 in the 3/5-arclength parameter
  tau = (s_A)^(3/5); the tau^2-coefficient h0 of f is proportional to the
  affine cuspidal curvature mu_A,
* at a generic inflection, f(0) = -5/16 in the 3/4-arclength parameter
  tau = sgn(t) (s_A)^(3/4); the slope g0 = f'(0) is proportional to the
  affine inflectional curvature mu_I, and the germ of f satisfies a
  universal second-order identity.

This module computes kappa_A, s_A and the adapted parameters, mu_A, mu_I,
the normalized profiles with their germ data, the identity residuals, and
the normal-form reductions (u^2, u^3 + c u^5) / (u, u^3 + c u^4) whose
leading coefficient reproduces mu_A / mu_I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dsl import CurveSpec
from .euclidean import CLASSIFY_TOL, PROFILE_JET_ORDER, SingularityClass, SingularityType, classify
from .jets import (
    Jet,
    PlaneJet,
    _gauss_01,
    bracket,
    deflate,
    inflate,
    moment_quotient_jet,
    signed_power,
)
from .profiles import SWITCH_RADIUS, NormalizedProfile, invert_monotone

# Universal germ values of the normalized affine curvature.
CUSP_PROFILE_VALUE = 4.0 / 25.0
INFLECTION_PROFILE_VALUE = -5.0 / 16.0

# Proportionality constants tying germ data to the affine invariants:
# h0 = H0_PER_MU_A * mu_A at cusps, g0 = G0_PER_MU_I * mu_I at inflections.
H0_PER_MU_A = (20.0 / 3.0) ** 0.2 / 220.0
G0_PER_MU_I = -(3.0 * 3.0**0.25) / (28.0 * math.sqrt(2.0))

# Normal-form coefficients: c_cusp = mu_A / CUSP_NF_DENOM for
# (u^2, u^3 + c u^5), c_infl = INFL_NF_FACTOR * mu_I for (u, u^3 + c u^4).
CUSP_NF_DENOM = 80.0 * 54.0**0.2
INFL_NF_FACTOR = 6.0**0.25 / 4.0


@dataclass(frozen=True)
class AffineCuspReport:
    """Germ data of (s_A)^2 kappa_A at a 3/2-cusp.

    ``f0`` and ``fdot0`` are extracted from the deflated jet and must match
    the universal values 4/25 and 0; ``h0`` is the tau^2-coefficient.
    """

    mu_A: float
    f0: float
    fdot0: float
    h0: float


@dataclass(frozen=True)
class InflectionReport:
    """Germ data of (s_A)^2 kappa_A at a generic inflection point."""

    mu_I: float
    eps_I: int
    f0: float
    g0: float
    identity_residual_t: float
    identity_residual_tau: float


@dataclass(frozen=True)
class NormalFormResult:
    """Outcome of the equi-affine normal-form reduction of a germ.

    ``flipped`` records whether a sign-normalizing flip was applied first
    (orientation reversal for negative cusps, an axis flip for negative
    inflections).  ``tail`` is the magnitude of the first coefficient beyond
    the normal form, reported but not constrained.
    """

    c: float
    reduced: PlaneJet
    flipped: bool
    tail: float


def _cross(a, b) -> float:
    return float(a[0] * b[1] - a[1] * b[0])


# -- affine curvature ----------------------------------------------------------


def affine_curvature_from_jet(germ: PlaneJet) -> float:
    """kappa_A at the germ's base point; needs a germ of order >= 4."""
    if germ.order < 4:
        raise ValueError("affine curvature needs derivatives up to order 4")
    d1 = germ.derivative_vector(1)
    d2 = germ.derivative_vector(2)
    d3 = germ.derivative_vector(3)
    d4 = germ.derivative_vector(4)
    b12 = _cross(d1, d2)
    if b12 == 0.0:
        raise ValueError(
            "affine curvature is undefined where [gamma', gamma''] = 0; "
            "use the normalized profile"
        )
    num = 3.0 * b12 * _cross(d1, d4) + 12.0 * b12 * _cross(d2, d3) - 5.0 * _cross(d1, d3) ** 2
    return num / (9.0 * signed_power(b12, 8, 3))


def kappa_A(curve: CurveSpec, t: float) -> float:
    return affine_curvature_from_jet(curve.jet(t, 4))


def _kappa_A_many(curve: CurveSpec, ts: np.ndarray) -> np.ndarray:
    d = curve.derivatives_at(ts, 4)
    b12 = d[1][0] * d[2][1] - d[1][1] * d[2][0]
    b13 = d[1][0] * d[3][1] - d[1][1] * d[3][0]
    b14 = d[1][0] * d[4][1] - d[1][1] * d[4][0]
    b23 = d[2][0] * d[3][1] - d[2][1] * d[3][0]
    num = 3.0 * b12 * b14 + 12.0 * b12 * b23 - 5.0 * b13**2
    return num / (9.0 * np.abs(b12) ** (8.0 / 3.0))


# -- affine arclength and the adapted parameters -------------------------------

# Vanishing order of [gamma', gamma''] at t=0 and the matching weight
# exponent of the arclength integrand |t|^(k/3).
_DEFLATION = {"cusp": 2, "inflection": 1}


def _arclength_smooth_factor(
    curve: CurveSpec, ts: np.ndarray, deflation: int
) -> np.ndarray:
    """L(t) with s_A = sgn(t) |t|^(1 + k/3) L(t), k the bracket's zero order.

    L(t) is the weighted mean integral_0^1 u^(k/3) psi(t u) du of the smooth
    positive factor psi(u) = |[gamma', gamma''](u) / u^k|^(1/3), computed
    with the substitution u = v^3 that makes the weight polynomial.
    """
    v, w = _gauss_01()
    alpha = deflation / 3.0
    # u = v^3 turns u^alpha du into 3 v^(3 alpha + 2) dv, a polynomial weight.
    nodes_unit = v**3
    weight = 3.0 * w * v ** (3.0 * alpha + 2.0)
    ts = np.atleast_1d(ts)
    out = np.empty(len(ts))
    nonzero = ts != 0.0
    if np.any(nonzero):
        nodes = np.outer(ts[nonzero], nodes_unit).ravel()
        d = curve.derivatives_at(nodes, 2)
        b12 = (d[1][0] * d[2][1] - d[1][1] * d[2][0]).reshape(-1, len(v))
        psi = np.abs(b12 / nodes.reshape(-1, len(v)) ** deflation) ** (1.0 / 3.0)
        out[nonzero] = psi @ weight
    if np.any(~nonzero):
        germ = curve.jet(0.0, deflation + 2)
        a = deflate(bracket(germ.derivative(1), germ.derivative(2)), deflation)
        out[~nonzero] = abs(a.value()) ** (1.0 / 3.0) / (1.0 + alpha)
    return out


def _arclength_regular(curve: CurveSpec, ts: np.ndarray) -> np.ndarray:
    v, w = _gauss_01()
    ts = np.atleast_1d(ts)
    nodes = np.outer(ts, v).ravel()
    d = curve.derivatives_at(nodes, 2)
    b12 = (d[1][0] * d[2][1] - d[1][1] * d[2][0]).reshape(len(ts), -1)
    return ts * (np.abs(b12) ** (1.0 / 3.0) @ w)


def arclength_A(curve: CurveSpec, t: float) -> tuple[float, float, float]:
    """Affine arclength s_A(t) plus the two adapted parameters.

    Returns (s_A, tau35, tau34) with tau35 = sgn(s_A)|s_A|^(3/5) (smooth at
    cusps) and tau34 = sgn(t)|s_A|^(3/4) (smooth at generic inflections).
    """
    cls = classify(curve.jet(0.0, 3))
    ts = np.array([t])
    if cls.is_cusp:
        L = _arclength_smooth_factor(curve, ts, 2)
        s = float(np.sign(t) * abs(t) ** (5.0 / 3.0) * L[0])
    elif cls.is_inflection:
        L = _arclength_smooth_factor(curve, ts, 1)
        s = float(np.sign(t) * abs(t) ** (4.0 / 3.0) * L[0])
    elif cls.label is SingularityType.REGULAR:
        s = float(_arclength_regular(curve, ts)[0])
    else:
        raise ValueError(f"affine arclength undefined for a {cls} origin")
    tau35 = signed_power(s, 3, 5)
    tau34 = float(np.sign(t)) * abs(s) ** 0.75
    return s, tau35, tau34


# -- the affine invariants ------------------------------------------------------


def affine_cuspidal_curvature(germ: PlaneJet) -> float:
    """mu_A at a 3/2-cusp germ (needs derivatives through order 5).

    Invariant under equi-affine maps and independent of orientation.
    """
    cls = classify(germ)
    if not cls.is_cusp:
        raise ValueError(f"affine cuspidal curvature needs a 3/2-cusp germ, got {cls}")
    if germ.order < 5:
        raise ValueError("affine cuspidal curvature needs a germ of order >= 5")
    d2 = germ.derivative_vector(2)
    d3 = germ.derivative_vector(3)
    d4 = germ.derivative_vector(4)
    d5 = germ.derivative_vector(5)
    b23 = _cross(d2, d3)
    num = (
        24.0 * b23 * _cross(d2, d5)
        + 60.0 * b23 * _cross(d3, d4)
        - 35.0 * _cross(d2, d4) ** 2
    )
    return num / signed_power(b23, 12, 5)


def mu_A(curve: CurveSpec) -> float:
    return affine_cuspidal_curvature(curve.jet(0.0, 5))


def inflectional_curvature(germ: PlaneJet) -> tuple[float, int]:
    """(mu_I, eps_I) at a generic inflection germ (order >= 4).

    eps_I is the sign of [gamma', gamma'''] (the sign of the inflection);
    mu_I flips sign under orientation reversal.
    """
    cls = classify(germ)
    if not cls.is_inflection:
        raise ValueError(f"inflectional curvature needs a generic inflection germ, got {cls}")
    if germ.order < 4:
        raise ValueError("inflectional curvature needs a germ of order >= 4")
    d1 = germ.derivative_vector(1)
    d4 = germ.derivative_vector(4)
    eps = 1 if cls.b13 > 0 else -1
    num = _cross(d1, d4) - 6.0 * cls.b23
    return eps * num / signed_power(cls.b13, 5, 4), eps


def mu_I(curve: CurveSpec) -> tuple[float, int]:
    return inflectional_curvature(curve.jet(0.0, 4))


# -- smooth (jet) route for the normalized profiles ----------------------------


@dataclass(frozen=True)
class CuspProfileJets:
    """Deflated-jet representation of f = (s_A)^2 kappa_A at a cusp germ."""

    f_t: Jet  # f as a jet in the original parameter
    tau_t: Jet  # tau35 as a jet in the original parameter
    f_tau: Jet  # f as a jet in tau
    mu_A: float


@dataclass(frozen=True)
class InflectionProfileJets:
    f_t: Jet
    tau_t: Jet
    f_tau: Jet
    mu_I: float
    eps_I: int
    identity_residual_t: float
    identity_residual_tau: float


def cusp_profile_jets(germ: PlaneJet) -> CuspProfileJets:
    """Build the smooth jets of f and tau35 from a cusp germ at t = 0.

    With [g', g''] = t^2 a1, [g', g'''] = t a2, [g'', g'''] = a3,
    [g', g''''] = t a4 and s_A = sgn(t)|t|^(5/3) F(t), the powers of t cancel:

        f = F^2 (3 t a1 a4 + 12 a1 a3 - 5 a2^2) / (9 |a1|^(8/3)),
        tau35 = t F^(3/5).
    """
    d1 = germ.derivative(1)
    d2 = germ.derivative(2)
    d3 = germ.derivative(3)
    d4 = germ.derivative(4)
    a1 = deflate(bracket(d1, d2), 2)
    a2 = deflate(bracket(d1, d3), 1)
    a3 = bracket(d2, d3)
    a4 = deflate(bracket(d1, d4), 1)
    t = Jet.variable(0.0, a1.order)
    M = 3.0 * t * a1 * a4 + 12.0 * a1 * a3 - 5.0 * a2 * a2
    abs_a1 = a1 if a1.value() > 0 else -a1
    psi = abs_a1.pow_rational(1, 3)
    F = moment_quotient_jet(psi, 2.0 / 3.0)
    f_t = F * F * M / (abs_a1.pow_rational(8, 3) * 9.0)
    tau_t = inflate(F.pow_rational(3, 5), 1)
    f_tau = f_t.compose(tau_t.inverted())
    return CuspProfileJets(f_t, tau_t, f_tau, affine_cuspidal_curvature(germ))


def identity_residual(germ: PlaneJet, f_jet: Jet) -> float:
    """Residual of the universal inflection identity, in the germ's parameter.

    For the jet of f = (s_A)^2 kappa_A at a generic inflection the combination

        -(9/7) (([g',g''''] + [g'',g''']) / [g',g''']) f'(0)
            + 32 f'(0)^2 + 9 f''(0)

    vanishes; the returned residual measures the failure of a candidate f-jet.
    """
    cls = classify(germ)
    if not cls.is_inflection:
        raise ValueError(f"identity residual needs a generic inflection germ, got {cls}")
    if f_jet.order < 2:
        raise ValueError("identity residual needs the f-jet to order >= 2")
    d1 = germ.derivative_vector(1)
    d4 = germ.derivative_vector(4)
    b14 = _cross(d1, d4)
    fd = float(f_jet.coeffs[1])
    fdd = 2.0 * float(f_jet.coeffs[2])
    return -(9.0 / 7.0) * ((b14 + cls.b23) / cls.b13) * fd + 32.0 * fd**2 + 9.0 * fdd


def inflection_profile_jets(germ: PlaneJet) -> InflectionProfileJets:
    """Smooth jets of f and tau34 from a generic inflection germ at t = 0.

    Here [g', g''] = t b1 with b1(0) != 0 and s_A = sgn(t)|t|^(4/3) G(t):

        f = G^2 (3 t b1 b4 + 12 t b1 b3 - 5 b2^2) / (9 |b1|^(8/3)),
        tau34 = t G^(3/4).
    """
    d1 = germ.derivative(1)
    d2 = germ.derivative(2)
    d3 = germ.derivative(3)
    d4 = germ.derivative(4)
    b1 = deflate(bracket(d1, d2), 1)
    b2 = bracket(d1, d3)
    b3 = bracket(d2, d3)
    b4 = bracket(d1, d4)
    t = Jet.variable(0.0, b1.order)
    N = 3.0 * t * b1 * b4 + 12.0 * t * b1 * b3 - 5.0 * b2 * b2
    abs_b1 = b1 if b1.value() > 0 else -b1
    psi = abs_b1.pow_rational(1, 3)
    G = moment_quotient_jet(psi, 1.0 / 3.0)
    f_t = G * G * N / (abs_b1.pow_rational(8, 3) * 9.0)
    tau_t = inflate(G.pow_rational(3, 4), 1)
    f_tau = f_t.compose(tau_t.inverted())
    value, eps = inflectional_curvature(germ)
    res_t = identity_residual(germ, f_t)
    res_tau = 32.0 * float(f_tau.coeffs[1]) ** 2 + 9.0 * 2.0 * float(f_tau.coeffs[2])
    return InflectionProfileJets(f_t, tau_t, f_tau, value, eps, res_t, res_tau)


# -- profile evaluators ---------------------------------------------------------


class AffineProfilerBase:
    """Shared direct/smooth evaluation of f = (s_A)^2 kappa_A on tau-grids."""

    kind: str
    deflation: int
    tau_exponent: float  # tau = sgn * |s|^tau_exponent

    def __init__(self, curve: CurveSpec, order: int = PROFILE_JET_ORDER):
        self.curve = curve
        self.germ = curve.jet(0.0, order)
        self.singularity = classify(self.germ)
        self._check_kind()
        self.jets = self._build_jets()
        self._slope0 = float(self.jets.tau_t.coeffs[1])

    def _check_kind(self):  # pragma: no cover - overridden
        raise NotImplementedError

    def _build_jets(self):  # pragma: no cover - overridden
        raise NotImplementedError

    def arclength(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(ts)
        L = _arclength_smooth_factor(self.curve, ts, self.deflation)
        return np.sign(ts) * np.abs(ts) ** (1.0 + self.deflation / 3.0) * L

    def tau_of_t(self, ts: np.ndarray) -> np.ndarray:
        s = self.arclength(ts)
        return np.sign(ts) * np.abs(s) ** self.tau_exponent

    def _dtau_dt(self, ts: np.ndarray) -> np.ndarray:
        s = self.arclength(ts)
        d = self.curve.derivatives_at(ts, 2)
        b12 = d[1][0] * d[2][1] - d[1][1] * d[2][0]
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = (
                self.tau_exponent
                * np.abs(s) ** (self.tau_exponent - 1.0)
                * np.abs(b12) ** (1.0 / 3.0)
            )
        return np.where(np.abs(ts) < 1e-8, self._slope0, slope)

    def t_of_tau(self, taus: np.ndarray) -> np.ndarray:
        return invert_monotone(self.tau_of_t, self._dtau_dt, taus, self._slope0)

    def value_direct(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(ts)
        return self.arclength(ts) ** 2 * _kappa_A_many(self.curve, ts)

    def value_smooth(self, ts: np.ndarray) -> np.ndarray:
        return self.jets.f_t(np.atleast_1d(ts))

    def values_at_t(self, ts: np.ndarray) -> np.ndarray:
        ts = np.atleast_1d(ts)
        out = np.empty(len(ts))
        near = np.abs(ts) < SWITCH_RADIUS
        if np.any(near):
            out[near] = self.value_smooth(ts[near])
        if np.any(~near):
            out[~near] = self.value_direct(ts[~near])
        out[ts == 0.0] = self._value_at_origin()
        return out

    def _value_at_origin(self) -> float:
        return float(self.jets.f_tau.coeffs[0])

    def sample(self, tau_grid) -> NormalizedProfile:
        grid = np.asarray(tau_grid, dtype=float)
        ts = self.t_of_tau(grid)
        c = self.jets.f_tau.coeffs
        return NormalizedProfile(
            kind=self.kind,
            grid=grid,
            values=self.values_at_t(ts),
            f0=float(c[0]),
            fdot0=float(c[1]),
            fddot0=2.0 * float(c[2]),
        )

    def overlap_consistency(self, n: int = 9) -> float:
        band = np.linspace(0.04, 0.06, n)
        ts = np.concatenate([-band[::-1], band])
        return float(np.max(np.abs(self.value_direct(ts) - self.value_smooth(ts))))


class AffineCuspProfiler(AffineProfilerBase):
    kind = "affine-cusp"
    deflation = 2
    tau_exponent = 0.6

    def _check_kind(self):
        if not self.singularity.is_cusp:
            raise ValueError(
                f"normalized affine cusp profile needs a cusp at t=0, got {self.singularity}"
            )

    def _build_jets(self) -> CuspProfileJets:
        return cusp_profile_jets(self.germ)

    def _value_at_origin(self) -> float:
        return CUSP_PROFILE_VALUE

    def report(self) -> AffineCuspReport:
        c = self.jets.f_tau.coeffs
        return AffineCuspReport(
            mu_A=self.jets.mu_A, f0=float(c[0]), fdot0=float(c[1]), h0=float(c[2])
        )


class AffineInflectionProfiler(AffineProfilerBase):
    kind = "inflection"
    deflation = 1
    tau_exponent = 0.75

    def _check_kind(self):
        if not self.singularity.is_inflection:
            raise ValueError(
                "normalized inflection profile needs a generic inflection at t=0, "
                f"got {self.singularity}"
            )

    def _build_jets(self) -> InflectionProfileJets:
        return inflection_profile_jets(self.germ)

    def _value_at_origin(self) -> float:
        return INFLECTION_PROFILE_VALUE

    def report(self) -> InflectionReport:
        j = self.jets
        c = j.f_tau.coeffs
        return InflectionReport(
            mu_I=j.mu_I,
            eps_I=j.eps_I,
            f0=float(c[0]),
            g0=float(c[1]),
            identity_residual_t=j.identity_residual_t,
            identity_residual_tau=j.identity_residual_tau,
        )


def profile_A_cusp(curve: CurveSpec, tau_grid) -> tuple[NormalizedProfile, AffineCuspReport]:
    """Sample (s_A)^2 kappa_A against the 3/5-arclength parameter at a cusp."""
    p = AffineCuspProfiler(curve)
    return p.sample(tau_grid), p.report()


def profile_A_inflection(
    curve: CurveSpec, tau_grid
) -> tuple[NormalizedProfile, InflectionReport]:
    """Sample (s_A)^2 kappa_A against the 3/4-arclength parameter at an inflection."""
    p = AffineInflectionProfiler(curve)
    return p.sample(tau_grid), p.report()


# -- normal forms ----------------------------------------------------------------


def _translated_to_origin(germ: PlaneJet) -> PlaneJet:
    x = germ.x.coeffs.copy()
    y = germ.y.coeffs.copy()
    x[0] = 0.0
    y[0] = 0.0
    return PlaneJet.from_coeffs(x, y)


def _parameter_scaled(germ: PlaneJet, lam: float) -> PlaneJet:
    """Germ of t |-> gamma(lam * t)."""
    powers = lam ** np.arange(germ.order + 1)
    return PlaneJet.from_coeffs(germ.x.coeffs * powers, germ.y.coeffs * powers)


def _apply_inverse(germ: PlaneJet, col1: np.ndarray, col2: np.ndarray) -> PlaneJet:
    m = np.array([[col1[0], col2[0]], [col1[1], col2[1]]])
    return germ.transform(np.linalg.inv(m))


def normal_form(germ: PlaneJet, kind: str) -> NormalFormResult:
    """Reduce a germ to its equi-affine normal form and extract c.

    ``kind`` is 'cusp' (target (u^2, u^3 + c u^5), c = mu_A / (80 * 54^(1/5)))
    or 'inflection' (target (u, u^3 + c u^4), c = 6^(1/4) mu_I / 4).  Negative
    germs are first normalized by an orientation reversal (cusps) or an axis
    flip (inflections), both of which preserve the invariant; this is flagged
    in the result.
    """
    if kind == "cusp":
        return _normal_form_cusp(germ)
    if kind == "inflection":
        return _normal_form_inflection(germ)
    raise ValueError(f"normal form kind must be 'cusp' or 'inflection', got {kind!r}")


def _normal_form_cusp(germ: PlaneJet) -> NormalFormResult:
    if germ.order < 8:
        raise ValueError("cusp normal form needs a germ of order >= 8")
    cls = classify(germ)
    flipped = False
    if cls.label is SingularityType.NEGATIVE_CUSP:
        germ = germ.reversed_orientation()
        flipped = True
    elif cls.label is not SingularityType.POSITIVE_CUSP:
        raise ValueError(f"cusp normal form needs a 3/2-cusp germ, got {cls}")

    g = _translated_to_origin(germ)
    d23 = _cross(g.derivative_vector(2), g.derivative_vector(3))
    g = _parameter_scaled(g, d23 ** (-0.2))
    g = _apply_inverse(g, g.derivative_vector(2), g.derivative_vector(3))

    # Reparametrize so the first component becomes s^2/2 exactly.
    a0 = deflate(2.0 * g.x, 2).sqrt()
    s_jet = inflate(a0, 1)
    g = g.compose(s_jet.inverted())

    # Parameter scale + unimodular diagonal map to reach (w^2, w^3 (1 + w B)).
    g = _parameter_scaled(g, 12.0**0.2)
    k = 6.0 * 12.0 ** (-0.6)
    g = g.transform(np.array([[1.0 / k, 0.0], [0.0, k]]))

    # Shear to kill the w^4 term of the second component.
    B0 = float(deflate(deflate(g.y, 3) - 1.0, 1, tol=1e-7).value())
    xi = 2.0 * B0 / 3.0
    g = g.transform(np.array([[1.0, xi], [0.0, 1.0]]))

    # Final reparametrization u = w * sqrt(x / w^2), making x = u^2 exactly.
    u_jet = inflate(deflate(g.x, 2, tol=1e-7).sqrt(), 1)
    g = g.compose(u_jet.inverted())

    y = g.y.coeffs
    c = float(y[5])
    tail = float(abs(y[6])) if len(y) > 6 else math.nan
    return NormalFormResult(c, g, flipped, tail)


def _normal_form_inflection(germ: PlaneJet) -> NormalFormResult:
    if germ.order < 5:
        raise ValueError("inflection normal form needs a germ of order >= 5")
    cls = classify(germ)
    flipped = False
    if cls.label is SingularityType.NEGATIVE_INFLECTION:
        germ = germ.transform(np.array([[1.0, 0.0], [0.0, -1.0]]))
        flipped = True
    elif cls.label is not SingularityType.POSITIVE_INFLECTION:
        raise ValueError(f"inflection normal form needs a generic inflection germ, got {cls}")

    g = _translated_to_origin(germ)
    d13 = _cross(g.derivative_vector(1), g.derivative_vector(3))
    g = _parameter_scaled(g, d13 ** (-0.25))
    g = _apply_inverse(g, g.derivative_vector(1), g.derivative_vector(3))

    # The first component itself is the new parameter: x(s) = s exactly.
    g = g.compose(g.x.inverted())

    sigma = 6.0**0.25
    g = _parameter_scaled(g, sigma)
    g = g.transform(np.array([[1.0 / sigma, 0.0], [0.0, sigma]]))

    y = g.y.coeffs
    c = float(y[4])
    tail = float(abs(y[5])) if len(y) > 5 else math.nan
    return NormalFormResult(c, g, flipped, tail)
