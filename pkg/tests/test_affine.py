import math

import numpy as np
import pytest

from cuspkit.affine import (
    CUSP_NF_DENOM,
    CUSP_PROFILE_VALUE,
    G0_PER_MU_I,
    H0_PER_MU_A,
    INFL_NF_FACTOR,
    INFLECTION_PROFILE_VALUE,
    AffineCuspProfiler,
    AffineInflectionProfiler,
    affine_cuspidal_curvature,
    arclength_A,
    identity_residual,
    inflection_profile_jets,
    inflectional_curvature,
    kappa_A,
    mu_A,
    mu_I,
    normal_form,
    profile_A_cusp,
    profile_A_inflection,
)
from cuspkit.dsl import catalog_lookup, parse_curve
from cuspkit.jets import Jet


# -- affine curvature ---------------------------------------------------------


def test_kappa_A_parabola_vanishes():
    assert kappa_A(catalog_lookup("parabola", {}), 0.7) == pytest.approx(0.0, abs=1e-14)


def test_kappa_A_cuspidal_cubic():
    assert kappa_A(parse_curve("(t^2, t^3)"), 1.0) == pytest.approx(16.0 / 6.0 ** (8 / 3))


def test_kappa_A_cubic_graph():
    assert kappa_A(parse_curve("(t, t^3)"), 1.0) == pytest.approx(-20.0 / 6.0 ** (8 / 3))


def test_kappa_A_rejects_bracket_zero():
    with pytest.raises(ValueError, match="normalized profile"):
        kappa_A(parse_curve("(t^2, t^3)"), 0.0)


def test_kappa_A_reparametrization_invariance():
    curve = catalog_lookup("cycloid", {"a": 1.0})
    for t0 in (0.2, 0.5, -0.4):
        u0 = t0 + t0**3
        base = kappa_A(curve, u0)
        # germ of gamma(u(t)) at t0, u(t) = t + t^3
        inner = Jet([u0, 1 + 3 * t0**2, 3 * t0, 1.0, 0.0], base_point=t0)
        composed = curve.jet(u0, 4).compose(inner)
        from cuspkit.affine import affine_curvature_from_jet

        assert affine_curvature_from_jet(composed) == pytest.approx(base, abs=1e-8)


# -- affine arclength ----------------------------------------------------------


def test_arclength_cuspidal_cubic():
    s, tau35, _ = arclength_A(parse_curve("(t^2, t^3)"), 1.0)
    expected = 3.0 * 6.0 ** (1 / 3) / 5.0
    assert s == pytest.approx(expected, abs=1e-12)
    assert tau35 == pytest.approx(expected**0.6, abs=1e-12)


def test_tau35_is_linear_for_the_cuspidal_cubic():
    curve = parse_curve("(t^2, t^3)")
    slope = None
    for t in (0.2, 0.5, 1.0, -0.7):
        _, tau35, _ = arclength_A(curve, t)
        ratio = tau35 / t
        slope = slope if slope is not None else ratio
        assert ratio == pytest.approx(slope, abs=1e-10)


def test_arclength_cubic_graph():
    s, _, tau34 = arclength_A(parse_curve("(t, t^3)"), 1.0)
    assert s == pytest.approx(0.75 * 6.0 ** (1 / 3), abs=1e-12)
    assert tau34 == pytest.approx(s**0.75, abs=1e-12)


def test_arclength_regular_curve():
    s, _, _ = arclength_A(catalog_lookup("circle", {"r": 1.0}), 0.4)
    assert s == pytest.approx(0.4, abs=1e-12)


# -- the two affine invariants ----------------------------------------------------


@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_mu_A_cycloid_family(a):
    assert mu_A(catalog_lookup("cycloid", {"a": a})) == pytest.approx(36.0 * a**-0.8, rel=1e-12)
    assert mu_A(catalog_lookup("hyperbolic_cycloid", {"a": a})) == pytest.approx(
        -36.0 * a**-0.8, rel=1e-12
    )


@pytest.mark.parametrize("a", [1.0, 3.0])
def test_mu_A_cuspidal_cubic_vanishes(a):
    assert mu_A(catalog_lookup("cuspidal_cubic", {"a": a})) == pytest.approx(0.0, abs=1e-13)


def test_mu_A_requires_cusp_and_order():
    with pytest.raises(ValueError, match="3/2-cusp"):
        affine_cuspidal_curvature(catalog_lookup("circle", {"r": 1.0}).jet(0.0, 5))
    with pytest.raises(ValueError, match="order >= 5"):
        affine_cuspidal_curvature(parse_curve("(t^2, t^3)").jet(0.0, 4))


def test_mu_A_orientation_independent():
    germ = catalog_lookup("cycloid", {"a": 1.0}).jet(0.0, 6)
    assert affine_cuspidal_curvature(germ.reversed_orientation()) == pytest.approx(
        affine_cuspidal_curvature(germ), rel=1e-12
    )


def test_mu_A_equi_affine_invariance(rng):
    for name in ("cycloid", "hyperbolic_cycloid"):
        germ = catalog_lookup(name, {"a": 1.0}).jet(0.0, 6)
        base = affine_cuspidal_curvature(germ)
        for _ in range(100):
            m = rng.uniform(-2.0, 2.0, size=(2, 2))
            det = np.linalg.det(m)
            if abs(det) < 0.1:
                continue
            m /= math.sqrt(abs(det))
            moved = germ.transform(m, rng.uniform(-3.0, 3.0, size=2))
            assert affine_cuspidal_curvature(moved) == pytest.approx(base, rel=1e-8)


@pytest.mark.parametrize("lam", [0.25, 4.0])
def test_mu_A_scaling_law(lam):
    base = mu_A(catalog_lookup("cycloid", {"a": 1.0}))
    assert mu_A(catalog_lookup("cycloid", {"a": lam})) == pytest.approx(
        base * lam**-0.8, rel=1e-10
    )


@pytest.mark.parametrize("a", [1.0, 4.0])
def test_mu_I_skew_cycloid(a):
    value, eps = mu_I(catalog_lookup("skew_cycloid", {"a": a}))
    assert value == pytest.approx(-6.0 / math.sqrt(a), rel=1e-12)
    assert eps == 1


def test_mu_I_flips_sign_under_orientation_reversal():
    germ = catalog_lookup("skew_cycloid", {"a": 1.0}).jet(0.0, 5)
    value, eps = inflectional_curvature(germ.reversed_orientation())
    assert value == pytest.approx(6.0, rel=1e-12)
    assert eps == 1  # the inflection stays positive


def test_mu_I_cubic_graph_vanishes():
    value, eps = mu_I(catalog_lookup("cubic_graph", {"a": 1.0}))
    assert value == pytest.approx(0.0, abs=1e-14)
    assert eps == 1


def test_mu_I_requires_generic_inflection():
    with pytest.raises(ValueError, match="generic inflection"):
        inflectional_curvature(parse_curve("(t^2, t^3)").jet(0.0, 5))


def test_mu_I_equi_affine_invariance(rng):
    germ = catalog_lookup("skew_cycloid", {"a": 1.0}).jet(0.0, 5)
    base, _ = inflectional_curvature(germ)
    for _ in range(100):
        m = rng.uniform(-2.0, 2.0, size=(2, 2))
        det = np.linalg.det(m)
        if abs(det) < 0.1:
            continue
        m /= math.sqrt(abs(det))
        value, _ = inflectional_curvature(germ.transform(m, rng.uniform(-3.0, 3.0, size=2)))
        assert value == pytest.approx(base, rel=1e-8)


@pytest.mark.parametrize("lam", [0.25, 4.0])
def test_mu_I_scaling_law(lam):
    base, _ = mu_I(catalog_lookup("skew_cycloid", {"a": 1.0}))
    scaled, _ = mu_I(catalog_lookup("skew_cycloid", {"a": lam}))
    assert scaled == pytest.approx(base * lam**-0.5, rel=1e-10)


# -- cusp profiles ------------------------------------------------------------------


def test_cuspidal_cubic_profile_constant():
    prof, rep = profile_A_cusp(parse_curve("(t^2, t^3)"), np.linspace(-0.5, 0.5, 11))
    assert np.allclose(prof.values, CUSP_PROFILE_VALUE, atol=1e-10)
    assert rep.h0 == pytest.approx(0.0, abs=1e-12)


def test_exactness_cross_check_cuspidal_cubic():
    curve = parse_curve("(t^2, t^3)")
    for t in (0.1, 0.5, 1.0):
        s, _, _ = arclength_A(curve, t)
        assert s * s * kappa_A(curve, t) == pytest.approx(0.16, abs=1e-10)


@pytest.mark.parametrize("name, sign", [("cycloid", 1.0), ("hyperbolic_cycloid", -1.0)])
def test_cusp_profile_germ_data(name, sign):
    _, rep = profile_A_cusp(catalog_lookup(name, {"a": 1.0}), [0.0])
    assert rep.f0 == pytest.approx(CUSP_PROFILE_VALUE, abs=1e-10)
    assert rep.fdot0 == pytest.approx(0.0, abs=1e-10)
    assert rep.mu_A == pytest.approx(sign * 36.0, rel=1e-12)
    assert rep.h0 == pytest.approx(H0_PER_MU_A * rep.mu_A, rel=1e-10)


def test_h0_matches_polynomial_fit_oracle():
    # quartic fit so the tau^4 tail does not bias the tau^2 coefficient
    curve = catalog_lookup("cycloid", {"a": 1.0})
    grid = np.linspace(-0.05, 0.05, 41)
    prof, rep = profile_A_cusp(curve, grid)
    design = np.vstack([grid**k for k in range(5)]).T
    coef, *_ = np.linalg.lstsq(design, prof.values, rcond=None)
    assert coef[2] == pytest.approx(rep.h0, rel=1e-4)


def test_cusp_profile_rejects_inflection():
    with pytest.raises(ValueError, match="cusp"):
        profile_A_cusp(catalog_lookup("skew_cycloid", {"a": 1.0}), [0.0])


@pytest.mark.parametrize("name", ["cycloid", "hyperbolic_cycloid", "cuspidal_cubic"])
def test_cusp_profile_overlap_consistency(name):
    p = AffineCuspProfiler(catalog_lookup(name, {"a": 1.0}))
    assert p.overlap_consistency() < 1e-8


def test_cusp_profile_matches_germ_taylor_near_origin():
    grid = np.array([-0.01, -0.004, 0.004, 0.01])
    prof, _ = profile_A_cusp(catalog_lookup("cycloid", {"a": 1.0}), grid)
    taylor = prof.f0 + prof.fdot0 * grid + 0.5 * prof.fddot0 * grid**2
    assert np.allclose(prof.values, taylor, atol=1e-6)


# -- inflection profiles --------------------------------------------------------------


def test_cubic_graph_profile_constant():
    prof, rep = profile_A_inflection(
        catalog_lookup("cubic_graph", {"a": 1.0}), np.linspace(-0.5, 0.5, 11)
    )
    assert np.allclose(prof.values, INFLECTION_PROFILE_VALUE, atol=1e-10)
    assert rep.g0 == pytest.approx(0.0, abs=1e-12)
    assert rep.identity_residual_t == pytest.approx(0.0, abs=1e-12)


def test_skew_cycloid_inflection_report():
    _, rep = profile_A_inflection(catalog_lookup("skew_cycloid", {"a": 1.0}), [0.0])
    assert rep.f0 == pytest.approx(INFLECTION_PROFILE_VALUE, abs=1e-10)
    assert rep.g0 == pytest.approx(G0_PER_MU_I * rep.mu_I, rel=1e-10)
    assert abs(rep.identity_residual_t) < 1e-6
    assert abs(rep.identity_residual_tau) < 1e-6


def test_g0_matches_linear_fit_oracle():
    curve = catalog_lookup("skew_cycloid", {"a": 1.0})
    grid = np.linspace(-0.03, 0.03, 31)
    prof, rep = profile_A_inflection(curve, grid)
    design = np.vstack([np.ones_like(grid), grid, grid**2]).T
    coef, *_ = np.linalg.lstsq(design, prof.values, rcond=None)
    assert coef[1] == pytest.approx(rep.g0, rel=1e-4)


@pytest.mark.parametrize("name", ["cubic_graph", "skew_cycloid"])
def test_inflection_profile_overlap_consistency(name):
    p = AffineInflectionProfiler(catalog_lookup(name, {"a": 1.0}))
    assert p.overlap_consistency() < 1e-8


def test_inflection_profile_rejects_cusp():
    with pytest.raises(ValueError, match="inflection"):
        profile_A_inflection(parse_curve("(t^2, t^3)"), [0.0])


# -- the universal identity --------------------------------------------------------


def test_identity_residual_is_linear_in_fddot():
    germ = catalog_lookup("skew_cycloid", {"a": 1.0}).jet(0.0, 10)
    f_jet = inflection_profile_jets(germ).f_t
    base = identity_residual(germ, f_jet)
    perturbed = Jet(f_jet.coeffs.copy())
    perturbed.coeffs[2] += 0.5  # adds +1 to f''(0)
    assert identity_residual(germ, perturbed) - base == pytest.approx(9.0, abs=1e-12)


def test_identity_residual_rejects_cusp_germ():
    with pytest.raises(ValueError, match="generic inflection"):
        identity_residual(parse_curve("(t^2, t^3)").jet(0.0, 5), Jet([0.0, 0.0, 0.0]))


def test_identity_residual_vanishes_for_true_profiles(rng):
    for _ in range(10):
        a2 = rng.uniform(-2.0, 2.0)
        a3 = rng.uniform(0.3, 2.0) * rng.choice([-1.0, 1.0])
        a4 = rng.uniform(-2.0, 2.0)
        curve = parse_curve("(t + p*t^2, q*t^3 + r*t^4)", {"p": a2, "q": a3, "r": a4})
        jets = inflection_profile_jets(curve.jet(0.0, 12))
        assert abs(jets.identity_residual_t) < 1e-9
        assert abs(jets.identity_residual_tau) < 1e-9


# -- normal forms -------------------------------------------------------------------


def test_cusp_normal_form_of_model_germ():
    germ = parse_curve("(t^2, t^3 + t^5)").jet(0.0, 10)
    nf = normal_form(germ, "cusp")
    assert nf.c == pytest.approx(1.0, abs=1e-10)
    assert not nf.flipped
    # reduced second component is u^3 + c u^5 with no u^4 term
    assert nf.reduced.y.coeffs[3] == pytest.approx(1.0, abs=1e-10)
    assert nf.reduced.y.coeffs[4] == pytest.approx(0.0, abs=1e-10)
    assert nf.reduced.x.coeffs[2] == pytest.approx(1.0, abs=1e-10)
    assert affine_cuspidal_curvature(germ) == pytest.approx(CUSP_NF_DENOM, rel=1e-12)


def test_cusp_normal_form_handles_negative_cusps():
    germ = parse_curve("(t^2, -t^3 - t^5)").jet(0.0, 10)
    nf = normal_form(germ, "cusp")
    assert nf.flipped
    assert nf.c == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("name", ["cycloid", "hyperbolic_cycloid", "canonical_cusp"])
def test_cusp_normal_form_reproduces_mu_A(name):
    curve = catalog_lookup(name, {"a": 1.0})
    nf = normal_form(curve.jet(0.0, 10), "cusp")
    assert nf.c == pytest.approx(mu_A(curve) / CUSP_NF_DENOM, abs=1e-10)


def test_inflection_normal_form_of_model_germ():
    germ = parse_curve("(t, t^3 + t^4)").jet(0.0, 8)
    nf = normal_form(germ, "inflection")
    assert nf.c == pytest.approx(1.0, abs=1e-10)
    value, _ = inflectional_curvature(germ)
    assert INFL_NF_FACTOR * value == pytest.approx(1.0, rel=1e-12)


def test_inflection_normal_form_handles_negative_inflections():
    germ = parse_curve("(t, -t^3 - t^4)").jet(0.0, 8)
    nf = normal_form(germ, "inflection")
    assert nf.flipped
    assert nf.c == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("name", ["cubic_graph", "skew_cycloid"])
def test_inflection_normal_form_reproduces_mu_I(name):
    curve = catalog_lookup(name, {"a": 1.0})
    value, _ = mu_I(curve)
    nf = normal_form(curve.jet(0.0, 10), "inflection")
    assert nf.c == pytest.approx(INFL_NF_FACTOR * value, abs=1e-10)


def test_normal_form_rejects_wrong_kind():
    cusp_germ = parse_curve("(t^2, t^3)").jet(0.0, 10)
    with pytest.raises(ValueError, match="generic inflection"):
        normal_form(cusp_germ, "inflection")
    with pytest.raises(ValueError, match="3/2-cusp"):
        normal_form(parse_curve("(t, t^3)").jet(0.0, 10), "cusp")
    with pytest.raises(ValueError, match="kind"):
        normal_form(cusp_germ, "vertex")
