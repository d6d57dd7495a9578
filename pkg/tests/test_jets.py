import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cuspkit.jets import (
    Jet,
    PlaneJet,
    bracket,
    deflate,
    inflate,
    moment_quotient,
    moment_quotient_jet,
    signed_power,
)

finite = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def test_mul_polynomial_identity():
    t = Jet.variable(0.0, 2)
    assert np.allclose(((1 + t) * (1 - t)).coeffs, [1.0, 0.0, -1.0])


def test_sin_taylor_coefficients():
    t = Jet.variable(0.0, 5)
    assert np.allclose(t.sin().coeffs, [0, 1, 0, -1 / 6, 0, 1 / 120])


def test_div_geometric_series():
    t = Jet.variable(0.0, 3)
    assert np.allclose((t * t / (1 + t)).coeffs, [0, 0, 1, -1])


def test_division_by_zero_constant_rejected():
    t = Jet.variable(0.0, 4)
    with pytest.raises(ZeroDivisionError):
        (1 + t) / t


def test_base_point_mismatch_rejected():
    a = Jet.variable(0.0, 4)
    b = Jet.variable(1.0, 4)
    with pytest.raises(ValueError, match="base points differ"):
        a + b


def test_result_order_is_minimum_of_inputs():
    a = Jet.variable(0.0, 6)
    b = Jet.variable(0.0, 3)
    assert (a * b).order == 3
    assert (a + b).order == 3


def test_bracket_identity_frame():
    e1 = PlaneJet.from_coeffs([1, 0, 0], [0, 0, 0])
    e2 = PlaneJet.from_coeffs([0, 0, 0], [1, 0, 0])
    assert np.allclose(bracket(e1, e2).coeffs, [1, 0, 0])


def test_bracket_constant_vectors():
    a = PlaneJet.from_coeffs([2, 0], [3, 0])
    b = PlaneJet.from_coeffs([4, 0], [5, 0])
    assert bracket(a, b).value() == pytest.approx(-2.0)


def test_bracket_cycloid_second_third_derivatives():
    # cycloid, a=1: gamma''(0) = (0,-1), gamma'''(0) = (1,0)
    from cuspkit.dsl import catalog_lookup

    j = catalog_lookup("cycloid", {"a": 1.0}).jet(0.0, 8)
    b = bracket(j.derivative(2), j.derivative(3))
    assert b.value() == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize(
    "x, m, n, expected",
    [
        (-4.0, 1, 2, 2.0),
        (-8.0, 2, 3, 4.0),
        (-8.0, 3, 5, -(8.0 ** (3 / 5))),
        (9.0, 1, 2, 3.0),
        (-27.0, 1, 3, -3.0),
    ],
)
def test_signed_power_values(x, m, n, expected):
    assert signed_power(x, m, n) == pytest.approx(expected, rel=1e-13)


def test_signed_power_pole():
    with pytest.raises(ZeroDivisionError):
        signed_power(0.0, -1, 2)


def test_signed_power_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        signed_power(1.0, 1, 0)


@given(st.floats(min_value=0.05, max_value=10.0), st.booleans(),
       st.integers(min_value=-7, max_value=7), st.integers(min_value=1, max_value=9))
@settings(max_examples=200)
def test_signed_power_odd_root_inverts(mag, neg, m, n):
    if n % 2 == 0 or m == 0:
        return
    x = -mag if neg else mag
    y = signed_power(x, m, n)
    assert np.sign(y) ** n * abs(y) ** n == pytest.approx(x**m, rel=1e-12)


def test_deflate_exact_polynomial():
    j = Jet([0, 0, 1, 1, 0])
    out = deflate(j, 2)
    assert out.order == 2
    assert np.allclose(out.coeffs, [1, 1, 0])


def test_deflate_cuspidal_cubic_bracket():
    from cuspkit.dsl import parse_curve

    j = parse_curve("(t^2, t^3)").jet(0.0, 6)
    b = bracket(j.derivative(1), j.derivative(2))
    assert deflate(b, 2).value() == pytest.approx(6.0)


def test_deflate_rejects_nonvanishing_leading_terms():
    with pytest.raises(ValueError, match="not divisible"):
        deflate(Jet([1.0, 1.0, 0.0]), 1)


@given(st.lists(finite, min_size=1, max_size=8), st.integers(min_value=1, max_value=4))
@settings(max_examples=100)
def test_deflate_undoes_inflate(coeffs, k):
    j = Jet(coeffs)
    back = deflate(inflate(j, k), k)
    assert np.allclose(back.coeffs, j.coeffs, atol=1e-12)


@given(st.lists(finite, min_size=2, max_size=9))
@settings(max_examples=100)
def test_multiplicative_inverse(coeffs):
    if abs(coeffs[0]) < 0.5:
        coeffs[0] = 1.0 + abs(coeffs[0])
    j = Jet(coeffs)
    inv = 1.0 / j
    unit = j * inv
    expect = np.zeros_like(unit.coeffs)
    expect[0] = 1.0
    # cancellation scale: the product sums terms of this magnitude
    scale = max(1.0, float(np.max(np.abs(inv.coeffs)) * np.max(np.abs(j.coeffs))))
    assert np.allclose(unit.coeffs, expect, atol=1e-12 * scale)


@pytest.mark.parametrize("fn", ["sin", "cos", "exp"])
def test_elementary_jets_match_finite_differences(fn):
    from conftest import finite_difference

    rng = np.random.default_rng(7)
    for _ in range(5):
        t0 = rng.uniform(-1.0, 1.0)
        jet = getattr(Jet.variable(t0, 4), fn)()
        ref = getattr(np, fn)
        for order in range(1, 5):
            fd = finite_difference(ref, t0, order)
            exact = jet.derivative_value(order)
            assert fd == pytest.approx(exact, rel=1e-5, abs=1e-5)


def test_compose_and_invert_roundtrip():
    s = Jet([0.3, 2.0, -0.5, 0.25, 0.0, 0.1], base_point=1.0)
    inv = s.inverted()
    assert inv.base_point == pytest.approx(0.3)
    # s(inv(tau)) is the identity map: its jet at base 0.3 is 0.3 + (tau - 0.3)
    ident = s.compose(inv)
    expect = np.zeros_like(ident.coeffs)
    expect[0], expect[1] = inv.base_point, 1.0
    assert np.allclose(ident.coeffs, expect, atol=1e-12)


def test_compose_base_mismatch_rejected():
    outer = Jet.variable(1.0, 3)
    inner = Jet.variable(0.0, 3)  # constant coefficient 0 != 1
    with pytest.raises(ValueError, match="does not match"):
        outer.compose(inner)


def test_invert_needs_nonzero_slope():
    with pytest.raises(ValueError, match="zero linear coefficient"):
        Jet([0.0, 0.0, 1.0]).inverted()


def test_rational_power_of_jet_matches_binomial_series():
    t = Jet.variable(0.0, 6)
    got = (1 + t).pow_rational(1, 2).coeffs
    expect = [math.comb(2 * k, k) / ((-4) ** k * (1 - 2 * k)) for k in range(7)]
    assert np.allclose(got, expect, rtol=1e-13)


def test_fractional_power_of_zero_constant_rejected():
    t = Jet.variable(0.0, 4)
    with pytest.raises(ZeroDivisionError):
        t.pow_rational(1, 2)


def test_jet_evaluation_is_horner_polynomial():
    j = Jet([1.0, 2.0, 3.0], base_point=0.5)
    assert j(1.5) == pytest.approx(1 + 2 * 1.0 + 3 * 1.0)


@pytest.mark.parametrize("alpha", [1 / 3, 2 / 3, 1.0])
@pytest.mark.parametrize("t", [-1.0, -0.4, 0.0, 0.3, 1.0])
def test_moment_quotient_constant(alpha, t):
    got = moment_quotient(lambda u: np.full_like(u, 2.5), alpha, t)
    assert got == pytest.approx(2.5 / (1 + alpha), abs=1e-12)


@pytest.mark.parametrize("t", [1.0, -1.0, 0.25])
def test_moment_quotient_linear(t):
    assert moment_quotient(lambda u: u, 2 / 3, t) == pytest.approx(3 * t / 8, abs=1e-12)


def test_moment_quotient_rejects_nonpositive_alpha():
    with pytest.raises(ValueError):
        moment_quotient(lambda u: u, 0.0, 1.0)
    with pytest.raises(ValueError):
        moment_quotient_jet(Jet([1.0, 0.0]), -1.0)


def test_moment_quotient_jet_divides_coefficients():
    phi = Jet([2.0, 3.0, 4.0])
    out = moment_quotient_jet(phi, 1.0)
    assert np.allclose(out.coeffs, [2 / 2, 3 / 3, 4 / 4])


def test_moment_quotient_accepts_jets():
    phi = Jet([1.0, 1.0, 0.5, 0.0, 0.0])
    direct = moment_quotient(lambda u: 1 + u + 0.5 * u**2, 1.0, 0.5)
    via_jet = moment_quotient(phi, 1.0, 0.5)
    assert via_jet == pytest.approx(direct, abs=1e-13)


def test_plane_jet_component_consistency():
    with pytest.raises(ValueError, match="share a base point"):
        PlaneJet(Jet.variable(0.0, 3), Jet.variable(1.0, 3))


def test_plane_jet_transform_is_affine_action():
    g = PlaneJet.from_coeffs([0.0, 1.0, 0.5], [1.0, -1.0, 0.0])
    m = np.array([[0.0, -1.0], [1.0, 0.0]])
    moved = g.transform(m, (2.0, 3.0))
    p = g(0.3)
    q = moved(0.3)
    assert np.allclose(q, m @ p + [2.0, 3.0])


def test_reversed_orientation_alternates_signs():
    g = PlaneJet.from_coeffs([0, 1, 2, 3], [1, 0, -1, 0])
    r = g.reversed_orientation()
    assert np.allclose(r.x.coeffs, [0, -1, 2, -3])
    assert np.allclose(r.y.coeffs, [1, 0, -1, 0])
