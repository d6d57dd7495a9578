import numpy as np
import pytest

from cuspkit.dsl import (
    CATALOG_NAMES,
    ParseError,
    catalog_lookup,
    parse_curve,
    parse_expression,
)

ALL_CATALOG = [
    ("cuspidal_cubic", {"a": 1.0}),
    ("cycloid", {"a": 1.0}),
    ("canonical_cusp", {"a": 1.0}),
    ("hyperbolic_cycloid", {"a": 1.0}),
    ("cubic_graph", {"a": 1.0}),
    ("skew_cycloid", {"a": 1.0}),
    ("circle", {"r": 1.0}),
    ("parabola", {}),
    ("line", {}),
]


def test_parse_cuspidal_cubic():
    spec = parse_curve("(t^2, t^3)")
    j = spec.jet(0.0, 3)
    assert np.allclose(j.x.coeffs, [0, 0, 1, 0])
    assert np.allclose(j.y.coeffs, [0, 0, 0, 1])


def test_parse_cycloid_with_binding():
    spec = parse_curve("(a*(t - sin(t)), a*(-1 + cos(t))) with a=1")
    j = spec.jet(0.0, 3)
    assert np.allclose(j.x.coeffs, [0, 0, 0, 1 / 6])
    assert np.allclose(j.y.coeffs, [0, 0, -0.5, 0])


def test_missing_second_component_is_a_syntax_error():
    with pytest.raises(ParseError, match="second curve component") as err:
        parse_curve("(t,)")
    assert err.value.line == 1
    assert err.value.column == 4


def test_unbound_parameter_reported():
    with pytest.raises(ParseError, match="unbound parameter"):
        parse_curve("(a*t, t)")


def test_zero_denominator_exponent_rejected():
    with pytest.raises(ParseError, match="zero denominator"):
        parse_curve("(t^(1/0), t)")


def test_error_positions_point_at_the_problem():
    with pytest.raises(ParseError) as err:
        parse_curve("(t, 2*)")
    assert err.value.column == 7


def test_precedence_matches_standard_notation():
    # ^ binds tighter than unary minus, which binds tighter than * and /
    spec = parse_curve("(-t^2, 2*t + t*t)")
    j = spec.jet(1.0, 0)
    assert j.x.value() == pytest.approx(-1.0)
    assert j.y.value() == pytest.approx(3.0)


def test_rational_exponent_uses_signed_convention():
    expr = parse_expression("t^(1/3)")
    from cuspkit.dsl import evaluate

    assert evaluate(expr, -8.0, {}) == pytest.approx(-2.0)
    expr = parse_expression("t^(1/2)")
    assert evaluate(expr, -4.0, {}) == pytest.approx(2.0)


def test_line_has_no_higher_coefficients():
    j = parse_curve("(t, 2*t)").jet(0.37, 6)
    assert np.allclose(j.x.coeffs[2:], 0.0)
    assert np.allclose(j.y.coeffs[2:], 0.0)


@pytest.mark.parametrize("name, params", ALL_CATALOG)
def test_catalog_round_trips_through_parser(name, params):
    spec = catalog_lookup(name, params)
    again = parse_curve(str(spec))
    assert again.x_expr == spec.x_expr
    assert again.y_expr == spec.y_expr
    assert again.params == spec.params


def test_catalog_lookup_substitutes_parameters():
    spec = catalog_lookup("cycloid", {"a": 2.0})
    assert spec.params == {"a": 2.0}
    assert np.allclose(spec.point(0.0), [0.0, 0.0])
    # doubled amplitude: y(pi) = 2 * (-2)
    assert spec.point(np.pi)[1] == pytest.approx(-4.0)


def test_catalog_hyperbolic_and_skew_forms():
    hyp = catalog_lookup("hyperbolic_cycloid", {"a": 1.0})
    assert "sinh" in str(hyp) and "cosh" in str(hyp)
    skew = catalog_lookup("skew_cycloid", {"a": 1.0})
    assert skew.point(0.0)[1] == pytest.approx(1.0)


def test_catalog_errors():
    with pytest.raises(ValueError, match="unknown catalog curve"):
        catalog_lookup("helix", {})
    with pytest.raises(ValueError, match="requires parameter"):
        catalog_lookup("cycloid", {})
    with pytest.raises(ValueError, match="> 0"):
        catalog_lookup("cycloid", {"a": -1.0})
    with pytest.raises(ValueError, match="takes no parameter"):
        catalog_lookup("parabola", {"a": 1.0})


def test_catalog_names_exposed():
    assert "cycloid" in CATALOG_NAMES and len(CATALOG_NAMES) == 9


@pytest.mark.parametrize("name, params", ALL_CATALOG)
def test_jets_match_finite_differences(name, params):
    from conftest import finite_difference

    spec = catalog_lookup(name, params)
    rng = np.random.default_rng(11)
    for t0 in rng.uniform(-1.0, 1.0, size=10):
        jet = spec.jet(float(t0), 4)
        for order in range(1, 5):
            fd = finite_difference(spec.point, float(t0), order)
            exact = jet.derivative_vector(order)
            scale = max(1.0, float(np.max(np.abs(exact))))
            assert np.allclose(fd, exact, atol=2e-5 * scale), (name, order, t0)


def test_jets_are_linear_in_the_curve():
    a = parse_curve("(t - sin(t), t^2)")
    b = parse_curve("(cos(t), exp(t))")
    summed = parse_curve("(t - sin(t) + cos(t), t^2 + exp(t))")
    ja, jb, js = a.jet(0.2, 6), b.jet(0.2, 6), summed.jet(0.2, 6)
    assert np.allclose(js.x.coeffs, ja.x.coeffs + jb.x.coeffs)
    assert np.allclose(js.y.coeffs, ja.y.coeffs + jb.y.coeffs)


def test_jet_order_cap():
    with pytest.raises(ValueError, match="exceeds"):
        parse_curve("(t, t)").jet(0.0, 13)


def test_vectorized_derivatives_match_scalar_jets():
    spec = catalog_lookup("cycloid", {"a": 1.0})
    ts = np.array([-0.7, 0.1, 0.9])
    d = spec.derivatives_at(ts, 3)
    for i, t0 in enumerate(ts):
        j = spec.jet(float(t0), 3)
        for k in range(4):
            assert np.allclose(d[k][:, i], j.derivative_vector(k))


def test_parse_expression_rejects_trailing_junk():
    with pytest.raises(ParseError, match="end of input"):
        parse_expression("1 + t) * 2")
