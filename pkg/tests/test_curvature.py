import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spherefields import (
    BumpSpec,
    NorthSouth,
    SphericalPoint,
    Spin,
    connection_form_pullback,
    curvatures_closed,
    curvatures_expanded,
    perturb,
    volume_integrand,
)
from spherefields.geometry import frame

angles = st.floats(-2 * math.pi, 2 * math.pi)
slopes = st.floats(-20, 20)
lats = st.floats(-1.5, 1.5)


@pytest.mark.parametrize(
    "args, expected",
    [
        ((math.pi / 2, 0.0, 0.0, math.pi / 4), (0.0, 1.0)),
        ((0.0, 0.0, 0.0, math.pi / 4), (1.0, 0.0)),
        ((0.0, 3.0, 0.0, 0.0), (3.0, 0.0)),
    ],
)
def test_closed_form_values(args, expected):
    np.testing.assert_allclose(curvatures_closed(*args), expected, atol=1e-15)
    np.testing.assert_allclose(curvatures_expanded(*args), expected, atol=1e-15)


def test_expanded_vanishes_at_origin():
    assert curvatures_expanded(0.0, 0.0, 0.0, 0.0) == (0.0, 0.0)


def test_mixed_case_both_routes():
    args = (math.pi / 4, 1.0, 1.0, math.pi / 6)
    closed = curvatures_closed(*args)
    shifted = math.tan(math.pi / 6) + 1.0
    s = math.sqrt(0.5)
    assert closed.gamma == pytest.approx(s * shifted + s, rel=1e-15)
    assert closed.delta == pytest.approx(s * shifted - s, rel=1e-15)
    np.testing.assert_allclose(curvatures_expanded(*args), closed, atol=1e-15)


@given(angles, slopes, slopes, lats)
def test_two_routes_agree(theta, t1, t2, alpha):
    c = curvatures_closed(theta, t1, t2, alpha)
    e = curvatures_expanded(theta, t1, t2, alpha)
    assert abs(c.gamma - e.gamma) <= 1e-12
    assert abs(c.delta - e.delta) <= 1e-12


@given(angles, slopes, slopes, lats)
def test_integrand_identity(theta, t1, t2, alpha):
    g, d = curvatures_closed(theta, t1, t2, alpha)
    reduced = 1 + (math.tan(alpha) + t1) ** 2 + t2**2
    assert abs(1 + g * g + d * d - reduced) <= 1e-10 * reduced


@given(angles, slopes, slopes, lats)
def test_pullback_is_frame_rotation_of_curvatures(theta, t1, t2, alpha):
    g, d = curvatures_closed(theta, t1, t2, alpha)
    rotated = d * math.sin(theta) + g * math.cos(theta)
    assert rotated == pytest.approx(math.tan(alpha) + t1, rel=1e-12, abs=1e-12)


def test_pullback_through_field():
    assert connection_form_pullback(NorthSouth(), SphericalPoint(0.0, 0.3)) == 0.0
    assert connection_form_pullback(Spin(4), SphericalPoint(0.0, 1.0)) == 3.0
    for b in np.linspace(0, 6, 7):
        val = connection_form_pullback(Spin(5), SphericalPoint(0.4, b))
        assert val == pytest.approx(math.tan(0.4) + 4 / math.cos(0.4), rel=1e-15)


def test_integrand_values():
    assert volume_integrand(NorthSouth(), SphericalPoint(0.0)) == 1.0
    for a in (-1.2, 0.3, 1.0):
        assert volume_integrand(NorthSouth(), SphericalPoint(a)) == pytest.approx(1 / math.cos(a))


def test_spin4_integrand_near_pole():
    a = math.pi / 2 - 0.01
    val = volume_integrand(Spin(4), SphericalPoint(a))
    assert val == pytest.approx(math.sqrt(1 + (math.tan(a) + 3 / math.cos(a)) ** 2), rel=1e-14)
    # (sin a + k - 1)^2 + cos^2 a -> k^2, so integrand * cos a -> k = 4
    assert val * math.cos(a) == pytest.approx(
        math.sqrt(math.cos(a) ** 2 + (math.sin(a) + 3) ** 2), rel=1e-13
    )
    assert abs(val * math.cos(a) - 4.0) < 1e-4


def _embedded_curvatures(field, alpha, beta, h=1e-5):
    """gamma, delta from differentiating the R^3 vector field along geodesics."""

    def vectors(a, b):
        theta, _, _ = field.derivatives(a, b)
        _, e1, e2 = frame(a, b)
        c, s = np.cos(theta), np.sin(theta)
        return c * e1 + s * e2, -s * e1 + c * e2

    def to_chart(x):
        return math.asin(x[2]), math.atan2(x[1], x[0])

    p, _, _ = frame(alpha, beta)
    v, vp = vectors(alpha, beta)

    def directional(direction, which):
        fwd = to_chart(math.cos(h) * p + math.sin(h) * direction)
        bwd = to_chart(math.cos(h) * p - math.sin(h) * direction)
        return (vectors(*fwd)[which] - vectors(*bwd)[which]) / (2 * h)

    gamma = float(np.dot(directional(v, 0), vp))
    delta = float(np.dot(directional(vp, 1), v))
    return gamma, delta


@pytest.mark.parametrize(
    "field",
    [
        Spin(4),
        NorthSouth(),
        perturb(Spin(3), BumpSpec(0.5, SphericalPoint(0.2, 1.0), 0.7)),
        perturb(Spin(1), BumpSpec(-0.8, SphericalPoint(-0.3, 2.0), 0.6)),
    ],
)
@pytest.mark.parametrize("alpha, beta", [(0.25, 1.1), (-0.4, 2.2), (0.0, 0.9), (0.6, 1.4)])
def test_curvatures_match_embedding(field, alpha, beta):
    theta, t1, t2 = field.derivatives(alpha, beta)
    closed = curvatures_closed(theta, t1, t2, alpha)
    gamma, delta = _embedded_curvatures(field, alpha, beta)
    assert closed.gamma == pytest.approx(gamma, abs=1e-6)
    assert closed.delta == pytest.approx(delta, abs=1e-6)


@settings(max_examples=50)
@given(st.floats(-1.4, 1.4), st.floats(0, 2 * math.pi))
def test_integrand_equals_curvature_form(alpha, beta):
    field = perturb(Spin(4), BumpSpec(0.5, SphericalPoint(0.1, 3.0), 0.9))
    theta, t1, t2 = field.derivatives(alpha, beta)
    g, d = curvatures_closed(theta, t1, t2, alpha)
    val = volume_integrand(field, SphericalPoint(alpha, beta))
    assert val == pytest.approx(math.sqrt(1 + g * g + d * d), rel=1e-13)
