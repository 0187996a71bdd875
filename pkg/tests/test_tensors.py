import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from wormhole_geom.atlas import ChartPoint
from wormhole_geom.errors import DegenerateMetric
from wormhole_geom.metric import metric_at
from wormhole_geom.tensors import (
    Christoffel3,
    Mat3Sym,
    Riemann3,
    fd_derivative,
    fd_derivative_checked,
    fd_second_derivative,
    mat3_inverse,
)


def test_fd_square():
    assert fd_derivative(lambda q: q[0] ** 2, [3.0], 0, 0.01) == pytest.approx(6.0, abs=1e-10)


def test_fd_constant_exact():
    assert fd_derivative(lambda q: 4.2, [1.0, 2.0], 1) == 0.0


def test_fd_conformal_factor():
    f = lambda q: math.cosh(q[0]) ** 2 - math.cos(q[1]) ** 2
    # sinh(2) from a 30-digit evaluation
    assert fd_derivative(f, [1.0, 0.5], 0) == pytest.approx(3.6268604078470188, abs=1e-8)


@given(
    coeffs=st.lists(st.floats(-3, 3), min_size=5, max_size=5),
    x=st.floats(-2, 2),
    h=st.floats(1e-3, 1e-1),
)
def test_fd_exact_on_quartics(coeffs, x, h):
    f = lambda q: sum(c * q[0] ** k for k, c in enumerate(coeffs))
    exact = sum(k * c * x ** (k - 1) for k, c in enumerate(coeffs) if k)
    assert abs(fd_derivative(f, [x], 0, h) - exact) <= 1e-10


def test_fd_nonfinite_raises():
    with pytest.raises(FloatingPointError):
        fd_derivative(lambda q: math.inf if q[0] > 0 else 0.0, [0.0], 0)


def test_fd_second_derivative_cubic():
    f = lambda q: q[0] ** 3 - 2 * q[0] * q[1] ** 2
    assert fd_second_derivative(f, [0.7, 0.3], 0) == pytest.approx(6 * 0.7, abs=1e-9)
    assert fd_second_derivative(f, [0.7, 0.3], 1) == pytest.approx(-4 * 0.7, abs=1e-9)


def test_richardson_gap_small_for_smooth_field():
    value, gap = fd_derivative_checked(lambda q: np.sin(q[0]), [0.3], 0)
    assert value == pytest.approx(math.cos(0.3), abs=1e-12)
    assert gap < 1e-10


def test_richardson_gap_flags_rough_field(caplog):
    _, gap = fd_derivative_checked(lambda q: np.sin(q[0] * 1e4), [0.3], 0)
    assert gap > 1e-6
    assert "Richardson" in caplog.text


def test_inverse_identity():
    eye = Mat3Sym.diag(1, 1, 1)
    assert mat3_inverse(eye) == eye


def test_inverse_diagonal():
    inv = mat3_inverse(Mat3Sym.diag(2, 2, 8))
    np.testing.assert_allclose(inv.array, np.diag([0.5, 0.5, 0.125]))


def test_inverse_focal_circle_degenerate():
    with pytest.raises(DegenerateMetric) as err:
        mat3_inverse(metric_at(ChartPoint(0.0, 0.0, 0.0)))
    assert err.value.det == 0.0


@given(st.lists(st.floats(-1, 1), min_size=6, max_size=6))
def test_inverse_roundtrip(entries):
    m = np.array(entries)[np.array([[0, 1, 3], [1, 2, 4], [3, 4, 5]])]
    m = m + 4 * np.eye(3)  # diagonally dominant, so well conditioned
    g = Mat3Sym.from_array(m)
    prod = g.array @ mat3_inverse(g).array
    assert np.max(np.abs(prod - np.eye(3))) < 1e-12


def test_mat3sym_rejects_nonfinite():
    with pytest.raises(ValueError):
        Mat3Sym((1, 0, 1, 0, 0, math.nan))


def test_mat3sym_embeds_2x2():
    g = Mat3Sym.from_array([[2.0, 0.5], [0.5, 3.0]])
    assert g[1, 0] == g[0, 1] == 0.5
    assert g[2, 2] == 0.0


@given(
    st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.floats(-10, 10)
)
def test_christoffel_lower_symmetry(a, b, c, value):
    gam = Christoffel3()
    gam.set(a, b, c, value)
    assert gam.get(a, c, b) == value
    gam.set(a, c, b, -value)
    assert gam.get(a, b, c) == -value
    arr = gam.array
    assert np.array_equal(arr, arr.transpose(0, 2, 1))


def test_riemann_residuals():
    rng = np.random.default_rng(0)
    r = rng.normal(size=(3, 3, 3, 3))
    r = r - r.transpose(0, 1, 3, 2)
    assert Riemann3(r).antisymmetry_residual() == 0.0
    with pytest.raises(ValueError):
        Riemann3(np.zeros((3, 3, 3)))
