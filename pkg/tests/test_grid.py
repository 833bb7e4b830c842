import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from shockzoom import (GridFunction, GridMismatchError, Window, l1_distance,
                       mass, max_forward_slope, periodic_mass, trapezoid)


def test_trapezoid_matches_numpy():
    rng = np.random.default_rng(7)
    v = rng.normal(size=57)
    assert trapezoid(v, 0.3) == pytest.approx(np.trapezoid(v, dx=0.3), rel=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 40), st.floats(1e-3, 2.0))
def test_periodic_mass_is_plain_sum(n, dx):
    v = np.arange(n, dtype=float)
    g = GridFunction(0.0, dx, v)
    assert periodic_mass(g) == pytest.approx(float(v.sum()) * dx, rel=1e-14)


def test_grid_geometry():
    g = GridFunction(-1.0, 0.5, np.zeros(5))
    assert g.x_right == 1.0
    assert np.allclose(g.x, [-1.0, -0.5, 0.0, 0.5, 1.0])


def test_interpolation_constant_extension():
    g = GridFunction(0.0, 1.0, np.array([2.0, 4.0]))
    assert g(0.5) == 3.0
    assert g(-10.0) == 2.0
    assert g(10.0) == 4.0


def test_l1_distance_and_mismatch():
    a = GridFunction(0.0, 0.1, np.zeros(11))
    b = GridFunction(0.0, 0.1, np.ones(11))
    assert l1_distance(a, b) == pytest.approx(1.0, rel=1e-13)
    c = GridFunction(0.0, 0.1, np.ones(12))
    with pytest.raises(GridMismatchError):
        l1_distance(a, c)


def test_mass_on_linear_profile():
    g = GridFunction.from_callable(lambda x: x, 0.0, 1.0, 0.125)
    assert mass(g) == pytest.approx(0.5, abs=1e-14)


def test_max_forward_slope():
    g = GridFunction(0.0, 0.5, np.array([0.0, 1.0, 0.5]))
    assert max_forward_slope(g) == pytest.approx(2.0)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridFunction(0.0, -0.5, np.zeros(4))
    with pytest.raises(ValueError):
        GridFunction(0.0, 0.5, np.array([1.0]))
    with pytest.raises(ValueError):
        GridFunction(0.0, 0.5, np.array([1.0, np.nan]))


def test_window_validation_and_samples():
    w = Window(-1.0, 1.0, -2.0, 2.0)
    assert len(w.t_samples(5)) == 5
    assert w.x_samples(3)[1] == 0.0
    with pytest.raises(ValueError):
        Window(1.0, -1.0, 0.0, 0.0)
