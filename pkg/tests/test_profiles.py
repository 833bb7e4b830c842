"""Viscous profiles: traveling waves, merging data, the eternal wave."""
import numpy as np
import pytest

from shockzoom import (GridFunction, MergingTriple, NotConvergedError,
                       NotLaxError, SolverConfig, TauTooLateError, Window,
                       burgers, eternal_z, eternal_z_limit, merging_initial,
                       smoothstep, transition_width, traveling_wave, z_root)
from shockzoom.errors import NotOrderedError


def test_wave_matches_tanh_oracle():
    # symmetric quadratic pair: S(x) = -tanh(x/2), derived by separation
    tw = traveling_wave(burgers(), 1.0, -1.0, 20.0, 0.005)
    x = tw.profile.x
    err = np.max(np.abs(tw.profile.values + np.tanh(x / 2.0)))
    assert err <= 1e-8
    assert tw.shock.speed == pytest.approx(0.0, abs=1e-15)
    assert tw.offset == pytest.approx(0.5, abs=1e-15)


def test_wave_matches_logistic_oracle():
    # pair (1, 0): S(x) = 1 / (1 + exp(x/2)), speed 1/2
    tw = traveling_wave(burgers(), 1.0, 0.0, 20.0, 0.005)
    x = tw.profile.x
    err = np.max(np.abs(tw.profile.values - 1.0 / (1.0 + np.exp(x / 2.0))))
    assert err <= 1e-8
    assert tw.shock.speed == pytest.approx(0.5, abs=1e-15)


def test_wave_satisfies_its_ode():
    tw = traveling_wave(burgers(), 1.3, -0.4, 15.0, 0.01)
    assert tw.ode_residual() < 1e-7


def test_wave_call_extends_with_limits():
    tw = traveling_wave(burgers(), 1.0, -1.0, 10.0, 0.01)
    assert tw(-50.0) == 1.0
    assert tw(50.0) == -1.0
    assert tw(0.0) == pytest.approx(0.0, abs=1e-12)


def test_upward_jump_rejected():
    with pytest.raises(NotLaxError):
        traveling_wave(burgers(), -1.0, 1.0, 10.0, 0.01)


def test_transition_width_tanh():
    tw = traveling_wave(burgers(), 1.0, -1.0, 20.0, 0.01)
    # |S| reaches 1 - 2*fraction at x = 2 artanh(1 - 2 fraction)
    expected = 2.0 * np.arctanh(0.98)
    assert transition_width(tw, 0.01) == pytest.approx(expected, abs=0.03)
    assert transition_width(tw, 0.01) > transition_width(tw, 0.05)


def test_smoothstep_values():
    assert smoothstep(0.0) == 0.0
    assert smoothstep(1.0) == 1.0
    assert smoothstep(0.5) == 0.5
    assert smoothstep(-3.0) == 0.0
    assert smoothstep(7.0) == 1.0


def make_triple():
    return MergingTriple.from_states(burgers(), 1.0, 0.0, -1.0)


def test_triple_orders_and_speeds():
    triple = make_triple()
    assert triple.lambda1 == pytest.approx(0.5)
    assert triple.lambda2 == pytest.approx(-0.5)
    assert triple.lambda_star == pytest.approx(0.0)
    with pytest.raises(NotOrderedError):
        MergingTriple.from_states(burgers(), -1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        MergingTriple.from_states(burgers(), 1.0, 0.0, -1.0, lambda_star=1.0)


def test_merging_initial_far_fields():
    triple = make_triple()
    grid = GridFunction.from_callable(lambda x: 0.0 * x, -60.0, 60.0, 0.05)
    data = merging_initial(triple, -16.0, grid)
    assert abs(data.values[0] - 1.0) < 1e-6
    assert abs(data.values[-1] + 1.0) < 1e-6
    # between the waves the data sits near the middle state
    assert abs(float(data(0.0))) < 0.05


def test_merging_initial_rejects_late_tau():
    triple = make_triple()
    grid = GridFunction.from_callable(lambda x: 0.0 * x, -40.0, 40.0, 0.05)
    with pytest.raises(TauTooLateError):
        merging_initial(triple, -5.0, grid)
    with pytest.raises(TauTooLateError):
        merging_initial(triple, 1.0, grid)


def test_eternal_wave_is_odd():
    win = Window(-1.5, -0.5, -6.0, 6.0)
    zw = eternal_z(2.0, win, dx=0.05, x_max=12.0)
    for t in zw.times():
        v = zw.at(t).values
        assert np.max(np.abs(v + v[::-1])) < 1e-10


def test_eternal_wave_sits_above_cubic():
    win = Window(-1.5, -0.5, -6.0, 6.0)
    zw = eternal_z(2.0, win, dx=0.05, x_max=12.0)
    g = zw.at(-0.5)
    z = z_root(-0.5, g.x)
    sel = g.x >= 0.0
    assert float(np.min(g.values[sel] - z[sel])) > -1e-3


def test_eternal_wave_needs_unit_viscosity():
    win = Window(-1.0, -0.5, -4.0, 4.0)
    with pytest.raises(ValueError, match="unit viscosity"):
        eternal_z(2.0, win, SolverConfig(0.5), dx=0.05, x_max=8.0)
    with pytest.raises(ValueError, match="launch"):
        eternal_z(0.5, win, dx=0.05, x_max=8.0)


def test_horizon_family_reports_not_converged():
    win = Window(-1.5, -0.5, -4.0, 4.0)
    with pytest.raises(NotConvergedError):
        eternal_z_limit([1.5, 2.0], win, 1e-6, dx=0.05, x_max=10.0)
