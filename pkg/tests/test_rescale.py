"""Zoom frames, snapshot interpolation, and the fitting helpers."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shockzoom import (DegenerateError, FormationPoint, GridFunction,
                       NoCrossingError, OutOfDomainError, RescaleFrame,
                       SnapshotInterpolant, burgers, convergence_rate,
                       fit_formation_frame, fit_shift, zoom_sample)
from shockzoom.errors import NonPositiveError


def test_frame_exponents():
    f1 = RescaleFrame.type1(2.0, 3.0, 0.01)
    assert (f1.alpha, f1.beta, f1.gamma) == (1.0, 1.0, 0.0)
    f2 = RescaleFrame.type2(2.0, 3.0, 0.01)
    assert (f2.alpha, f2.beta, f2.gamma) == (0.5, 0.75, 0.25)
    with pytest.raises(ValueError):
        RescaleFrame.type1(0.0, 0.0, -0.1)


def test_frame_maps_and_rescales():
    f = RescaleFrame.type2(1.0, -2.0, 0.0016, u_center=0.5)
    t_phys, x_phys = f.to_physical(1.0, 1.0)
    assert t_phys == pytest.approx(1.0 + 0.0016 ** 0.5)
    assert x_phys == pytest.approx(-2.0 + 0.0016 ** 0.75)
    # amplitude gain eps^(-1/4)
    assert f.rescale_values(0.5 + 0.0016 ** 0.25) == pytest.approx(1.0, rel=1e-12)


def test_zoom_sample_roundtrip():
    # evaluator returns the physical coordinate itself; the rescaled field
    # must be the observation coordinate plus the frame offset scaling
    f = RescaleFrame.type1(0.0, 1.0, 0.25)
    template = GridFunction.from_callable(lambda x: 0.0 * x, -2.0, 2.0, 0.5)
    snaps = zoom_sample(lambda t, x: x, f, [0.0, 1.0], template)
    for t, g in snaps:
        assert np.allclose(g.values, 1.0 + 0.25 * g.x, atol=1e-14)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3.0, 3.0))
def test_fit_shift_recovers_translation(s0):
    template = lambda x: -np.tanh(np.asarray(x) / 2.0)
    prof = GridFunction.from_callable(lambda x: template(x - s0), -12.0, 12.0, 0.01)
    fit = fit_shift(prof, template, 0.0)
    assert fit.shift == pytest.approx(s0, abs=1e-6)
    assert fit.sup_error < 1e-6
    assert fit.l1_error < 1e-5


def test_fit_shift_needs_a_crossing():
    prof = GridFunction.from_callable(lambda x: 1.0 + 0.0 * x, -1.0, 1.0, 0.1)
    with pytest.raises(NoCrossingError):
        fit_shift(prof, lambda x: -np.tanh(x), 0.0)


def test_formation_frame_canonical():
    point = FormationPoint(1.0, 0.0, 0.0, 0.0, 0.0, -6.0)
    fit = fit_formation_frame(point, burgers())
    assert fit.c == pytest.approx(1.0)
    assert fit.sigma == pytest.approx(1.0)
    assert fit.lam == pytest.approx(0.0)


def test_formation_frame_scalings():
    # x = -(u/c)^3 means x_uuu = -6 / c^3
    c = 2.0
    point = FormationPoint(1.0, 0.0, 0.3, 0.0, 0.0, -6.0 / c ** 3)
    fit = fit_formation_frame(point, burgers())
    assert fit.c == pytest.approx(c, rel=1e-12)
    assert fit.sigma == pytest.approx(c, rel=1e-12)      # f'' = 1
    assert fit.lam == pytest.approx(0.3, rel=1e-12)      # f' = u


def test_formation_frame_rejects_degenerate():
    with pytest.raises(DegenerateError):
        fit_formation_frame(FormationPoint(1.0, 0.0, 0.0, 0.0, 0.0, 6.0), burgers())
    with pytest.raises(DegenerateError):
        fit_formation_frame(FormationPoint(1.0, 0.0, 0.0, 0.5, 0.0, -6.0), burgers())


def test_convergence_rate_exact_power():
    eps = [0.04, 0.02, 0.01, 0.005]
    errs = [3.7 * e ** 0.8 for e in eps]
    fit = convergence_rate(eps, errs)
    assert fit.slope == pytest.approx(0.8, abs=1e-12)
    assert np.exp(fit.intercept) == pytest.approx(3.7, rel=1e-12)
    assert fit.residual < 1e-12


def test_convergence_rate_validation():
    with pytest.raises(ValueError):
        convergence_rate([0.1, 0.2, 0.3], [1.0, 1.0, 1.0])
    with pytest.raises(ValueError):
        convergence_rate([0.1, 0.05], [1.0, 1.0])
    with pytest.raises(NonPositiveError):
        convergence_rate([0.1, 0.05, 0.025], [1.0, -1.0, 1.0])


def test_interpolant_bilinear():
    g0 = GridFunction(0.0, 1.0, np.array([0.0, 1.0, 2.0]))
    g1 = GridFunction(0.0, 1.0, np.array([2.0, 3.0, 4.0]))
    interp = SnapshotInterpolant([(0.0, g0), (1.0, g1)])
    assert interp(0.0, 0.5) == pytest.approx(0.5)
    assert interp(0.5, 0.0) == pytest.approx(1.0)
    assert interp(0.25, 1.5) == pytest.approx(2.0)
    with pytest.raises(OutOfDomainError):
        interp(2.0, 0.0)
    with pytest.raises(OutOfDomainError):
        interp(0.5, 5.0)


def test_interpolant_needs_matching_grids():
    g0 = GridFunction(0.0, 1.0, np.array([0.0, 1.0, 2.0]))
    g1 = GridFunction(0.0, 0.5, np.array([2.0, 3.0, 4.0]))
    with pytest.raises(ValueError):
        SnapshotInterpolant([(0.0, g0), (1.0, g1)])
