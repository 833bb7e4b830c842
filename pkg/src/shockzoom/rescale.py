"""Zoom frames around a distinguished space-time point and fitting helpers.

A frame maps observation coordinates (t, x) to physical coordinates

    (tau_eps + eps^alpha * t,  xi_eps + eps^beta * x)

and rescales values by eps^(-gamma) after subtracting a centre value.
Type-1 frames (exponents 1, 1, 0) resolve a formed shock of width eps;
type-2 frames (1/2, 3/4, 1/4) resolve the first instant of gradient
blow-up, where amplitudes shrink like eps^(1/4).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

import numpy as np

from .errors import DegenerateError, NoCrossingError, NonPositiveError, OutOfDomainError
from .flux import FluxModel
from .grid import GridFunction, trapezoid


@dataclass(frozen=True)
class RescaleFrame:
    tau_eps: float
    xi_eps: float
    eps: float
    alpha: float
    beta: float
    gamma: float
    u_center: float = 0.0

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("eps must be positive")

    @classmethod
    def type1(cls, tau_eps: float, xi_eps: float, eps: float,
              u_center: float = 0.0) -> "RescaleFrame":
        return cls(tau_eps, xi_eps, eps, 1.0, 1.0, 0.0, u_center)

    @classmethod
    def type2(cls, tau_eps: float, xi_eps: float, eps: float,
              u_center: float = 0.0) -> "RescaleFrame":
        return cls(tau_eps, xi_eps, eps, 0.5, 0.75, 0.25, u_center)

    def to_physical(self, t, x) -> Tuple[np.ndarray, np.ndarray]:
        return (self.tau_eps + self.eps ** self.alpha * np.asarray(t, dtype=float),
                self.xi_eps + self.eps ** self.beta * np.asarray(x, dtype=float))

    def rescale_values(self, u):
        return (np.asarray(u, dtype=float) - self.u_center) / self.eps ** self.gamma


class SnapshotInterpolant:
    """Bilinear sampler over a list of (t, GridFunction) snapshots.

    Linear in t between stored times, linear in x between nodes; points
    outside the stored rectangle raise OutOfDomainError.
    """

    def __init__(self, trajectory: Sequence[Tuple[float, GridFunction]]):
        traj = sorted(trajectory, key=lambda p: p[0])
        if len(traj) < 1:
            raise ValueError("empty trajectory")
        self.times = np.array([t for t, _ in traj], dtype=float)
        self.grids = [g for _, g in traj]
        g0 = self.grids[0]
        for g in self.grids[1:]:
            if g.n != g0.n or abs(g.x_left - g0.x_left) > 1e-9 or \
                    abs(g.dx - g0.dx) > 1e-12:
                raise ValueError("snapshots must share one grid")
        self.x_left = g0.x_left
        self.x_right = g0.x_right
        self.slack = 1e-9 * max(1.0, abs(self.times[-1]), abs(self.x_right))

    def __call__(self, t: float, x):
        x = np.asarray(x, dtype=float)
        if t < self.times[0] - self.slack or t > self.times[-1] + self.slack:
            raise OutOfDomainError(f"t={t} outside stored times "
                                   f"[{self.times[0]}, {self.times[-1]}]")
        if np.any(x < self.x_left - self.slack) or np.any(x > self.x_right + self.slack):
            raise OutOfDomainError("x outside the stored grid")
        j = int(np.searchsorted(self.times, t, side="right")) - 1
        j = min(max(j, 0), len(self.grids) - 1)
        if j == len(self.grids) - 1 or self.times[j] == t:
            return self.grids[j](x)
        t0, t1 = self.times[j], self.times[j + 1]
        w = (t - t0) / (t1 - t0)
        return (1.0 - w) * self.grids[j](x) + w * self.grids[j + 1](x)


def zoom_sample(evaluator: Callable, frame: RescaleFrame, t_samples: Sequence[float],
                template: GridFunction) -> List[Tuple[float, GridFunction]]:
    """Sample the rescaled field on observation coordinates.

    ``evaluator(t_phys, x_phys_array)`` must return physical values; the
    result is a snapshot list in observation coordinates on the template
    grid.
    """
    out = []
    x_obs = template.x
    for t in t_samples:
        t_phys, x_phys = frame.to_physical(t, x_obs)
        u = evaluator(float(t_phys), x_phys)
        out.append((float(t), template.with_values(frame.rescale_values(u))))
    return out


@dataclass(frozen=True)
class FitResult:
    shift: float
    sup_error: float
    l1_error: float


def fit_shift(profile: GridFunction, template: Callable, midpoint: float) -> FitResult:
    """Locate the midpoint crossing and measure the mismatch to the template.

    The shift is the x where the profile first crosses the midpoint going
    down (linear interpolation between the bracketing nodes).  The template
    is assumed centred, i.e. template(0) = midpoint; errors compare
    profile(x) with template(x - shift) on the profile's grid.
    """
    d = profile.values - midpoint
    down = np.nonzero((d[:-1] >= 0.0) & (d[1:] < 0.0))[0]
    if down.size == 0:
        raise NoCrossingError("profile never crosses the midpoint from above")
    i = int(down[0])
    frac = d[i] / (d[i] - d[i + 1])
    shift = profile.x_left + profile.dx * (i + frac)
    fitted = np.asarray(template(profile.x - shift), dtype=float)
    diff = np.abs(profile.values - fitted)
    return FitResult(float(shift), float(np.max(diff)),
                     trapezoid(diff, profile.dx))


@dataclass(frozen=True)
class FormationPoint:
    """Local inverse-profile data x(tau, u) at a gradient catastrophe.

    Derivatives are taken in u at the critical value; a clean cubic
    degeneracy means x_u = x_uu = 0 and x_uuu < 0.
    """

    tau: float
    xi: float
    u_value: float
    x_u: float
    x_uu: float
    x_uuu: float


@dataclass(frozen=True)
class FormationFrameFit:
    """Normalised limit parameters: the limit is c * Z(sigma t, x - lam t)."""

    c: float
    sigma: float
    lam: float
    tau_eps: float
    xi_eps: float


def fit_formation_frame(point: FormationPoint, flux: FluxModel,
                        tol: float = 1e-8) -> FormationFrameFit:
    """Match the cubic degeneracy to the normalised formation profile.

    Scaling u = c v turns x = x_uuu/6 * u^3 into the canonical x = -v^3
    when c = (-x_uuu / 6)^(-1/3); the observation clock runs at
    sigma = f''(u) * c and the frame drifts at lam = f'(u).
    """
    scale = abs(point.x_uuu)
    if not (point.x_uuu < 0.0) or scale == 0.0:
        raise DegenerateError("need x_uuu < 0 at the formation point")
    if abs(point.x_u) > tol * max(1.0, scale) or abs(point.x_uu) > tol * max(1.0, scale):
        raise DegenerateError(
            f"x_u={point.x_u:.3g}, x_uu={point.x_uu:.3g}: not a clean cubic degeneracy")
    c = (-point.x_uuu / 6.0) ** (-1.0 / 3.0)
    a = float(flux.d2f(np.float64(point.u_value)))
    b = float(flux.df(np.float64(point.u_value)))
    if a <= 0.0:
        raise DegenerateError("flux curvature must be positive at the formation value")
    return FormationFrameFit(c, a * c, b, point.tau, point.xi)


@dataclass(frozen=True)
class RateFit:
    slope: float
    intercept: float
    residual: float


def convergence_rate(eps_list: Sequence[float], errors: Sequence[float]) -> RateFit:
    """Least-squares slope of log(error) against log(eps).

    Needs at least three strictly decreasing positive eps values and
    positive errors; the residual is the rms misfit of the line.
    """
    eps = np.asarray(eps_list, dtype=float)
    err = np.asarray(errors, dtype=float)
    if eps.size != err.size or eps.size < 3:
        raise ValueError("need at least three (eps, error) pairs")
    if np.any(eps <= 0.0) or np.any(err <= 0.0):
        raise NonPositiveError("eps and errors must be positive for a log-log fit")
    if np.any(np.diff(eps) >= 0.0):
        raise ValueError("eps_list must be strictly decreasing")
    le = np.log(eps)
    lr = np.log(err)
    a = np.vstack([le, np.ones_like(le)]).T
    coef, *_ = np.linalg.lstsq(a, lr, rcond=None)
    fit = a @ coef
    rms = float(np.sqrt(np.mean((lr - fit) ** 2)))
    return RateFit(float(coef[0]), float(coef[1]), rms)
