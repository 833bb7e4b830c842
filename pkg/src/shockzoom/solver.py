"""Explicit conservative solver for u_t + f(u)_x = eps * u_xx.

Space: second-order conservative differencing with either a central
numerical flux or a local Lax-Friedrichs flux (default; the interface
dissipation coefficient is the larger neighbouring wave speed).  Time:
Heun's two-stage second-order method with a step obeying both an advective
CFL bound and an explicit diffusion bound.  Snapshots are hit exactly by
shortening the final step; nothing is ever interpolated in time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from .errors import InstabilityError
from .flux import FluxModel
from .grid import GridFunction, max_forward_slope

CENTRAL = "central"
LLF = "local-lax-friedrichs"

BoundaryValue = Union[float, Callable[[float], float]]


@dataclass(frozen=True)
class Periodic:
    """Grid stores one period; the duplicate endpoint is omitted."""


@dataclass(frozen=True)
class Clamped:
    """Dirichlet values at both ends; either constants or callables of t."""

    left: BoundaryValue
    right: BoundaryValue

    def at(self, t: float) -> Tuple[float, float]:
        lv = self.left(t) if callable(self.left) else self.left
        rv = self.right(t) if callable(self.right) else self.right
        return float(lv), float(rv)


@dataclass(frozen=True)
class SolverConfig:
    viscosity: float = 0.0
    boundary: Union[Periodic, Clamped] = field(default_factory=Periodic)
    cfl_advection: float = 0.9
    diffusion_number: float = 0.4
    flux_scheme: str = LLF

    def __post_init__(self):
        if self.viscosity < 0.0:
            raise ValueError("viscosity must be nonnegative")
        if not (0.0 < self.cfl_advection <= 1.0):
            raise ValueError("cfl_advection must lie in (0, 1]")
        if not (0.0 < self.diffusion_number < 0.5):
            raise ValueError("diffusion_number must lie in (0, 0.5)")
        if self.flux_scheme not in (CENTRAL, LLF):
            raise ValueError(f"unknown flux_scheme {self.flux_scheme!r}")


def default_padding(viscosity: float, t_final: float, max_speed: float) -> float:
    """Conservative domain padding beyond the observation window.

    Diffusive spread plus the full advective sweep; tighter values are fine
    when the far field is genuinely constant.
    """
    return 10.0 * np.sqrt(max(viscosity * t_final, 0.0)) + max_speed * t_final


def stable_dt(values: np.ndarray, dx: float, flux: FluxModel, cfg: SolverConfig) -> float:
    """Largest admissible step for the current state."""
    speed = flux.max_speed(values)
    dt = cfg.cfl_advection * dx / speed if speed > 0.0 else np.inf
    # the LLF interface dissipation acts like extra viscosity speed*dx/2, and
    # the two diffusive terms share one stability budget
    diffusion = cfg.viscosity
    if cfg.flux_scheme == LLF:
        diffusion += 0.5 * speed * dx
    if diffusion > 0.0:
        dt = min(dt, cfg.diffusion_number * dx * dx / diffusion)
    if not np.isfinite(dt):
        # neither advection nor diffusion active; any step is formally stable
        dt = dx
    return float(dt)


def _rhs_periodic(u: np.ndarray, dx: float, flux: FluxModel, cfg: SolverConfig) -> np.ndarray:
    fu = flux.f(u)
    u_next = np.roll(u, -1)
    f_next = np.roll(fu, -1)
    interface = 0.5 * (fu + f_next)
    if cfg.flux_scheme == LLF:
        a = np.maximum(np.abs(flux.df(u)), np.abs(flux.df(u_next)))
        interface = interface - 0.5 * a * (u_next - u)
    rhs = -(interface - np.roll(interface, 1)) / dx
    if cfg.viscosity > 0.0:
        rhs += cfg.viscosity * (u_next - 2.0 * u + np.roll(u, 1)) / (dx * dx)
    return rhs


def _rhs_clamped(u: np.ndarray, dx: float, flux: FluxModel, cfg: SolverConfig,
                 bl: float, br: float) -> np.ndarray:
    # ghost nodes hold the clamp values; endpoints are re-pinned after the update
    ue = np.empty(u.size + 2)
    ue[0] = bl
    ue[-1] = br
    ue[1:-1] = u
    fu = flux.f(ue)
    interface = 0.5 * (fu[:-1] + fu[1:])
    if cfg.flux_scheme == LLF:
        dfe = np.abs(flux.df(ue))
        a = np.maximum(dfe[:-1], dfe[1:])
        interface = interface - 0.5 * a * (ue[1:] - ue[:-1])
    rhs = -(interface[1:] - interface[:-1]) / dx
    if cfg.viscosity > 0.0:
        rhs += cfg.viscosity * (ue[2:] - 2.0 * ue[1:-1] + ue[:-2]) / (dx * dx)
    return rhs


def _heun(u: np.ndarray, dx: float, flux: FluxModel, cfg: SolverConfig,
          dt: float, t: float) -> np.ndarray:
    if isinstance(cfg.boundary, Periodic):
        k1 = _rhs_periodic(u, dx, flux, cfg)
        mid = u + dt * k1
        k2 = _rhs_periodic(mid, dx, flux, cfg)
        return u + (0.5 * dt) * (k1 + k2)
    bl0, br0 = cfg.boundary.at(t)
    bl1, br1 = cfg.boundary.at(t + dt)
    k1 = _rhs_clamped(u, dx, flux, cfg, bl0, br0)
    mid = u + dt * k1
    mid[0], mid[-1] = bl1, br1
    k2 = _rhs_clamped(mid, dx, flux, cfg, bl1, br1)
    out = u + (0.5 * dt) * (k1 + k2)
    out[0], out[-1] = bl1, br1
    return out


def _check_stable(u: np.ndarray, cap: float, t: float) -> None:
    m = np.max(np.abs(u))
    if not np.isfinite(m) or m > cap:
        raise InstabilityError(
            f"solution blew up at t={t:.6g}: max|u|={m:.3g} exceeds cap {cap:.3g}")


def step(state: GridFunction, flux: FluxModel, cfg: SolverConfig, dt: float,
         t: float = 0.0) -> GridFunction:
    """Advance one Heun step of size dt.

    dt must respect the stability bounds for the current state; violating
    them is a usage error, not a numerical accident.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    limit = stable_dt(state.values, state.dx, flux, cfg)
    if dt > limit * (1.0 + 1e-9):
        raise ValueError(f"dt={dt:.3g} exceeds the stability bound {limit:.3g}")
    cap = 10.0 * max(1.0, float(np.max(np.abs(state.values))))
    u = _heun(state.values, state.dx, flux, cfg, dt, t)
    _check_stable(u, cap, t + dt)
    return state.with_values(u)


def solve(initial: GridFunction, flux: FluxModel, cfg: SolverConfig,
          t_final: float, snapshot_times: Sequence[float] = ()) -> List[Tuple[float, GridFunction]]:
    """March from t=0 and return (t, state) pairs at the requested times.

    Snapshot times must lie in [0, t_final]; when none are given the final
    time itself is reported.  The step before each snapshot is shortened so
    the landing is exact.
    """
    if t_final < 0.0:
        raise ValueError("t_final must be nonnegative")
    targets = sorted(set(float(s) for s in snapshot_times)) or [float(t_final)]
    if targets[0] < 0.0 or targets[-1] > t_final + 1e-12 * max(1.0, t_final):
        raise ValueError("snapshot_times must lie within [0, t_final]")

    dx = initial.dx
    u = initial.values.copy()
    cap = 10.0 * max(1.0, float(np.max(np.abs(u))))
    out: List[Tuple[float, GridFunction]] = []
    t = 0.0
    for target in targets:
        while t < target:
            dt = stable_dt(u, dx, flux, cfg)
            if t + dt >= target:
                u = _heun(u, dx, flux, cfg, target - t, t)
                t = target
            else:
                u = _heun(u, dx, flux, cfg, dt, t)
                t += dt
            _check_stable(u, cap, t)
        out.append((target, initial.with_values(u.copy())))
    return out


@dataclass(frozen=True)
class OleinikReport:
    """One row per snapshot: measured max slope vs the decay bound 1/(c1 t)."""

    rows: Tuple[Tuple[float, float, float, float], ...]  # (t, slope, bound, margin)
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def oleinik_check(snapshots: Sequence[Tuple[float, GridFunction]], c1: float,
                  tolerance: float) -> OleinikReport:
    """Check the one-sided slope decay u_x <= 1/(c1 t) + tolerance."""
    if c1 <= 0.0:
        raise ValueError("c1 must be positive")
    rows = []
    violations = 0
    worst = np.inf
    for t, snap in snapshots:
        if t <= 0.0:
            raise ValueError("slope decay bound needs t > 0")
        slope = max_forward_slope(snap)
        bound = 1.0 / (c1 * t) + tolerance
        margin = bound - slope
        worst = min(worst, margin)
        if margin < 0.0:
            violations += 1
        rows.append((t, slope, bound, margin))
    return OleinikReport(tuple(rows), violations, float(worst))
