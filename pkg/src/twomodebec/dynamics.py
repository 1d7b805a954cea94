"""Mean-field evolution in three equivalent pictures.

* lab frame: the driven two-mode equations with coupling Delta0 + A*sin(omega*t)
* rotating frame: the exact transformed equations, theta = (A/omega)*cos(omega*t)
* effective model: the autonomous zeroth-order averaged equations

plus the unitary map between the lab and rotating representations.

Sweep support: gamma may be a linear ramp evaluated inside the RHS, and the
drive amplitude may be ramped on linearly over a window T_ramp (slow compared
with the drive period, fast compared with the natural motion).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .integrator import IntegratorConfig, Trajectory, rk4_evolve
from .params import EffectiveParams, ModelParams

TWO_PI = 2.0 * math.pi


@dataclass
class AmplitudePair:
    """Complex mode amplitudes (a, b) at time t, |a|^2 + |b|^2 = 1."""

    a: complex
    b: complex
    t: float = 0.0

    @property
    def norm_sq(self) -> float:
        return abs(self.a) ** 2 + abs(self.b) ** 2

    @property
    def s(self) -> float:
        return abs(self.b) ** 2 - abs(self.a) ** 2

    @property
    def phi(self) -> float:
        return (cmath.phase(self.b) - cmath.phase(self.a)) % TWO_PI

    def require_normalized(self, tol: float = 1e-9):
        # a, b may be ensemble arrays; the check covers every member
        dev = float(np.max(np.abs(np.abs(self.a) ** 2
                                  + np.abs(self.b) ** 2 - 1.0)))
        if dev > tol:
            raise ValueError(f"state norm^2 deviates from 1 by {dev}")

    @classmethod
    def from_phase_coords(cls, s: float, phi: float, t: float = 0.0) -> "AmplitudePair":
        """Amplitudes for imbalance s and relative phase phi, gauge phi_a = 0."""
        if not -1.0 <= s <= 1.0:
            raise ValueError("s must lie in [-1, 1]")
        a = math.sqrt(0.5 * (1.0 - s))
        b = math.sqrt(0.5 * (1.0 + s)) * cmath.exp(1j * phi)
        return cls(a=a, b=b, t=t)


@dataclass(frozen=True)
class GammaRamp:
    """gamma(t) = start + rate*t, clipped once the end value is reached."""

    start: float
    rate: float
    end: float

    def __call__(self, t: float) -> float:
        g = self.start + self.rate * t
        if self.rate >= 0:
            return min(g, self.end)
        return max(g, self.end)

    @property
    def duration(self) -> float:
        if self.rate == 0:
            raise ValueError("ramp rate must be nonzero")
        return (self.end - self.start) / self.rate


# ---------------------------------------------------------------------------
# right-hand sides


def _lab_rhs(a, b, t, gamma, delta0, c, A, omega):
    z = abs(b) ** 2 - abs(a) ** 2
    diag = gamma + c * z
    coup = delta0 + A * math.sin(omega * t)
    da = -0.5j * (diag * a + coup * b)
    db = -0.5j * (coup * a - diag * b)
    return da, db


def _rotating_rhs(a, b, t, gamma, delta0, c, A, omega):
    theta = (A / omega) * math.cos(omega * t) if A != 0.0 else 0.0
    cs = math.cos(theta)
    sn = math.sin(theta)
    z = abs(b) ** 2 - abs(a) ** 2
    u = 2j * (a.conjugate() * b).imag
    csn = c * sn * cs
    da = -0.5j * ((gamma * cs + c * cs * cs * z - 1j * csn * u) * a
                  + (delta0 + 1j * gamma * sn + c * sn * sn * u + 1j * csn * z) * b)
    db = -0.5j * ((delta0 - 1j * gamma * sn - c * sn * sn * u - 1j * csn * z) * a
                  + (-gamma * cs - c * cs * cs * z + 1j * csn * u) * b)
    return da, db


def _effective_rhs(a, b, gamma_eff, delta0, c_z, c_y):
    z = abs(b) ** 2 - abs(a) ** 2
    u = 2j * (a.conjugate() * b).imag
    diag = gamma_eff + c_z * z
    da = -0.5j * (diag * a + (delta0 + c_y * u) * b)
    db = -0.5j * ((delta0 - c_y * u) * a - diag * b)
    return da, db


def rhs_lab(state: AmplitudePair, p: ModelParams, t: float):
    """Time derivative (da/dt, db/dt) of the lab-frame equations."""
    return _lab_rhs(state.a, state.b, t, p.gamma, p.delta0, p.c, p.A, p.omega)


def rhs_rotating(state: AmplitudePair, p: ModelParams, t: float):
    """Time derivative in the exact rotating frame."""
    return _rotating_rhs(state.a, state.b, t, p.gamma, p.delta0, p.c, p.A, p.omega)


def rhs_effective(state: AmplitudePair, eff: EffectiveParams, delta0: float):
    """Time derivative of the autonomous averaged model."""
    return _effective_rhs(state.a, state.b, eff.gamma_eff, delta0, eff.c_z, eff.c_y)


# ---------------------------------------------------------------------------
# step-size selection


def natural_rate(gamma: float, delta0: float, c: float) -> float:
    return max(abs(gamma), delta0, c, 1e-2)


def default_dt(p: ModelParams, cfg: IntegratorConfig) -> float:
    """Step tied to the fastest time scale present.

    Driven runs additionally resolve the drive period and the instantaneous
    eigenfrequency (which grows with A in the lab frame).
    """
    if cfg.dt is not None:
        return cfg.dt
    dt = TWO_PI / (cfg.steps_per_natural_period
                   * natural_rate(p.gamma, p.delta0, p.c))
    if p.A != 0.0:
        dt = min(dt, TWO_PI / (p.omega * max(cfg.periods_per_step_min, 300)))
        fast = 0.5 * (abs(p.gamma) + p.delta0 + p.c + p.A)
        dt = min(dt, TWO_PI / (cfg.steps_per_natural_period * fast))
    return dt


def _check_drive_dt(dt: float, p: ModelParams, cfg: IntegratorConfig):
    from .errors import ConfigError

    if p.A != 0.0 and dt > TWO_PI / (p.omega * cfg.periods_per_step_min) * (1 + 1e-12):
        raise ConfigError(
            f"dt = {dt} does not resolve the drive period "
            f"(need <= {TWO_PI / (p.omega * cfg.periods_per_step_min)})"
        )


# ---------------------------------------------------------------------------
# evolution


def _evolve_frame(rhs_core, state0: AmplitudePair, p: ModelParams,
                  t_final: float, cfg: IntegratorConfig | None,
                  gamma_ramp: GammaRamp | None, drive_ramp: float) -> Trajectory:
    cfg = cfg or IntegratorConfig()
    cfg.validate()
    state0.require_normalized()
    dt = default_dt(p, cfg)
    _check_drive_dt(dt, p, cfg)
    gamma, delta0, c, A, omega = p.gamma, p.delta0, p.c, p.A, p.omega

    if gamma_ramp is None and drive_ramp == 0.0:
        def rhs(a, b, t):
            return rhs_core(a, b, t, gamma, delta0, c, A, omega)
    else:
        def rhs(a, b, t):
            g = gamma_ramp(t) if gamma_ramp is not None else gamma
            At = A * min(t / drive_ramp, 1.0) if drive_ramp > 0.0 else A
            return rhs_core(a, b, t, g, delta0, c, At, omega)

    traj = rk4_evolve(rhs, state0.a, state0.b, state0.t, t_final, dt,
                      cfg.n_samples, cfg.norm_tol)
    traj.meta.update(model_params=p, gamma_ramp=gamma_ramp, drive_ramp=drive_ramp)
    return traj


def evolve_lab(state0: AmplitudePair, p: ModelParams, t_final: float,
               cfg: IntegratorConfig | None = None, *,
               gamma_ramp: GammaRamp | None = None,
               drive_ramp: float = 0.0) -> Trajectory:
    """Integrate the driven lab-frame equations up to t_final."""
    return _evolve_frame(_lab_rhs, state0, p, t_final, cfg, gamma_ramp, drive_ramp)


def evolve_rotating(state0: AmplitudePair, p: ModelParams, t_final: float,
                    cfg: IntegratorConfig | None = None, *,
                    gamma_ramp: GammaRamp | None = None,
                    drive_ramp: float = 0.0) -> Trajectory:
    """Integrate the exact rotating-frame equations up to t_final."""
    return _evolve_frame(_rotating_rhs, state0, p, t_final, cfg, gamma_ramp,
                         drive_ramp)


def evolve_effective(state0: AmplitudePair, eff: EffectiveParams, delta0: float,
                     t_final: float, cfg: IntegratorConfig | None = None, *,
                     gamma_ramp: GammaRamp | None = None) -> Trajectory:
    """Integrate the autonomous averaged model up to t_final.

    gamma_ramp, when given, ramps gamma_eff (the ramp is specified directly in
    effective units; callers scale lab-frame gamma by J0(A/omega) themselves).
    """
    cfg = cfg or IntegratorConfig()
    cfg.validate()
    state0.require_normalized()
    if cfg.dt is not None:
        dt = cfg.dt
    else:
        ge = max(abs(eff.gamma_eff),
                 abs(gamma_ramp.start) if gamma_ramp else 0.0,
                 abs(gamma_ramp.end) if gamma_ramp else 0.0)
        rate = natural_rate(ge, delta0, eff.c_z + eff.c_y)
        dt = TWO_PI / (cfg.steps_per_natural_period * rate)
    g0, cz, cy = eff.gamma_eff, eff.c_z, eff.c_y

    if gamma_ramp is None:
        def rhs(a, b, t):
            return _effective_rhs(a, b, g0, delta0, cz, cy)
    else:
        def rhs(a, b, t):
            return _effective_rhs(a, b, gamma_ramp(t), delta0, cz, cy)

    traj = rk4_evolve(rhs, state0.a, state0.b, state0.t, t_final, dt,
                      cfg.n_samples, cfg.norm_tol)
    traj.meta.update(effective_params=eff, delta0=delta0, gamma_ramp=gamma_ramp)
    return traj


# ---------------------------------------------------------------------------
# frame transform


def frame_transform(state: AmplitudePair, p: ModelParams,
                    direction: str = "lab_to_rotating",
                    drive_ramp: float = 0.0) -> AmplitudePair:
    """Unitary map between the lab and rotating representations.

    With chi = (A/2omega)*cos(omega*t):
        a' = a cos(chi) - i b sin(chi)
        b' = b cos(chi) - i a sin(chi)
    and the inverse is the same map with chi -> -chi.
    """
    if direction not in ("lab_to_rotating", "rotating_to_lab"):
        raise ValueError(f"unknown direction {direction!r}")
    t = state.t
    if p.A == 0.0:
        return AmplitudePair(a=state.a, b=state.b, t=t)
    A = p.A * min(t / drive_ramp, 1.0) if drive_ramp > 0.0 else p.A
    chi = (A / (2.0 * p.omega)) * math.cos(p.omega * t)
    if direction == "rotating_to_lab":
        chi = -chi
    cs, sn = math.cos(chi), math.sin(chi)
    return AmplitudePair(a=cs * state.a - 1j * sn * state.b,
                         b=cs * state.b - 1j * sn * state.a, t=t)


def transform_trajectory(traj: Trajectory, p: ModelParams,
                         direction: str = "lab_to_rotating",
                         drive_ramp: float = 0.0) -> Trajectory:
    """Apply the frame transform at every sample of a trajectory."""
    if p.A == 0.0:
        return Trajectory(t=traj.t.copy(), a=traj.a.copy(), b=traj.b.copy(),
                          dt=traj.dt, norm_drift=traj.norm_drift)
    A = p.A * np.minimum(traj.t / drive_ramp, 1.0) if drive_ramp > 0.0 else p.A
    chi = (A / (2.0 * p.omega)) * np.cos(p.omega * traj.t)
    if direction == "rotating_to_lab":
        chi = -chi
    cs, sn = np.cos(chi), np.sin(chi)
    if traj.a.ndim > 1:
        cs = cs.reshape((-1,) + (1,) * (traj.a.ndim - 1))
        sn = sn.reshape(cs.shape)
    return Trajectory(t=traj.t.copy(),
                      a=cs * traj.a - 1j * sn * traj.b,
                      b=cs * traj.b - 1j * sn * traj.a,
                      dt=traj.dt, norm_drift=traj.norm_drift)
