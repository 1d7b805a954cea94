"""Fixed-step classical RK4 on complex amplitude pairs.

The right-hand side is a callable f(a, b, t) -> (da, db) operating either on
python complex scalars (single trajectory) or numpy complex arrays (ensemble);
all arithmetic below is polymorphic over both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, IntegrationError


@dataclass
class IntegratorConfig:
    dt: float | None = None          # None: derived from the time scales
    periods_per_step_min: int = 50   # min subdivision of one drive period
    steps_per_natural_period: int = 600
    norm_tol: float = 1e-8
    n_samples: int = 1000

    def validate(self):
        if self.dt is not None and self.dt <= 0:
            raise ConfigError("dt must be > 0")
        if self.periods_per_step_min < 1:
            raise ConfigError("periods_per_step_min must be >= 1")
        if self.n_samples < 1:
            raise ConfigError("n_samples must be >= 1")


@dataclass
class Trajectory:
    """Sampled amplitude trajectory; arrays indexed by sample (then ensemble)."""

    t: np.ndarray
    a: np.ndarray
    b: np.ndarray
    dt: float = 0.0
    norm_drift: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def pop_a(self) -> np.ndarray:
        return np.abs(self.a) ** 2

    @property
    def pop_b(self) -> np.ndarray:
        return np.abs(self.b) ** 2

    @property
    def s(self) -> np.ndarray:
        return self.pop_b - self.pop_a

    @property
    def phi(self) -> np.ndarray:
        return np.mod(np.angle(self.b) - np.angle(self.a), 2.0 * np.pi)

    def final(self):
        return self.a[-1], self.b[-1], float(self.t[-1])


def rk4_evolve(rhs, a0, b0, t0: float, t_final: float, dt: float,
               n_samples: int, norm_tol: float) -> Trajectory:
    """Integrate with fixed-step RK4, sampling n_samples+1 points incl. t0.

    Raises IntegrationError when the norm drifts by more than 10*norm_tol.
    No renormalization is applied at any point.
    """
    span = t_final - t0
    if span <= 0:
        raise ConfigError("t_final must exceed t0")
    sample_dt = span / n_samples
    steps_per_sample = max(1, math.ceil(sample_dt / dt - 1e-12))
    h = sample_dt / steps_per_sample
    h2 = 0.5 * h
    h6 = h / 6.0

    scalar = np.isscalar(a0) or np.ndim(a0) == 0
    if scalar:
        a, b = complex(a0), complex(b0)
    else:
        a = np.array(a0, dtype=complex)
        b = np.array(b0, dtype=complex)

    ts = np.empty(n_samples + 1)
    if scalar:
        aa = np.empty(n_samples + 1, dtype=complex)
        bb = np.empty(n_samples + 1, dtype=complex)
    else:
        aa = np.empty((n_samples + 1,) + a.shape, dtype=complex)
        bb = np.empty((n_samples + 1,) + a.shape, dtype=complex)
    ts[0], aa[0], bb[0] = t0, a, b

    t = t0
    for i in range(1, n_samples + 1):
        for _ in range(steps_per_sample):
            k1a, k1b = rhs(a, b, t)
            k2a, k2b = rhs(a + h2 * k1a, b + h2 * k1b, t + h2)
            k3a, k3b = rhs(a + h2 * k2a, b + h2 * k2b, t + h2)
            k4a, k4b = rhs(a + h * k3a, b + h * k3b, t + h)
            a = a + h6 * (k1a + 2.0 * (k2a + k3a) + k4a)
            b = b + h6 * (k1b + 2.0 * (k2b + k3b) + k4b)
            t += h
        # re-anchor t to the exact grid to avoid accumulation of rounding
        t = t0 + i * sample_dt
        ts[i], aa[i], bb[i] = t, a, b

    norms = np.abs(aa) ** 2 + np.abs(bb) ** 2
    drift = float(np.max(np.abs(norms - 1.0)))
    if drift > 10.0 * norm_tol:
        raise IntegrationError(
            f"norm drift {drift:.3e} exceeds 10 x norm_tol = {10 * norm_tol:.3e}"
        )
    return Trajectory(t=ts, a=aa, b=bb, dt=h, norm_drift=drift)
