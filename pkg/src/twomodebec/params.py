"""Physical model parameters and their high-frequency effective counterparts."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .bessel import bessel_j0


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the driven two-mode Hamiltonian (hbar = 1).

    gamma  : energy bias between the modes
    delta0 : static inter-mode coupling
    c      : mean-field nonlinearity (restricted to c >= 0)
    A      : drive amplitude of the off-diagonal modulation A*sin(omega*t)
    omega  : drive angular frequency
    """

    gamma: float = 0.0
    delta0: float = 0.2
    c: float = 0.0
    A: float = 0.0
    omega: float = 0.0

    def __post_init__(self):
        for name in ("gamma", "delta0", "c", "A", "omega"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.delta0 < 0:
            raise ValueError("delta0 must be >= 0")
        if self.c < 0:
            raise ValueError("c must be >= 0 (only the c >= 0 case is supported)")
        if self.A < 0:
            raise ValueError("A must be >= 0")
        if self.A != 0 and self.omega <= 0:
            raise ValueError("omega must be > 0 when the drive is on (A != 0)")

    @property
    def drive_period(self) -> float:
        if self.omega <= 0:
            raise ValueError("drive period undefined for omega <= 0")
        return 2.0 * math.pi / self.omega

    def replace(self, **kw) -> "ModelParams":
        d = dict(gamma=self.gamma, delta0=self.delta0, c=self.c, A=self.A,
                 omega=self.omega)
        d.update(kw)
        return ModelParams(**d)


@dataclass(frozen=True)
class EffectiveParams:
    """Averaged-model parameters: bias gamma_eff and the split nonlinearities.

    c_z + c_y = c holds exactly by construction.
    """

    gamma_eff: float
    c_z: float
    c_y: float

    @property
    def c_total(self) -> float:
        return self.c_z + self.c_y


def derive_effective(p: ModelParams) -> EffectiveParams:
    """Effective parameters of the averaged model.

    gamma_eff = gamma * J0(A/omega)
    c_z = c * (1 + J0(2A/omega)) / 2
    c_y = c * (1 - J0(2A/omega)) / 2
    """
    if p.A == 0:
        return EffectiveParams(gamma_eff=p.gamma, c_z=p.c, c_y=0.0)
    if p.omega <= 0:
        raise ValueError("omega must be > 0 when A != 0")
    ratio = p.A / p.omega
    j1 = bessel_j0(ratio)
    j2 = bessel_j0(2.0 * ratio)
    half = 0.5 * p.c
    return EffectiveParams(
        gamma_eff=p.gamma * j1,
        c_z=half + half * j2,
        c_y=half - half * j2,
    )
