"""Scripted protocols: adiabatic Landau-Zener sweeps, suppression of the
nonlinear transition, deterministic symmetry-breaking trapping, and the
high-frequency validity scan.

All sweeps ramp gamma linearly. The transition probability is measured
against the instantaneous lowest mean-field state (the minimum-energy center
fixed point), not against diabatic populations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bessel import bessel_j0
from .dynamics import (AmplitudePair, GammaRamp, evolve_effective, evolve_lab,
                       evolve_rotating, natural_rate, transform_trajectory)
from .integrator import IntegratorConfig, Trajectory
from .errors import ConfigError
from .params import EffectiveParams, ModelParams, derive_effective
from .phase_space import FixedPoint, find_fixed_points

TWO_PI = 2.0 * math.pi


@dataclass
class SweepProtocol:
    gamma_start: float
    gamma_end: float
    rate: float                     # |d gamma / dt| > 0
    model: str = "effective"        # "effective" | "rotating" | "lab_driven"
    ramp: float | None = None       # drive ramp-on window; None -> 10 periods
    seed: int = 0

    def validate(self, p: ModelParams):
        if self.rate <= 0:
            raise ConfigError("sweep rate must be > 0")
        if self.model not in ("effective", "rotating", "lab_driven"):
            raise ConfigError(f"unknown sweep model {self.model!r}")
        if self.gamma_start == self.gamma_end:
            raise ConfigError("gamma_start and gamma_end must differ")
        if abs(self.gamma_start) < 5.0 * max(p.delta0, p.c):
            raise ConfigError(
                "|gamma_start| must be >= 5*max(delta0, c) so the initial "
                "ground state is well separated")

    @property
    def duration(self) -> float:
        return abs(self.gamma_end - self.gamma_start) / self.rate

    def drive_ramp_window(self, p: ModelParams) -> float:
        if self.ramp is not None:
            return self.ramp
        return 10.0 * p.drive_period if p.A != 0 else 0.0


@dataclass
class SweepResult:
    transition_probability: float
    final_state: AmplitudePair
    attractor: str                  # "D_R" | "D_L" | "none"
    trajectory: Trajectory
    flags: list[str] = field(default_factory=list)


def _gamma_scale(p: ModelParams) -> float:
    """Factor J0(A/omega) mapping the swept lab bias onto gamma_eff."""
    return bessel_j0(p.A / p.omega) if p.A != 0 else 1.0


def prepare_ground(eff: EffectiveParams, delta0: float) -> AmplitudePair:
    """Amplitudes of the lowest mean-field state (phi_a = 0 gauge)."""
    fps = find_fixed_points(eff.gamma_eff, delta0, eff.c_z, eff.c_y)
    centers = [fp for fp in fps if fp.stability == "center"]
    if not centers:
        raise RuntimeError("no stable (center) fixed point found")
    ground = min(centers, key=lambda fp: fp.energy)
    return AmplitudePair.from_phase_coords(ground.point.s, ground.point.phi)


def _stable_mirror_pair(fps: list[FixedPoint]):
    """The (D_L, D_R) centers off the phi in {0, pi} axis, if present."""
    off = [fp for fp in fps
           if fp.stability == "center"
           and min(fp.point.phi % math.pi, math.pi - fp.point.phi % math.pi) > 1e-6]
    left = [fp for fp in off if fp.point.phi < math.pi]
    right = [fp for fp in off if fp.point.phi > math.pi]
    if len(left) == 1 and len(right) == 1:
        return left[0], right[0]
    return None


def _phase_dist(s1, phi1, s2, phi2):
    dp = np.abs(phi1 - phi2) % TWO_PI
    dp = np.minimum(dp, TWO_PI - dp)
    return np.hypot(s1 - s2, dp)


def classify_attractor(s, phi, fps: list[FixedPoint], ratio: float = 2.0):
    """D_R / D_L / none for final coordinates (arrays allowed).

    "none" when no off-axis stable pair exists or the distance ratio to the
    two attractors is below `ratio` (ambiguous).
    """
    pair = _stable_mirror_pair(fps)
    s = np.asarray(s, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if pair is None:
        return np.full(s.shape, "none", dtype=object)
    dl, dr = pair
    dist_l = _phase_dist(s, phi, dl.point.s, dl.point.phi)
    dist_r = _phase_dist(s, phi, dr.point.s, dr.point.phi)
    out = np.full(s.shape, "none", dtype=object)
    out[dist_r * ratio <= dist_l] = "D_R"
    out[dist_l * ratio <= dist_r] = "D_L"
    return out


def transition_probability(a, b, ground: AmplitudePair):
    """1 - |<ground | state>|^2 (vectorized over trailing axes)."""
    ov = np.conj(ground.a) * a + np.conj(ground.b) * b
    return 1.0 - np.abs(ov) ** 2


def run_lz_sweep(proto: SweepProtocol, p: ModelParams,
                 cfg: IntegratorConfig | None = None) -> SweepResult:
    """One adiabatic sweep of gamma from gamma_start to gamma_end."""
    proto.validate(p)
    cfg = cfg or _default_sweep_cfg(p, proto)
    scale = _gamma_scale(p)
    eff0 = derive_effective(p.replace(gamma=proto.gamma_start))
    ground0 = prepare_ground(eff0, p.delta0)
    sign = 1.0 if proto.gamma_end > proto.gamma_start else -1.0
    t_final = proto.duration
    flags = []

    if proto.model == "effective":
        ramp = GammaRamp(scale * proto.gamma_start, sign * proto.rate * scale,
                         scale * proto.gamma_end)
        traj = evolve_effective(ground0, eff0, p.delta0, t_final, cfg,
                                gamma_ramp=ramp)
        fa, fb, ft = traj.final()
        rot_traj = traj
    else:
        ramp = GammaRamp(proto.gamma_start, sign * proto.rate,
                         proto.gamma_end)
        drive_ramp = proto.drive_ramp_window(p)
        evolve = evolve_lab if proto.model == "lab_driven" else evolve_rotating
        traj = evolve(ground0, p, t_final, cfg, gamma_ramp=ramp,
                      drive_ramp=drive_ramp)
        if proto.model == "lab_driven":
            rot_traj = transform_trajectory(traj, p, "lab_to_rotating",
                                            drive_ramp=drive_ramp)
        else:
            rot_traj = traj
        fa, fb, ft = rot_traj.final()

    eff1 = derive_effective(p.replace(gamma=proto.gamma_end))
    ground1 = prepare_ground(eff1, p.delta0)
    prob = float(transition_probability(fa, fb, ground1))

    s_f = abs(fb) ** 2 - abs(fa) ** 2
    if abs(s_f) > 1.0 - 1e-6:
        flags.append("pole_proximity")
    phi_f = (np.angle(fb) - np.angle(fa)) % TWO_PI
    fps_end = find_fixed_points(eff1.gamma_eff, p.delta0, eff1.c_z, eff1.c_y)
    attractor = str(classify_attractor(s_f, phi_f, fps_end)[()])

    final = AmplitudePair(a=fa, b=fb, t=ft)
    return SweepResult(transition_probability=prob, final_state=final,
                       attractor=attractor, trajectory=traj, flags=flags)


def _default_sweep_cfg(p: ModelParams, proto: SweepProtocol) -> IntegratorConfig:
    gmax = max(abs(proto.gamma_start), abs(proto.gamma_end))
    dt = TWO_PI / (150.0 * natural_rate(gmax, p.delta0, p.c))
    if proto.model in ("rotating", "lab_driven") and p.A != 0:
        dt = min(dt, p.drive_period / 50.0)
        if proto.model == "lab_driven":
            fast = 0.5 * (gmax + p.delta0 + p.c + p.A)
            dt = min(dt, TWO_PI / (300.0 * fast))
    return IntegratorConfig(dt=dt, norm_tol=1e-5, n_samples=400)


def trapping_experiment(proto: SweepProtocol, p: ModelParams,
                        ensemble_size: int, perturbation: float,
                        cfg: IntegratorConfig | None = None):
    """Ensemble of perturbed sweeps; returns the attractor histogram.

    Initial (s, phi) of each member is the ground state displaced by a
    seeded uniform perturbation of magnitude <= `perturbation` per
    coordinate. Only the effective model is supported for ensembles (the
    trapping mechanism lives in the averaged phase space).
    """
    proto.validate(p)
    if proto.model != "effective":
        raise ConfigError("trapping ensembles run in the effective model")
    cfg = cfg or _default_sweep_cfg(p, proto)
    scale = _gamma_scale(p)
    eff0 = derive_effective(p.replace(gamma=proto.gamma_start))
    fps0 = find_fixed_points(eff0.gamma_eff, p.delta0, eff0.c_z, eff0.c_y)
    centers = [fp for fp in fps0 if fp.stability == "center"]
    if not centers:
        raise RuntimeError("no stable fixed point at gamma_start")
    g0 = min(centers, key=lambda fp: fp.energy)

    rng = np.random.default_rng(proto.seed)
    ds = rng.uniform(-perturbation, perturbation, ensemble_size)
    dphi = rng.uniform(-perturbation, perturbation, ensemble_size)
    s0 = np.clip(g0.point.s + ds, -1.0 + 1e-12, 1.0 - 1e-12)
    phi0 = g0.point.phi + dphi
    a0 = np.sqrt(0.5 * (1.0 - s0)).astype(complex)
    b0 = np.sqrt(0.5 * (1.0 + s0)) * np.exp(1j * phi0)

    sign = 1.0 if proto.gamma_end > proto.gamma_start else -1.0
    ramp = GammaRamp(scale * proto.gamma_start, sign * proto.rate * scale,
                     scale * proto.gamma_end)
    state0 = AmplitudePair(a=a0, b=b0, t=0.0)
    traj = evolve_effective(state0, eff0, p.delta0, proto.duration, cfg,
                            gamma_ramp=ramp)
    fa, fb, _ = traj.final()
    s_f = np.abs(fb) ** 2 - np.abs(fa) ** 2
    phi_f = (np.angle(fb) - np.angle(fa)) % TWO_PI

    eff1 = derive_effective(p.replace(gamma=proto.gamma_end))
    fps1 = find_fixed_points(eff1.gamma_eff, p.delta0, eff1.c_z, eff1.c_y)
    labels = classify_attractor(s_f, phi_f, fps1)
    hist = {"D_R": int(np.sum(labels == "D_R")),
            "D_L": int(np.sum(labels == "D_L")),
            "none": int(np.sum(labels == "none"))}
    return {"histogram": hist, "labels": labels, "seed": proto.seed,
            "final_s": s_f, "final_phi": phi_f, "trajectory": traj}


def averaging_validity_report(p: ModelParams, omega_multipliers,
                              t_final: float = 250.0,
                              state0: AmplitudePair | None = None,
                              max_samples: int = 2000):
    """Stroboscopic rotating-vs-effective error for scaled drive frequencies.

    The ratio A/omega is held fixed while omega = m * max(delta0, c, |gamma|)
    runs over the multipliers; each row is (multiplier, omega, max population
    error at the stroboscopic sample times).
    """
    if p.A == 0 or p.omega <= 0:
        raise ConfigError("validity scan needs a driven base scenario (A > 0)")
    ratio = p.A / p.omega
    base = natural_rate(p.gamma, p.delta0, p.c)
    if state0 is None:
        state0 = AmplitudePair.from_phase_coords(0.2, 2.5)
    rows = []
    for m in omega_multipliers:
        omega = m * base
        pm = p.replace(A=ratio * omega, omega=omega)
        period = pm.drive_period
        n_per = max(1, int(t_final / period))
        stride = max(1, math.ceil(n_per / max_samples))
        n_samples = n_per // stride
        tf = n_samples * stride * period
        cfg = IntegratorConfig(n_samples=n_samples)
        eff = derive_effective(pm)
        tr = evolve_rotating(AmplitudePair(state0.a, state0.b), pm, tf, cfg)
        te = evolve_effective(AmplitudePair(state0.a, state0.b), eff,
                              pm.delta0, tf, cfg)
        err = float(np.max(np.abs(tr.pop_a - te.pop_a)))
        rows.append({"multiplier": float(m), "omega": omega, "max_error": err})
    return rows
