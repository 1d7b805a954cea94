"""Command-line front end.

Subcommands: spectrum | portrait | evolve | lz | trapping | validity | quantum
Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 I/O error.

Each command writes its CSV artifacts plus a `meta` sidecar into --out, so a
run can be reproduced from the sidecar alone.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import __version__
from .config import RunConfig, apply_overrides, load_config
from .dynamics import (AmplitudePair, evolve_effective, evolve_lab,
                       evolve_rotating)
from .errors import ConfigError, IntegrationError
from .experiments import (SweepProtocol, averaging_validity_report,
                          run_lz_sweep, trapping_experiment)
from .integrator import IntegratorConfig
from .output import (FIXED_POINT_HEADER, PORTRAIT_HEADER, QUANTUM_HEADER,
                     SPECTRUM_HEADER, write_csv, write_meta,
                     write_trajectory_csv)
from .params import EffectiveParams, derive_effective
from .phase_space import (continue_in_gamma, find_fixed_points, hc_value,
                          separatrix_curve)
from .quantum import FockSpace, build_hamiltonian, diagonalize

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _integrator_cfg(cfg: RunConfig) -> IntegratorConfig:
    sec = cfg.sections.get("integrator", {})
    kw = {}
    for key in ("dt", "norm_tol", "n_samples", "periods_per_step_min",
                "steps_per_natural_period"):
        if key in sec:
            kw[key] = sec[key]
    icfg = IntegratorConfig(**kw)
    icfg.validate()
    return icfg


def _gamma_grid(cfg: RunConfig) -> np.ndarray:
    lo = cfg.get("grid", "gamma_min")
    hi = cfg.get("grid", "gamma_max")
    n = cfg.get("grid", "n")
    if n < 2 or hi <= lo:
        raise ConfigError("grid needs gamma_max > gamma_min and n >= 2")
    return np.linspace(lo, hi, n)


def _effective(cfg: RunConfig):
    p = cfg.model_params()
    return p, derive_effective(p)


def _write_meta(outdir: str, cfg: RunConfig, command: str, seed: int,
                extra: dict | None = None):
    entries = {"command": command, "version": __version__, "seed": seed,
               "config": cfg.flat()}
    if extra:
        entries.update(extra)
    write_meta(os.path.join(outdir, "meta"), entries)


def cmd_spectrum(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p, eff = _effective(cfg)
    grid = _gamma_grid(cfg)
    scale = eff.gamma_eff / p.gamma if p.gamma != 0 else (
        derive_effective(p.replace(gamma=1.0)).gamma_eff)
    branches = continue_in_gamma(p.delta0, eff.c_z, eff.c_y,
                                 [g * scale for g in grid])
    rows = []
    for br in branches:
        for g_eff, fp in zip(br.gammas, br.points):
            rows.append((g_eff / scale if scale != 0 else 0.0, br.branch_id,
                         fp.energy, fp.point.s, fp.point.phi, fp.stability))
    write_csv(os.path.join(outdir, "spectrum.csv"), SPECTRUM_HEADER, rows)
    info = {"n_branches": len(branches)}

    n_part = cfg.get("quantum", "n_particles")
    if n_part:
        qrows = []
        space = FockSpace(n_part)
        for g in grid:
            e = EffectiveParams(gamma_eff=g * scale, c_z=eff.c_z, c_y=eff.c_y)
            res = diagonalize(build_hamiltonian(e, p.delta0, space))
            for i, ev in enumerate(res.eigenvalues):
                qrows.append((g, i, ev, ev / n_part, n_part))
        write_csv(os.path.join(outdir, "quantum_spectrum.csv"),
                  QUANTUM_HEADER, qrows)
        info["quantum_rows"] = len(qrows)
    return info


def cmd_quantum(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p, eff = _effective(cfg)
    n_part = cfg.get("quantum", "n_particles")
    if not n_part:
        raise ConfigError("quantum command needs [quantum] n_particles >= 1")
    grid = _gamma_grid(cfg)
    scale = derive_effective(p.replace(gamma=1.0)).gamma_eff
    space = FockSpace(n_part)
    rows = []
    for g in grid:
        e = EffectiveParams(gamma_eff=g * scale, c_z=eff.c_z, c_y=eff.c_y)
        res = diagonalize(build_hamiltonian(e, p.delta0, space))
        for i, ev in enumerate(res.eigenvalues):
            rows.append((g, i, ev, ev / n_part, n_part))
    write_csv(os.path.join(outdir, "quantum_spectrum.csv"), QUANTUM_HEADER,
              rows)
    return {"rows": len(rows)}


def cmd_portrait(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p, eff = _effective(cfg)
    gamma = cfg.get("portrait", "gamma")
    scale = derive_effective(p.replace(gamma=1.0)).gamma_eff
    g_eff = gamma * scale
    grid_n = cfg.get("portrait", "grid")

    fps = find_fixed_points(g_eff, p.delta0, eff.c_z, eff.c_y, grid=grid_n)
    write_csv(os.path.join(outdir, "fixed_points.csv"), FIXED_POINT_HEADER,
              [(fp.point.s, fp.point.phi, fp.energy, fp.stability,
                fp.hessian_eigs[0], fp.hessian_eigs[1]) for fp in fps])

    saddles = [fp for fp in fps if fp.stability == "saddle"]
    sep_rows = []
    for i, saddle in enumerate(saddles):
        sep = separatrix_curve(saddle, g_eff, p.delta0, eff.c_z, eff.c_y,
                               other_saddles=saddles)
        kind = "separatrix_partial" if sep.partial else "separatrix"
        for s, phi in zip(sep.s, sep.phi):
            sep_rows.append((i, sep.energy, kind, s, phi))
    write_csv(os.path.join(outdir, "separatrix.csv"), PORTRAIT_HEADER,
              sep_rows)

    # energy contours over the (s, phi) plane
    from contourpy import contour_generator

    ss = np.linspace(-1.0 + 1e-9, 1.0 - 1e-9, 401)
    pp = np.linspace(0.0, 2.0 * math.pi, 401)
    S, P = np.meshgrid(ss, pp, indexing="ij")
    H = hc_value(S, P, g_eff, p.delta0, eff.c_z, eff.c_y)
    gen = contour_generator(x=P, y=S, z=H)
    levels = np.linspace(float(np.min(H)), float(np.max(H)),
                         cfg.get("portrait", "n_contours") + 2)[1:-1]
    rows = []
    curve_id = 0
    for lev in levels:
        for line in gen.lines(float(lev)):
            for phi, s in line:
                rows.append((curve_id, float(lev), "contour", s, phi))
            curve_id += 1
    write_csv(os.path.join(outdir, "portrait.csv"), PORTRAIT_HEADER, rows)
    return {"n_fixed_points": len(fps), "n_saddles": len(saddles)}


def cmd_evolve(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p, eff = _effective(cfg)
    icfg = _integrator_cfg(cfg)
    model = cfg.get("evolve", "model")
    t_final = cfg.get("evolve", "t_final")
    state0 = AmplitudePair.from_phase_coords(cfg.get("evolve", "s0"),
                                             cfg.get("evolve", "phi0"))
    if model == "lab":
        traj = evolve_lab(state0, p, t_final, icfg)
    elif model == "rotating":
        traj = evolve_rotating(state0, p, t_final, icfg)
    elif model == "effective":
        traj = evolve_effective(state0, eff, p.delta0, t_final, icfg)
    else:
        raise ConfigError(f"unknown evolve model {model!r}")
    write_trajectory_csv(os.path.join(outdir, "trajectory.csv"), traj)
    return {"model": model, "norm_drift": traj.norm_drift, "dt": traj.dt}


def _sweep_protocol(cfg: RunConfig, seed: int) -> SweepProtocol:
    sec = cfg.sections.get("sweep", {})
    for key in ("gamma_start", "gamma_end", "rate"):
        if key not in sec:
            raise ConfigError(f"missing required config value [sweep] {key}")
    return SweepProtocol(gamma_start=sec["gamma_start"],
                         gamma_end=sec["gamma_end"], rate=sec["rate"],
                         model=sec.get("model", "effective"),
                         ramp=sec.get("ramp"), seed=seed)


def cmd_lz(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p = cfg.model_params()
    proto = _sweep_protocol(cfg, seed)
    icfg = _integrator_cfg(cfg) if "integrator" in cfg.sections else None
    res = run_lz_sweep(proto, p, icfg)
    write_trajectory_csv(os.path.join(outdir, "trajectory.csv"),
                         res.trajectory)
    write_csv(os.path.join(outdir, "report.csv"),
              ["transition_probability", "attractor", "final_s", "final_phi",
               "flags"],
              [(res.transition_probability, res.attractor,
                res.final_state.s, res.final_state.phi,
                ";".join(res.flags))])
    return {"transition_probability": res.transition_probability,
            "attractor": res.attractor}


def cmd_trapping(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p = cfg.model_params()
    proto = _sweep_protocol(cfg, seed)
    icfg = _integrator_cfg(cfg) if "integrator" in cfg.sections else None
    out = trapping_experiment(proto, p,
                              cfg.get("trapping", "ensemble_size"),
                              cfg.get("trapping", "perturbation"), icfg)
    hist = out["histogram"]
    write_csv(os.path.join(outdir, "report.csv"),
              ["member", "attractor", "final_s", "final_phi"],
              [(i, out["labels"][i], out["final_s"][i], out["final_phi"][i])
               for i in range(len(out["labels"]))])
    line = f"D_R,{hist['D_R']} D_L,{hist['D_L']} none,{hist['none']}"
    with open(os.path.join(outdir, "histogram.txt"), "w") as fh:
        fh.write(line + "\n")
    print(line)
    return {"histogram": hist}


def cmd_validity(cfg: RunConfig, outdir: str, seed: int) -> dict:
    p = cfg.model_params()
    mults = [float(m) for m in
             str(cfg.get("validity", "multipliers")).split(",") if m.strip()]
    rows = averaging_validity_report(p, mults,
                                     t_final=cfg.get("validity", "t_final"))
    write_csv(os.path.join(outdir, "validity.csv"),
              ["multiplier", "omega", "max_error"],
              [(r["multiplier"], r["omega"], r["max_error"]) for r in rows])
    return {"errors": [r["max_error"] for r in rows]}


_COMMANDS = {
    "spectrum": cmd_spectrum,
    "portrait": cmd_portrait,
    "evolve": cmd_evolve,
    "lz": cmd_lz,
    "trapping": cmd_trapping,
    "validity": cmd_validity,
    "quantum": cmd_quantum,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="twomodebec",
        description="Driven two-mode BEC: spectra, phase portraits, sweeps.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", default=None, help="INI config file")
        sp.add_argument("--out", default=".", help="output directory")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--threads", type=int, default=None)
        sp.add_argument("--set", action="append", default=[],
                        metavar="SECTION.KEY=VALUE",
                        help="override a config value (repeatable)")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        apply_overrides(cfg, args.set)
        seed = args.seed if args.seed is not None else cfg.get("run", "seed")
        # validate the physical parameters before any computation
        cfg.model_params()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    threads = args.threads if args.threads is not None else cfg.get(
        "run", "threads")
    if threads and threads > 0:
        for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS",
                    "MKL_NUM_THREADS"):
            os.environ.setdefault(var, str(threads))

    try:
        os.makedirs(args.out, exist_ok=True)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO

    try:
        info = _COMMANDS[args.command](cfg, args.out, seed)
        _write_meta(args.out, cfg, args.command, seed, {"result": info})
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
