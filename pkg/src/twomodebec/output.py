"""CSV artifacts and the run-metadata sidecar.

All floats are written with 17 significant digits and '.' decimals so that
re-runs diff cleanly; every file starts with a fixed header row.
"""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass

import numpy as np

from .integrator import Trajectory

_FLOAT_FMT = "%.17g"


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return _FLOAT_FMT % v
    return str(v)


def write_csv(path: str, header: list[str], rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


TRAJECTORY_HEADER = ["t", "re_a", "im_a", "re_b", "im_b", "pop_a", "pop_b",
                     "s", "phi"]


def trajectory_rows(traj: Trajectory):
    pa, pb = traj.pop_a, traj.pop_b
    s, phi = traj.s, traj.phi
    for i, t in enumerate(traj.t):
        a, b = traj.a[i], traj.b[i]
        yield (t, a.real, a.imag, b.real, b.imag, pa[i], pb[i], s[i], phi[i])


def write_trajectory_csv(path: str, traj: Trajectory):
    write_csv(path, TRAJECTORY_HEADER, trajectory_rows(traj))


SPECTRUM_HEADER = ["gamma", "branch_id", "energy", "s", "phi", "stability"]
QUANTUM_HEADER = ["gamma", "level_index", "energy", "energy_per_particle",
                  "n_particles"]
FIXED_POINT_HEADER = ["s", "phi", "energy", "stability", "hess_eig_1",
                      "hess_eig_2"]
PORTRAIT_HEADER = ["curve_id", "energy", "kind", "s", "phi"]


def write_meta(path: str, entries: dict):
    """Plain key = value sidecar, nested dicts as dotted keys."""
    def flatten(prefix, d, out):
        for k, v in d.items():
            key = f"{prefix}.{k}" if prefix else str(k)
            if isinstance(v, dict):
                flatten(key, v, out)
            else:
                out.append((key, v))

    flat: list = []
    flatten("", entries, flat)
    with open(path, "w") as fh:
        for k, v in flat:
            fh.write(f"{k} = {_fmt(v)}\n")


def read_csv_columns(path: str) -> dict[str, list[str]]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r)
        cols: dict[str, list[str]] = {h: [] for h in header}
        for row in r:
            for h, v in zip(header, row):
                cols[h].append(v)
    return cols
