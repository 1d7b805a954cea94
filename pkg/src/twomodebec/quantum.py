"""Exact N-boson treatment of the effective two-mode model.

Fock basis |k> with k bosons in mode a (k = 0..N, dimension N+1). The
Hamiltonian

    H_Q = gamma*(na - nb)/2 + delta0*(a^dag b + a b^dag)/2
          - (c_z/N)*((na - nb)/2)^2 + (c_y/N)*((a^dag b - b^dag a)/2)^2

is real symmetric in this basis; eigenvalues come from an in-repo cyclic
Jacobi rotation solver (dimensions here are tiny, portability wins).
Per-particle energies (E/N) are the quantities comparable with the
mean-field levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import EffectiveParams


@dataclass(frozen=True)
class FockSpace:
    """Two-mode Fock space at fixed particle number N; dimension N+1."""

    n_particles: int

    def __post_init__(self):
        if self.n_particles < 1:
            raise ValueError("need at least one particle")

    @property
    def dimension(self) -> int:
        return self.n_particles + 1


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray      # sorted ascending
    n_particles: int

    @property
    def per_particle(self) -> np.ndarray:
        return self.eigenvalues / self.n_particles


def build_hamiltonian(eff: EffectiveParams, delta0: float,
                      space: FockSpace) -> np.ndarray:
    """Real symmetric (N+1)x(N+1) matrix of the N-boson Hamiltonian."""
    n = space.n_particles
    k = np.arange(n + 1, dtype=float)
    m = k - 0.5 * n                      # (na - nb)/2 eigenvalue

    h = np.diag(eff.gamma_eff * m - (eff.c_z / n) * m * m)

    # hopping a^dag b: |k> -> sqrt((k+1)(n-k)) |k+1>
    hop = np.sqrt((k[:-1] + 1.0) * (n - k[:-1]))
    h += 0.5 * delta0 * (np.diag(hop, -1) + np.diag(hop, 1))

    # (a^dag b - b^dag a) is real antisymmetric; its square is symmetric NSD
    kmat = np.diag(hop, -1) - np.diag(hop, 1)
    h += (eff.c_y / (4.0 * n)) * (kmat @ kmat)
    return h


def jacobi_eigenvalues(mat: np.ndarray, tol: float = 1e-14,
                       max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.

    Iterates row-cyclic sweeps until the off-diagonal Frobenius norm falls
    below tol * ||M||. Returns eigenvalues sorted ascending.
    """
    a = np.array(mat, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if np.max(np.abs(a - a.T)) > 1e-12 * max(1.0, np.max(np.abs(a))):
        raise ValueError("matrix must be symmetric")
    a = 0.5 * (a + a.T)
    scale = np.linalg.norm(a)
    if scale == 0.0 or n == 1:
        return np.sort(np.diag(a))

    for _ in range(max_sweeps):
        off_elems = a - np.diag(np.diag(a))
        off = float(np.linalg.norm(off_elems))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-18 * scale:
                    continue
                # classic 2x2 rotation annihilating a[p,q]
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                t = math.copysign(1.0, theta) / (abs(theta)
                                                 + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(np.diag(a))


def diagonalize(mat: np.ndarray) -> SpectrumResult:
    """Full spectrum of a symmetric (N+1)x(N+1) two-mode Hamiltonian."""
    evals = jacobi_eigenvalues(mat)
    return SpectrumResult(eigenvalues=evals, n_particles=mat.shape[0] - 1)


def quantum_spectrum_scan(eff_of_gamma, delta0: float, gamma_grid,
                          n_particles: int):
    """Spectra over a gamma grid.

    eff_of_gamma: callable gamma -> EffectiveParams (lets callers keep
    c_z, c_y fixed while gamma_eff tracks the scan).
    Returns list of (gamma, SpectrumResult).
    """
    space = FockSpace(n_particles)
    out = []
    for g in gamma_grid:
        eff = eff_of_gamma(g)
        if not isinstance(eff, EffectiveParams):
            raise TypeError("eff_of_gamma must return EffectiveParams")
        res = diagonalize(build_hamiltonian(eff, delta0, space))
        out.append((float(g), res))
    return out
