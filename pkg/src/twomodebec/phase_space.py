"""Classical phase-space picture of the averaged model.

Canonical coordinates: population imbalance s = |b|^2 - |a|^2 and relative
phase phi = phi_b - phi_a. The classical Hamiltonian is

    H_c = (1/2) [ -gamma_eff*s - (c_z/2)*s^2
                  + delta0*sqrt(1-s^2)*cos(phi)
                  - (c_y/2)*(1-s^2)*sin(phi)^2 ]

with the flow convention ds/dt = +2 dH_c/dphi, dphi/dt = -2 dH_c/ds (fixed by
dphi/dt = gamma_eff in the free limit). Fixed points of this flow are the
nonlinear stationary states of the averaged model; their H_c values define the
mean-field level energies.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
S_LIMIT = 1.0 - 1e-9  # root finding / flow never touches the |s| = 1 poles

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhasePoint:
    s: float
    phi: float

    def __post_init__(self):
        if not -1.0 <= self.s <= 1.0:
            raise ValueError(f"s = {self.s} outside [-1, 1]")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class FixedPoint:
    point: PhasePoint
    energy: float
    stability: str                       # "center" | "saddle" | "degenerate"
    hessian_eigs: tuple[float, float]


@dataclass(frozen=True)
class Branch:
    """A fixed-point branch tracked along a gamma grid."""

    branch_id: int
    gammas: list[float] = field(default_factory=list)
    points: list[FixedPoint] = field(default_factory=list)

    @property
    def gamma_birth(self) -> float:
        return self.gammas[0]

    @property
    def gamma_death(self) -> float:
        return self.gammas[-1]


# ---------------------------------------------------------------------------
# H_c and derivatives (all accept scalars or numpy arrays)


def hc_value(s, phi, gamma_eff: float, delta0: float, c_z: float, c_y: float):
    sq = np.sqrt(1.0 - s * s) if isinstance(s, np.ndarray) else math.sqrt(1.0 - s * s)
    sinp = np.sin(phi)
    return 0.5 * (-gamma_eff * s - 0.5 * c_z * s * s
                  + delta0 * sq * np.cos(phi)
                  - 0.5 * c_y * (1.0 - s * s) * sinp * sinp)


def hc_gradient(s, phi, gamma_eff, delta0, c_z, c_y):
    """(dH_c/ds, dH_c/dphi); diverges at |s| = 1."""
    one = 1.0 - s * s
    sq = np.sqrt(one)
    sinp, cosp = np.sin(phi), np.cos(phi)
    hs = 0.5 * (-gamma_eff - c_z * s - delta0 * s * cosp / sq
                + c_y * s * sinp * sinp)
    hp = 0.5 * (-delta0 * sq * sinp - c_y * one * sinp * cosp)
    return hs, hp


def hc_hessian(s, phi, gamma_eff, delta0, c_z, c_y):
    """Symmetric 2x2 second-derivative matrix entries (Hss, Hsp, Hpp)."""
    one = 1.0 - s * s
    sq = np.sqrt(one)
    sinp, cosp = np.sin(phi), np.cos(phi)
    hss = 0.5 * (-c_z - delta0 * cosp / (sq * one) + c_y * sinp * sinp)
    hsp = 0.5 * (delta0 * s * sinp / sq + 2.0 * c_y * s * sinp * cosp)
    hpp = 0.5 * (-delta0 * sq * cosp - c_y * one * (cosp * cosp - sinp * sinp))
    return hss, hsp, hpp


def hamilton_rhs(pt: PhasePoint | tuple, gamma_eff: float, delta0: float,
                 c_z: float, c_y: float):
    """Hamiltonian flow (ds/dt, dphi/dt); domain error at the |s| = 1 poles."""
    s, phi = (pt.s, pt.phi) if isinstance(pt, PhasePoint) else pt
    if abs(s) >= 1.0:
        raise ValueError("hamilton_rhs has a pole at |s| = 1")
    hs, hp = hc_gradient(s, phi, gamma_eff, delta0, c_z, c_y)
    return 2.0 * hp, -2.0 * hs


def flow_rk4(s: float, phi: float, gamma_eff: float, delta0: float,
             c_z: float, c_y: float, dt: float, n_steps: int,
             record_every: int = 1):
    """Fixed-step RK4 on the (s, phi) flow; returns recorded (s, phi) arrays."""
    out_s, out_p = [s], [phi]

    def f(ss, pp):
        if abs(ss) >= 1.0:
            raise ValueError("flow reached the |s| = 1 pole")
        hs, hp = hc_gradient(ss, pp, gamma_eff, delta0, c_z, c_y)
        return 2.0 * hp, -2.0 * hs

    h2, h6 = 0.5 * dt, dt / 6.0
    for i in range(1, n_steps + 1):
        k1s, k1p = f(s, phi)
        k2s, k2p = f(s + h2 * k1s, phi + h2 * k1p)
        k3s, k3p = f(s + h2 * k2s, phi + h2 * k2p)
        k4s, k4p = f(s + dt * k3s, phi + dt * k3p)
        s += h6 * (k1s + 2.0 * (k2s + k3s) + k4s)
        phi += h6 * (k1p + 2.0 * (k2p + k3p) + k4p)
        if i % record_every == 0:
            out_s.append(s)
            out_p.append(phi)
    return np.array(out_s), np.array(out_p)


# ---------------------------------------------------------------------------
# fixed points


def classify_stability(s: float, phi: float, gamma_eff: float, delta0: float,
                       c_z: float, c_y: float,
                       degenerate_tol: float = 1e-9):
    """Stability tag and Hessian eigenvalues at a stationary point."""
    hss, hsp, hpp = hc_hessian(s, phi, gamma_eff, delta0, c_z, c_y)
    half_tr = 0.5 * (hss + hpp)
    disc = math.sqrt(0.25 * (hss - hpp) ** 2 + hsp * hsp)
    eigs = (half_tr - disc, half_tr + disc)
    if min(abs(e) for e in eigs) < degenerate_tol:
        tag = "degenerate"
    elif eigs[0] * eigs[1] > 0:
        tag = "center"
    else:
        tag = "saddle"
    return tag, eigs


def _newton_refine(s, phi, gamma_eff, delta0, c_z, c_y,
                   grad_tol=1e-13, max_iter=80):
    """Damped Newton iteration on grad(H_c) = 0; returns None on failure."""
    def gn2(ss, pp):
        hs, hp = hc_gradient(ss, pp, gamma_eff, delta0, c_z, c_y)
        return hs * hs + hp * hp

    g2 = gn2(s, phi)
    for _ in range(max_iter):
        hs, hp = hc_gradient(s, phi, gamma_eff, delta0, c_z, c_y)
        if hs * hs + hp * hp < grad_tol * grad_tol:
            return s, phi
        hss, hsp, hpp = hc_hessian(s, phi, gamma_eff, delta0, c_z, c_y)
        det = hss * hpp - hsp * hsp
        if abs(det) < 1e-300:
            return None
        ds = -(hpp * hs - hsp * hp) / det
        dp = -(hss * hp - hsp * hs) / det
        step = 1.0
        for _ in range(40):
            s_new = min(max(s + step * ds, -S_LIMIT), S_LIMIT)
            p_new = (phi + step * dp) % TWO_PI
            g2_new = gn2(s_new, p_new)
            if g2_new < g2 or g2_new < grad_tol * grad_tol:
                s, phi, g2 = s_new, p_new, g2_new
                break
            step *= 0.5
        else:
            return None
    hs, hp = hc_gradient(s, phi, gamma_eff, delta0, c_z, c_y)
    if hs * hs + hp * hp < grad_tol * grad_tol:
        return s, phi
    return None


def _periodic_dist(p1, p2):
    ds = p1[0] - p2[0]
    dp = abs(p1[1] - p2[1]) % TWO_PI
    dp = min(dp, TWO_PI - dp)
    return math.hypot(ds, dp)


def find_fixed_points(gamma_eff: float, delta0: float, c_z: float, c_y: float,
                      grid: int = 400, merge_tol: float = 1e-6,
                      grad_tol: float = 1e-12) -> list[FixedPoint]:
    """All stationary points of H_c, sorted by energy.

    Grid-seeded (local minima of |grad H_c|^2 over a grid x grid scan of
    (s, phi)) and Newton-refined; duplicates merged with a periodic metric.
    """
    ss = np.linspace(-S_LIMIT, S_LIMIT, grid)
    pp = np.linspace(0.0, TWO_PI, grid, endpoint=False)
    S, P = np.meshgrid(ss, pp, indexing="ij")
    hs, hp = hc_gradient(S, P, gamma_eff, delta0, c_z, c_y)
    g2 = hs * hs + hp * hp
    # local minima over the 3x3 neighborhood, periodic in phi only
    gpad = np.pad(g2, ((1, 1), (0, 0)), mode="edge")
    gpad = np.pad(gpad, ((0, 0), (1, 1)), mode="wrap")
    neigh = np.ones_like(g2, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            neigh &= g2 <= gpad[1 + di:1 + di + grid, 1 + dj:1 + dj + grid]
    seeds = list(zip(S[neigh].tolist(), P[neigh].tolist()))

    found: list[tuple[float, float]] = []
    for s0, p0 in seeds:
        res = _newton_refine(s0, p0, gamma_eff, delta0, c_z, c_y,
                             grad_tol=grad_tol)
        if res is None:
            logger.debug("Newton did not converge from seed (%g, %g)", s0, p0)
            continue
        if all(_periodic_dist(res, q) > merge_tol for q in found):
            found.append(res)

    fps = []
    for s, phi in found:
        tag, eigs = classify_stability(s, phi, gamma_eff, delta0, c_z, c_y)
        fps.append(FixedPoint(point=PhasePoint(s=s, phi=phi),
                              energy=float(hc_value(s, phi, gamma_eff, delta0,
                                                    c_z, c_y)),
                              stability=tag, hessian_eigs=eigs))
    fps.sort(key=lambda f: f.energy)
    return fps


# ---------------------------------------------------------------------------
# separatrix


@dataclass
class SeparatrixCurve:
    """Level-set polyline(s) through a saddle; partial=True if budget hit."""

    energy: float
    s: np.ndarray
    phi: np.ndarray
    partial: bool = False


def separatrix_curve(saddle: FixedPoint, gamma_eff: float, delta0: float,
                     c_z: float, c_y: float, displacement: float = 1e-6,
                     dt: float = 2e-3, max_points: int = 40_000,
                     other_saddles: list[FixedPoint] | None = None) -> SeparatrixCurve:
    """Trace the H_c level set through a saddle.

    Trajectories are seeded +-displacement along the saddle eigendirections of
    the flow Jacobian: the expanding pair integrated forward and the
    contracting pair backward, so the four arcs of the separatrix are covered.
    Each arc ends when it comes back near a saddle of the same energy (the
    seed itself or, for heteroclinic connections, one passed via
    other_saddles) or when the step budget runs out (-> partial flag).
    """
    if saddle.stability != "saddle":
        raise ValueError("separatrix_curve needs a saddle fixed point")
    s0, p0 = saddle.point.s, saddle.point.phi
    hss, hsp, hpp = hc_hessian(s0, p0, gamma_eff, delta0, c_z, c_y)
    # flow Jacobian [[2*Hps, 2*Hpp], [-2*Hss, -2*Hsp]]
    jac = np.array([[2.0 * hsp, 2.0 * hpp], [-2.0 * hss, -2.0 * hsp]])
    evals, evecs = np.linalg.eig(jac)
    order = np.argsort(evals.real)
    v_stab = evecs[:, order[0]].real
    v_unst = evecs[:, order[-1]].real
    v_stab /= math.hypot(*v_stab)
    v_unst /= math.hypot(*v_unst)

    targets = [(s0, p0)]
    for fp in other_saddles or []:
        if fp.stability == "saddle" and abs(fp.energy - saddle.energy) < 1e-9:
            tgt = (fp.point.s, fp.point.phi)
            if _periodic_dist(tgt, (s0, p0)) > 1e-9:
                targets.append(tgt)

    segs_s, segs_p = [], []
    partial = False
    record_every = 10
    for vec, direction in ((v_unst, 1.0), (v_stab, -1.0)):
        for sign in (1.0, -1.0):
            s = s0 + sign * displacement * vec[0]
            phi = p0 + sign * displacement * vec[1]
            step = direction * dt
            seg_s, seg_p = [s], [phi]
            escaped = False
            for _ in range(max_points):
                ss, pp2 = flow_rk4(s, phi, gamma_eff, delta0, c_z, c_y,
                                   step, record_every)
                s, phi = float(ss[-1]), float(pp2[-1])
                seg_s.append(s)
                seg_p.append(phi)
                d = min(_periodic_dist((s, phi % TWO_PI), tgt)
                        for tgt in targets)
                if escaped and d < 1e-3:
                    break
                if d > 1e-2:
                    escaped = True
            else:
                partial = True
                logger.warning("separatrix tracing hit the step budget")
            segs_s.append(np.array(seg_s))
            segs_p.append(np.array(seg_p) % TWO_PI)
    return SeparatrixCurve(energy=saddle.energy,
                           s=np.concatenate(segs_s),
                           phi=np.concatenate(segs_p),
                           partial=partial)


# ---------------------------------------------------------------------------
# continuation in gamma


def continue_in_gamma(delta0: float, c_z: float, c_y: float,
                      gamma_grid, link_threshold: float = 0.1,
                      grid: int = 400) -> list[Branch]:
    """Track fixed-point branches over a monotone gamma_eff grid.

    Linking is nearest-neighbor in (s, phi) with a periodic phi metric;
    ambiguities (two candidates inside the threshold) are resolved by energy
    continuity. Branch birth/death gammas mark the bifurcations.
    """
    gamma_grid = list(gamma_grid)
    diffs = np.diff(gamma_grid)
    if len(gamma_grid) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("gamma_grid must be strictly monotone")

    branches: list[Branch] = []
    active: list[Branch] = []
    next_id = 0
    for g in gamma_grid:
        fps = find_fixed_points(g, delta0, c_z, c_y, grid=grid)
        taken = [False] * len(fps)
        survivors = []
        for br in active:
            prev = br.points[-1]
            prev_pos = (prev.point.s, prev.point.phi)
            cands = [
                (i, _periodic_dist(prev_pos, (fp.point.s, fp.point.phi)))
                for i, fp in enumerate(fps)
                if not taken[i]
                and _periodic_dist(prev_pos, (fp.point.s, fp.point.phi))
                < link_threshold
            ]
            if not cands:
                continue  # branch dies here
            if len(cands) > 1:
                logger.debug("ambiguous link at gamma=%g; using energy "
                             "continuity", g)
                cands.sort(key=lambda c: abs(fps[c[0]].energy - prev.energy))
            else:
                cands.sort(key=lambda c: c[1])
            idx = cands[0][0]
            taken[idx] = True
            br.gammas.append(g)
            br.points.append(fps[idx])
            survivors.append(br)
        for i, fp in enumerate(fps):
            if not taken[i]:
                br = Branch(branch_id=next_id, gammas=[g], points=[fp])
                next_id += 1
                branches.append(br)
                survivors.append(br)
        active = survivors
    return branches
