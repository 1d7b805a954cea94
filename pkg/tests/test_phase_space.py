import math

import numpy as np
import pytest

from twomodebec.phase_space import (PhasePoint, classify_stability,
                                    continue_in_gamma, find_fixed_points,
                                    flow_rk4, hamilton_rhs, hc_gradient,
                                    hc_hessian, hc_value, separatrix_curve)

# the Fig-1-like scenario used throughout: gamma' = 0, delta0 = 0.2,
# (c_z, c_y) = (0.4, 0.6)
CANON = dict(gamma_eff=0.0, delta0=0.2, c_z=0.4, c_y=0.6)


def _canon_args():
    return CANON["gamma_eff"], CANON["delta0"], CANON["c_z"], CANON["c_y"]


def test_hc_known_values():
    g, d, cz, cy = _canon_args()
    assert math.isclose(hc_value(0.0, 0.0, g, d, cz, cy), 0.1)
    assert math.isclose(hc_value(0.0, math.pi, g, d, cz, cy), -0.1)
    s_saddle = math.sqrt(0.75)
    assert math.isclose(hc_value(s_saddle, math.pi, g, d, cz, cy), -0.125)
    assert math.isclose(hc_value(-s_saddle, math.pi, g, d, cz, cy), -0.125)


def test_gradient_vanishes_at_stationary_points():
    g, d, cz, cy = _canon_args()
    for s, phi in [(0.0, 0.0), (0.0, math.pi),
                   (math.sqrt(0.75), math.pi), (-math.sqrt(0.75), math.pi)]:
        hs, hp = hc_gradient(s, phi, g, d, cz, cy)
        assert abs(hs) < 1e-14 and abs(hp) < 1e-14


def test_gradient_and_hessian_match_finite_differences():
    rng = np.random.default_rng(7)
    g, d, cz, cy = 0.15, 0.2, 0.4, 0.6
    h = 1e-5
    for _ in range(100):
        s = rng.uniform(-0.9, 0.9)
        phi = rng.uniform(0.0, 2.0 * math.pi)
        hs, hp = hc_gradient(s, phi, g, d, cz, cy)
        fd_s = (hc_value(s + h, phi, g, d, cz, cy)
                - hc_value(s - h, phi, g, d, cz, cy)) / (2 * h)
        fd_p = (hc_value(s, phi + h, g, d, cz, cy)
                - hc_value(s, phi - h, g, d, cz, cy)) / (2 * h)
        assert abs(hs - fd_s) < 1e-6 and abs(hp - fd_p) < 1e-6
        hss, hsp, hpp = hc_hessian(s, phi, g, d, cz, cy)
        fd_ss = (hc_value(s + h, phi, g, d, cz, cy)
                 - 2 * hc_value(s, phi, g, d, cz, cy)
                 + hc_value(s - h, phi, g, d, cz, cy)) / h ** 2
        fd_pp = (hc_value(s, phi + h, g, d, cz, cy)
                 - 2 * hc_value(s, phi, g, d, cz, cy)
                 + hc_value(s, phi - h, g, d, cz, cy)) / h ** 2
        fd_sp = (hc_value(s + h, phi + h, g, d, cz, cy)
                 - hc_value(s + h, phi - h, g, d, cz, cy)
                 - hc_value(s - h, phi + h, g, d, cz, cy)
                 + hc_value(s - h, phi - h, g, d, cz, cy)) / (4 * h ** 2)
        assert abs(hss - fd_ss) < 1e-4
        assert abs(hpp - fd_pp) < 1e-4
        assert abs(hsp - fd_sp) < 1e-4


def test_hamilton_rhs_sign_convention():
    # free limit: dphi/dt = gamma_eff, ds/dt = 0 at phi = 0, s = 0, delta0 = 0
    ds, dphi = hamilton_rhs(PhasePoint(0.0, 0.0), 0.7, 0.0, 0.0, 0.0)
    assert abs(ds) < 1e-15
    assert math.isclose(dphi, 0.7)
    with pytest.raises(ValueError):
        hamilton_rhs((1.0, 0.0), *_canon_args())


def test_flow_conserves_energy():
    g, d, cz, cy = _canon_args()
    s0, p0 = 0.3, 2.0
    e0 = hc_value(s0, p0, g, d, cz, cy)
    ss, pp = flow_rk4(s0, p0, g, d, cz, cy, dt=1e-3, n_steps=20000,
                      record_every=100)
    energies = hc_value(ss, pp, g, d, cz, cy)
    assert np.max(np.abs(energies - e0)) < 1e-10


def test_phase_point_wraps_phi():
    pt = PhasePoint(0.1, -1.0)
    assert 0.0 <= pt.phi < 2.0 * math.pi
    with pytest.raises(ValueError):
        PhasePoint(1.2, 0.0)


def test_classify_stability_canonical():
    g, d, cz, cy = _canon_args()
    tag, eigs = classify_stability(0.0, 0.0, g, d, cz, cy)
    assert tag == "center"
    assert np.allclose(sorted(eigs), [-0.4, -0.3])
    tag, eigs = classify_stability(math.sqrt(0.75), math.pi, g, d, cz, cy)
    assert tag == "saddle"
    assert eigs[0] * eigs[1] < 0


def test_fixed_point_census_canonical():
    fps = find_fixed_points(*_canon_args())
    assert len(fps) == 6
    expected = {
        (0.0, 0.0): "center",
        (0.0, math.pi): "center",
        (math.sqrt(0.75), math.pi): "saddle",
        (-math.sqrt(0.75), math.pi): "saddle",
        (0.0, math.pi + 1.2309594173407747): "center",
        (0.0, math.pi - 1.2309594173407747): "center",
    }
    for (s, phi), tag in expected.items():
        match = [fp for fp in fps
                 if abs(fp.point.s - s) < 1e-8
                 and abs(fp.point.phi - phi) < 1e-8]
        assert len(match) == 1, f"missing fixed point at ({s}, {phi})"
        assert match[0].stability == tag
    # output is sorted by energy
    energies = [fp.energy for fp in fps]
    assert energies == sorted(energies)


def test_separatrix_is_a_level_set():
    fps = find_fixed_points(*_canon_args())
    saddles = [fp for fp in fps if fp.stability == "saddle"]
    assert len(saddles) == 2
    sep = separatrix_curve(saddles[0], *_canon_args(), other_saddles=saddles)
    assert not sep.partial
    energies = hc_value(sep.s, sep.phi, *_canon_args())
    assert np.max(np.abs(energies - sep.energy)) < 1e-8
    # mirror symmetry of the scenario: the curve is symmetric under
    # phi -> 2*pi - phi up to sampling
    assert abs(np.max(sep.phi) + np.min(sep.phi) - 2.0 * math.pi) < 0.05


def test_separatrix_rejects_centers():
    fps = find_fixed_points(*_canon_args())
    center = [fp for fp in fps if fp.stability == "center"][0]
    with pytest.raises(ValueError):
        separatrix_curve(center, *_canon_args())


def test_linear_continuation_closed_form():
    delta0 = 0.2
    grid = np.linspace(-1.0, 1.0, 101)
    branches = continue_in_gamma(delta0, 0.0, 0.0, grid)
    assert len(branches) == 2
    for br in branches:
        assert len(br.gammas) == len(grid)
        sign = 1.0 if br.points[0].energy > 0 else -1.0
        for g, fp in zip(br.gammas, br.points):
            ref = sign * 0.5 * math.sqrt(g * g + delta0 * delta0)
            assert abs(fp.energy - ref) < 1e-10
    assert {1.0 if b.points[0].energy > 0 else -1.0
            for b in branches} == {1.0, -1.0}


def test_continuation_requires_monotone_grid():
    with pytest.raises(ValueError):
        continue_in_gamma(0.2, 0.4, 0.6, [0.0, 1.0, 0.5])
