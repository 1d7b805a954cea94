import numpy as np
import pytest

from twomodebec.errors import ConfigError, IntegrationError
from twomodebec.integrator import IntegratorConfig, rk4_evolve


def _free_rhs(omega):
    def rhs(a, b, t):
        return -0.5j * omega * a, 0.5j * omega * b
    return rhs


def test_config_validation():
    IntegratorConfig().validate()
    with pytest.raises(ConfigError):
        IntegratorConfig(dt=-1.0).validate()
    with pytest.raises(ConfigError):
        IntegratorConfig(n_samples=0).validate()
    with pytest.raises(ConfigError):
        IntegratorConfig(periods_per_step_min=0).validate()


def test_sample_grid_is_exact():
    traj = rk4_evolve(_free_rhs(1.0), 1.0 + 0j, 0.0 + 0j, 0.0, 10.0,
                      dt=0.013, n_samples=40, norm_tol=1e-8)
    assert traj.t.shape == (41,)
    assert np.allclose(traj.t, np.linspace(0.0, 10.0, 41), atol=0.0)
    assert traj.dt <= 0.013


def test_free_evolution_phase():
    omega = 0.8
    traj = rk4_evolve(_free_rhs(omega), 1.0 + 0j, 0.0 + 0j, 0.0, 20.0,
                      dt=1e-3, n_samples=10, norm_tol=1e-10)
    expect = np.exp(-0.5j * omega * traj.t)
    assert np.max(np.abs(traj.a - expect)) < 1e-9
    assert traj.norm_drift < 1e-12


def test_ensemble_shapes():
    a0 = np.full(5, 1.0 + 0j)
    b0 = np.zeros(5, dtype=complex)
    traj = rk4_evolve(_free_rhs(1.0), a0, b0, 0.0, 5.0, dt=0.01,
                      n_samples=20, norm_tol=1e-8)
    assert traj.a.shape == (21, 5)
    fa, fb, ft = traj.final()
    assert fa.shape == (5,) and ft == 5.0


def test_rejects_bad_span():
    with pytest.raises(ConfigError):
        rk4_evolve(_free_rhs(1.0), 1.0 + 0j, 0j, 5.0, 5.0, 0.01, 10, 1e-8)


def test_norm_drift_guard():
    # deliberately non-unitary rhs -> growing norm must raise
    def bad(a, b, t):
        return 0.05 * a, 0.05 * b

    with pytest.raises(IntegrationError):
        rk4_evolve(bad, 1.0 + 0j, 0j, 0.0, 10.0, 0.01, 10, 1e-8)
