"""Two-mode Bose-Einstein condensate under high-frequency off-diagonal driving.

Mean-field evolution in the lab, rotating, and time-averaged effective frames,
classical phase-space analysis of the effective Hamiltonian, exact N-boson
diagonalization, and Landau-Zener sweep experiments.
"""

from .bessel import bessel_j0
from .dynamics import (AmplitudePair, GammaRamp, evolve_effective, evolve_lab,
                       evolve_rotating, frame_transform, rhs_effective,
                       rhs_lab, rhs_rotating, transform_trajectory)
from .errors import ConfigError, IntegrationError
from .experiments import (SweepProtocol, SweepResult, averaging_validity_report,
                          classify_attractor, prepare_ground, run_lz_sweep,
                          transition_probability, trapping_experiment)
from .integrator import IntegratorConfig, Trajectory, rk4_evolve
from .params import EffectiveParams, ModelParams, derive_effective
from .phase_space import (Branch, FixedPoint, PhasePoint, SeparatrixCurve,
                          classify_stability, continue_in_gamma,
                          find_fixed_points, hamilton_rhs, hc_gradient,
                          hc_hessian, hc_value, separatrix_curve)
from .quantum import (FockSpace, SpectrumResult, build_hamiltonian,
                      diagonalize, jacobi_eigenvalues, quantum_spectrum_scan)

__version__ = "1.0.0"

__all__ = [
    "AmplitudePair", "Branch", "ConfigError", "EffectiveParams", "FixedPoint",
    "FockSpace", "GammaRamp", "IntegrationError", "IntegratorConfig",
    "ModelParams", "PhasePoint", "SeparatrixCurve", "SpectrumResult",
    "SweepProtocol", "SweepResult", "Trajectory", "averaging_validity_report",
    "bessel_j0", "build_hamiltonian", "classify_attractor",
    "classify_stability", "continue_in_gamma", "derive_effective",
    "diagonalize", "evolve_effective", "evolve_lab", "evolve_rotating",
    "find_fixed_points", "frame_transform", "hamilton_rhs", "hc_gradient",
    "hc_hessian", "hc_value", "jacobi_eigenvalues", "prepare_ground",
    "quantum_spectrum_scan", "rhs_effective", "rhs_lab", "rhs_rotating",
    "rk4_evolve", "run_lz_sweep", "separatrix_curve",
    "transform_trajectory", "transition_probability", "trapping_experiment",
]
