"""Exact master and Langevin equations for harmonic quantum Brownian motion
with a finite oscillator bath.

Everything reduces to the one-particle transition amplitudes A(t): the
population master equation has time-local coefficients W(t) = Pdot P^{-1}
with P = |A|^2, and the system oscillator obeys a local second-order
equation whose damping and frequency follow from the survival amplitude.
"""

from .amplitudes import (AmplitudeSet, amplitudes_at, survival_amplitude,
                         survival_series, system_row_series)
from .config import ConfigError, RunConfig, load_config, parse_config, serialize_spec
from .golden import (ExponentialFit, GoldenRuleRates, PerturbativePrediction,
                     compare_exact_vs_golden, delta_t, fit_exponential,
                     golden_rule_rates, perturbative_prediction)
from .langevin import (LangevinCoefficients, coefficients_from_survival,
                       langevin_coefficients, langevin_residual, langevin_series,
                       noise_covariance, noise_covariance_grid)
from .linalg import (JACOBI_BACKEND, JacobiConvergenceError, SingularMatrixError,
                     SpectralDecomposition, adjoint, eigendecompose, invert, matmul)
from .master import (MasterCoefficients, PopulationTrajectory,
                     SingularTransitionMatrixError, TransitionProbabilities,
                     evolve_populations, master_coefficients,
                     master_coefficients_flagged, master_residual,
                     transition_probabilities)
from .model import (ModelSpec, build_hamiltonian, explicit_populations,
                    preset_linear_bath, thermal_populations)

__version__ = "0.1.0"
