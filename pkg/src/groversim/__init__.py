"""State-vector simulation of quantum search by amplitude amplification."""

from .errors import BoundsError, ConfigurationError, GroverSimError, IntegrityError, TheoremViolation
from .grover import GroverConfig, RunReport, degeneracy_search, optimal_iterations, run, trajectory_scan
from .oracle import OracleSpec, RecordTable, classical_linear_search, evaluate, from_table, from_targets
from .statevec import StateVector, probability_of, sample, uniform

__all__ = [
    "BoundsError",
    "ConfigurationError",
    "GroverConfig",
    "GroverSimError",
    "IntegrityError",
    "OracleSpec",
    "RecordTable",
    "RunReport",
    "StateVector",
    "TheoremViolation",
    "classical_linear_search",
    "degeneracy_search",
    "evaluate",
    "from_table",
    "from_targets",
    "optimal_iterations",
    "probability_of",
    "run",
    "sample",
    "trajectory_scan",
    "uniform",
]
