"""Complex amplitude register over ``N = 2**n`` basis states."""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, ConfigurationError, IntegrityError

DEFAULT_N_MAX = 26
NORM_TOLERANCE = 1e-6  # drift beyond this raises; never silently renormalized


def n_max() -> int:
    """Largest qubit count accepted, overridable through ``GROVER_SIM_NMAX``."""
    raw = os.environ.get("GROVER_SIM_NMAX")
    if raw is None:
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"GROVER_SIM_NMAX must be an integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError(f"GROVER_SIM_NMAX must be >= 1, got {value}")
    return value


def check_qubits(n: int, cap: int | None = None) -> int:
    cap = n_max() if cap is None else cap
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise ConfigurationError(f"qubit count must be an integer, got {n!r}")
    if not 1 <= n <= cap:
        raise ConfigurationError(f"qubit count n={n} outside [1, {cap}] (size cap n_max={cap})")
    return int(n)


@dataclass(eq=False)
class StateVector:
    """The quantum register: ``2**n`` complex128 amplitudes.

    Transform functions mutate ``amplitudes`` in place and hand the same
    object back, so a 2**26 register is never duplicated.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.ndim != 1 or self.amplitudes.size != 1 << self.n:
            raise ConfigurationError(
                f"expected {1 << self.n} amplitudes for n={self.n}, got shape {self.amplitudes.shape}"
            )

    @property
    def N(self) -> int:
        return self.amplitudes.size

    def copy(self) -> StateVector:
        return StateVector(self.n, self.amplitudes.copy())

    def probabilities(self) -> np.ndarray:
        a = self.amplitudes
        return a.real * a.real + a.imag * a.imag

    def norm_squared(self) -> float:
        return float(np.sum(self.probabilities()))

    def norm_drift(self) -> float:
        return abs(self.norm_squared() - 1.0)

    def check(self, tolerance: float = NORM_TOLERANCE) -> None:
        """Raise :class:`IntegrityError` on non-finite amplitudes or norm drift."""
        total = self.norm_squared()
        if not np.isfinite(total):
            raise IntegrityError("state vector holds non-finite amplitudes")
        if abs(total - 1.0) > tolerance:
            raise IntegrityError(f"norm drift {abs(total - 1.0):.3e} exceeds {tolerance:g}")

    @classmethod
    def basis(cls, n: int, index: int) -> StateVector:
        n = check_qubits(n)
        _check_index(index, 1 << n)
        amps = np.zeros(1 << n, dtype=np.complex128)
        amps[index] = 1.0
        return cls(n, amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> StateVector:
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        size = amps.size
        if size < 2 or size & (size - 1):
            raise ConfigurationError(f"amplitude count must be a power of two >= 2, got {size}")
        state = cls(size.bit_length() - 1, amps)
        state.check()
        return state


def _check_index(index: int, N: int) -> int:
    if not 0 <= index < N:
        raise BoundsError(f"basis index {index} outside [0, {N})")
    return int(index)


def uniform(n: int, cap: int | None = None) -> StateVector:
    """Equal superposition: every amplitude is exactly ``1/sqrt(N)``."""
    n = check_qubits(n, cap)
    N = 1 << n
    return StateVector(n, np.full(N, 1.0 / np.sqrt(N), dtype=np.complex128))


def probability_of(state: StateVector, index: int) -> float:
    a = state.amplitudes[_check_index(index, state.N)]
    return float(a.real * a.real + a.imag * a.imag)


def sample(state: StateVector, rng: np.random.Generator, size: int | None = None):
    """Draw basis indices by the Born rule via inverse CDF.

    Returns an ``int`` when ``size`` is None, otherwise an int64 array.
    """
    cdf = np.cumsum(state.probabilities())
    total = cdf[-1]
    if not np.isfinite(total) or abs(total - 1.0) > NORM_TOLERANCE:
        raise IntegrityError(f"cannot sample: norm drift {abs(total - 1.0):.3e} exceeds {NORM_TOLERANCE:g}")
    u = rng.random(size) * total
    # side="right" skips zero-probability indices sitting on a flat stretch of the CDF
    idx = np.minimum(np.searchsorted(cdf, u, side="right"), state.N - 1)
    if size is None:
        return int(idx)
    return idx.astype(np.int64)


def make_rng(seed: int) -> np.random.Generator:
    """64-bit seed to generator; negative or oversized seeds are rejected."""
    if not 0 <= int(seed) < 1 << 64:
        raise ConfigurationError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return np.random.default_rng(int(seed))
