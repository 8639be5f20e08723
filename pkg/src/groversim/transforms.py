"""Operators acting on a :class:`StateVector`.

Three routes to the diffusion transform are kept deliberately separate:

* :func:`diffusion` -- O(N) inversion about the mean, ``v_i -> 2A - v_i``;
* :func:`diffusion_via_wrw` -- Walsh-Hadamard, pivot phase flip, Walsh-Hadamard;
* ``explicit_operator("D", n) @ v`` -- the dense matrix with ``2/N`` off the
  diagonal and ``-1 + 2/N`` on it.

They share no code, so agreement between them is meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal, Mapping

import numba
import numpy as np

from .errors import BoundsError, ConfigurationError
from .oracle import OracleSpec
from .statevec import StateVector

EXPLICIT_N_MAX = 8
_CACHE_BITS = 11  # 2**11 complex128 = 32 KiB, one L1-sized block


@numba.njit(cache=True, nogil=True)
def _fwht_inplace(v, n, block_bits):
    N = v.shape[0]
    B = 1 << block_bits
    # bits below block_bits: finish every stage inside one cache-resident block
    for base in range(0, N, B):
        h = 1
        while h < B:
            for i in range(base, base + B, 2 * h):
                for j in range(i, i + h):
                    x = v[j]
                    y = v[j + h]
                    v[j] = x + y
                    v[j + h] = x - y
            h <<= 1
    h = B
    while h < N:
        for i in range(0, N, 2 * h):
            for j in range(i, i + h):
                x = v[j]
                y = v[j + h]
                v[j] = x + y
                v[j + h] = x - y
        h <<= 1
    scale = 2.0 ** (-0.5 * n)
    for i in range(N):
        v[i] *= scale


def walsh_hadamard(state: StateVector) -> StateVector:
    """Apply ``W`` in place: one butterfly per bit, bit 0 first, unitary scaling.

    O(N log N) time and O(1) memory beyond the register.
    """
    _fwht_inplace(state.amplitudes, state.n, min(state.n, _CACHE_BITS))
    return state


@dataclass(frozen=True)
class PhaseSpec:
    """Per-index phase angles in radians; indices not listed keep phase 0."""

    angles: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for index, phi in dict(self.angles).items():
            phi = float(phi)
            if not np.isfinite(phi):
                raise ConfigurationError(f"phase for index {index} is not finite: {phi}")
            clean[int(index)] = phi
        object.__setattr__(self, "angles", clean)


def selective_phase(state: StateVector, spec: PhaseSpec) -> StateVector:
    """Multiply ``amplitudes[i]`` by ``exp(j*phi_i)``; magnitudes are untouched."""
    if not spec.angles:
        return state
    idx = np.fromiter(spec.angles.keys(), dtype=np.int64, count=len(spec.angles))
    if idx.min() < 0 or idx.max() >= state.N:
        bad = idx[(idx < 0) | (idx >= state.N)][0]
        raise BoundsError(f"phase index {bad} outside [0, {state.N})")
    phi = np.fromiter(spec.angles.values(), dtype=np.float64, count=len(spec.angles))
    state.amplitudes[idx] *= np.exp(1j * phi)
    return state


def oracle_flip(state: StateVector, oracle: OracleSpec) -> StateVector:
    """Negate the amplitude of every target of ``oracle``; one oracle query."""
    if oracle.N > state.N:
        raise BoundsError(f"oracle over N={oracle.N} applied to a register of N={state.N}")
    targets = oracle.target_array
    if targets.size:
        state.amplitudes[targets] *= -1.0
    return state


def diffusion(state: StateVector) -> StateVector:
    """Inversion about average: ``v_i <- 2*mean(v) - v_i`` in O(N).

    ``np.sum`` reduces contiguous arrays pairwise, which keeps the mean
    accurate at N = 2**26.
    """
    v = state.amplitudes
    two_mean = 2.0 * np.sum(v) / v.size
    np.subtract(two_mean, v, out=v)
    return state


def pivot_flip(state: StateVector) -> StateVector:
    """``R``: phase pi on every basis state except index 0."""
    v = state.amplitudes
    keep = v[0]
    np.negative(v, out=v)
    v[0] = keep
    return state


def diffusion_via_wrw(state: StateVector) -> StateVector:
    """Diffusion computed as ``W R W``; independent of :func:`diffusion`."""
    return walsh_hadamard(pivot_flip(walsh_hadamard(state)))


@dataclass(frozen=True)
class ExplicitMatrix:
    """Dense N x N operator for cross-checking at small N."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __matmul__(self, other):
        if isinstance(other, ExplicitMatrix):
            return ExplicitMatrix(self.entries @ other.entries)
        if isinstance(other, StateVector):
            return StateVector(other.n, self.entries @ other.amplitudes)
        return self.entries @ np.asarray(other)

    def unitarity_error(self) -> float:
        """``max |M M^dagger - I|`` entrywise."""
        prod = self.entries @ self.entries.conj().T
        return float(np.max(np.abs(prod - np.eye(self.dim))))

    def is_unitary(self, tol: float = 1e-10) -> bool:
        return self.unitarity_error() < tol


OperatorKind = Literal["W", "R", "D", "P", "identity"]


def _check_explicit_n(n: int) -> int:
    if not 1 <= n <= EXPLICIT_N_MAX:
        raise ConfigurationError(
            f"dense operators are limited to n <= {EXPLICIT_N_MAX}; n={n} would need a {1 << n}x{1 << n} matrix"
        )
    return 1 << n


def _parity_signs(N: int) -> np.ndarray:
    idx = np.arange(N, dtype=np.uint64)
    anded = idx[:, None] & idx[None, :]
    parity = np.zeros_like(anded)
    while anded.any():
        parity ^= anded & np.uint64(1)
        anded >>= np.uint64(1)
    return np.where(parity == 1, -1.0, 1.0)


def explicit_operator(kind: OperatorKind, n: int) -> ExplicitMatrix:
    """Dense ``W``, ``R``, ``D``, ``P`` or identity for ``n <= 8``."""
    N = _check_explicit_n(n)
    if kind == "W":
        m = _parity_signs(N) * 2.0 ** (-0.5 * n)
    elif kind == "R":
        m = -np.eye(N)
        m[0, 0] = 1.0
    elif kind == "D":
        m = np.full((N, N), 2.0 / N)
        np.fill_diagonal(m, -1.0 + 2.0 / N)
    elif kind == "P":
        m = np.full((N, N), 1.0 / N)
    elif kind == "identity":
        m = np.eye(N)
    else:
        raise ConfigurationError(f"unknown operator kind {kind!r}")
    return ExplicitMatrix(m.astype(np.complex128))


def explicit_phase(spec: PhaseSpec, n: int) -> ExplicitMatrix:
    N = _check_explicit_n(n)
    diag = np.ones(N, dtype=np.complex128)
    for index, phi in spec.angles.items():
        if not 0 <= index < N:
            raise BoundsError(f"phase index {index} outside [0, {N})")
        diag[index] = np.exp(1j * phi)
    return ExplicitMatrix(np.diag(diag))


def explicit_oracle_flip(oracle: OracleSpec) -> ExplicitMatrix:
    return explicit_phase(PhaseSpec({t: np.pi for t in oracle.targets}), oracle.n)
