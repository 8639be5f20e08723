"""Search driver: uniform start, repeated flip + diffusion, Born-rule sample."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Literal, NamedTuple, Union

import numpy as np

from .errors import BoundsError, ConfigurationError, IntegrityError, TheoremViolation
from .oracle import OracleSpec, evaluate, from_targets
from .statevec import NORM_TOLERANCE, StateVector, check_qubits, make_rng, sample
from .transforms import diffusion, oracle_flip

IterationPolicy = Union[int, Literal["auto", "scan"]]

CLASS_UNIFORMITY_TOL = 1e-12
SMALL_N_LOOKUP_MAX = 8
_NORM_CHECK_EVERY = 256


class TrajectoryPoint(NamedTuple):
    m: int
    k: float
    l: float
    prob: float


@dataclass(frozen=True)
class GroverConfig:
    n: int
    oracle: OracleSpec
    iterations: IterationPolicy = "auto"
    seed: int = 0
    capture_trajectory: bool = False

    def __post_init__(self) -> None:
        if self.oracle.n != self.n:
            raise ConfigurationError(f"oracle is over n={self.oracle.n} qubits, config says n={self.n}")
        it = self.iterations
        if isinstance(it, str):
            if it not in ("auto", "scan"):
                raise ConfigurationError(f"iteration policy must be an integer, 'auto' or 'scan', got {it!r}")
        elif isinstance(it, bool) or not isinstance(it, (int, np.integer)) or it < 0:
            raise ConfigurationError(f"fixed iteration count must be a non-negative integer, got {it!r}")


@dataclass
class RunReport:
    sampled_index: int
    success: bool
    iterations: int
    oracle_calls: int
    success_probability: float
    trajectory: list[TrajectoryPoint] | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.trajectory is not None:
            d["trajectory"] = [p._asdict() for p in self.trajectory]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class Evolution:
    """Final register plus whatever was recorded along the way."""

    state: StateVector
    iterations: int
    oracle_calls: int
    probabilities: list[float]
    trajectory: list[TrajectoryPoint] | None


def _class_amplitudes(v: np.ndarray, oracle: OracleSpec, first_free: int) -> tuple[float, float]:
    """Common target amplitude ``k`` and common non-target amplitude ``l``.

    Fails loudly if either class is not uniform; the dynamics guarantee it.
    """
    vt = v[oracle.target_array]
    k = vt[0]
    if np.max(np.abs(vt - k)) > CLASS_UNIFORMITY_TOL:
        raise TheoremViolation("target amplitudes diverged from each other")
    if first_free < 0:
        return float(k), math.nan
    l = v[first_free]
    dev = np.abs(v - l)
    dev[oracle.target_array] = 0.0
    if dev.max() > CLASS_UNIFORMITY_TOL:
        raise TheoremViolation("non-target amplitudes diverged from each other")
    return float(k), float(l)


def _first_non_target(oracle: OracleSpec) -> int:
    for i, t in enumerate(oracle.targets):
        if i != t:
            return i
    return oracle.M if oracle.M < oracle.N else -1


def evolve(
    oracle: OracleSpec,
    iterations: int,
    capture: bool = False,
    fast_path: bool = True,
) -> Evolution:
    """Apply ``iterations`` rounds of oracle flip then diffusion to the uniform state.

    With ``fast_path`` the loop runs on a float64 copy (every amplitude on
    this path stays real) and is widened to complex at the end; otherwise the
    complex operators from :mod:`groversim.transforms` are used directly.
    Empty oracles are allowed here; :func:`run` rejects them.
    """
    n = check_qubits(oracle.n)
    N = 1 << n
    targets = oracle.target_array
    first_free = _first_non_target(oracle)
    probs: list[float] = []
    traj: list[TrajectoryPoint] | None = [] if capture else None

    if fast_path:
        v = np.full(N, 1.0 / math.sqrt(N))
    else:
        state = StateVector(n, np.full(N, 1.0 / math.sqrt(N), dtype=np.complex128))
        v = state.amplitudes

    def record(m: int) -> None:
        vt = v[targets]
        p = float(np.sum(vt.real * vt.real + vt.imag * vt.imag)) if targets.size else 0.0
        probs.append(p)
        if traj is not None and targets.size:
            if not fast_path and np.max(np.abs(v.imag)) > CLASS_UNIFORMITY_TOL:
                raise TheoremViolation("amplitudes left the real axis")
            k, l = _class_amplitudes(v.real, oracle, first_free)
            traj.append(TrajectoryPoint(m, k, l, p))

    record(0)
    for m in range(1, iterations + 1):
        if fast_path:
            if targets.size:
                v[targets] *= -1.0
            np.subtract(2.0 * np.sum(v) / N, v, out=v)
        else:
            oracle_flip(state, oracle)
            diffusion(state)
        record(m)
        if m % _NORM_CHECK_EVERY == 0:
            _check_norm(v)

    _check_norm(v)
    if fast_path:
        state = StateVector(n, v.astype(np.complex128))
    return Evolution(state, iterations, iterations, probs, traj)


def _check_norm(v: np.ndarray) -> None:
    total = float(np.vdot(v, v).real)
    if not math.isfinite(total) or abs(total - 1.0) > NORM_TOLERANCE:
        raise IntegrityError(f"norm drift {abs(total - 1.0):.3e} exceeds {NORM_TOLERANCE:g}")


def _formula_iterations(N: int, M: int) -> int:
    return max(1, round(math.pi / 4 * math.sqrt(N / M)))


def first_peak(probs: list[float]) -> int:
    """Index of the first local maximum; later revivals of the oscillation are ignored."""
    m = 0
    while m + 1 < len(probs) and probs[m + 1] > probs[m] + 1e-12:
        m += 1
    return m


@lru_cache(maxsize=None)
def _small_n_best(N: int, M: int) -> int:
    """Iteration count at the first success-probability peak, by simulation."""
    oracle = from_targets(N.bit_length() - 1, range(M))
    horizon = math.ceil(math.sqrt(2 * N)) + _formula_iterations(N, M)
    return first_peak(evolve(oracle, horizon).probabilities)


def optimal_iterations(N: int, M: int) -> int:
    """Iteration count for ``M`` marked states among ``N``.

    ``round(pi/4 * sqrt(N/M))`` floored at 1, except that ``M >= N/2`` gives 0
    and ``N <= 8`` uses the simulated optimum (the formula overshoots at
    N=4, M=1).
    """
    if M == 0:
        raise ConfigurationError("iteration count undefined for zero targets")
    if M < 0 or M > N:
        raise BoundsError(f"target count M={M} outside [1, N={N}]")
    if 2 * M >= N:
        return 0
    if N <= SMALL_N_LOOKUP_MAX:
        return _small_n_best(N, M)
    return _formula_iterations(N, M)


def trajectory_scan(config: GroverConfig, max_m: int) -> list[tuple[int, float]]:
    """Success probability after each of ``0..max_m`` iterations, from one simulation."""
    if max_m < 1:
        raise ConfigurationError(f"max_m must be >= 1, got {max_m}")
    if config.oracle.is_empty:
        raise ConfigurationError("oracle has no targets; nothing to search for")
    return list(enumerate(evolve(config.oracle, max_m).probabilities))


def resolve_iterations(config: GroverConfig) -> int:
    policy = config.iterations
    if policy == "auto":
        return optimal_iterations(config.oracle.N, config.oracle.M)
    if policy == "scan":
        horizon = math.ceil(math.sqrt(2 * config.oracle.N))
        return first_peak([p for _, p in trajectory_scan(config, horizon)])
    return int(policy)


def run(config: GroverConfig) -> RunReport:
    """Full search: evolve for the chosen iteration count, then measure once."""
    if config.oracle.is_empty:
        raise ConfigurationError("oracle has no targets; refusing to search")
    m = resolve_iterations(config)
    evo = evolve(config.oracle, m, capture=config.capture_trajectory)
    rng = make_rng(config.seed)
    index = sample(evo.state, rng)
    return RunReport(
        sampled_index=index,
        success=bool(evaluate(config.oracle, index)),
        iterations=evo.iterations,
        oracle_calls=evo.oracle_calls,
        success_probability=evo.probabilities[-1],
        trajectory=evo.trajectory,
    )


@dataclass
class DegeneracyAttempt:
    range_index: int
    assumed_targets: int
    iterations: int
    success_probability: float
    samples: list[int]
    found: int | None


def degeneracy_search(
    oracle: OracleSpec,
    retries: int = 3,
    seed: int = 0,
    log: list[DegeneracyAttempt] | None = None,
) -> int | None:
    """Find a marked index when the number of marks is unknown (possibly zero).

    Range ``j`` assumes ``2**j`` marks, ``j = 0 .. n-1``. Each range is
    simulated once and sampled up to ``retries`` times with the generator
    seeded by ``seed ^ j``; every candidate is checked classically, so a
    returned index is always a true target. ``None`` means every range was
    exhausted.
    """
    if retries < 1:
        raise ConfigurationError(f"retries must be >= 1, got {retries}")
    N = oracle.N
    for j in range(oracle.n):
        m = optimal_iterations(N, 1 << j)
        evo = evolve(oracle, m)
        rng = make_rng(seed ^ j)
        drawn: list[int] = []
        found = None
        for _ in range(retries):
            candidate = sample(evo.state, rng)
            drawn.append(candidate)
            if evaluate(oracle, candidate):
                found = candidate
                break
        if log is not None:
            log.append(DegeneracyAttempt(j, 1 << j, m, evo.probabilities[-1], drawn, found))
        if found is not None:
            return found
    return None
