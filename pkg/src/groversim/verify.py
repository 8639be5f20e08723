"""Batch theorem checks over a range of register sizes, as used by ``groversim verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import transforms as T
from .analysis import (
    TrajectoryRecord,
    TwoLevelState,
    Verdict,
    compare_with_simulation,
    diffusion_step,
    find_halfway_iteration,
    model_trajectory,
    verify_growth_bound,
    verify_model_agreement,
    verify_sign_recovery,
)
from .errors import TheoremViolation
from .grover import evolve, optimal_iterations
from .oracle import from_targets
from .statevec import StateVector

DiffusionFn = Callable[[StateVector], StateVector]

THEOREMS = ("1", "unitarity", "2", "2.1", "2.2", "3", "halfway", "norm")


@dataclass
class SuiteOptions:
    n_min: int = 2
    n_max: int = 12
    seed: int = 0
    vectors: int = 200
    samples: int = 10_000
    wrw: DiffusionFn = field(default=T.diffusion_via_wrw)
    pivot: Callable[[int], T.ExplicitMatrix] = field(default=lambda n: T.explicit_operator("R", n))


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return StateVector(n, v / np.linalg.norm(v))


def check_theorem1(opt: SuiteOptions) -> Verdict:
    """Dense W R W against the printed D, then three diffusion routes on random vectors."""
    rng = np.random.default_rng(opt.seed)
    worst = 0.0
    for n in range(opt.n_min, min(opt.n_max, 6) + 1):
        W = T.explicit_operator("W", n)
        wrw = W @ opt.pivot(n) @ W
        err = float(np.max(np.abs(wrw.entries - T.explicit_operator("D", n).entries)))
        worst = max(worst, err)
        if not err < 1e-12:
            return Verdict("theorem1", False, {"n": n, "check": "explicit WRW vs D", "error": err})
    for n in range(opt.n_min, min(opt.n_max, 12) + 1):
        D = T.explicit_operator("D", n) if n <= 6 else None
        for trial in range(opt.vectors):
            v = random_state(n, rng)
            a = T.diffusion(v.copy()).amplitudes
            b = opt.wrw(v.copy()).amplitudes
            errs = [float(np.max(np.abs(a - b)))]
            if D is not None:
                c = (D @ v).amplitudes
                errs += [float(np.max(np.abs(a - c))), float(np.max(np.abs(b - c)))]
            err = max(errs)
            worst = max(worst, err)
            if not err < 1e-12:
                return Verdict("theorem1", False, {"n": n, "trial": trial, "check": "diffusion routes", "error": err})
    return Verdict("theorem1", True, None, {"n_min": opt.n_min, "n_max": opt.n_max, "max_error": worst})


def check_unitarity(opt: SuiteOptions) -> Verdict:
    for n in range(opt.n_min, min(opt.n_max, 6) + 1):
        for kind in ("W", "D"):
            err = T.explicit_operator(kind, n).unitarity_error()
            if not err < 1e-10:
                return Verdict("unitarity", False, {"n": n, "operator": kind, "error": err})
        P = T.explicit_operator("P", n).entries
        err = float(np.max(np.abs(P @ P - P)))
        if not err < 1e-14:
            return Verdict("unitarity", False, {"n": n, "operator": "P (idempotence)", "error": err})
    return Verdict("unitarity", True, None, {"n_min": opt.n_min, "n_max": min(opt.n_max, 6)})


def check_theorem2(opt: SuiteOptions) -> Verdict:
    rng = np.random.default_rng(opt.seed)
    total = 0
    for n in range(opt.n_min, min(opt.n_max, 12) + 1):
        N = 1 << n
        target = int(rng.integers(N))
        records = compare_with_simulation(n, [target], math.floor(2 * math.sqrt(N)))
        v = verify_model_agreement(records)
        if not v.passed:
            v.params.update(n=n, target=target)
            return v
        total += len(records)
    return Verdict("theorem2-model", True, None, {"n_min": opt.n_min, "n_max": min(opt.n_max, 12), "records": total})


def _sizes(opt: SuiteOptions, minimum: int = 4) -> list[int]:
    return [1 << n for n in range(max(opt.n_min, 2), opt.n_max + 1) if 1 << n >= minimum]


def check_sign_recovery(opt: SuiteOptions) -> Verdict:
    boundary = verify_sign_recovery(4, -0.5, 0.5)
    if not boundary.passed:
        return boundary
    rng = np.random.default_rng(opt.seed)
    sizes = _sizes(opt, minimum=9)
    for i in range(opt.samples if sizes else 0):
        N = sizes[i % len(sizes)]
        ratio = rng.uniform(1e-12, 1.0) * math.sqrt(N) * (1 - 1e-9)
        l = rng.uniform(1e-3, 1.0)
        v = verify_sign_recovery(N, -ratio * l, l)
        if not v.passed:
            return v
    return Verdict("corollary2.1-sign", True, None, {"sizes": sizes, "samples": opt.samples})


def check_conservation(opt: SuiteOptions) -> Verdict:
    rng = np.random.default_rng(opt.seed)
    sizes = _sizes(opt)
    worst = 0.0
    for i in range(opt.samples):
        N = sizes[i % len(sizes)]
        alpha = rng.uniform(0.0, 2 * math.pi)
        s = TwoLevelState(N, 1, math.cos(alpha), math.sin(alpha) / math.sqrt(N - 1))
        out = diffusion_step(s)
        err = abs(out.norm_squared() - s.norm_squared())
        worst = max(worst, err)
        if not err < 1e-12:
            return Verdict("corollary2.2-conservation", False, {"N": N, "k": s.k, "l": s.l, "error": err})
    return Verdict("corollary2.2-conservation", True, None, {"sizes": sizes, "max_error": worst})


def growth_records(N: int) -> list[TrajectoryRecord]:
    """Model trajectory out to ``2 sqrt N`` iterations, sim columns left as nan."""
    states = model_trajectory(N, math.floor(2 * math.sqrt(N)))
    bound = 1.0 / (2.0 * math.sqrt(N))
    return [
        TrajectoryRecord(m, s.k, s.l, math.nan, math.nan, s.k - states[m - 1].k if m else math.nan, bound)
        for m, s in enumerate(states)
    ]


def check_theorem3(opt: SuiteOptions) -> Verdict:
    checked = 0
    for N in _sizes(opt):
        v = verify_growth_bound(growth_records(N))
        if not v.passed:
            return v
        checked += v.params.get("iterations_checked", 0)
    return Verdict("theorem3-growth", True, None, {"sizes": _sizes(opt), "iterations_checked": checked})


def check_halfway(opt: SuiteOptions) -> Verdict:
    found = {}
    for N in _sizes(opt):
        try:
            found[N] = find_halfway_iteration(N)
        except TheoremViolation as exc:
            return Verdict("halfway-bound", False, {"N": N, "error": str(exc)})
    return Verdict("halfway-bound", True, None, {"iterations": found})


def check_norm(opt: SuiteOptions) -> Verdict:
    rng = np.random.default_rng(opt.seed)
    worst = 0.0
    for n in range(max(opt.n_min, 2), opt.n_max + 1):
        N = 1 << n
        m = optimal_iterations(N, 1)
        state = evolve(from_targets(n, [int(rng.integers(N))]), m).state
        drift = state.norm_drift()
        worst = max(worst, drift)
        if not drift < 1e-10:
            return Verdict("norm-drift", False, {"n": n, "iterations": m, "drift": drift})
    return Verdict("norm-drift", True, None, {"max_drift": worst})


CHECKS: dict[str, Callable[[SuiteOptions], Verdict]] = {
    "1": check_theorem1,
    "unitarity": check_unitarity,
    "2": check_theorem2,
    "2.1": check_sign_recovery,
    "2.2": check_conservation,
    "3": check_theorem3,
    "halfway": check_halfway,
    "norm": check_norm,
}


def run_suite(opt: SuiteOptions, only: list[str] | None = None) -> list[Verdict]:
    return [CHECKS[name](opt) for name in (only or THEOREMS)]


def faulty_pivot_wrw(state: StateVector) -> StateVector:
    """Negative control: ``R`` with its signs swapped, so ``W R' W = -D``."""
    T.walsh_hadamard(state)
    state.amplitudes[0] *= -1.0
    return T.walsh_hadamard(state)


def faulty_pivot_matrix(n: int) -> T.ExplicitMatrix:
    return T.ExplicitMatrix(-T.explicit_operator("R", n).entries)
