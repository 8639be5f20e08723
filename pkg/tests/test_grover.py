import json
import math

import numpy as np
import pytest

from groversim import transforms as T
from groversim.errors import BoundsError, ConfigurationError
from groversim.grover import (
    GroverConfig,
    degeneracy_search,
    evolve,
    first_peak,
    optimal_iterations,
    run,
    trajectory_scan,
)
from groversim.oracle import evaluate, from_targets
from groversim.statevec import uniform


def exact_success(N, M, m):
    """Independent check: success probability sin^2((2m+1) theta), sin theta = sqrt(M/N)."""
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * m + 1) * theta) ** 2


# --- iteration count ------------------------------------------------------

def test_optimal_iterations_examples():
    assert optimal_iterations(4, 1) == 1
    assert optimal_iterations(16, 16) == 0
    assert optimal_iterations(2**20, 1) == 804
    assert optimal_iterations(1024, 1) == 25


def test_optimal_iterations_half_or_more_marked():
    assert optimal_iterations(16, 8) == 0
    assert optimal_iterations(2, 1) == 0


def test_optimal_iterations_small_n_lookup():
    # first peaks of sin^2((2m+1) theta), checked by hand
    expected = {(4, 1): 1, (8, 1): 2, (8, 2): 1, (8, 3): 1}
    for (N, M), m in expected.items():
        assert optimal_iterations(N, M) == m
        probs = [exact_success(N, M, j) for j in range(m + 2)]
        assert probs[m] == max(probs)


def test_optimal_iterations_floor_at_one():
    # with M < N/2 the formula is already >= pi/4 * sqrt 2 > 1, so the floor never binds
    for N in (16, 32, 64):
        for M in range(1, N // 2):
            assert optimal_iterations(N, M) >= 1


def test_optimal_iterations_errors():
    with pytest.raises(ConfigurationError):
        optimal_iterations(8, 0)
    with pytest.raises(BoundsError):
        optimal_iterations(8, 9)


def test_first_peak():
    assert first_peak([0.1, 0.5, 0.9, 0.2, 0.95]) == 2
    assert first_peak([0.5]) == 0


# --- run ------------------------------------------------------------------

def test_run_n2_one_iteration():
    for seed in range(20):
        r = run(GroverConfig(2, from_targets(2, [2]), 1, seed))
        assert r.sampled_index == 2 and r.success
        assert r.success_probability == pytest.approx(1.0, abs=1e-12)
        assert r.iterations == r.oracle_calls == 1


def test_run_zero_iterations():
    r = run(GroverConfig(2, from_targets(2, [2]), 0, 3))
    assert r.success_probability == pytest.approx(0.25, abs=1e-15)
    assert r.oracle_calls == 0


def test_run_n10_auto():
    r = run(GroverConfig(10, from_targets(10, [123]), "auto", 1))
    assert r.iterations == 25
    assert r.success_probability >= 0.5
    assert r.success_probability == pytest.approx(exact_success(1024, 1, 25), abs=1e-10)


def test_run_scan_policy():
    r = run(GroverConfig(8, from_targets(8, [200]), "scan", 1))
    probs = [exact_success(256, 1, m) for m in range(30)]
    assert r.iterations == int(np.argmax(probs))


def test_run_rejects_empty_and_bad_config():
    with pytest.raises(ConfigurationError):
        run(GroverConfig(3, from_targets(3, []), "auto"))
    with pytest.raises(ConfigurationError):
        GroverConfig(3, from_targets(3, [1]), -1)
    with pytest.raises(ConfigurationError):
        GroverConfig(3, from_targets(3, [1]), "sometimes")
    with pytest.raises(ConfigurationError):
        GroverConfig(4, from_targets(3, [1]))


def test_report_success_probability_matches_state():
    oracle = from_targets(6, [9, 40])
    evo = evolve(oracle, 4)
    direct = sum(abs(evo.state.amplitudes[t]) ** 2 for t in oracle.targets)
    r = run(GroverConfig(6, oracle, 4, 0))
    assert abs(r.success_probability - direct) < 1e-12


def test_report_json_fields():
    r = run(GroverConfig(3, from_targets(3, [5]), 2, 0, capture_trajectory=True))
    d = json.loads(r.to_json())
    assert list(d) == ["sampled_index", "success", "iterations", "oracle_calls", "success_probability", "trajectory"]
    assert list(d["trajectory"][0]) == ["m", "k", "l", "prob"]
    assert len(d["trajectory"]) == 3


def test_fast_path_matches_complex_operators():
    for n, targets, m in [(3, [5], 2), (7, [0, 77], 9), (10, [1023], 25)]:
        oracle = from_targets(n, targets)
        fast = evolve(oracle, m, fast_path=True)
        slow = evolve(oracle, m, fast_path=False)
        assert np.max(np.abs(fast.state.amplitudes - slow.state.amplitudes)) < 1e-15
        assert fast.probabilities == pytest.approx(slow.probabilities, abs=1e-15)


@pytest.mark.parametrize("n", range(1, 7))
def test_sandwich_identity(n, rng):
    N = 1 << n
    oracle = from_targets(n, rng.choice(N, size=1 + int(rng.integers(0, max(1, N // 4))), replace=False))
    DF = T.explicit_operator("D", n) @ T.explicit_oracle_flip(oracle)
    for m in range(0, 6):
        v = uniform(n).amplitudes
        for _ in range(m):
            v = DF @ v
        assert np.max(np.abs(evolve(oracle, m).state.amplitudes - v)) < 1e-12


def test_target_position_symmetry():
    n, m = 7, 5
    probs = [run(GroverConfig(n, from_targets(n, [t]), m, 0)).success_probability for t in range(1 << n)]
    assert max(probs) - min(probs) < 1e-12


def test_multi_target_mass_is_symmetric():
    oracle = from_targets(9, [3, 100, 257, 511])
    amps = evolve(oracle, optimal_iterations(512, 4)).state.amplitudes
    p = np.abs(amps[list(oracle.targets)]) ** 2
    assert np.ptp(p) < 1e-12


# --- trajectory scan ------------------------------------------------------

def test_scan_n2():
    scan = trajectory_scan(GroverConfig(2, from_targets(2, [2])), 2)
    assert scan == pytest.approx([(0, 0.25), (1, 1.0), (2, 0.25)], abs=1e-15)


def test_scan_first_entry_is_fraction_marked():
    for n, targets in [(4, [1]), (6, [2, 3, 50]), (8, list(range(10)))]:
        scan = trajectory_scan(GroverConfig(n, from_targets(n, targets)), 3)
        assert scan[0][1] == pytest.approx(len(targets) / (1 << n), abs=1e-15)


@pytest.mark.parametrize("n", range(4, 13))
def test_scan_reaches_half_within_sqrt_2n(n):
    N = 1 << n
    scan = trajectory_scan(GroverConfig(n, from_targets(n, [N // 3])), math.ceil(math.sqrt(2 * N)))
    assert any(p >= 0.5 for _, p in scan)


def test_scan_matches_closed_form():
    scan = trajectory_scan(GroverConfig(8, from_targets(8, [10, 20, 30])), 40)
    for m, p in scan:
        assert p == pytest.approx(exact_success(256, 3, m), abs=1e-12)


def test_scan_errors():
    with pytest.raises(ConfigurationError):
        trajectory_scan(GroverConfig(2, from_targets(2, [1])), 0)


def test_trajectory_class_amplitudes():
    evo = evolve(from_targets(2, [2]), 2, capture=True)
    assert [tuple(p) for p in evo.trajectory] == pytest.approx([(0, 0.5, 0.5, 0.25), (1, 1.0, 0.0, 1.0), (2, 0.5, -0.5, 0.25)])


# --- degeneracy -----------------------------------------------------------

def test_degeneracy_three_hidden_in_sixteen():
    oracle = from_targets(4, [2, 9, 13])
    # range j=1 assumes 2 marks: iterations round(pi/4*sqrt 8) = 2
    assert optimal_iterations(16, 2) == 2
    assert evolve(oracle, 2).probabilities[-1] > 0.5
    assert exact_success(16, 3, 2) > 0.5
    log = []
    found = degeneracy_search(oracle, seed=4, log=log)
    assert found is not None and evaluate(oracle, found) == 1
    assert log[-1].found == found


def test_degeneracy_none_when_unmarked():
    log = []
    assert degeneracy_search(from_targets(5, []), retries=2, log=log) is None
    assert len(log) == 5
    assert sum(len(a.samples) for a in log) == 2 * 5


def test_degeneracy_single_target_first_range():
    oracle = from_targets(6, [33])
    assert evolve(oracle, optimal_iterations(64, 1)).probabilities[-1] >= 0.5
    for seed in range(10):
        assert degeneracy_search(oracle, seed=seed) == 33


def test_degeneracy_seed_split_is_deterministic():
    oracle = from_targets(8, [1, 2, 3, 4, 5, 6, 7])
    a, b = [], []
    degeneracy_search(oracle, seed=99, log=a)
    degeneracy_search(oracle, seed=99, log=b)
    assert a == b


def test_degeneracy_rejects_bad_retries():
    with pytest.raises(ConfigurationError):
        degeneracy_search(from_targets(3, [1]), retries=0)
