import itertools
from fractions import Fraction

import numpy as np
import pytest

from groversim.errors import BoundsError, ConfigurationError
from groversim.oracle import (
    OracleSpec,
    RecordTable,
    classical_linear_search,
    evaluate,
    from_predicate,
    from_table,
    from_targets,
)
from groversim.statevec import make_rng


def test_from_targets():
    o = from_targets(2, [2])
    assert o.targets == (2,) and o.M == 1 and o.N == 4
    o = from_targets(3, {1, 5})
    assert o.targets == (1, 5)
    assert from_targets(3, [5, 1, 5]).targets == (1, 5)
    with pytest.raises(BoundsError):
        from_targets(2, [4])
    with pytest.raises(BoundsError):
        from_targets(2, [-1])


def test_evaluate():
    o = from_targets(2, [2])
    assert evaluate(o, 2) == 1
    assert evaluate(o, 3) == 0
    with pytest.raises(BoundsError):
        evaluate(o, 4)


def test_from_predicate():
    o = from_predicate(4, lambda i: i % 5 == 0)
    assert o.targets == (0, 5, 10, 15)
    assert o.source == "predicate-function"


def test_table_lookup():
    t = RecordTable([b"alice", b"bob", b"carol", b"dave"])
    assert t.n == 2
    assert from_table(t, b"carol").targets == (2,)
    assert from_table(t, "carol").targets == (2,)
    assert from_table(t, b"zed").is_empty


def test_table_padding():
    t = RecordTable([b"a", b"b", b"c", b"d", b"e"])
    assert t.n == 3
    o = from_table(t, b"")
    assert o.is_empty
    o = from_table(t, b"e")
    assert o.N == 8 and o.targets == (4,)
    assert all(evaluate(o, i) == 0 for i in range(5, 8))


def test_table_single_record_and_empty():
    assert RecordTable([b"x"]).n == 1
    with pytest.raises(ConfigurationError):
        RecordTable([])


def test_table_case_flag():
    assert from_table(RecordTable([b"Bob", b"bob"]), b"BOB").is_empty
    assert from_table(RecordTable([b"Bob", b"bob"], case_insensitive=True), b"BOB").targets == (0, 1)


def test_table_file_roundtrip(tmp_path):
    path = tmp_path / "directory.txt"
    path.write_text("Zoë\nadam\nmei\nadam\n", encoding="utf-8")
    t = RecordTable.load(path)
    assert t.records[0] == "Zoë".encode("utf-8")
    assert from_table(t, "adam").targets == (1, 3)
    assert from_table(t, "Zoë").targets == (0,)


@pytest.mark.parametrize("n", [1, 4, 9, 12])
def test_table_oracle_agrees_with_explicit(n, rng):
    N = 1 << n
    size = int(rng.integers(N // 2 + 1, N + 1))
    names = [f"name{int(x)}".encode() for x in rng.integers(0, max(2, size // 3), size=size)]
    query = names[int(rng.integers(size))]
    table_oracle = from_table(RecordTable(names), query)
    expected = [i for i, rec in enumerate(names) if rec == query]
    explicit = from_targets(n, expected)
    assert table_oracle.n == n
    for i in range(N):
        assert evaluate(table_oracle, i) == evaluate(explicit, i)


def test_oracle_is_immutable():
    o = from_targets(3, [1])
    with pytest.raises(AttributeError):
        o.targets = (2,)


def test_mask():
    np.testing.assert_array_equal(from_targets(2, [1, 3]).mask(), [False, True, False, True])


def exact_mean_probes(N, targets):
    """Average first-hit position over every probe order of N items."""
    total, count = Fraction(0), 0
    for perm in itertools.permutations(range(N)):
        total += next(i for i, x in enumerate(perm, 1) if x in targets)
        count += 1
    return total / count


def test_exact_mean_enumeration():
    assert exact_mean_probes(4, {2}) == Fraction(5, 2)
    assert exact_mean_probes(6, {0}) == Fraction(7, 2)


def test_classical_mean_n4():
    o = from_targets(2, [2])
    rng = make_rng(11)
    probes = np.array([classical_linear_search(o, rng) for _ in range(100_000)])
    assert set(np.unique(probes)) == {1, 2, 3, 4}
    assert abs(probes.mean() - float(exact_mean_probes(4, {2}))) < 0.02


def test_classical_all_targets():
    o = from_targets(3, range(8))
    rng = make_rng(0)
    assert all(classical_linear_search(o, rng) == 1 for _ in range(100))


def test_classical_mean_n1024():
    o = from_targets(10, [700])
    rng = make_rng(5)
    mean = np.mean([classical_linear_search(o, rng) for _ in range(10_000)])
    assert abs(mean - 512.5) / 512.5 < 0.02


def test_classical_probe_bounds(rng):
    o = from_targets(5, [3, 17, 30])
    for seed in range(200):
        assert 1 <= classical_linear_search(o, make_rng(seed)) <= 32 - 3 + 1


def test_classical_rejects_empty():
    with pytest.raises(ConfigurationError):
        classical_linear_search(from_targets(3, []), make_rng(0))


def test_oracle_spec_rejects_bad_n():
    with pytest.raises(ConfigurationError):
        OracleSpec(0, ())
