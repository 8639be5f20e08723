"""Search conditions: which basis states are marked, and the classical baseline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from .errors import BoundsError, ConfigurationError

Source = Literal["explicit-list", "predicate-function", "record-table"]


@dataclass(frozen=True)
class OracleSpec:
    """Marked set ``{S : C(S) = 1}`` over ``N = 2**n`` states. Immutable."""

    n: int
    targets: tuple[int, ...]
    source: Source = "explicit-list"

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ConfigurationError(f"qubit count must be >= 1, got {self.n}")
        clean = tuple(sorted({int(t) for t in self.targets}))
        for t in clean:
            if not 0 <= t < 1 << self.n:
                raise BoundsError(f"target index {t} outside [0, {1 << self.n}) for n={self.n}")
        object.__setattr__(self, "targets", clean)

    @property
    def N(self) -> int:
        return 1 << self.n

    @property
    def M(self) -> int:
        return len(self.targets)

    @property
    def is_empty(self) -> bool:
        return not self.targets

    @cached_property
    def target_array(self) -> np.ndarray:
        return np.array(self.targets, dtype=np.int64)

    @cached_property
    def _target_set(self) -> frozenset[int]:
        return frozenset(self.targets)

    def mask(self) -> np.ndarray:
        """Boolean length-N array, True on targets."""
        m = np.zeros(self.N, dtype=bool)
        m[self.target_array] = True
        return m


def from_targets(n: int, targets: Iterable[int]) -> OracleSpec:
    return OracleSpec(n, tuple(targets), "explicit-list")


def from_predicate(n: int, predicate: Callable[[int], bool]) -> OracleSpec:
    """Tabulate an arbitrary predicate over all ``2**n`` indices."""
    return OracleSpec(n, tuple(i for i in range(1 << n) if predicate(i)), "predicate-function")


@dataclass(frozen=True)
class RecordTable:
    """Unsorted directory of byte-string records; position is the basis index.

    Tables whose length is not a power of two are padded up; padding indices
    never match any query.
    """

    records: Sequence[bytes]
    case_insensitive: bool = False
    n: int = field(init=False)

    def __post_init__(self) -> None:
        records = tuple(r.encode("utf-8") if isinstance(r, str) else bytes(r) for r in self.records)
        if not records:
            raise ConfigurationError("record table is empty")
        object.__setattr__(self, "records", records)
        object.__setattr__(self, "n", max(1, math.ceil(math.log2(len(records)))))

    @classmethod
    def load(cls, path: str | Path, case_insensitive: bool = False) -> RecordTable:
        """One record per line of a UTF-8 file; line number is the index."""
        text = Path(path).read_text(encoding="utf-8")
        return cls([line.encode("utf-8") for line in text.splitlines()], case_insensitive)

    def matches(self, record: bytes, query: bytes) -> bool:
        if self.case_insensitive:
            return record.lower() == query.lower()
        return record == query


def from_table(table: RecordTable, query: bytes | str) -> OracleSpec:
    """Targets are the indices whose record matches ``query``; may be empty."""
    if isinstance(query, str):
        query = query.encode("utf-8")
    hits = [i for i, rec in enumerate(table.records) if table.matches(rec, query)]
    return OracleSpec(table.n, tuple(hits), "record-table")


def evaluate(oracle: OracleSpec, index: int) -> int:
    """``C(index)``: 1 if marked else 0."""
    if not 0 <= index < oracle.N:
        raise BoundsError(f"index {index} outside [0, {oracle.N})")
    return int(index in oracle._target_set)


def classical_linear_search(oracle: OracleSpec, rng: np.random.Generator) -> int:
    """Probe indices in a uniformly random order until a target turns up.

    Returns the number of condition evaluations. The probe order is a
    permutation, so no index is checked twice. Expected value for a single
    target is ``(N + 1) / 2``.
    """
    if oracle.is_empty:
        raise ConfigurationError("classical search needs at least one target")
    order = rng.permutation(oracle.N)
    hits = np.isin(order, oracle.target_array, assume_unique=True)
    return int(np.argmax(hits)) + 1
