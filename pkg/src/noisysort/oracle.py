"""Simulated expert: always correct, memoized, and billed per distinct pair."""
from __future__ import annotations

import enum

from .errors import BudgetExhausted, InvalidPair
from .graph import GroundTruth


def _pair_key(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


class Ordering(enum.IntEnum):
    LESS = -1
    GREATER = 1


class VerificationOracle:
    def __init__(self, truth: GroundTruth, budget: int | None = None):
        self.truth = truth
        self.budget = budget
        self._values = truth.values.tolist()
        self._cache: set[tuple[int, int]] = set()

    @property
    def count(self) -> int:
        return len(self._cache)

    def verification_count(self) -> int:
        return len(self._cache)

    def verify(self, i, j) -> Ordering:
        """``GREATER`` iff element ``i`` has the larger value."""
        i, j = int(i), int(j)
        n = len(self._values)
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise InvalidPair(f"cannot verify pair ({i}, {j})")
        key = _pair_key(i, j)
        if key not in self._cache:
            if self.budget is not None and len(self._cache) >= self.budget:
                raise BudgetExhausted(self.budget, key)
            self._cache.add(key)
        return Ordering.GREATER if self._values[i] > self._values[j] else Ordering.LESS

    def less(self, i, j) -> bool:
        return self.verify(i, j) is Ordering.LESS

    def queried_pairs(self) -> frozenset:
        return frozenset(self._cache)
