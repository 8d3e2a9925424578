"""Complete comparison tournaments with two-cycles, plus ground truth.

Edges are stored as an antisymmetric ``int8`` matrix ``m`` where, for
``i != j``::

    m[i, j] == +1   simple edge i -> j   (claims value[i] > value[j])
    m[i, j] == -1   simple edge j -> i
    m[i, j] ==  0   two-cycle

The diagonal is zero and carries no meaning. Every unordered pair has a
state, so completeness holds by construction.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import InvalidElement, InvalidPair, InvalidParameter, Unsupported

FORWARD, BACKWARD, TWO_CYCLE = 1, -1, 0


class EdgeState(enum.Enum):
    FORWARD = "fw"
    BACKWARD = "bw"
    TWO_CYCLE = "tc"

    @property
    def code(self) -> int:
        return _STATE_TO_CODE[self]

    @classmethod
    def from_code(cls, code: int) -> "EdgeState":
        return _CODE_TO_STATE[int(code)]


_STATE_TO_CODE = {EdgeState.FORWARD: FORWARD, EdgeState.BACKWARD: BACKWARD, EdgeState.TWO_CYCLE: TWO_CYCLE}
_CODE_TO_STATE = {v: k for k, v in _STATE_TO_CODE.items()}


@dataclass(frozen=True)
class AmbiguityParams:
    """Two-cycle caps: ``nu_plus`` with larger elements, ``nu_minus`` with smaller ones."""

    nu_plus: int
    nu_minus: int

    def __post_init__(self):
        if self.nu_plus < 0 or self.nu_minus < 0:
            raise InvalidParameter(f"ambiguity parameters must be non-negative, got {self}")

    @classmethod
    def symmetric(cls, nu: int) -> "AmbiguityParams":
        return cls(nu, nu)

    @property
    def is_symmetric(self) -> bool:
        return self.nu_plus == self.nu_minus

    def check(self, n: int) -> None:
        if n > 0 and (self.nu_plus >= n or self.nu_minus >= n):
            raise InvalidParameter(f"ambiguity parameters {self} must be < n={n}")


class GroundTruth:
    """Hidden distinct values and the ordering they induce.

    ``order[p]`` is the element with the (p+1)-th smallest value and
    ``rank[x]`` is the 1-indexed order of element ``x``.
    """

    def __init__(self, values):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1:
            raise InvalidParameter("values must be one-dimensional")
        if len(np.unique(values)) != len(values):
            raise InvalidParameter("ground-truth values must be pairwise distinct")
        values.flags.writeable = False
        self.values = values
        order = np.argsort(values, kind="stable")
        rank = np.empty(len(values), dtype=np.int64)
        rank[order] = np.arange(1, len(values) + 1)
        order.flags.writeable = False
        rank.flags.writeable = False
        self.order = order
        self.rank = rank

    @classmethod
    def from_permutation(cls, perm) -> "GroundTruth":
        """Element ``i`` gets value ``perm[i] + 1``; ``perm`` permutes ``range(n)``."""
        perm = np.asarray(perm, dtype=np.int64)
        if sorted(perm.tolist()) != list(range(len(perm))):
            raise InvalidParameter("truth_perm must be a permutation of range(n)")
        return cls(perm + 1)

    @classmethod
    def identity(cls, n: int) -> "GroundTruth":
        return cls(np.arange(1, n + 1))

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        return isinstance(other, GroundTruth) and np.array_equal(self.values, other.values)

    def __repr__(self):
        return f"GroundTruth(n={self.n})"


class TournamentGraph:
    """Immutable complete tournament over ``n`` elements."""

    def __init__(self, matrix):
        m = np.array(matrix, dtype=np.int8, copy=True)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidParameter("edge matrix must be square")
        if not np.array_equal(m, -m.T):
            raise InvalidParameter("edge matrix must be antisymmetric")
        if np.abs(m).max(initial=0) > 1:
            raise InvalidParameter("edge codes must be in {-1, 0, 1}")
        m.flags.writeable = False
        self._m = m

    @classmethod
    def _trusted(cls, m: np.ndarray) -> "TournamentGraph":
        # skips the O(n^2) antisymmetry check for generator output
        g = cls.__new__(cls)
        m = np.ascontiguousarray(m, dtype=np.int8)
        m.flags.writeable = False
        g._m = m
        return g

    @classmethod
    def from_edges(cls, n: int, edges) -> "TournamentGraph":
        """Build from ``(i, j, state)`` triples with ``i < j``; every pair exactly once."""
        m = np.zeros((n, n), dtype=np.int8)
        seen = np.zeros((n, n), dtype=bool)
        for i, j, state in edges:
            i, j = int(i), int(j)
            if not 0 <= i < j < n:
                raise InvalidPair(f"edge entries need 0 <= i < j < n, got ({i}, {j})")
            if seen[i, j]:
                raise InvalidPair(f"pair ({i}, {j}) listed twice")
            seen[i, j] = True
            code = EdgeState(state).code if not isinstance(state, EdgeState) else state.code
            m[i, j] = code
            m[j, i] = -code
        missing = n * (n - 1) // 2 - int(seen.sum())
        if missing:
            raise InvalidParameter(f"graph is incomplete: {missing} pairs missing")
        return cls._trusted(m)

    @classmethod
    def ground_truth(cls, truth: GroundTruth) -> "TournamentGraph":
        """All edges simple and correct."""
        v = truth.values
        return cls._trusted(np.sign(v[:, None] - v[None, :]).astype(np.int8))

    @classmethod
    def all_two_cycles(cls, n: int) -> "TournamentGraph":
        return cls._trusted(np.zeros((n, n), dtype=np.int8))

    @property
    def n(self) -> int:
        return self._m.shape[0]

    @property
    def matrix(self) -> np.ndarray:
        """Read-only view of the antisymmetric edge matrix."""
        return self._m

    def _check_element(self, x) -> int:
        x = int(x)
        if not 0 <= x < self.n:
            raise InvalidElement(f"element {x} out of range for n={self.n}")
        return x

    def edge_state(self, i, j) -> EdgeState:
        """State of pair ``{i, j}`` seen from ``i``: FORWARD means ``i -> j``."""
        i, j = int(i), int(j)
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise InvalidPair(f"invalid pair ({i}, {j}) for n={self.n}")
        return EdgeState.from_code(self._m[i, j])

    @cached_property
    def simple_in_degrees(self) -> np.ndarray:
        d = np.count_nonzero(self._m == BACKWARD, axis=1).astype(np.int64)
        d.flags.writeable = False
        return d

    @cached_property
    def simple_out_degrees(self) -> np.ndarray:
        d = np.count_nonzero(self._m == FORWARD, axis=1).astype(np.int64)
        d.flags.writeable = False
        return d

    @cached_property
    def two_cycle_degrees(self) -> np.ndarray:
        # the diagonal is 0 too, hence the -1
        d = np.count_nonzero(self._m == TWO_CYCLE, axis=1).astype(np.int64) - 1
        d.flags.writeable = False
        return d

    def simple_in_degree(self, x) -> int:
        return int(self.simple_in_degrees[self._check_element(x)])

    def simple_out_degree(self, x) -> int:
        return int(self.simple_out_degrees[self._check_element(x)])

    @property
    def num_two_cycles(self) -> int:
        return int(self.two_cycle_degrees.sum()) // 2

    def edges(self):
        """Yield ``(i, j, EdgeState)`` for every ``i < j`` in row-major order."""
        m = self._m
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j, _CODE_TO_STATE[int(m[i, j])]

    def relabel(self, perm) -> "TournamentGraph":
        """Graph whose element ``perm[x]`` plays the role of element ``x``."""
        perm = np.asarray(perm, dtype=np.int64)
        inv = np.empty_like(perm)
        inv[perm] = np.arange(len(perm))
        return TournamentGraph._trusted(self._m[np.ix_(inv, inv)])

    def __eq__(self, other):
        return isinstance(other, TournamentGraph) and np.array_equal(self._m, other._m)

    def __hash__(self):
        return hash(self._m.tobytes())

    def __repr__(self):
        return f"TournamentGraph(n={self.n}, two_cycles={self.num_two_cycles})"


def count_delta_close(n: int, delta: int) -> int:
    """Number of pairs of a permutation of ``1..n`` whose values differ by at most ``delta``."""
    if n < 1 or not 0 <= delta <= n - 1:
        raise InvalidParameter(f"need 0 <= delta <= n - 1, got n={n}, delta={delta}")
    return n * delta - (delta * delta + delta) // 2


@dataclass
class ValidationReport:
    passed: bool
    # (tail, head) of every simple edge pointing from the smaller to the larger value
    wrong_edges: list = field(default_factory=list)
    # (element, order, larger_tc, expected_larger, smaller_tc, expected_smaller)
    count_violations: list = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _two_cycle_counts(g: TournamentGraph, truth: GroundTruth):
    m = g.matrix
    v = truth.values
    tc = m == TWO_CYCLE
    np.fill_diagonal(tc, False)
    larger = v[None, :] > v[:, None]
    with_larger = np.count_nonzero(tc & larger, axis=1)
    with_smaller = np.count_nonzero(tc & ~larger, axis=1)
    return with_larger, with_smaller


def validate_nu_ambiguous(g: TournamentGraph, truth: GroundTruth, nu: AmbiguityParams) -> ValidationReport:
    if truth.n != g.n:
        raise InvalidParameter("ground truth and graph disagree on n")
    n = g.n
    m = g.matrix
    v = truth.values
    correct = np.sign(v[:, None] - v[None, :]).astype(np.int8)
    wrong = (m == FORWARD) & (correct == BACKWARD)
    wrong_edges = [(int(a), int(b)) for a, b in zip(*np.nonzero(wrong))]

    with_larger, with_smaller = _two_cycle_counts(g, truth)
    o = truth.rank
    exp_larger = np.minimum(n - o, nu.nu_plus)
    exp_smaller = np.minimum(o - 1, nu.nu_minus)
    bad = np.nonzero((with_larger != exp_larger) | (with_smaller != exp_smaller))[0]
    violations = [
        (int(x), int(o[x]), int(with_larger[x]), int(exp_larger[x]), int(with_smaller[x]), int(exp_smaller[x]))
        for x in bad
    ]
    return ValidationReport(not wrong_edges and not violations, wrong_edges, violations)


def count_ambiguous_simple(g: TournamentGraph, truth: GroundTruth, nu: AmbiguityParams) -> int:
    """Simple edges on pairs that are two-cycles in the banded base graph."""
    if not nu.is_symmetric:
        raise Unsupported("ambiguous-edge census needs nu_plus == nu_minus (banded base)")
    o = truth.rank.astype(np.int32)
    band = np.abs(o[:, None] - o[None, :]) <= nu.nu_plus
    simple = g.matrix == FORWARD
    return int(np.count_nonzero(simple & band))
