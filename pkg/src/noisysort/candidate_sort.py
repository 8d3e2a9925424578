"""CandidateSort: sort a noisy tournament with as few expert verifications as possible.

Two processes share one pool of unsorted elements. The ascending process
fixes orders 1, 2, ... from the bottom using a min-heap; the descending
process fixes n, n-1, ... from the top using a max-heap. In round ``r`` a
process admits every unsorted element whose simple degree clears
``max(n - r - nu, 0)`` (in-degree and ``nu_plus`` going up, out-degree and
``nu_minus`` coming down). A process whose round has a single candidate runs
without any verification and keeps the turn; otherwise the other process
gets a chance first, and the turn alternates after every round that needs
comparisons.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExhausted, ModelViolation
from .graph import AmbiguityParams, TournamentGraph
from .heap import IndexedHeap
from .oracle import VerificationOracle


class Process(enum.Enum):
    ASCENDING = "A"
    DESCENDING = "D"

    @property
    def opposite(self) -> "Process":
        return Process.DESCENDING if self is Process.ASCENDING else Process.ASCENDING


def degree_threshold(n: int, round_: int, nu_cap: int) -> int:
    """Minimum simple degree admitted to the heap in ``round_`` (1-indexed)."""
    return max(n - round_ - nu_cap, 0)


def candidate_set(g: TournamentGraph, process: Process, round_: int, nu: AmbiguityParams, unsorted, heap_members) -> set:
    """Unsorted elements outside the heap that clear ``process``'s threshold in ``round_``."""
    if process is Process.ASCENDING:
        degrees, cap = g.simple_in_degrees, nu.nu_plus
    else:
        degrees, cap = g.simple_out_degrees, nu.nu_minus
    thr = degree_threshold(g.n, round_, cap)
    return {x for x in unsorted if x not in heap_members and degrees[x] >= thr}


@dataclass
class SortResult:
    order: list  # element ids, smallest value first
    verifications: int
    app_ascending: list
    app_descending: list
    # (process, heap size at pop) per round, in execution order
    round_trace: list = field(default_factory=list)
    # which process fixed each position of ``order``
    rounds_by_process: list = field(default_factory=list)
    complete: bool = True

    @property
    def appearances(self) -> list:
        return [a + d for a, d in zip(self.app_ascending, self.app_descending)]

    @property
    def app(self) -> int:
        return sum(self.app_ascending) + sum(self.app_descending)

    @property
    def heap_sizes(self) -> list:
        return [c for _, c in self.round_trace]

    @property
    def sum_log_heap_sizes(self) -> float:
        return sum(math.log2(c) for c in self.heap_sizes)


class _ProcessState:
    def __init__(self, process, degrees, nu_cap, oracle):
        self.process = process
        self.degrees = degrees.tolist()
        self.nu_cap = nu_cap
        self.round = 1
        # stable sort keeps admission order deterministic
        self.by_degree = np.argsort(-degrees, kind="stable").tolist()
        self.cursor = 0
        self.pending: dict[int, None] = {}
        if process is Process.ASCENDING:
            self.heap = IndexedHeap(oracle.less)
        else:
            self.heap = IndexedHeap(lambda a, b: oracle.less(b, a))

    def refresh(self, n, unsorted):
        """Admit elements that now clear the threshold into ``pending``."""
        thr = degree_threshold(n, self.round, self.nu_cap)
        by_degree, degrees = self.by_degree, self.degrees
        while self.cursor < n and degrees[by_degree[self.cursor]] >= thr:
            x = by_degree[self.cursor]
            self.cursor += 1
            if x in unsorted and x not in self.heap:
                self.pending[x] = None
        return len(self.pending) + len(self.heap)

    def discard(self, x):
        self.pending.pop(x, None)
        if x in self.heap:
            self.heap.remove(x)


def sort(g: TournamentGraph, nu: AmbiguityParams, oracle: VerificationOracle) -> SortResult:
    """Recover the ground-truth order of ``g`` using ``oracle`` for verifications.

    ``g`` must arise from a ``nu``-ambiguous graph by turning two-cycles into
    simple edges; inputs outside that model raise :class:`ModelViolation`
    when detected. :class:`BudgetExhausted` propagates with ``partial`` set.
    """
    n = g.n
    states = {
        Process.ASCENDING: _ProcessState(Process.ASCENDING, g.simple_in_degrees, nu.nu_plus, oracle),
        Process.DESCENDING: _ProcessState(Process.DESCENDING, g.simple_out_degrees, nu.nu_minus, oracle),
    }
    heap_cap = nu.nu_plus + nu.nu_minus

    unsorted = set(range(n))
    tau = [None] * n
    by_process = [None] * n
    app = {Process.ASCENDING: [0] * n, Process.DESCENDING: [0] * n}
    trace = []

    def result(complete):
        return SortResult(
            order=list(tau),
            verifications=oracle.verification_count(),
            app_ascending=app[Process.ASCENDING],
            app_descending=app[Process.DESCENDING],
            round_trace=trace,
            rounds_by_process=by_process,
            complete=complete,
        )

    def subroutine(rho):
        s = states[rho]
        if not s.pending and not s.heap:
            raise ModelViolation(f"{rho.name} round {s.round}: no candidate clears the degree threshold")
        for x in list(s.pending):
            s.heap.push(x)
        s.pending.clear()
        members = list(s.heap)
        x = s.heap.pop()
        counts = app[rho]
        for y in members:
            counts[y] += 1
        trace.append((rho.value, len(members)))
        if len(s.heap) > heap_cap:
            raise ModelViolation(
                f"{rho.name} heap holds {len(s.heap)} elements after a pop, more than nu_plus + nu_minus = {heap_cap}"
            )
        pos = s.round - 1 if rho is Process.ASCENDING else n - s.round
        if tau[pos] is not None:
            raise ModelViolation(f"position {pos + 1} fixed twice")
        tau[pos] = x
        by_process[pos] = rho.value
        unsorted.discard(x)
        states[rho.opposite].discard(x)
        s.round += 1

    rho = Process.ASCENDING
    try:
        while unsorted:
            if states[rho].refresh(n, unsorted) == 1:
                subroutine(rho)
                continue
            rho = rho.opposite
            if states[rho].refresh(n, unsorted) == 1:
                subroutine(rho)
                continue
            rho = rho.opposite
            subroutine(rho)
            rho = rho.opposite
    except BudgetExhausted as exc:
        exc.partial = result(False)
        raise
    return result(True)


def merge_sort(items, less) -> list:
    """Top-down merge sort driven by a ``less(a, b)`` callback."""
    items = list(items)
    if len(items) <= 1:
        return items
    mid = len(items) // 2
    left = merge_sort(items[:mid], less)
    right = merge_sort(items[mid:], less)
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        if less(right[j], left[i]):
            out.append(right[j])
            j += 1
        else:
            out.append(left[i])
            i += 1
    out.extend(left[i:])
    out.extend(right[j:])
    return out


def reference_sort(n: int, oracle: VerificationOracle) -> list:
    """Sort ``range(n)`` with oracle comparisons only; ignores the graph entirely."""
    return merge_sort(range(n), oracle.less)
