"""Fast invariant suite behind ``noisysort selfcheck``."""
from __future__ import annotations

import math
import time
from itertools import combinations

import numpy as np

from . import candidate_sort
from .analysis import check_sum_log_bound
from .generators import CorruptionPolicy, corrupt, gen_banded, gen_lower_bound
from .graph import AmbiguityParams, GroundTruth, count_delta_close
from .oracle import VerificationOracle


def brute_force_delta_close(n: int, delta: int) -> int:
    return sum(1 for a, b in combinations(range(1, n + 1), 2) if abs(a - b) <= delta)


def check_delta_close_identity(max_n: int = 50) -> bool:
    return all(
        count_delta_close(n, d) == brute_force_delta_close(n, d) for n in range(1, max_n + 1) for d in range(n)
    )


def compositions(total: int):
    """Every ordered tuple of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def worst_composition_gap(max_m: int = 20) -> float:
    """Largest ``sum(log2 c) - m*log2(M/m)`` over all compositions of every ``M <= max_m``.

    Walks the composition tree depth-first carrying the running log sum, which
    is far cheaper than materialising each tuple.
    """
    logs = [0.0] + [math.log2(c) for c in range(1, max_m + 1)]
    worst = -math.inf
    for total in range(1, max_m + 1):
        stack = [(total, 0, 0.0)]
        while stack:
            left, m, acc = stack.pop()
            if left == 0:
                worst = max(worst, acc - m * math.log2(total / m))
                continue
            for c in range(1, left + 1):
                stack.append((left - c, m + 1, acc + logs[c]))
    return worst


def check_sum_log_compositions(max_m: int = 20) -> bool:
    return worst_composition_gap(max_m) <= 1e-9


def check_zero_verifications(max_n: int = 200) -> bool:
    for n in (1, 2, 3, 5, 10, 31, 64, 100, max_n):
        for nu in sorted({0, 1, 2, 3, n // 4, (n - 1) // 2}):
            if nu >= n or 2 * nu >= n:
                continue
            perm = np.random.default_rng(n * 1000 + nu).permutation(n)
            g, truth = gen_banded(n, nu, perm)
            res = candidate_sort.sort(g, AmbiguityParams.symmetric(nu), VerificationOracle(truth))
            if res.verifications != 0 or res.app != n or res.order != truth.order.tolist():
                return False
    return True


def check_lower_bound_isomorphism(max_n: int = 40) -> bool:
    for n in range(6, max_n + 1):
        for gamma in range(1, (n - 2) // 2):
            inst = gen_lower_bound(n, gamma)
            for a, b in inst.swap_pairs:
                perm = np.arange(n)
                perm[a], perm[b] = b, a
                if inst.graph.relabel(perm) != inst.graph:
                    return False
    return True


def check_idempotent_cost() -> bool:
    oracle = VerificationOracle(GroundTruth([3.0, 1.0, 2.0, 5.0, 4.0]))
    pairs = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    for i, j in pairs:
        oracle.verify(i, j)
    for i, j in pairs[:3]:
        oracle.verify(j, i)
        oracle.verify(i, j)
    return oracle.verification_count() == len(pairs)


def check_trace_bound() -> bool:
    for seed in range(20):
        g, truth = gen_banded(60, 4)
        h = corrupt(g, truth, 15, CorruptionPolicy.RANDOM, seed)
        res = candidate_sort.sort(h, AmbiguityParams.symmetric(4), VerificationOracle(truth))
        if res.order != truth.order.tolist() or not check_sum_log_bound(res.heap_sizes, res.app):
            return False
    return True


CHECKS = (
    ("delta-close count identity (n <= 50)", check_delta_close_identity),
    ("sum-log bound over all compositions (M <= 20)", check_sum_log_compositions),
    ("zero verifications on banded graphs (n <= 200)", check_zero_verifications),
    ("lower-bound swap isomorphism (n <= 40)", check_lower_bound_isomorphism),
    ("idempotent verification cost", check_idempotent_cost),
    ("sum-log bound on corrupted sort traces", check_trace_bound),
)


def run_selfcheck(out=print) -> bool:
    ok = True
    for name, fn in CHECKS:
        start = time.perf_counter()
        try:
            passed = bool(fn())
        except Exception as exc:  # a crash is a failed check
            passed = False
            name = f"{name} [{type(exc).__name__}: {exc}]"
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {name}  ({time.perf_counter() - start:.2f}s)")
    return ok
