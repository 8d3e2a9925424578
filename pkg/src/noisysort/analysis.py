"""Bound calculators and statistical checks used by tests and the harness.

Logarithms are base 2 throughout.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import InvalidParameter, InvalidTrace
from .graph import AmbiguityParams, GroundTruth, TournamentGraph, count_delta_close

SUM_LOG_SLACK = 1e-9


def jnd_bound(n: int, delta: int, r: int) -> float:
    """Constant-free driver ``n * delta * 2**-r`` of the expected JND verification count."""
    if n < 1 or r < 1 or not 0 <= delta < n:
        raise InvalidParameter(f"need r >= 1 and 0 <= delta < n, got n={n}, delta={delta}, r={r}")
    return n * delta * 2.0 ** (-r)


def ambiguous_edge_distribution(n: int, delta: int, r: int):
    """``(trials, p)`` of the binomial count of unanimous delta-close pairs."""
    return count_delta_close(n, delta), 2.0 ** (1 - r)


def check_sum_log_bound(trace, M: int) -> bool:
    """Whether ``sum(log c_i) <= m * log(M / m)`` holds for heap sizes ``trace``."""
    cs = [int(c) for c in trace]
    if any(c <= 0 for c in cs):
        raise InvalidTrace("heap sizes must be positive")
    m = len(cs)
    if m == 0:
        return True
    if M < m:
        raise InvalidTrace(f"M={M} is smaller than the trace length {m}")
    if sum(cs) > M:
        raise InvalidTrace(f"trace mass {sum(cs)} exceeds M={M}")
    lhs = sum(math.log2(c) for c in cs)
    return lhs <= m * math.log2(M / m) + SUM_LOG_SLACK


def mc_log_binomial_stats(n: int, p: float, trials: int, seed: int):
    """Monte Carlo mean and standard error of ``log2((X + n) / n)`` for ``X ~ Binom(n, p)``."""
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"p must lie in [0, 1], got {p}")
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if trials < 10_000:
        raise InvalidParameter(f"need at least 10000 trials, got {trials}")
    x = np.random.default_rng(seed).binomial(n, p, size=trials)
    y = np.log2((x + n) / n)
    return float(y.mean()), float(y.std(ddof=1) / math.sqrt(trials))


def mc_log_binomial(n: int, p: float, trials: int, seed: int) -> float:
    return mc_log_binomial_stats(n, p, trials, seed)[0]


def degree_excess(g: TournamentGraph, truth: GroundTruth):
    """Per-element ``(k2, k3)``: simple-degree surplus over the ground-truth tournament, floored at 0."""
    n = g.n
    o = truth.rank
    k2 = np.maximum(g.simple_in_degrees - (n - o), 0)
    k3 = np.maximum(g.simple_out_degrees - (o - 1), 0)
    return k2, k3


def appearance_bound_literal(g: TournamentGraph, truth: GroundTruth) -> np.ndarray:
    """``2 + k2 + k3`` with surpluses measured against the ground-truth degrees."""
    k2, k3 = degree_excess(g, truth)
    return 2 + k2 + k3


def appearance_bound_statement(g: TournamentGraph, truth: GroundTruth) -> np.ndarray:
    """``2 * k2 + k3``, the variant without the additive 2."""
    k2, k3 = degree_excess(g, truth)
    return 2 * k2 + k3


def appearance_bound(g: TournamentGraph, truth: GroundTruth, nu: AmbiguityParams) -> np.ndarray:
    """Per-element appearance cap that the algorithm provably respects.

    An element of order ``o`` joins the ascending heap once the threshold
    ``n - r - nu_plus`` drops to its in-degree and leaves by round ``o``, so
    it appears at most ``1 + d_in - (n - o - nu_plus)`` times there; the
    descending side is symmetric.
    """
    n = g.n
    o = truth.rank
    up = 1 + g.simple_in_degrees - (n - o - nu.nu_plus)
    down = 1 + g.simple_out_degrees - (o - 1 - nu.nu_minus)
    return np.maximum(up, 0) + np.maximum(down, 0)
