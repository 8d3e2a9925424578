"""Seeded constructions for every input model.

All generators are pure functions of their parameters and seed. Per-pair
randomness in :func:`gen_jnd` comes from SplitMix64 keyed on
``(seed, i, j, word)``, so a pair's coin flips do not depend on how many
other pairs exist or in which order they are visited.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientTwoCycles, InvalidParameter
from .graph import BACKWARD, FORWARD, TWO_CYCLE, GroundTruth, TournamentGraph

_MASK64 = (1 << 64) - 1


class CorruptionPolicy(enum.Enum):
    RANDOM = "random"
    CORRECT = "correct"
    INCORRECT = "incorrect"


@dataclass(frozen=True)
class LowerBoundInstance:
    graph: TournamentGraph
    truth: GroundTruth
    swap_pairs: tuple  # k (element, element) center pairs
    gamma: int
    k: int


def _check_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed <= _MASK64:
        raise InvalidParameter(f"seed must be a 64-bit unsigned integer, got {seed}")
    return seed


def _splitmix64(x: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps modulo 2**64
    x = x + np.uint64(0x9E3779B97F4A7C15)
    x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
    return x ^ (x >> np.uint64(31))


def pair_words(seed: int, i: np.ndarray, j: np.ndarray, word: int) -> np.ndarray:
    """64 random bits for each pair ``(i[t], j[t])``; stream ``word`` of that pair."""
    base = _splitmix64(np.array([_check_seed(seed)], dtype=np.uint64))
    key = (i.astype(np.uint64) << np.uint64(32)) | j.astype(np.uint64)
    h = _splitmix64(key ^ base)
    return _splitmix64(h + np.uint64(word) * np.uint64(0xD1B54A32D192ED03))


def _banded_matrix(rank: np.ndarray, nu: int) -> np.ndarray:
    o = rank.astype(np.int16 if len(rank) < 2**15 else np.int32)
    diff = o[:, None] - o[None, :]
    m = np.sign(diff).astype(np.int8)
    m[np.abs(diff) <= nu] = TWO_CYCLE
    return m


def gen_banded(n: int, nu: int, truth_perm=None):
    """Two-cycle exactly on pairs within ``nu`` orders of each other; every other edge correct.

    Returns ``(graph, truth)``. ``truth_perm[i]`` is the 0-indexed order of
    element ``i`` (identity when omitted).
    """
    if n < 1:
        raise InvalidParameter(f"n must be positive, got {n}")
    if not 0 <= nu < n:
        raise InvalidParameter(f"need 0 <= nu < n, got nu={nu}, n={n}")
    truth = GroundTruth.identity(n) if truth_perm is None else GroundTruth.from_permutation(truth_perm)
    if truth.n != n:
        raise InvalidParameter("truth_perm length differs from n")
    return TournamentGraph._trusted(_banded_matrix(truth.rank, nu)), truth


def corrupt(g: TournamentGraph, truth: GroundTruth, k: int, policy=CorruptionPolicy.RANDOM, seed: int = 0):
    """Turn ``k`` uniformly chosen two-cycles into simple edges oriented per ``policy``."""
    policy = CorruptionPolicy(policy)
    seed = _check_seed(seed)
    if k < 0:
        raise InvalidParameter(f"k must be non-negative, got {k}")
    if k == 0:
        return g
    m = g.matrix
    ii, jj = np.nonzero(np.triu(m == TWO_CYCLE, 1))
    if k > len(ii):
        raise InsufficientTwoCycles(f"asked for {k} corruptions but only {len(ii)} two-cycles exist")
    rng = np.random.default_rng(seed)
    pick = np.sort(rng.choice(len(ii), size=k, replace=False))
    ii, jj = ii[pick], jj[pick]
    correct = np.sign(truth.values[ii] - truth.values[jj]).astype(np.int8)
    if policy is CorruptionPolicy.CORRECT:
        codes = correct
    elif policy is CorruptionPolicy.INCORRECT:
        codes = -correct
    else:
        codes = np.where(rng.integers(0, 2, size=k) == 1, FORWARD, BACKWARD).astype(np.int8)
    out = np.array(m, copy=True)
    out[ii, jj] = codes
    out[jj, ii] = -codes
    return TournamentGraph._trusted(out)


def delta_close_pairs(truth: GroundTruth, delta: int):
    """Element pairs ``(i, j)``, ``i < j``, with ``|value_i - value_j| <= delta``.

    Assumes integer values forming a permutation of ``1..n`` so that value
    distance equals order distance.
    """
    n = truth.n
    order = truth.order
    lo, hi = [], []
    for d in range(1, min(delta, n - 1) + 1):
        a, b = order[:-d], order[d:]
        lo.append(np.minimum(a, b))
        hi.append(np.maximum(a, b))
    if not lo:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(lo), np.concatenate(hi)


def _all_agree(seed: int, i: np.ndarray, j: np.ndarray, r: int):
    """Draw ``r`` fair comparisons per pair; return (all agree, agreed on i > j)."""
    all_ones = np.ones(len(i), dtype=bool)
    all_zeros = np.ones(len(i), dtype=bool)
    word = 0
    left = r
    while left > 0:
        take = min(left, 64)
        mask = np.uint64(_MASK64 if take == 64 else (1 << take) - 1)
        bits = pair_words(seed, i, j, word) & mask
        all_ones &= bits == mask
        all_zeros &= bits == 0
        left -= take
        word += 1
    return all_ones | all_zeros, all_ones


def gen_jnd(truth: GroundTruth, delta: int, r: int, seed: int) -> TournamentGraph:
    """Merge ``r`` crowd comparisons per pair under a just-noticeable-difference threshold.

    Pairs more than ``delta`` apart are always correct. For closer pairs each
    comparison is a fair coin; unanimous answers give a simple edge in the
    agreed direction and any disagreement gives a two-cycle.
    """
    n = truth.n
    seed = _check_seed(seed)
    if r < 1:
        raise InvalidParameter(f"r must be >= 1, got {r}")
    if not 0 <= delta <= max(n - 1, 0):
        raise InvalidParameter(f"need 0 <= delta <= n - 1, got delta={delta}, n={n}")
    vals = truth.values
    if not np.array_equal(np.sort(vals), np.arange(1, n + 1)):
        raise InvalidParameter("JND values must be a permutation of 1..n")
    m = np.sign(vals[:, None] - vals[None, :]).astype(np.int8)
    i, j = delta_close_pairs(truth, delta)
    if len(i):
        simple, i_wins = _all_agree(seed, i, j, r)
        codes = np.where(simple, np.where(i_wins, FORWARD, BACKWARD), TWO_CYCLE).astype(np.int8)
        m[i, j] = codes
        m[j, i] = -codes
    return TournamentGraph._trusted(m)


def lower_bound_k(n: int, gamma: int) -> int:
    return n // (2 * gamma + 2)


def gen_lower_bound(n: int, gamma: int) -> LowerBoundInstance:
    """Banded graph with ``k`` blocks whose center pairs cannot be told apart.

    In block ``t`` (1-indexed orders ``s+1 .. s+2*gamma+2`` with
    ``s = (t-1)(2*gamma+2)``) the center pair ``(a, a+1)``, ``a = s+gamma+1``,
    stays a two-cycle while ``{a-gamma, a}`` and ``{a+1, a+1+gamma}`` become
    correct simple edges. Every other element then sees ``a`` and ``a+1``
    identically, so transposing them is an automorphism of the input.
    """
    if not 1 <= gamma < (n - 2) // 2:
        raise InvalidParameter(f"need 1 <= gamma < floor((n-2)/2), got gamma={gamma}, n={n}")
    g, truth = gen_banded(n, gamma)
    k = lower_bound_k(n, gamma)
    m = np.array(g.matrix, copy=True)
    by_order = truth.order  # by_order[o-1] is the element of order o
    swaps = []
    for t in range(1, k + 1):
        a = (t - 1) * (2 * gamma + 2) + gamma + 1
        lo_side, center_lo = by_order[a - gamma - 1], by_order[a - 1]
        center_hi, hi_side = by_order[a], by_order[a + gamma]
        m[center_lo, lo_side], m[lo_side, center_lo] = FORWARD, BACKWARD
        m[hi_side, center_hi], m[center_hi, hi_side] = FORWARD, BACKWARD
        swaps.append((int(center_lo), int(center_hi)))
    return LowerBoundInstance(TournamentGraph._trusted(m), truth, tuple(swaps), gamma, k)
