import itertools
import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import noisysort.candidate_sort as cs
from noisysort.analysis import (
    appearance_bound,
    appearance_bound_literal,
    check_sum_log_bound,
)
from noisysort.candidate_sort import Process, candidate_set, merge_sort, reference_sort, sort
from noisysort.errors import BudgetExhausted, ModelViolation
from noisysort.generators import CorruptionPolicy, corrupt, gen_banded, gen_lower_bound
from noisysort.graph import AmbiguityParams, GroundTruth, TournamentGraph
from noisysort.oracle import VerificationOracle
from strategies import instances

CALIBRATION = json.loads((Path(__file__).resolve().parents[1] / "configs" / "calibration.json").read_text())


def run(g, truth, nu, budget=None):
    return sort(g, nu, VerificationOracle(truth, budget=budget))


# candidate sets


def test_candidate_set_banded_first_round():
    g, truth = gen_banded(10, 2, np.random.default_rng(1).permutation(10))
    nu = AmbiguityParams.symmetric(2)
    first = int(truth.order[0])
    assert g.simple_in_degree(first) == 7
    assert candidate_set(g, Process.ASCENDING, 1, nu, set(range(10)), set()) == {first}
    assert candidate_set(g, Process.DESCENDING, 1, nu, set(range(10)), set()) == {int(truth.order[-1])}


def test_candidate_set_all_two_cycles():
    g = TournamentGraph.all_two_cycles(7)
    nu = AmbiguityParams.symmetric(6)
    unsorted = {0, 2, 3, 6}
    for r in range(1, 8):
        assert candidate_set(g, Process.ASCENDING, r, nu, unsorted, set()) == unsorted
        assert candidate_set(g, Process.DESCENDING, r, nu, unsorted, {2}) == unsorted - {2}


def test_candidate_set_ground_truth_rounds():
    truth = GroundTruth.from_permutation(np.random.default_rng(2).permutation(9))
    g = TournamentGraph.ground_truth(truth)
    everyone = set(range(9))
    for r in range(1, 10):
        assert candidate_set(g, Process.ASCENDING, r, AmbiguityParams(0, 0), everyone, set()) >= {int(truth.order[r - 1])}
        remaining = {int(x) for x in truth.order[r - 1:]}
        assert candidate_set(g, Process.ASCENDING, r, AmbiguityParams(0, 0), remaining, set()) == {int(truth.order[r - 1])}


def test_threshold_uses_max_not_min():
    assert cs.degree_threshold(10, 1, 2) == 7
    assert cs.degree_threshold(10, 9, 2) == 0


# sort examples


def test_banded_hundred_needs_no_verifications():
    g, truth = gen_banded(100, 3, np.random.default_rng(0).permutation(100))
    res = run(g, truth, AmbiguityParams.symmetric(3))
    assert res.verifications == 0
    assert res.app == 100
    assert res.order == truth.order.tolist()


@pytest.mark.parametrize("n", [1, 2, 5, 40])
def test_ground_truth_graph(n):
    truth = GroundTruth.from_permutation(np.random.default_rng(n).permutation(n))
    res = run(TournamentGraph.ground_truth(truth), truth, AmbiguityParams(0, 0))
    assert res.verifications == 0
    assert res.appearances == [1] * n
    assert res.order == truth.order.tolist()


def test_corrupted_banded_within_calibrated_constant():
    g, truth = gen_banded(200, 4)
    h = corrupt(g, truth, 10, CorruptionPolicy.RANDOM, 1)
    oracle = VerificationOracle(truth)
    res = sort(h, AmbiguityParams.symmetric(4), oracle)
    assert res.order == reference_sort(200, VerificationOracle(truth)) == truth.order.tolist()
    assert res.verifications <= CALIBRATION["linear_C"] * 10


def test_lower_bound_instance_needs_k():
    inst = gen_lower_bound(12, 2)
    res = run(inst.graph, inst.truth, AmbiguityParams.symmetric(2))
    assert res.order == inst.truth.order.tolist()
    assert res.verifications >= 2


def test_lower_bound_queries_every_center_pair():
    for n, gamma in [(12, 2), (24, 2), (40, 4), (33, 3)]:
        inst = gen_lower_bound(n, gamma)
        oracle = VerificationOracle(inst.truth)
        sort(inst.graph, AmbiguityParams.symmetric(gamma), oracle)
        queried = oracle.queried_pairs()
        for a, b in inst.swap_pairs:
            assert (min(a, b), max(a, b)) in queried


def test_budget_exhaustion_carries_partial_result():
    inst = gen_lower_bound(12, 2)
    with pytest.raises(BudgetExhausted) as info:
        run(inst.graph, inst.truth, AmbiguityParams.symmetric(2), budget=1)
    partial = info.value.partial
    assert partial is not None and not partial.complete
    assert partial.verifications == 1
    assert None in partial.order


def test_model_violation_when_nothing_qualifies():
    g = TournamentGraph.all_two_cycles(5)
    with pytest.raises(ModelViolation):
        run(g, GroundTruth.identity(5), AmbiguityParams(0, 0))


def test_model_violation_on_heap_overflow():
    # a simple 3-cycle: all three clear the ascending threshold but the cap is 1
    m = np.zeros((3, 3), dtype=np.int8)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        m[a, b], m[b, a] = 1, -1
    with pytest.raises(ModelViolation, match="heap"):
        run(TournamentGraph(m), GroundTruth([1, 2, 3]), AmbiguityParams(1, 0))


def test_empty_and_singleton():
    assert run(TournamentGraph.all_two_cycles(0), GroundTruth([]), AmbiguityParams(0, 0)).order == []
    res = run(TournamentGraph.all_two_cycles(1), GroundTruth([4.0]), AmbiguityParams(0, 0))
    assert res.order == [0] and res.verifications == 0


# reference sort


def test_reference_sort_small_cases():
    o = VerificationOracle(GroundTruth([1.0]))
    assert reference_sort(1, o) == [0] and o.count == 0
    truth = GroundTruth.from_permutation([3, 7, 0, 5, 1, 6, 2, 4])
    assert reference_sort(8, VerificationOracle(truth)) == truth.order.tolist()


def test_reference_sort_worst_case_over_all_permutations():
    worst = 0
    for perm in itertools.permutations(range(8)):
        o = VerificationOracle(GroundTruth.from_permutation(perm))
        assert reference_sort(8, o) == np.argsort(perm).tolist()
        worst = max(worst, o.count)
    # n*ceil(log2 n) - 2**ceil(log2 n) + 1 for n = 8
    assert worst == 8 * 3 - 8 + 1 == 17


@given(st.lists(st.integers(), unique=True, max_size=60))
def test_merge_sort_matches_sorted(xs):
    assert merge_sort(xs, lambda a, b: a < b) == sorted(xs)


# invariants


@settings(max_examples=300, deadline=None)
@given(instances(max_n=12))
def test_sort_equals_reference_and_truth(instance):
    g, truth, nu, _ = instance
    res = run(g, truth, nu)
    assert res.order == reference_sort(g.n, VerificationOracle(truth)) == truth.order.tolist()


@settings(max_examples=40, deadline=None)
@given(instances(min_n=50, max_n=400))
def test_sort_correct_on_larger_instances(instance):
    g, truth, nu, _ = instance
    assert run(g, truth, nu).order == truth.order.tolist()


@pytest.mark.parametrize("n,nu", [(2000, 7), (1500, 40)])
def test_sort_correct_at_scale(n, nu):
    g, truth = gen_banded(n, nu, np.random.default_rng(n).permutation(n))
    h = corrupt(g, truth, 3 * n, CorruptionPolicy.RANDOM, n)
    assert run(h, truth, AmbiguityParams.symmetric(nu)).order == truth.order.tolist()


def test_zero_verifications_on_banded_below_half():
    for n in range(1, 60):
        for nu in range(n):
            if 2 * nu >= n:
                continue
            g, truth = gen_banded(n, nu, np.random.default_rng(n + nu).permutation(n))
            res = run(g, truth, AmbiguityParams.symmetric(nu))
            assert (res.verifications, res.app) == (0, n)


def test_banded_at_half_or_more_needs_verifications():
    # outside nu_plus + nu_minus < n the top and bottom blocks overlap
    for n in range(2, 40):
        for nu in range((n + 1) // 2, n):
            g, truth = gen_banded(n, nu)
            res = run(g, truth, AmbiguityParams.symmetric(nu))
            assert res.order == truth.order.tolist()
            assert res.verifications > 0


@settings(max_examples=200, deadline=None)
@given(instances(max_n=30))
def test_positions_split_into_prefix_and_suffix(instance):
    g, truth, nu, _ = instance
    res = run(g, truth, nu)
    labels = "".join(res.rounds_by_process)
    assert len(labels) == g.n
    assert labels == "A" * labels.count("A") + "D" * labels.count("D")


@settings(max_examples=200, deadline=None)
@given(instances(max_n=30))
def test_trace_and_appearance_bounds(instance):
    g, truth, nu, _ = instance
    res = run(g, truth, nu)
    assert sum(res.heap_sizes) == res.app
    assert len(res.round_trace) == g.n
    assert check_sum_log_bound(res.heap_sizes, res.app)
    assert np.all(np.array(res.appearances) <= appearance_bound(g, truth, nu))


def test_incremental_admission_matches_candidate_set(monkeypatch):
    seen = []
    original = cs._ProcessState.refresh

    def checked(self, n, unsorted):
        count = original(self, n, unsorted)
        expected = candidate_set(self.graph, self.process, self.round, self.nu, unsorted, set(self.heap))
        assert set(self.pending) == expected
        seen.append(count)
        return count

    monkeypatch.setattr(cs._ProcessState, "refresh", checked)
    for seed in range(30):
        g, truth = gen_banded(40, 3, np.random.default_rng(seed).permutation(40))
        h = corrupt(g, truth, 25, CorruptionPolicy.RANDOM, seed)
        nu = AmbiguityParams.symmetric(3)
        orig_init = cs._ProcessState.__init__

        def init(self, process, degrees, nu_cap, oracle, _g=h, _nu=nu):
            orig_init(self, process, degrees, nu_cap, oracle)
            self.graph, self.nu = _g, _nu

        monkeypatch.setattr(cs._ProcessState, "__init__", init)
        assert run(h, truth, nu).order == truth.order.tolist()
        monkeypatch.setattr(cs._ProcessState, "__init__", orig_init)
    assert seen


def test_literal_appearance_bound_can_fail():
    # order-5 element gains three correct in-edges from its larger two-cycle partners
    n, nu = 20, 3
    g, truth = gen_banded(n, nu)
    m = np.array(g.matrix)
    x = 4
    for y in (5, 6, 7):
        m[y, x], m[x, y] = 1, -1
    h = TournamentGraph(m)
    res = run(h, truth, AmbiguityParams.symmetric(nu))
    assert res.order == truth.order.tolist()
    assert res.appearances[x] > appearance_bound_literal(h, truth)[x]
    assert res.appearances[x] <= appearance_bound(h, truth, AmbiguityParams.symmetric(nu))[x]


def test_single_conversion_can_add_more_than_two_appearances():
    # smallest known case where one ambiguous edge costs four extra appearances
    g, truth = gen_banded(5, 2)
    m = np.array(g.matrix)
    m[3, 1], m[1, 3] = 1, -1
    h = TournamentGraph(m)
    nu = AmbiguityParams.symmetric(2)
    assert run(g, truth, nu).app == 5
    res = run(h, truth, nu)
    assert res.order == truth.order.tolist()
    assert res.app == 9
