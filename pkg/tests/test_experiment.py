import csv
import io
import json

import pytest

from noisysort.errors import ExperimentAbort, InvalidParameter
from noisysort.experiment import (
    CSV_COLUMNS,
    ExperimentConfig,
    build_instance,
    records_to_csv,
    run_experiment,
    run_trial,
    trial_seed,
)
import noisysort.experiment as experiment


def rows(records):
    return list(csv.DictReader(io.StringIO(records_to_csv(records))))


def test_banded_sweep_needs_no_verifications():
    cfg = ExperimentConfig(model="banded", n=[10, 100], nu=[0, 1, 3], trials=3)
    recs = run_experiment(cfg)
    assert len(recs) == 18
    assert all(r.verifications == 0 and r.app == r.n for r in recs)


def test_csv_header_and_determinism():
    cfg = ExperimentConfig(model="corrupt", n=[40], nu=[3], k=[0, 5, 20], trials=2, base_seed=11)
    a, b = rows(run_experiment(cfg)), rows(run_experiment(cfg))
    assert list(a[0]) == list(CSV_COLUMNS)
    strip = lambda rs: [{k: v for k, v in r.items() if k != "ms"} for r in rs]
    assert strip(a) == strip(b)


def test_corrupt_records_count_ambiguous_edges():
    cfg = ExperimentConfig(model="corrupt", n=[60], nu=[4], k=[0, 7, 30], trials=2, policy="incorrect")
    for r in run_experiment(cfg):
        assert r.ambiguous_simple == r.k


def test_parallel_matches_serial():
    cfg = dict(model="jnd", n=[64], delta=[3], r=[1, 3], trials=2, base_seed=5)
    serial = run_experiment(ExperimentConfig(**cfg))
    parallel = run_experiment(ExperimentConfig(workers=2, **cfg))
    assert [(r.seed, r.verifications) for r in serial] == [(r.seed, r.verifications) for r in parallel]


def test_lowerbound_records_bound_k():
    recs = run_experiment(ExperimentConfig(model="lowerbound", n=[24, 40], gamma=[2]))
    assert [r.bound for r in recs] == [4.0, 6.0]
    assert all(r.verifications >= r.bound for r in recs)


def test_trial_seeds_differ():
    seeds = {trial_seed(0, c, t) for c in range(10) for t in range(10)}
    assert len(seeds) == 100
    assert trial_seed(3, 1, 2) == trial_seed(3, 1, 2)


@pytest.mark.parametrize(
    "doc",
    [
        {"model": "banded", "n": [10]},
        {"model": "banded", "n": [10], "nu": [1], "k": [3]},
        {"model": "nope", "n": [10]},
        {"model": "banded", "n": [10], "nu": [1], "typo": 1},
        {"model": "corrupt", "n": [10], "nu": [1], "k": [1], "policy": "sideways"},
        {"model": "banded", "n": [10], "nu": [1], "trials": 0},
        {"n": [10]},
        {"model": "banded", "n": [10], "nu": ["1"]},
    ],
)
def test_config_errors(doc):
    with pytest.raises((InvalidParameter, ValueError)):
        ExperimentConfig.from_dict(doc)


def test_config_load_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"model": "jnd", "n": [32], "delta": [2], "r": [3], "trials": 2}))
    cfg = ExperimentConfig.load(path)
    assert list(cfg.cells()) == [{"n": 32, "delta": 2, "r": 3}]
    path.write_text("{not json")
    with pytest.raises(InvalidParameter):
        ExperimentConfig.load(path)


def test_wrong_output_aborts(monkeypatch):
    from noisysort.candidate_sort import SortResult

    def broken(g, nu, oracle):
        return SortResult(order=list(range(g.n))[::-1], verifications=0, app_ascending=[], app_descending=[])

    monkeypatch.setattr(experiment, "sort", broken)
    with pytest.raises(ExperimentAbort):
        run_trial("banded", {"n": 5, "nu": 1}, 123)


def test_build_instance_unknown_model():
    with pytest.raises(InvalidParameter):
        build_instance("mystery", {"n": 3}, 0)
