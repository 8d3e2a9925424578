"""Parameter sweeps: generate, sort, check against ground truth, record."""
from __future__ import annotations

import csv
import io
import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

import numpy as np

from .analysis import jnd_bound
from .candidate_sort import sort
from .errors import ExperimentAbort, InvalidParameter
from .generators import CorruptionPolicy, corrupt, gen_banded, gen_jnd, gen_lower_bound
from .graph import AmbiguityParams, GroundTruth, count_ambiguous_simple
from .oracle import VerificationOracle

MODELS = ("banded", "corrupt", "jnd", "lowerbound")

# grids each model sweeps over, in cell-enumeration order
MODEL_GRIDS = {
    "banded": ("n", "nu"),
    "corrupt": ("n", "nu", "k"),
    "jnd": ("n", "delta", "r"),
    "lowerbound": ("n", "gamma"),
}

CSV_COLUMNS = (
    "model", "n", "nu_plus", "nu_minus", "k", "delta", "r", "gamma",
    "seed", "verifications", "app", "ambiguous_simple", "bound", "ms",
)


@dataclass
class ExperimentConfig:
    model: str
    n: list = field(default_factory=list)
    nu: list = field(default_factory=list)
    k: list = field(default_factory=list)
    delta: list = field(default_factory=list)
    r: list = field(default_factory=list)
    gamma: list = field(default_factory=list)
    policy: str = "random"
    trials: int = 1
    base_seed: int = 0
    output: str | None = None
    shuffle: bool = True  # random element labels for banded / corrupt
    workers: int = 1

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.model not in MODELS:
            raise InvalidParameter(f"model must be one of {MODELS}, got {self.model!r}")
        wanted = MODEL_GRIDS[self.model]
        for name in ("n", "nu", "k", "delta", "r", "gamma"):
            grid = getattr(self, name)
            if not isinstance(grid, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in grid):
                raise InvalidParameter(f"grid {name!r} must be a list of integers")
            if name in wanted and not grid:
                raise InvalidParameter(f"model {self.model!r} needs a non-empty {name!r} grid")
            if name not in wanted and grid:
                raise InvalidParameter(f"grid {name!r} does not apply to model {self.model!r}")
        CorruptionPolicy(self.policy)
        if self.trials < 1:
            raise InvalidParameter("trials must be >= 1")
        if self.workers < 1:
            raise InvalidParameter("workers must be >= 1")

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise InvalidParameter(f"unknown config keys: {sorted(unknown)}")
        if "model" not in doc:
            raise InvalidParameter("config needs a 'model'")
        return cls(**doc)

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            doc = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InvalidParameter(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(doc, dict):
            raise InvalidParameter("config must be a JSON object")
        return cls.from_dict(doc)

    def cells(self):
        wanted = MODEL_GRIDS[self.model]
        for values in itertools.product(*(getattr(self, name) for name in wanted)):
            yield dict(zip(wanted, values))


@dataclass
class ExperimentRecord:
    model: str
    n: int
    nu_plus: int | None
    nu_minus: int | None
    k: int | None
    delta: int | None
    r: int | None
    gamma: int | None
    seed: int
    verifications: int
    app: int
    ambiguous_simple: int
    bound: float
    ms: float


def trial_seed(base_seed: int, cell_index: int, trial: int) -> int:
    words = np.random.SeedSequence([base_seed, cell_index, trial]).generate_state(2, dtype=np.uint32)
    return int(words[0]) << 32 | int(words[1])


def build_instance(model: str, cell: dict, seed: int, policy="random", shuffle=True):
    """Return ``(graph, truth, nu, k, bound)`` for one trial of one cell."""
    n = cell["n"]
    if model in ("banded", "corrupt"):
        nu = cell["nu"]
        # separate stream from the corruption draw
        perm = np.random.default_rng([seed, 1]).permutation(n) if shuffle else None
        g, truth = gen_banded(n, nu, perm)
        if model == "banded":
            return g, truth, AmbiguityParams.symmetric(nu), 0, 0.0
        k = cell["k"]
        h = corrupt(g, truth, k, CorruptionPolicy(policy), seed)
        return h, truth, AmbiguityParams.symmetric(nu), k, float(k)
    if model == "jnd":
        delta, r = cell["delta"], cell["r"]
        truth = GroundTruth.identity(n)
        g = gen_jnd(truth, delta, r, seed)
        return g, truth, AmbiguityParams.symmetric(delta), None, jnd_bound(n, delta, r)
    if model == "lowerbound":
        inst = gen_lower_bound(n, cell["gamma"])
        return inst.graph, inst.truth, AmbiguityParams.symmetric(inst.gamma), inst.k, float(inst.k)
    raise InvalidParameter(f"unknown model {model!r}")


def run_trial(model: str, cell: dict, seed: int, policy="random", shuffle=True) -> ExperimentRecord:
    g, truth, nu, k, bound = build_instance(model, cell, seed, policy, shuffle)
    oracle = VerificationOracle(truth)
    start = time.perf_counter()
    res = sort(g, nu, oracle)
    ms = (time.perf_counter() - start) * 1000.0
    if res.order != truth.order.tolist():
        raise ExperimentAbort(cell, seed)
    return ExperimentRecord(
        model=model,
        n=g.n,
        nu_plus=nu.nu_plus,
        nu_minus=nu.nu_minus,
        k=k,
        delta=cell.get("delta"),
        r=cell.get("r"),
        gamma=cell.get("gamma"),
        seed=seed,
        verifications=res.verifications,
        app=res.app,
        ambiguous_simple=count_ambiguous_simple(g, truth, nu),
        bound=bound,
        ms=round(ms, 3),
    )


def _run_job(job):
    return job[0], run_trial(*job[1:])


def run_experiment(cfg: ExperimentConfig) -> list:
    jobs = []
    for ci, cell in enumerate(cfg.cells()):
        for t in range(cfg.trials):
            jobs.append(((ci, t), cfg.model, cell, trial_seed(cfg.base_seed, ci, t), cfg.policy, cfg.shuffle))
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            done = list(pool.map(_run_job, jobs))
    else:
        done = [_run_job(job) for job in jobs]
    done.sort(key=lambda pair: pair[0])
    return [rec for _, rec in done]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = asdict(rec)
        writer.writerow({key: "" if row[key] is None else row[key] for key in CSV_COLUMNS})
    return buf.getvalue()


def write_csv(records, path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")
