"""Command-line entry point: ``noisysort {gen,sort,experiment,selfcheck}``.

Exit codes: 0 success, 1 invalid input or usage, 2 internal failure
(including an exhausted verification budget).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .candidate_sort import sort
from .errors import BudgetExhausted, ExperimentAbort, ModelViolation, NoisySortError
from .experiment import ExperimentConfig, records_to_csv, run_experiment
from .generators import CorruptionPolicy, corrupt, gen_banded, gen_jnd, gen_lower_bound
from .graph import AmbiguityParams, GroundTruth, count_ambiguous_simple
from .io import read_graph, write_graph
from .oracle import VerificationOracle
from .selfcheck import run_selfcheck

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2

MODEL_FLAGS = {
    "banded": {"nu"},
    "corrupt": {"nu", "k", "policy"},
    "jnd": {"delta", "r"},
    "lowerbound": {"gamma"},
}
REQUIRED_FLAGS = {
    "banded": {"nu"},
    "corrupt": {"nu", "k"},
    "jnd": {"delta", "r"},
    "lowerbound": {"gamma"},
}
OPTIONAL_MODEL_FLAGS = ("nu", "k", "delta", "r", "gamma", "policy")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="noisysort", description="Sort noisy comparison tournaments with few verifications.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen.add_argument("--model", required=True, choices=sorted(MODEL_FLAGS))
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--nu", type=int)
    gen.add_argument("--k", type=int)
    gen.add_argument("--delta", type=int)
    gen.add_argument("--r", type=int)
    gen.add_argument("--gamma", type=int)
    gen.add_argument("--policy", choices=[p.value for p in CorruptionPolicy])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--shuffle", action="store_true", help="random element labels (banded/corrupt)")
    gen.add_argument("--redact", action="store_true", help="omit ground-truth values from the file")
    gen.add_argument("--out", required=True)

    srt = sub.add_parser("sort", help="run CandidateSort on a graph file")
    srt.add_argument("--in", dest="path", required=True)
    srt.add_argument("--nu-plus", type=int, required=True)
    srt.add_argument("--nu-minus", type=int, required=True)
    srt.add_argument("--budget", type=int)
    srt.add_argument("--report")

    exp = sub.add_parser("experiment", help="run a parameter sweep and write CSV")
    exp.add_argument("--config", required=True)
    exp.add_argument("--out", required=True)

    sub.add_parser("selfcheck", help="run the fast invariant suite")
    return parser


def _generate(args):
    given = {name for name in OPTIONAL_MODEL_FLAGS if getattr(args, name) is not None}
    extra = given - MODEL_FLAGS[args.model]
    if extra:
        raise UsageError(f"--{', --'.join(sorted(extra))} not valid with --model {args.model}")
    missing = REQUIRED_FLAGS[args.model] - given
    if missing:
        raise UsageError(f"--model {args.model} requires --{', --'.join(sorted(missing))}")

    meta = {"model": args.model, "n": args.n, "seed": args.seed}
    if args.model in ("banded", "corrupt"):
        perm = np.random.default_rng([args.seed, 1]).permutation(args.n) if args.shuffle else None
        g, truth = gen_banded(args.n, args.nu, perm)
        nu = args.nu
        meta["nu"] = nu
        if args.model == "corrupt":
            policy = CorruptionPolicy(args.policy or "random")
            g = corrupt(g, truth, args.k, policy, args.seed)
            meta.update(k=args.k, policy=policy.value)
    elif args.model == "jnd":
        truth = GroundTruth.identity(args.n)
        g = gen_jnd(truth, args.delta, args.r, args.seed)
        nu = args.delta
        meta.update(delta=args.delta, r=args.r, nu=nu)
    else:
        inst = gen_lower_bound(args.n, args.gamma)
        g, truth, nu = inst.graph, inst.truth, inst.gamma
        meta.update(gamma=inst.gamma, nu=nu, k=inst.k, swap_pairs=[list(p) for p in inst.swap_pairs])
    meta["two_cycles"] = g.num_two_cycles
    meta["ambiguous_simple"] = count_ambiguous_simple(g, truth, AmbiguityParams.symmetric(nu))
    return g, truth, meta


def cmd_gen(args) -> int:
    g, truth, meta = _generate(args)
    write_graph(args.out, g, None if args.redact else truth, meta)
    print(json.dumps(meta, sort_keys=True))
    return EXIT_OK


def _report(res, truth):
    return {
        "order": res.order,
        "verifications": res.verifications,
        "app": res.app,
        "trace": [list(t) for t in res.round_trace],
        "correct": res.complete and res.order == truth.order.tolist(),
    }


def _emit(report, path):
    text = json.dumps(report)
    if path:
        Path(path).write_text(text + "\n", encoding="utf-8")
    print(text)


def cmd_sort(args) -> int:
    g, truth, _ = read_graph(args.path)
    if truth is None:
        raise UsageError(f"{args.path} carries no ground truth; the simulated expert needs it")
    nu = AmbiguityParams(args.nu_plus, args.nu_minus)
    oracle = VerificationOracle(truth, budget=args.budget)
    try:
        res = sort(g, nu, oracle)
    except BudgetExhausted as exc:
        report = _report(exc.partial, truth) if exc.partial is not None else {"correct": False}
        report["error"] = "BudgetExhausted"
        _emit(report, args.report)
        print(f"noisysort: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(_report(res, truth), args.report)
    return EXIT_OK


def cmd_experiment(args) -> int:
    cfg = ExperimentConfig.load(args.config)
    records = run_experiment(cfg)
    Path(args.out).write_text(records_to_csv(records), encoding="utf-8")
    print(f"wrote {len(records)} records to {args.out}")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    return EXIT_OK if run_selfcheck() else EXIT_INVALID


COMMANDS = {"gen": cmd_gen, "sort": cmd_sort, "experiment": cmd_experiment, "selfcheck": cmd_selfcheck}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ModelViolation) as exc:
        print(f"noisysort: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ExperimentAbort as exc:
        print(f"noisysort: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (NoisySortError, ValueError, OSError) as exc:
        print(f"noisysort: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:
        print(f"noisysort: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
