"""Derive the frozen constants used by the acceptance suite.

Run once; the output is committed as configs/calibration.json and never
recomputed by the tests. Calibration seeds (CALIBRATION_SEED) are disjoint
from the acceptance seeds used in tests/test_acceptance.py.

Rules, fixed before looking at acceptance data:
  C   = 1.25 * max over trials of verifications / k
  C0  = 1.25 * max over trials of max(verifications - k, 0)
  C_J = 1.25 * max over cells of mean verifications / (n*delta*2**-r + 1)
each rounded up to two decimals.
"""
import argparse
import json
import math
from collections import defaultdict
from pathlib import Path

import numpy as np

from noisysort.experiment import ExperimentConfig, run_experiment

CALIBRATION_SEED = 9_000_001
SAFETY = 1.25

LINEAR = dict(model="corrupt", n=[500], nu=[5], k=[1, 2, 5, 10, 20, 50, 100], trials=30)
JND = dict(model="jnd", n=[1000], delta=[2, 8], r=[2, 4, 6, 8], trials=100)


def ceil2(x):
    return math.ceil(x * 100) / 100


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "configs" / "calibration.json"))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    recs = run_experiment(ExperimentConfig(**LINEAR, base_seed=CALIBRATION_SEED, workers=args.workers))
    c = ceil2(SAFETY * max(r.verifications / r.k for r in recs))
    c0 = ceil2(SAFETY * max(max(r.verifications - r.k, 0) for r in recs))

    recs = run_experiment(ExperimentConfig(**JND, base_seed=CALIBRATION_SEED, workers=args.workers))
    cells = defaultdict(list)
    for r in recs:
        cells[(r.delta, r.r)].append(r)
    ratios = {
        f"delta={d},r={rr}": float(np.mean([x.verifications for x in rs]) / (rs[0].bound + 1))
        for (d, rr), rs in sorted(cells.items())
    }
    c_j = ceil2(SAFETY * max(ratios.values()))

    doc = {
        "calibration_seed": CALIBRATION_SEED,
        "safety_factor": SAFETY,
        "linear_C": c,
        "linear_C0": c0,
        "jnd_C": c_j,
        "jnd_cell_ratios": {key: round(v, 4) for key, v in ratios.items()},
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(json.dumps(doc, indent=2))


if __name__ == "__main__":
    main()
