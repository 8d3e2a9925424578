"""Run every sweep config under configs/sweeps and print a per-cell summary.

    python scripts/run_sweeps.py                 # all sweeps into results/
    python scripts/run_sweeps.py --only jnd      # one sweep
"""
import argparse
import time
from collections import defaultdict
from pathlib import Path

import numpy as np

from noisysort.experiment import MODEL_GRIDS, ExperimentConfig, run_experiment, write_csv

ROOT = Path(__file__).resolve().parents[1]


def summarize(cfg, records):
    grid = MODEL_GRIDS[cfg.model]
    cells = defaultdict(list)
    for rec in records:
        cells[tuple(rec.nu_plus if name == "nu" else getattr(rec, name) for name in grid)].append(rec)
    print(f"  cell = ({', '.join(grid)})")
    for key, recs in sorted(cells.items()):
        v = np.array([r.verifications for r in recs])
        bound = recs[0].bound
        ratio = f"  v/(bound+1)={v.mean() / (bound + 1):.3f}" if bound else ""
        print(f"  {key}: trials={len(recs)} verifications mean={v.mean():.2f} max={v.max()} bound={bound:g}{ratio}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--configs", default=str(ROOT / "configs" / "sweeps"))
    ap.add_argument("--out-dir", default=str(ROOT / "results"))
    ap.add_argument("--only", help="stem of a single config to run")
    args = ap.parse_args()

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for path in sorted(Path(args.configs).glob("*.json")):
        if args.only and path.stem != args.only:
            continue
        cfg = ExperimentConfig.load(path)
        start = time.perf_counter()
        records = run_experiment(cfg)
        write_csv(records, out_dir / f"{path.stem}.csv")
        print(f"{path.stem}: {len(records)} records in {time.perf_counter() - start:.1f}s")
        summarize(cfg, records)


if __name__ == "__main__":
    main()
