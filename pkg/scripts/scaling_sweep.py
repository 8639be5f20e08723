"""Classical probes vs quantum iterations across register sizes.

Writes the same CSV as ``groversim bench`` and adds the fitted exponents of
both columns against N (expect ~1 and ~0.5).

    python scripts/scaling_sweep.py --n-max 16 --trials 2000 --out results/scaling.csv
"""

import argparse
import sys
from pathlib import Path

import numpy as np

from groversim.cli import bench_rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=14)
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    rows = bench_rows(args.n_min, args.n_max, args.trials, args.seed)
    lines = ["n,N,classical_mean_probes,grover_iterations,success_prob"]
    lines += [",".join(repr(x) if isinstance(x, float) else str(x) for x in r) for r in rows]
    text = "\n".join(lines) + "\n"
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text)
    else:
        sys.stdout.write(text)

    logN = np.log([r[1] for r in rows])
    classical_slope = np.polyfit(logN, np.log([r[2] for r in rows]), 1)[0]
    quantum_slope = np.polyfit(logN, np.log([r[3] for r in rows]), 1)[0]
    print(f"# classical probes ~ N^{classical_slope:.3f}, quantum iterations ~ N^{quantum_slope:.3f}", file=sys.stderr)
    print(f"# worst quantum success probability {min(r[4] for r in rows):.4f}", file=sys.stderr)


if __name__ == "__main__":
    main()
