"""Per-iteration gain in the marked amplitude against the 1/(2 sqrt N) floor.

For each N prints the iterations needed to pass k = 1/sqrt 2, the sqrt(2N)
ceiling, and the smallest observed gain relative to the floor.

    python scripts/growth_table.py --n-max 20
"""

import argparse
import math

from groversim.analysis import find_halfway_iteration, verify_growth_bound
from groversim.verify import growth_records


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=16)
    args = ap.parse_args()

    print(f"{'n':>3} {'N':>9} {'halfway':>8} {'sqrt(2N)':>9} {'min gain/floor':>15} {'ok':>4}")
    for n in range(args.n_min, args.n_max + 1):
        N = 1 << n
        records = growth_records(N)
        gains = [
            cur.delta_k / cur.bound
            for prev, cur in zip(records, records[1:])
            if 0 < prev.k_model < 1 / math.sqrt(2) and prev.l_model > 0
        ]
        ok = verify_growth_bound(records).passed
        print(f"{n:>3} {N:>9} {find_halfway_iteration(N):>8} {math.sqrt(2 * N):>9.2f} {min(gains):>15.4f} {str(ok):>4}")


if __name__ == "__main__":
    main()
