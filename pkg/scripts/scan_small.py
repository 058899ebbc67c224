"""Exact (optionally numeric) scans of all graphs and all trees up to given orders."""

import argparse
import json
import time

from indstab.enumerate import enumerate_graphs, enumerate_trees
from indstab.scan import CHECKS, ScanConfig, scan


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=7, help="largest graph order")
    ap.add_argument("--trees", type=int, default=14, help="largest tree order")
    ap.add_argument("--numeric", action="store_true", help="also compare against numeric roots")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    checks = CHECKS if args.numeric else ()
    cfg = ScanConfig(workers=args.workers, numeric=args.numeric, checks=checks)
    for name, gen, top in (("graphs", enumerate_graphs, args.graphs), ("trees", enumerate_trees, args.trees)):
        t0 = time.perf_counter()
        rep = scan((g for n in range(1, top + 1) for g in gen(n)), cfg)
        out = rep.summary()
        out["corpus"] = f"{name} n<={top}"
        out["seconds"] = round(time.perf_counter() - t0, 2)
        print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
