"""Lower and upper bounds on the order of the smallest nonstable graph."""

import argparse
import json

from indstab.scan import SearchBudget, smallest_nonstable_search


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--exhaustive", type=int, default=7, help="scan all graphs up to this order")
    ap.add_argument("--join-d", type=int, default=10, help="largest independent set size in E_d + K_m")
    ap.add_argument("--corona-m", type=int, default=4)
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()
    budget = SearchBudget(exhaustive_max_n=args.exhaustive, join_max_d=args.join_d, corona_m=args.corona_m,
                          time_limit=args.time_limit, workers=args.workers)
    print(json.dumps(smallest_nonstable_search(budget).to_json(), indent=2))


if __name__ == "__main__":
    main()
