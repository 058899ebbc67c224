"""Verdict sweeps along the named families: triangular multipartite, stars, corona trees, joins, k-stars."""

import argparse
import json
import time

from indstab.poly import Poly
from indstab.roots import find_min_join_clique_m, kstar_threshold, all_roots, star_small_root_check
from indstab.scan import SweepSpec, sweep_family

BASE = [1, 4, 6, 4, 1]


def brief(rep) -> dict:
    out = rep.to_json()
    out["entries"] = [{k: e[k] for k in ("param", "status", "max_re") if k in e} for e in out["entries"]]
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--star-max", type=int, default=300)
    ap.add_argument("--corona-max", type=int, default=40)
    ap.add_argument("-o", "--output", help="write the JSON results here instead of stdout")
    args = ap.parse_args()

    results: dict = {}
    timed = []

    def run(name, fn):
        t0 = time.perf_counter()
        results[name] = fn()
        timed.append((name, time.perf_counter() - t0))

    run("triangular", lambda: brief(sweep_family(SweepSpec("triangular_multipartite", 2, 25))))
    run("star_exact", lambda: brief(sweep_family(
        SweepSpec("star", 1, args.star_max, numeric=False, explicit_check=False))))
    run("star_small_root", lambda: {"n": 22027, "certified": star_small_root_check(22027, "0.1").certified})
    run("corona_m4", lambda: brief(sweep_family(
        SweepSpec("corona_star_tree", 1, args.corona_max, {"m": 4}, stop_at_first_nonstable=True))))

    def join():
        base = Poly(BASE)
        first, far = find_min_join_clique_m(base), find_min_join_clique_m(base, 5.0, cap=5000)
        return {"first_nonstable_m": first.m, "first_m_with_re_above_5": far.m}
    run("join_e4", join)

    def kstar():
        p = Poly(BASE) + 20 * Poly.x()
        k = kstar_threshold(all_roots(p))
        rep = sweep_family(SweepSpec("kstar", 1, k + 2, {"base": list(p.coeffs), "order": 24}))
        return {"k_min": k, **brief(rep)}
    run("kstar_e4_k20", kstar)

    text = json.dumps(results, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    for name, sec in timed:
        print(f"{name:>16}: {sec:6.1f}s")


if __name__ == "__main__":
    main()
