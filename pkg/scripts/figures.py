"""SVG root plots: trees up to a given order, and the triangular multipartite graphs at n = 14, 15."""

import argparse
from pathlib import Path

from indstab.artifacts import write_roots_csv, write_svg
from indstab.enumerate import enumerate_trees
from indstab.indpoly import indpoly, star_poly, triangular_multipartite_poly
from indstab.roots import all_roots


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figures")
    ap.add_argument("--trees", type=int, default=12)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    tree_sets = [(f"tree{n}_{i}", all_roots(indpoly(t).poly))
                 for n in range(2, args.trees + 1) for i, t in enumerate(enumerate_trees(n))]
    write_roots_csv(out / "tree_roots.csv", tree_sets)
    write_svg(out / "tree_roots.svg", [z for _, rs in tree_sets for z in rs.roots],
              title=f"roots of i(T), trees on <= {args.trees} vertices")

    for n in (14, 15):
        rs = all_roots(triangular_multipartite_poly(n))
        write_svg(out / f"triangular_{n}.svg", rs.roots, title=f"roots of i(K_1,...,{n})")

    stars = [z for n in range(1, 61) for z in all_roots(star_poly(n)).roots]
    write_svg(out / "stars.svg", stars, title="roots of i(K_1,n), n <= 60")
    print(f"wrote {sorted(p.name for p in out.iterdir())}")


if __name__ == "__main__":
    main()
