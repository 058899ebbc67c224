"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

from __future__ import annotations

import contextlib
import random
import time

import pytest

from indstab.enumerate import GRAPH_COUNTS, TREE_COUNTS, enumerate_graphs, enumerate_trees
from indstab.graph import (complete, complete_multipartite, corona, edge_list_is_tree, empty, graph_star_k,
                           join, lex_product)
from indstab.indpoly import (forest_indpoly, indpoly, indpoly_corona, indpoly_join, indpoly_kstar, indpoly_lex,
                             star_poly, triangular_multipartite_poly)
from indstab.graph import corona_edge_list
from indstab.poly import Poly
from indstab.roots import (RegionSpec, all_roots, find_min_join_clique_m, in_region, kstar_threshold,
                           max_real_part, star_small_root_check)
from indstab.scan import CHECKS, ScanConfig, SweepSpec, numeric_agrees, scan, sweep_family
from indstab.stability import Status, hb_stable, is_real_rooted, sturm_sequence

from conftest import brute_force_indpoly, random_graph
from test_stability import numeric_real_root_count, shifted_triangular_odd_part

from indstab.poly import reversal
from indstab.stability import count_real_roots

X = Poly.x()
ONE = Poly.const(1)

# polynomials from criteria 2-6 whose numeric verdict still has to be compared (criterion 7)
AGREEMENT_POOL: dict[tuple, str] = {}


@pytest.fixture
def criterion(capsys):
    @contextlib.contextmanager
    def run(number: int, title: str):
        notes: list[str] = []
        start = time.perf_counter()
        try:
            yield notes
        except BaseException as exc:
            with capsys.disabled():
                print(f"\nFAIL criterion {number:>2}: {title} ({type(exc).__name__}: {exc})")
            raise
        elapsed = time.perf_counter() - start
        with capsys.disabled():
            detail = "; ".join(notes)
            print(f"\nPASS criterion {number:>2}: {title} [{elapsed:.1f}s] {detail}")
    return run


def corpus_graphs(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_graphs(n)


def corpus_trees(max_n: int):
    for n in range(1, max_n + 1):
        yield from enumerate_trees(n)


def test_criterion_01_k33(criterion):
    with criterion(1, "i(K3,3) and its even/odd split") as notes:
        p = indpoly(complete_multipartite([3, 3])).poly
        assert p == Poly([1, 6, 6, 2])
        assert p.even_odd() == (Poly([1, 6]), Poly([6, 2]))
        notes.append(f"i = {p.coeffs}")


def test_criterion_02_graphs_to_seven(criterion):
    with criterion(2, "all graphs on <= 7 vertices are stable") as notes:
        t0 = time.perf_counter()
        counts = {n: sum(1 for _ in enumerate_graphs(n)) for n in range(1, 8)}
        rep = scan(corpus_graphs(7))
        elapsed = time.perf_counter() - t0
        assert counts == {n: GRAPH_COUNTS[n] for n in range(1, 8)} and counts[7] == 1044
        assert rep.scanned == sum(counts.values()) and rep.nonstable == 0
        assert elapsed < 10, f"took {elapsed:.1f}s"
        notes.append(f"{rep.scanned} graphs, 0 nonstable, {elapsed:.1f}s")


def test_criterion_03_trees_to_fourteen(criterion):
    with criterion(3, "all free trees on <= 14 vertices are stable") as notes:
        t0 = time.perf_counter()
        rep = scan(corpus_trees(14))
        elapsed = time.perf_counter() - t0
        assert rep.scanned == sum(TREE_COUNTS[n] for n in range(1, 15))
        assert sum(1 for _ in enumerate_trees(14)) == 3159
        assert rep.nonstable == 0
        assert elapsed < 60, f"took {elapsed:.1f}s"
        notes.append(f"{rep.scanned} trees, 0 nonstable, {elapsed:.1f}s")


def test_criterion_04_triangular(criterion):
    with criterion(4, "K_1,2,...,n stable for n <= 14, nonstable for 15..25") as notes:
        t0 = time.perf_counter()
        rep = sweep_family(SweepSpec("triangular_multipartite", 2, 25))
        status = {e.param: e.status for e in rep.entries}
        assert all(status[n] == "stable" for n in range(2, 15))
        assert all(status[n] == "nonstable" for n in range(15, 26))
        w15 = next(e for e in rep.entries if e.param == 15)
        assert abs(w15.max_re - 0.009053086185689) <= 1e-9
        assert all(e.explicit_agrees for e in rep.entries if e.explicit_agrees is not None)
        odd = shifted_triangular_odd_part(16)
        rep_odd = is_real_rooted(odd)
        rep_rev = is_real_rooted(reversal(odd)[0])
        assert not rep_odd and rep_odd.reason == "negative leading coefficient" and rep_odd.index == 8
        assert not rep_rev and rep_rev.reason == "negative leading coefficient"
        assert sturm_sequence(odd).chain[8].lc < 0
        elapsed = time.perf_counter() - t0
        assert elapsed < 30, f"took {elapsed:.1f}s"
        for e in rep.entries:
            AGREEMENT_POOL.setdefault(triangular_multipartite_poly(e.param).coeffs, e.label)
        notes.append(f"n=15 max Re {w15.max_re:.15f}; n=16 chain defect at index {rep_odd.index} "
                     f"(reversal: index {rep_rev.index})")


def test_criterion_05_stars(criterion):
    with criterion(5, "stars: exact n <= 300, roots n <= 100 in the rectangle, small-root certificate") as notes:
        t0 = time.perf_counter()
        rep = sweep_family(SweepSpec("star", 1, 300, numeric=False, explicit_check=False))
        assert rep.stable == 300 and rep.nonstable == 0
        box = RegionSpec.rectangle(-3, 0, -2, 2)
        worst = -1.0
        for n in range(1, 101):
            rs = all_roots(star_poly(n))
            re, _ = max_real_part(rs)
            worst = max(worst, re)
            assert re < 0 and in_region(rs, box).all_inside is True, n
        cert = star_small_root_check(22027, "0.1")
        assert cert.certified
        elapsed = time.perf_counter() - t0
        assert elapsed < 120, f"took {elapsed:.1f}s"
        notes.append(f"max Re over n<=100 is {worst:.4f}; certificate point {float(cert.point):.6f}")


def test_criterion_06_identities(criterion):
    with criterion(6, "identity formulas and brute force agree with explicit graphs") as notes:
        t0 = time.perf_counter()
        rng = random.Random(6)
        pairs = 0
        while pairs < 500:
            g = random_graph(rng, rng.randint(1, 7), rng.random())
            h = random_graph(rng, rng.randint(1, 7), rng.random())
            k = rng.randint(1, 3)
            if g.n * (h.n + 1) > 64 or g.n * 2 ** k > 64:
                continue
            pg, ph = indpoly(g).poly, indpoly(h).poly
            products = (
                (indpoly(join(g, h)).poly, indpoly_join(pg, ph)),
                (indpoly(corona(g, h)).poly, indpoly_corona(pg, ph, g.n)),
                (indpoly(lex_product(g, h)).poly, indpoly_lex(pg, ph)),
                (indpoly(graph_star_k(g, k)).poly, indpoly_kstar(pg, g.n, k)),
            )
            for explicit, formula in products:
                assert explicit == formula
                AGREEMENT_POOL.setdefault(formula.coeffs, "identity corpus")
            pairs += 1
        samples = 0
        for _ in range(1000):
            g = random_graph(rng, rng.randint(1, 10), rng.random())
            assert list(indpoly(g).poly.coeffs) == brute_force_indpoly(g)
            samples += 1
        elapsed = time.perf_counter() - t0
        assert elapsed < 300, f"took {elapsed:.1f}s"
        notes.append(f"{pairs} pairs x 4 identities, {samples} brute-force graphs")


def test_criterion_07_agreement(criterion):
    with criterion(7, "exact and numeric verdicts agree on the criteria 2-6 corpora") as notes:
        cfg = ScanConfig(numeric=True, checks=("agreement",))
        graphs = scan(corpus_graphs(7), cfg)
        trees = scan(corpus_trees(14), cfg)
        assert graphs.disagreements == [] and trees.disagreements == []
        extra = dict(AGREEMENT_POOL)
        for n in range(1, 101):
            extra.setdefault(star_poly(n).coeffs, f"K_1,{n}")
        extra.setdefault((1, 6, 6, 2), "K_3,3")
        for n in range(2, 26):
            extra.setdefault(triangular_multipartite_poly(n).coeffs, f"K_1..{n}")
        bad = []
        for coeffs, label in extra.items():
            p = Poly(coeffs)
            if p.degree < 1:
                continue
            status = hb_stable(p).status
            if not numeric_agrees(status, max_real_part(all_roots(p))[0]):
                bad.append(label)
        assert bad == []
        notes.append(f"{graphs.scanned} graphs, {trees.scanned} trees, {len(extra)} further polynomials, "
                     "0 disagreements")


def test_criterion_08_rhp_constructions(criterion):
    with criterion(8, "join and corona constructions reach the right half-plane") as notes:
        t0 = time.perf_counter()
        base = (1 + X) ** 4
        # independent oracle: exact verdict for each m in turn
        m_exact = next(m for m in range(1, 1000) if hb_stable(base + m * X).status is Status.NONSTABLE)
        res = find_min_join_clique_m(base)
        assert res.found and res.m == m_exact and res.witness.real > 0
        far = find_min_join_clique_m(base, 5.0, cap=5000)
        assert far.found and far.witness.real > 5
        rep = sweep_family(SweepSpec("corona_star_tree", 1, 60, {"m": 4}, stop_at_first_nonstable=True))
        hit = rep.first_nonstable
        assert hit is not None and hit.witness_is_tree and hit.max_re > 0
        order, edges = corona_edge_list(hit.param + 1, [(0, i) for i in range(1, hit.param + 1)], 4, [])
        assert edge_list_is_tree(order, edges)
        assert forest_indpoly(order, edges) == indpoly_corona(star_poly(hit.param), (ONE + X) ** 4, hit.param + 1)
        elapsed = time.perf_counter() - t0
        assert elapsed < 300, f"took {elapsed:.1f}s"
        notes.append(f"E4+K_m nonstable from m={res.m}; Re>5 at m={far.m}; "
                     f"K_1,{hit.param} o E4 ({hit.order} vertices) is a nonstable tree, max Re {hit.max_re:.5f}")


def test_criterion_09_kstar(criterion):
    with criterion(9, "k-star threshold stabilizes the join witness") as notes:
        t0 = time.perf_counter()
        g = join(empty(4), complete(20))
        p = indpoly(g).poly
        assert hb_stable(p).status is Status.NONSTABLE
        k_min = kstar_threshold(all_roots(p))
        q = indpoly_kstar(p, g.n, k_min)
        assert hb_stable(q).stable
        assert q == indpoly(graph_star_k(g, k_min)).poly if g.n * 2 ** k_min <= 64 else True
        below = [k for k in range(1, k_min) if not hb_stable(indpoly_kstar(p, g.n, k)).stable]
        above = [k for k in range(k_min, k_min + 3) if hb_stable(indpoly_kstar(p, g.n, k)).stable]
        assert above == list(range(k_min, k_min + 3))
        stabilizes = min([k for k in range(1, k_min + 1) if k not in below])
        elapsed = time.perf_counter() - t0
        assert elapsed < 120, f"took {elapsed:.1f}s"
        notes.append(f"k_min = {k_min}; observed stabilization at k = {stabilizes}; "
                     f"nonstable below threshold: {below or 'none'}")


def test_criterion_10_properties(criterion):
    with criterion(10, "property suites on the small-graph corpus") as notes:
        rep = scan(corpus_graphs(7), ScanConfig(checks=CHECKS, numeric=True))
        assert rep.violations == [] and rep.disagreements == []
        rng = random.Random(10)
        for _ in range(1000):
            deg = rng.randint(1, 12)
            cs = [rng.randint(-1000, 1000) for _ in range(deg)] + [rng.choice([-1, 1]) * rng.randint(1, 1000)]
            f = Poly(cs)
            assert count_real_roots(f) == numeric_real_root_count(f), cs
        notes.append(f"{rep.scanned} graphs x {len(CHECKS)} checks, 1000 Sturm/numeric root counts, 0 violations")
