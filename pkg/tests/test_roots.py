import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indstab.aberth import AberthConfig
from indstab.graph import complete, cycle, empty, join
from indstab.indpoly import indpoly, indpoly_corona, indpoly_kstar, star_poly, triangular_multipartite_poly
from indstab.poly import Poly
from indstab.roots import (DEGREE_CAP, ComplexRootSet, RegionSpec, RootFindingError, all_roots,
                           find_min_join_clique_m, in_region, kstar_threshold, max_real_part,
                           max_real_part_precise, mobius_disk_check, star_root_transfer, star_small_root_check)
from indstab.stability import stability_verdict

from conftest import graphs

X = Poly.x()


def fixed_roots(*roots: complex) -> ComplexRootSet:
    n = len(roots)
    return ComplexRootSet(tuple(complex(r) for r in roots), (0.0,) * n, (0.0,) * n, n, 53, True)


def multiset_close(a, b, tol=1e-7) -> bool:
    left = list(b)
    for z in a:
        j = min(range(len(left)), key=lambda k: abs(left[k] - z))
        if abs(left[j] - z) > tol * max(1.0, abs(z)):
            return False
        left.pop(j)
    return not left


class TestAllRoots:
    def test_linear(self):
        rs = all_roots(1 + 2 * X)
        assert rs.degree == 1 and rs.converged
        assert rs.roots[0] == pytest.approx(-0.5, abs=1e-15)
        assert max_real_part(rs)[0] == pytest.approx(-0.5, abs=1e-15)

    def test_triple_root_clusters(self):
        rs = all_roots((1 + X) ** 3)
        assert len(rs) == 3 and rs.clusters == ((complex(-1), 3),)

    def test_triangular_fifteen(self):
        rs = all_roots(triangular_multipartite_poly(15))
        re, z = max_real_part(rs)
        assert abs(re - 0.009053086185689) < 1e-15
        assert abs(z.imag) > 0.1
        assert abs(float(max_real_part_precise(rs)) - 0.009053086185689) < 1e-15

    def test_join_is_right_half_plane(self):
        assert max_real_part(all_roots((1 + X) ** 4 + 20 * X))[0] > 0

    def test_deterministic(self):
        p = star_poly(60)
        assert all_roots(p) == all_roots(p)

    def test_cauchy_start_agrees(self):
        p = triangular_multipartite_poly(12)
        a = all_roots(p)
        b = all_roots(p, AberthConfig(init="cauchy"))
        assert multiset_close(a.roots, b.roots, 1e-10)

    def test_errors(self):
        with pytest.raises(ValueError):
            all_roots(Poly.const(3))
        with pytest.raises(ValueError):
            all_roots(X ** (DEGREE_CAP + 1) + 1)
        bad = ComplexRootSet((0j,), (1.0,), (1.0,), 1, 53, False)
        with pytest.raises(RootFindingError):
            max_real_part(bad)

    @given(st.lists(st.integers(1, 40), min_size=1, max_size=14))
    def test_residuals_count_and_symmetry(self, cs):
        p = Poly([1] + cs)
        rs = all_roots(p)
        assert rs.converged and len(rs.roots) == p.degree
        assert all(r <= 1e-12 for r in rs.residuals)
        # conjugate pairs
        assert multiset_close(rs.roots, [z.conjugate() for z in rs.roots], 1e-9)
        # roots multiply out to the polynomial
        assert math.prod(-z for z in rs.roots) * p.lc == pytest.approx(1, rel=1e-6)


class TestRegions:
    def test_star_fifty_in_rectangle(self):
        rs = all_roots(star_poly(50))
        assert in_region(rs, RegionSpec.rectangle(-3, 0, -2, 2)).all_inside is True

    def test_halfplane(self):
        assert in_region(all_roots(1 + 2 * X), RegionSpec.halfplane(0)).all_inside is True
        rs = all_roots(triangular_multipartite_poly(15))
        res = in_region(rs, RegionSpec.halfplane(0))
        assert res.all_inside is False and res.inside.count(False) == 2

    def test_indeterminate(self):
        rs = ComplexRootSet((complex(1e-9, 1),), (1e-9,), (1e-6,), 1, 53, True)
        assert in_region(rs, RegionSpec.halfplane(0)).all_inside is None

    def test_bad_geometry(self):
        with pytest.raises(ValueError):
            RegionSpec.rectangle(0, -1, 0, 1)
        with pytest.raises(ValueError):
            RegionSpec.disk(0, 0)
        with pytest.raises(ValueError):
            RegionSpec("triangle", ())

    def test_stars_to_one_hundred(self):
        box = RegionSpec.rectangle(-3, 0, -2, 2)
        for n in range(1, 101):
            rs = all_roots(star_poly(n))
            assert max_real_part(rs)[0] < 0, n
            assert in_region(rs, box).all_inside is True, n


class TestStarTransfer:
    def test_examples(self):
        assert star_root_transfer(fixed_roots(-1), 1, 1) == [complex(-0.5)]
        # K2 has i = 1 + 2x, and K2* is the path on four vertices
        z = star_root_transfer(all_roots(1 + 2 * X), 1, 2)
        assert multiset_close(z, [-1 / 3, -1])
        assert multiset_close(all_roots(Poly([1, 4, 3])).roots, z)

    def test_pole_guarded(self):
        with pytest.raises(ZeroDivisionError):
            star_root_transfer(fixed_roots(0.5), 2, 1)
        with pytest.raises(ValueError):
            star_root_transfer(fixed_roots(-1), 0, 1)

    @pytest.mark.parametrize("g", [cycle(5), complete(3), join(empty(4), complete(3)), empty(3)])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_matches_kstar_roots(self, g, k):
        p = indpoly(g).poly
        predicted = star_root_transfer(all_roots(p), k, g.n)
        actual = all_roots(indpoly_kstar(p, g.n, k))
        assert len(predicted) == actual.degree
        assert multiset_close(predicted, actual.roots, 1e-6)

    def test_sign_law(self):
        p = (1 + X) ** 4 + 20 * X
        rs = all_roots(p)
        for k in range(1, 4):
            for r, z in zip(rs.roots, star_root_transfer(rs, k, 24)):
                if k > r.real / abs(r) ** 2:
                    assert z.real < 0


class TestKStarThreshold:
    def test_examples(self):
        assert kstar_threshold(all_roots(1 + 2 * X)) == 1
        assert kstar_threshold(fixed_roots(0.5)) == 3
        assert kstar_threshold(fixed_roots(1.0)) == 2

    def test_join_witness(self):
        n = 24
        p = indpoly(join(empty(4), complete(20))).poly
        assert not stability_verdict(p).stable
        k = kstar_threshold(all_roots(p))
        assert k == 1
        assert stability_verdict(indpoly_kstar(p, n, k)).stable


class TestMobius:
    def test_examples(self):
        assert mobius_disk_check(fixed_roots(-1)) is True
        assert mobius_disk_check(fixed_roots(1 / 3)) is False

    @given(graphs(max_n=7))
    def test_stable_graphs_outside_disk(self, g):
        p = indpoly(g).poly
        if p.degree < 1:
            return
        assert stability_verdict(p).stable
        assert mobius_disk_check(all_roots(p)) is True
        assert stability_verdict(indpoly_corona(p, 1 + X, g.n)).stable


class TestJoinSearch:
    def test_threshold(self):
        res = find_min_join_clique_m((1 + X) ** 4)
        assert res.found and res.m == 20 == res.first_nonstable
        assert res.witness.real > 0
        assert all(re <= 1e-12 for m, re in res.trend if m < 20)

    def test_target_five(self):
        res = find_min_join_clique_m((1 + X) ** 4, 5.0, cap=3000)
        assert res.m == 2040 and res.witness.real > 5
        tail = [re for m, re in res.trend if m >= 100]
        assert all(a < b for a, b in zip(tail, tail[1:]))

    def test_degree_three_not_found(self):
        res = find_min_join_clique_m((1 + X) ** 3, cap=300)
        assert not res.found and res.first_nonstable is None


class TestSmallRoot:
    def test_value_at_zero(self):
        assert star_poly(3000)(0) == 1

    @pytest.mark.parametrize("n,eps", [(8, Fraction(1, 2)), (22027, Fraction(1, 10))])
    def test_certified(self, n, eps):
        cert = star_small_root_check(n, eps)
        assert cert.certified and cert.exact_sign == -1
        assert -eps < cert.point < 0
        assert cert.point >= Fraction(-1) / Fraction(math.log(n)) - Fraction(1, 1 << 19)

    def test_bisection_oracle(self):
        f = lambda t: t + (1 + t) ** 8
        lo, hi = -0.5, 0.0
        assert f(lo) < 0 < f(hi)
        for _ in range(60):
            mid = (lo + hi) / 2
            lo, hi = (mid, hi) if f(mid) < 0 else (lo, mid)
        assert -0.5 < hi < 0
        assert star_small_root_check(8, 0.5).point < hi

    def test_regime_checked(self):
        with pytest.raises(ValueError):
            star_small_root_check(7, Fraction(1, 2))
        with pytest.raises(ValueError):
            star_small_root_check(100, 2)


def test_unit_circle_roots_are_accurate():
    rng = random.Random(3)
    for _ in range(20):
        d = rng.randint(2, 30)
        rs = all_roots(X ** d - 1)
        expected = [cmath.exp(2j * math.pi * k / d) for k in range(d)]
        assert multiset_close(rs.roots, expected, 1e-12)
