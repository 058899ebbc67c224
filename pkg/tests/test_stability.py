import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from indstab.enumerate import enumerate_graphs
from indstab.graph import complete_multipartite, cycle, independence_number, is_claw_free
from indstab.indpoly import indpoly, triangular_multipartite_poly
from indstab.poly import Poly, poly_divmod, squarefree_part
from indstab.roots import all_roots
from indstab.stability import (INF, Interlacing, Mode, NotRealRootedError, Status, count_real_roots, hb_stable,
                               interlaces, is_real_rooted, isolate_real_roots, sign_variations, stability_verdict,
                               sturm_sequence)

X = Poly.x()


def raw_sturm_chain(f: Poly) -> list[Poly]:
    """Unnormalized chain over the rationals, straight from the definition."""
    chain = [f, f.derivative()]
    while True:
        _, r = poly_divmod(chain[-2], chain[-1])
        if r.is_zero():
            return chain
        chain.append(-r)


def numeric_real_root_count(f: Poly) -> int:
    q = squarefree_part(f)
    if q.degree < 1:
        return 0
    rs = all_roots(q)
    assert rs.converged
    return sum(1 for z, rad in zip(rs.roots, rs.radii) if abs(z.imag) <= rad)


def shifted_triangular_odd_part(n: int) -> Poly:
    """Odd part of x * i(K_{1,...,n}) = (1+x)^(n+1) - n x - 1."""
    g = (1 + X) ** (n + 1) - n * X - 1
    assert g == X * triangular_multipartite_poly(n)
    return g.even_odd()[1]


class TestSturmSequence:
    def test_x2_minus_one(self):
        seq = sturm_sequence(X ** 2 - 1)
        assert seq.chain == (X ** 2 - 1, X, Poly.const(1))
        for got, raw in zip(seq.chain, [X ** 2 - 1, 2 * X, Poly.const(1)]):
            ratio = Fraction(raw.lc) / got.lc
            assert ratio > 0 and got * ratio == raw

    def test_repeated_root_ends_early(self):
        seq = sturm_sequence(X ** 2)
        assert seq.degrees() == [2, 1]

    def test_linear(self):
        seq = sturm_sequence(1 + 6 * X)
        assert seq.degrees() == [1, 0] and all(p.lc > 0 for p in seq.chain)

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            sturm_sequence(Poly())

    def test_scalars_reproduce_definition(self):
        f = Poly([3, -7, 0, 5, 2, -1, 4])
        seq = sturm_sequence(f)
        raw = raw_sturm_chain(f)
        assert len(raw) == len(seq.chain)
        for stored, scalar, term in zip(seq.chain, seq.scalars, raw):
            assert scalar > 0
            assert stored == term * scalar


class TestSignVariations:
    def test_examples(self):
        seq = sturm_sequence(X ** 2 - 1)
        assert seq.signs_at(-2) == [1, -1, 1] and seq.variations(-2) == 2
        assert seq.variations(2) == 0
        assert sign_variations(sturm_sequence(1 + 6 * X), 0) == 0

    def test_zeros_skipped(self):
        assert sign_variations([1, 0, -1, 0, 0, 1]) == 2
        # at x = 1 the first term vanishes
        assert sturm_sequence(X ** 2 - 1).variations(1) == 0

    def test_infinities(self):
        seq = sturm_sequence(X ** 3 - X)
        assert seq.variations(-INF) - seq.variations(INF) == 3

    @given(st.lists(st.integers(-20, 20), min_size=2, max_size=7), st.fractions(-10, 10, max_denominator=9))
    def test_normalization_keeps_variations(self, cs, c):
        f = Poly(cs)
        if f.degree < 1:
            return
        seq = sturm_sequence(f)
        raw = raw_sturm_chain(f)
        for point in (c, -INF, INF):
            if point in (INF, -INF):
                raw_signs = [(1 if p.lc > 0 else -1) * ((-1) ** p.degree if point == -INF else 1) for p in raw]
            else:
                raw_signs = [(v > 0) - (v < 0) for v in (p(point) for p in raw)]
            assert sign_variations(raw_signs) == seq.variations(point)


class TestCountRealRoots:
    def test_examples(self):
        assert count_real_roots(X ** 2 - 1, -2, 2) == 2
        assert count_real_roots(X ** 2 + 1) == 0
        even, _ = ((1 + X) ** 4 + 20 * X).even_odd()
        assert even == 1 + 6 * X + X ** 2
        assert count_real_roots(even, -INF, 0) == 2

    def test_endpoint_roots(self):
        f = (X - 1) * (X + 1) * (X - 3)
        assert count_real_roots(f, -1, 3) == 1
        assert count_real_roots(f, Fraction(-1), Fraction(1)) == 0
        assert count_real_roots(f, 3, 3) == 0

    def test_multiple_roots_counted_once(self):
        assert count_real_roots((X + 1) ** 3 * (X - 2)) == 2

    def test_matches_numeric_count(self):
        rng = random.Random(1729)
        for _ in range(1000):
            deg = rng.randint(1, 12)
            cs = [rng.randint(-1000, 1000) for _ in range(deg)] + [rng.choice([-1, 1]) * rng.randint(1, 1000)]
            f = Poly(cs)
            assert count_real_roots(f) == numeric_real_root_count(f), cs


class TestRealRooted:
    def test_examples(self):
        assert is_real_rooted((1 + X) ** 3)
        rep = is_real_rooted(X ** 2 + 1)
        assert not rep and rep.reason == "negative leading coefficient" and rep.index == 2

    def test_gap(self):
        rep = is_real_rooted(X ** 4 + 1)
        assert not rep and rep.reason == "gap in degree"

    def test_triangular_sixteen_odd_part(self):
        f = shifted_triangular_odd_part(16)
        rep = is_real_rooted(f)
        assert not rep and rep.reason == "negative leading coefficient" and rep.index == 8
        assert sturm_sequence(f).chain[8].lc < 0
        raw = raw_sturm_chain(f)
        assert len(raw) == 9 and raw[8].degree == 0
        assert raw[8][0] == -Fraction(1577448937796744128202619637524087852027658290220375925735260560,
                                      79627136162551065499783779429209235652424929298356031742670249)

    def test_triangular_fifteen_odd_part_is_real_rooted(self):
        # at n = 15 the failure is in the interlacing, not in real-rootedness
        assert is_real_rooted(shifted_triangular_odd_part(15))

    def test_full_chain_cross_check(self):
        rep = is_real_rooted((X + 1) ** 2 * (X + 2) * (X + 5), stop_at_defect=False)
        assert rep and rep.distinct_real_roots == rep.squarefree_degree == 3

    @given(st.lists(st.integers(-6, 6), min_size=1, max_size=6), st.integers(-3, 3))
    def test_product_of_linear_factors(self, roots, shift):
        f = Poly.const(1)
        for r in roots:
            f = f * (X - r - shift)
        assert is_real_rooted(f)
        assert not is_real_rooted(f * (X ** 2 + 1))


class TestIsolation:
    def test_linear(self):
        iso = isolate_real_roots(1 + 6 * X)
        (a, b), = iso.intervals
        assert a < Fraction(-1, 6) < b

    def test_quadratic(self):
        iso = isolate_real_roots(1 + 6 * X + X ** 2)
        roots = (-3 - 2 * math.sqrt(2), -3 + 2 * math.sqrt(2))
        assert len(iso) == 2
        (a0, b0), (a1, b1) = iso.intervals
        assert b0 <= a1
        fine = iso.refine(Fraction(1, 10 ** 12))
        for (a, b), r in zip(fine.intervals, roots):
            assert a < r < b and b - a <= Fraction(1, 10 ** 12)

    def test_multiplicity(self):
        iso = isolate_real_roots((X + 1) ** 2)
        assert iso.multiplicities == (2,) and iso.squarefree_part == X + 1

    def test_no_real_roots(self):
        assert len(isolate_real_roots(X ** 2 + 3)) == 0

    @given(st.lists(st.fractions(-20, 20, max_denominator=5), min_size=1, max_size=6, unique=True))
    def test_intervals_contain_one_root_each(self, roots):
        f = Poly.const(1)
        for r in roots:
            f = f * Poly([-r, 1])
        iso = isolate_real_roots(f)
        assert len(iso) == len(roots)
        for (a, b), r in zip(iso.intervals, sorted(roots)):
            assert a < r < b
        for (_, b), (a, _) in zip(iso.intervals, iso.intervals[1:]):
            assert b <= a


class TestInterlacing:
    def test_k33_pair(self):
        even, odd = Poly([1, 6, 6, 2]).even_odd()
        assert (odd, even) == (6 + 2 * X, 1 + 6 * X)
        assert interlaces(6 + 2 * X, 1 + 6 * X) is Interlacing.ALTERNATES_LEFT

    def test_join_pair_fails(self):
        assert interlaces(24 + 4 * X, 1 + 6 * X + X ** 2) is Interlacing.NEITHER

    def test_interlaces(self):
        assert interlaces(X, X ** 2 - 1) is Interlacing.INTERLACES

    def test_shared_roots_allowed(self):
        assert interlaces(X + 1, (X + 1) * (X + 2)) is Interlacing.INTERLACES
        assert interlaces((X + 1) * (X + 3), (X + 1) * (X + 2)) is Interlacing.ALTERNATES_LEFT

    def test_errors(self):
        with pytest.raises(NotRealRootedError):
            interlaces(X ** 2 + 1, X ** 3)
        with pytest.raises(ValueError):
            interlaces(X, X ** 3 - X)


class TestHermiteBiehler:
    def test_examples(self):
        v = hb_stable(Poly([1, 6, 6, 2]))
        assert v.status is Status.STABLE and v.mode is Mode.EXACT
        assert v.certificate["pattern"] == "alternates_left"
        assert hb_stable((1 + X) ** 4 + 20 * X).status is Status.NONSTABLE
        assert hb_stable(1 + 2 * X).stable

    def test_boundary_roots_are_stable(self):
        # roots 0 and +-i lie on the closed left half-plane boundary
        assert hb_stable(X * (X ** 2 + 1)).stable
        assert not hb_stable(X ** 2 - X + 1).stable

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            hb_stable(Poly())

    @pytest.mark.parametrize("fast", [True, False])
    def test_agrees_with_numeric(self, fast):
        rng = random.Random(77)
        for _ in range(300):
            deg = rng.randint(1, 10)
            p = Poly([1] + [rng.randint(1, 60) for _ in range(deg)])
            re = max(z.real for z in all_roots(p).roots)
            assert hb_stable(p, fast=fast).stable == (re <= 1e-8), p.coeffs

    def test_high_degree_paths_agree(self):
        for m in (30, 100, 1000):
            p = (1 + X) ** 20 + m * X
            assert hb_stable(p, fast=True).status is hb_stable(p, fast=False).status


class TestStabilityVerdict:
    def test_c5_real_rooted_shortcut(self):
        v = stability_verdict(indpoly(cycle(5)).poly)
        assert v.stable and v.certificate["method"] == "real_rooted"

    def test_triangular_threshold(self):
        assert stability_verdict(triangular_multipartite_poly(15)).status is Status.NONSTABLE
        assert stability_verdict(triangular_multipartite_poly(14)).status is Status.STABLE
        assert stability_verdict(triangular_multipartite_poly(15), fast=False).status is Status.NONSTABLE

    def test_shape_checked(self):
        for bad in (Poly([2, 1]), Poly([1, -1, 1]), Poly([1, 0, 1]), Poly()):
            with pytest.raises(ValueError):
                stability_verdict(bad)

    def test_json(self):
        rec = stability_verdict(Poly([1, 6, 6, 2])).to_json("K33")
        assert rec["status"] == "stable" and rec["mode"] == "exact" and rec["graph_id"] == "K33"
        assert rec["polynomial"] == ["1", "6", "6", "2"]

    def test_small_alpha_graphs_are_stable(self):
        for n in range(1, 7):
            for g in enumerate_graphs(n):
                if independence_number(g) <= 3:
                    assert stability_verdict(indpoly(g).poly).stable

    def test_claw_free_graphs_are_real_rooted(self):
        for n in range(1, 8):
            for g in enumerate_graphs(n):
                if is_claw_free(g):
                    assert is_real_rooted(indpoly(g).poly)

    def test_multipartite_small_alpha(self):
        assert stability_verdict(indpoly(complete_multipartite([1, 2, 3, 3, 2])).poly).stable
