from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from indstab.graph import Graph, build_graph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def brute_force_indpoly(g: Graph) -> list[int]:
    """Count independent sets by size over all vertex subsets."""
    counts = [0] * (g.n + 1)
    for mask in range(1 << g.n):
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            if g.adj[v] & mask:
                ok = False
                break
            m &= m - 1
        if ok:
            counts[mask.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return build_graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [e for e, b in zip(pairs, bits) if b])


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240917)
