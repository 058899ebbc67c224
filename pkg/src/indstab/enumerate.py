"""Exhaustive generation of small graphs and free trees, one per isomorphism class."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .graph import Graph, build_graph, canonical_code, canonical_form, empty

MAX_GRAPH_ORDER = 10
MAX_TREE_ORDER = 20

# published counts of unlabeled graphs and free trees
GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668}
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106, 11: 235,
               12: 551, 13: 1301, 14: 3159, 15: 7741, 16: 19320, 17: 48629, 18: 123867,
               19: 317955, 20: 823065}


def _extend(g: Graph, neighbours: int) -> Graph:
    n = g.n
    rows = [row | ((neighbours >> v & 1) << n) for v, row in enumerate(g.adj)]
    rows.append(neighbours)
    return Graph(n + 1, tuple(rows))


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Graph, ...]:
    """Canonical representatives on n vertices, sorted by canonical code."""
    if n == 1:
        return (empty(1),)
    seen: dict[bytes, Graph] = {}
    for parent in _level(n - 1):
        for mask in range(1 << (n - 1)):
            child = _extend(parent, mask)
            code = canonical_code(child)
            if code not in seen:
                seen[code] = child
    return tuple(canonical_form(seen[c]) for c in sorted(seen))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """Every graph on n vertices up to isomorphism, by vertex extension with canonical dedup."""
    if not 1 <= n <= MAX_GRAPH_ORDER:
        raise ValueError(f"graph enumeration supports 1 <= n <= {MAX_GRAPH_ORDER}")
    yield from _level(n)


def enumerate_graphs_labeled(n: int) -> Iterator[Graph]:
    """Reference generator: all 2^C(n,2) labelled graphs deduplicated canonically (small n only)."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        g = build_graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
        code = canonical_code(g)
        if code not in seen:
            seen.add(code)
            yield g


# free trees via centroids: a tree has one centroid whose branches all have
# fewer than n/2 vertices, or two adjacent centroids splitting it in halves


@lru_cache(maxsize=None)
def rooted_trees(m: int) -> tuple[tuple, ...]:
    """All rooted trees with m vertices as canonical nested tuples, in a fixed order."""
    if m == 1:
        return ((),)
    return tuple(tuple(f) for f in _forests(m - 1, m - 1))


def _forests(total: int, max_size: int, bound: tuple[int, int] | None = None) -> Iterator[list]:
    """Multisets of rooted trees with ``total`` vertices, branch sizes <= max_size.

    Trees are emitted in nonincreasing (size, index) order so each multiset
    appears once; ``bound`` caps the first key.
    """
    if total == 0:
        yield []
        return
    for size in range(min(total, max_size), 0, -1):
        trees = rooted_trees(size)
        for idx in range(len(trees) - 1, -1, -1):
            key = (size, idx)
            if bound is not None and key > bound:
                continue
            for rest in _forests(total - size, size, key):
                yield [trees[idx]] + rest


def _tree_to_graph(root: tuple, n: int, extra: tuple | None = None) -> Graph:
    edges = []
    counter = [0]

    def walk(node: tuple, me: int) -> None:
        for child in node:
            counter[0] += 1
            c = counter[0]
            edges.append((me, c))
            walk(child, c)

    walk(root, 0)
    if extra is not None:
        counter[0] += 1
        other = counter[0]
        edges.append((0, other))
        walk(extra, other)
    return build_graph(n, edges)


def enumerate_trees(n: int) -> Iterator[Graph]:
    """Every free tree on n vertices up to isomorphism."""
    if not 1 <= n <= MAX_TREE_ORDER:
        raise ValueError(f"tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}")
    if n == 1:
        yield empty(1)
        return
    for forest in _forests(n - 1, (n - 1) // 2):
        yield _tree_to_graph(tuple(forest), n)
    if n % 2 == 0:
        half = rooted_trees(n // 2)
        for i in range(len(half)):
            for j in range(i, len(half)):
                yield _tree_to_graph(half[i], n, half[j])


def ahu_code(g: Graph, root: int) -> str:
    """Canonical string of the tree ``g`` rooted at ``root``."""

    def enc(v: int, parent: int) -> str:
        kids = sorted(enc(u, v) for u in range(g.n) if g.adj[v] >> u & 1 and u != parent)
        return "(" + "".join(kids) + ")"

    return enc(root, -1)


def tree_code(g: Graph) -> str:
    """Isomorphism invariant of a free tree: minimum rooted code over all roots."""
    return min(ahu_code(g, r) for r in range(g.n))


def prufer_trees(n: int) -> Iterator[Graph]:
    """Reference generator: labelled trees from Prufer sequences, deduplicated."""
    from itertools import product

    if n <= 2:
        yield build_graph(n, [(0, 1)] if n == 2 else [])
        return
    seen = set()
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(n) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in range(n) if degree[x] == 1]
        edges.append((u, w))
        g = build_graph(n, edges)
        code = tree_code(g)
        if code not in seen:
            seen.add(code)
            yield g
