"""Simple undirected graphs on at most 64 vertices, stored as bitset rows.

Row ``adj[v]`` is an int whose bit ``u`` is set when ``u ~ v``.  Graphs are
immutable values; every operation returns a new graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64
CANON_MAX_VERTICES = 16


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} references a vertex >= n")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
                r ^= low

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for v in range(self.n) for u in _bits(self.adj[v]) if u < v]

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``v`` becomes ``perm[v]``."""
        new = [0] * self.n
        for v in range(self.n):
            row = 0
            for u in _bits(self.adj[v]):
                row |= 1 << perm[u]
            new[perm[v]] = row
        return Graph(self.n, tuple(new))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in _bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    rows = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# named families

def complete(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return build_graph(n, [])


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(n: int) -> Graph:
    """K_{1,n}: centre 0 and leaves 1..n."""
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if not sizes or any(s < 1 for s in sizes):
        raise GraphError("part sizes must be positive")
    n = sum(sizes)
    if n > MAX_VERTICES:
        raise GraphError(f"complete multipartite graph needs {n} > {MAX_VERTICES} vertices")
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    return build_graph(n, [(u, v) for u, v in combinations(range(n), 2) if part[u] != part[v]])


def triangular_multipartite(n: int) -> Graph:
    """K_{1,2,...,n}."""
    return complete_multipartite(list(range(1, n + 1)))


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise GraphError(f"unknown family {self.kind!r}")
        if any(p < 1 for p in self.params):
            raise GraphError("family parameters must be positive")


FAMILIES = {
    "complete": lambda p: complete(p[0]),
    "empty": lambda p: empty(p[0]),
    "path": lambda p: path(p[0]),
    "cycle": lambda p: cycle(p[0]),
    "star": lambda p: star(p[0]),
    "complete_multipartite": lambda p: complete_multipartite(p),
    "balanced_multipartite": lambda p: complete_multipartite([p[1]] * p[0]),
    "triangular_multipartite": lambda p: triangular_multipartite(p[0]),
}


def family(spec: FamilySpec | str, *params: int) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec(spec, tuple(params))
    return FAMILIES[spec.kind](spec.params)


# operations

def _check_order(n: int, what: str) -> None:
    if n > MAX_VERTICES:
        raise GraphError(f"{what} would have {n} > {MAX_VERTICES} vertices")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_order(g.n + h.n, "disjoint union")
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def join(g: Graph, h: Graph) -> Graph:
    _check_order(g.n + h.n, "join")
    gmask = g.full_mask
    hmask = h.full_mask << g.n
    rows = [row | hmask for row in g.adj] + [(row << g.n) | gmask for row in h.adj]
    return Graph(g.n + h.n, tuple(rows))


def corona(g: Graph, h: Graph) -> Graph:
    """G o H: vertex v of G is joined to its own copy of H (placed at g.n + v*h.n ...)."""
    n = g.n * (1 + h.n)
    _check_order(n, "corona")
    rows = list(g.adj) + [0] * (g.n * h.n)
    for v in range(g.n):
        base = g.n + v * h.n
        block = h.full_mask << base
        rows[v] |= block
        for i, row in enumerate(h.adj):
            rows[base + i] = (row << base) | (1 << v)
    return Graph(n, tuple(rows))


def lex_product(g: Graph, h: Graph) -> Graph:
    """G[H]: vertex (i, l) is numbered i*h.n + l."""
    n = g.n * h.n
    _check_order(n, "lexicographic product")
    block = h.full_mask
    rows = []
    for i in range(g.n):
        outer = 0
        for j in _bits(g.adj[i]):
            outer |= block << (j * h.n)
        for l in range(h.n):
            rows.append(outer | (h.adj[l] << (i * h.n)))
    return Graph(n, tuple(rows))


def graph_star(g: Graph) -> Graph:
    return corona(g, empty(1))


def graph_star_k(g: Graph, k: int) -> Graph:
    if k < 1:
        raise GraphError("k must be a positive integer")
    _check_order(g.n * 2**k, f"{k}-star")
    for _ in range(k):
        g = graph_star(g)
    return g


# invariants

def components(g: Graph, mask: int | None = None) -> list[int]:
    """Vertex masks of the connected components of the subgraph induced by ``mask``."""
    if mask is None:
        mask = g.full_mask
    out = []
    rest = mask
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            nxt &= mask & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def is_tree(g: Graph) -> bool:
    return g.num_edges == g.n - 1 and is_connected(g)


def edge_list_is_tree(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    """Tree test on a plain edge list, with no vertex cap (union-find)."""
    parent = list(range(n))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    count = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        count += 1
    return count == n - 1


def corona_edge_list(g_n: int, g_edges: Iterable[tuple[int, int]], h_n: int,
                     h_edges: Iterable[tuple[int, int]]) -> tuple[int, list[tuple[int, int]]]:
    """G o H as (order, edges) with the same numbering as ``corona`` but no vertex cap."""
    g_edges, h_edges = list(g_edges), list(h_edges)
    edges = list(g_edges)
    for v in range(g_n):
        base = g_n + v * h_n
        edges.extend((v, base + i) for i in range(h_n))
        edges.extend((base + a, base + b) for a, b in h_edges)
    return g_n * (1 + h_n), edges


def is_claw_free(g: Graph) -> bool:
    """No induced K_{1,3}: no vertex has three pairwise non-adjacent neighbours."""
    for v in range(g.n):
        nb = list(_bits(g.adj[v]))
        if len(nb) < 3:
            continue
        for a, b, c in combinations(nb, 3):
            if not (g.adj[a] >> b & 1) and not (g.adj[a] >> c & 1) and not (g.adj[b] >> c & 1):
                return False
    return True


def independence_number(g: Graph) -> int:
    """Maximum independent set size by branch and bound on bitsets."""
    adj = g.adj
    best = 0

    def bound(p: int) -> int:
        # greedy clique cover of the candidate set bounds the independent set size
        count = 0
        while p:
            v = (p & -p).bit_length() - 1
            clique = 1 << v
            cand = p & adj[v]
            while cand:
                u = (cand & -cand).bit_length() - 1
                clique |= 1 << u
                cand &= adj[u]
            p &= ~clique
            count += 1
        return count

    def search(p: int, size: int) -> None:
        nonlocal best
        # take vertices of degree <= 1 inside p greedily (always safe)
        changed = True
        while changed and p:
            changed = False
            for v in _bits(p):
                if (adj[v] & p).bit_count() <= 1:
                    p &= ~(adj[v] | (1 << v))
                    size += 1
                    changed = True
                    break
        if not p:
            best = max(best, size)
            return
        if size + bound(p) <= best:
            return
        v = max(_bits(p), key=lambda u: (adj[u] & p).bit_count())
        search(p & ~(adj[v] | (1 << v)), size + 1)
        search(p & ~(1 << v), size)

    search(g.full_mask, 0)
    return best


# canonical labelling

def _refine(adj: Sequence[int], colors: list[int]) -> list[int]:
    """Colour refinement to the coarsest equitable partition finer than ``colors``.

    Colours are ranks 0..k-1; the result depends only on the isomorphism
    type of (graph, colouring).
    """
    n = len(adj)
    k = len(set(colors))
    while True:
        masks = [0] * k
        for v, c in enumerate(colors):
            masks[c] |= 1 << v
        keys = [(colors[v], tuple((adj[v] & m).bit_count() for m in masks)) for v in range(n)]
        ranking = {key: i for i, key in enumerate(sorted(set(keys)))}
        new = [ranking[key] for key in keys]
        if len(ranking) == k:
            return new
        colors, k = new, len(ranking)


def _leaf_code(adj: Sequence[int], colors: Sequence[int]) -> int:
    n = len(adj)
    pos_adj = [0] * n
    for v in range(n):
        row = 0
        for u in _bits(adj[v]):
            row |= 1 << colors[u]
        pos_adj[colors[v]] = row
    code = 0
    for i in range(n):
        # upper triangle, row by row
        row = pos_adj[i] >> (i + 1)
        code = (code << (n - i - 1)) | _reverse_bits(row, n - i - 1)
    return code


def _reverse_bits(x: int, width: int) -> int:
    return int(format(x, f"0{width}b")[::-1], 2) if width else 0


def canonical_labeling(g: Graph) -> tuple[int, list[int]]:
    """Return ``(code, perm)`` where ``g.relabel(perm)`` is the canonical form."""
    if g.n > CANON_MAX_VERTICES:
        raise GraphError(f"canonical labelling is capped at {CANON_MAX_VERTICES} vertices")
    adj = g.adj
    start = _refine(adj, _rank([row.bit_count() for row in adj]))
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        n = len(colors)
        counts = [0] * n
        for c in colors:
            counts[c] += 1
        target = next((c for c in range(n) if counts[c] > 1), None)
        if target is None:
            code = _leaf_code(adj, colors)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, list(colors)
            return
        cell = [v for v in range(n) if colors[v] == target]
        reps: list[int] = []
        for v in cell:
            if any(adj[u] == adj[v] or adj[u] | (1 << u) == adj[v] | (1 << v) for u in reps):
                continue  # twins give isomorphic subtrees
            reps.append(v)
        for v in reps:
            child = [2 * c + (1 if c == target and u != v else 0) for u, c in enumerate(colors)]
            search(_refine(adj, _rank(child)))

    search(start)
    return best[0], best[1]


def _rank(colors: Sequence[int]) -> list[int]:
    ranking = {c: i for i, c in enumerate(sorted(set(colors)))}
    return [ranking[c] for c in colors]


def canonical_code(g: Graph) -> bytes:
    code, _ = canonical_labeling(g)
    nbits = g.n * (g.n - 1) // 2
    return bytes([g.n]) + code.to_bytes((nbits + 7) // 8, "big")


def canonical_form(g: Graph) -> Graph:
    _, perm = canonical_labeling(g)
    return g.relabel(perm)


# graph6

def _n_to_g6(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def to_graph6(g: Graph) -> str:
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    while len(bits) % 6:
        bits.append(0)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6))
    return _n_to_g6(g.n) + body


def from_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise GraphError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise GraphError("graph6 string has characters outside 63..126")
    if data[0] == 63:
        if len(data) < 4:
            raise GraphError("truncated graph6 size field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    else:
        n = data[0]
        body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {need} for n={n}")
    bits = []
    for x in body:
        bits.extend((x >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def parse_edgelist(text: str) -> Graph:
    """``n`` on the first non-blank line, then one ``u v`` pair per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty edge list")
    n = int(lines[0])
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return build_graph(n, edges)


def to_edgelist(g: Graph) -> str:
    return "\n".join([str(g.n)] + [f"{u} {v}" for u, v in g.edges()]) + "\n"
