"""Independence polynomials: the vertex recurrence plus closed forms and product identities."""

from __future__ import annotations

import enum
from collections import OrderedDict
from dataclasses import dataclass
from math import comb

from .graph import FamilySpec, Graph, GraphError, components
from .poly import Poly

DEFAULT_MEMO_CAP = 1 << 16


class Source(str, enum.Enum):
    RECURRENCE = "recurrence"
    CLOSED_FORM = "closed_form"
    JOIN_IDENTITY = "join_identity"
    CORONA_IDENTITY = "corona_identity"
    LEX_IDENTITY = "lex_identity"
    KSTAR_IDENTITY = "kstar_identity"


@dataclass(frozen=True)
class IndPolyResult:
    poly: Poly
    source: Source

    @property
    def alpha(self) -> int:
        return self.poly.degree

    def to_json(self, graph_id: str | None = None, n: int | None = None) -> dict:
        return {
            "graph_id": graph_id,
            "n": n if n is not None else self.poly[1],
            "alpha": self.alpha,
            "coefficients": self.poly.to_strings(),
            "source": self.source.value,
        }


# coefficient-list helpers; the recurrence runs hot inside scans


def _mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _binomial_row(k: int) -> list[int]:
    return [comb(k, j) for j in range(k + 1)]


class IndPolyComputer:
    """Recurrence i(G) = i(G - v) + x i(G - N[v]) with an LRU memo keyed on vertex masks.

    The memo belongs to one ambient graph; reuse the instance only for that graph.
    """

    def __init__(self, g: Graph, memo_cap: int = DEFAULT_MEMO_CAP):
        self.g = g
        self.memo_cap = memo_cap
        self.memo: OrderedDict[int, list[int]] = OrderedDict()

    def compute(self, mask: int | None = None) -> list[int]:
        if mask is None:
            mask = self.g.full_mask
        return self._connected_or_split(mask)

    def _connected_or_split(self, mask: int) -> list[int]:
        comps = components(self.g, mask)
        if len(comps) == 1:
            return self._component(mask)
        out = [1]
        for comp in comps:
            out = _mul(out, self._component(comp))
        return out

    def _component(self, mask: int) -> list[int]:
        size = mask.bit_count()
        if size == 1:
            return [1, 1]
        if size == 2:
            return [1, 2]
        hit = self.memo.get(mask)
        if hit is not None:
            self.memo.move_to_end(mask)
            return hit
        adj = self.g.adj
        best_v, best_d = -1, -1
        m = mask
        while m:
            low = m & -m
            v = low.bit_length() - 1
            d = (adj[v] & mask).bit_count()
            if d > best_d:
                best_v, best_d = v, d
            m ^= low
        if best_d == size - 1:
            # a dominating vertex: i(G) = i(G - v) + x
            rest = self._connected_or_split(mask & ~(1 << best_v))
            result = list(rest)
            result[1] += 1
        else:
            without = self._connected_or_split(mask & ~(1 << best_v))
            with_v = self._connected_or_split(mask & ~(adj[best_v] | (1 << best_v)))
            result = list(without)
            for k, c in enumerate(with_v):
                if k + 1 < len(result):
                    result[k + 1] += c
                else:
                    result.append(c)
        self.memo[mask] = result
        if len(self.memo) > self.memo_cap:
            self.memo.popitem(last=False)
        return result


def indpoly(g: Graph, memo_cap: int = DEFAULT_MEMO_CAP) -> IndPolyResult:
    coeffs = IndPolyComputer(g, memo_cap).compute()
    return IndPolyResult(Poly(coeffs), Source.RECURRENCE)


def indpoly_coeffs(g: Graph) -> list[int]:
    return IndPolyComputer(g).compute()


# closed forms

ONE = Poly.const(1)
X = Poly.x()


def _path_poly(n: int) -> Poly:
    a, b = ONE, ONE + X  # P_0, P_1
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, b + X * a
    return b


def star_poly(n: int) -> Poly:
    return X + (ONE + X) ** n


def balanced_multipartite_poly(k: int, n: int) -> Poly:
    return k * (ONE + X) ** n - (k - 1)


def complete_multipartite_poly(sizes) -> Poly:
    total = Poly.const(1 - len(sizes))
    for s in sizes:
        total = total + (ONE + X) ** s
    return total


def triangular_multipartite_poly(n: int) -> Poly:
    num = (ONE + X) ** (n + 1) - n * X - 1
    return num.shift(-1)


def indpoly_closed(spec: FamilySpec | str, *params: int) -> IndPolyResult:
    if isinstance(spec, str):
        spec = FamilySpec(spec, tuple(params))
    p = spec.params
    kind = spec.kind
    if kind == "complete":
        poly = ONE + p[0] * X
    elif kind == "empty":
        poly = (ONE + X) ** p[0]
    elif kind == "star":
        poly = star_poly(p[0])
    elif kind == "path":
        poly = _path_poly(p[0])
    elif kind == "cycle":
        if p[0] < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        poly = _path_poly(p[0] - 1) + X * _path_poly(p[0] - 3)
    elif kind == "complete_multipartite":
        poly = complete_multipartite_poly(p)
    elif kind == "balanced_multipartite":
        poly = balanced_multipartite_poly(p[0], p[1])
    elif kind == "triangular_multipartite":
        poly = triangular_multipartite_poly(p[0])
    else:
        raise GraphError(f"no closed form for family {kind!r}")
    return IndPolyResult(poly, Source.CLOSED_FORM)


# product identities


def _require_unit_constant(*polys: Poly) -> None:
    for q in polys:
        if q[0] != 1:
            raise ValueError(f"expected an independence polynomial with constant term 1, got {q[0]}")


def indpoly_join(pG: Poly, pH: Poly) -> Poly:
    _require_unit_constant(pG, pH)
    return pG + pH - 1


def indpoly_corona(pG: Poly, pH: Poly, n: int) -> Poly:
    """sum_k i_k x^k pH^(n-k) for G of order n."""
    _require_unit_constant(pG, pH)
    if pG.degree > n:
        raise ValueError(f"degree {pG.degree} exceeds the order {n}")
    # Horner in pH: accumulate from the top coefficient down
    total = Poly.const(0)
    power = ONE
    for k in range(n, -1, -1):
        total = total + pG[k] * X ** k * power
        power = power * pH
    return total


def indpoly_lex(pG: Poly, pH: Poly) -> Poly:
    _require_unit_constant(pG, pH)
    return pG.compose(pH - 1)


def indpoly_kstar(pG: Poly, n: int, k: int) -> Poly:
    if k < 1:
        raise ValueError("k must be a positive integer")
    _require_unit_constant(pG)
    if pG.degree > n:
        raise ValueError(f"degree {pG.degree} exceeds the order {n}")
    lin = k * X + 1
    head = Poly.const(0)
    power = ONE
    for j in range(n, -1, -1):
        head = head + pG[j] * X ** j * power
        power = power * lin
    tail = ONE
    for ell in range(1, k):
        tail = tail * (ell * X + 1) ** (n * 2 ** (k - ell - 1))
    return head * tail


def graph_star_poly(pG: Poly, n: int) -> Poly:
    return indpoly_corona(pG, ONE + X, n)


def forest_indpoly(n: int, edges) -> Poly:
    """Independence polynomial of a forest given as an edge list, with no vertex cap.

    Dynamic programming over rooted subtrees: for each vertex keep the
    polynomials of sets that avoid it and sets that contain it.
    """
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    seen = [False] * n
    total = ONE
    for root in range(n):
        if seen[root]:
            continue
        order, parent = [], {root: -1}
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            order.append(v)
            for u in nbrs[v]:
                if u == parent[v]:
                    continue
                if seen[u]:
                    raise ValueError("edge list contains a cycle")
                seen[u] = True
                parent[u] = v
                stack.append(u)
        out, inn = {}, {}
        for v in reversed(order):
            without, with_v = ONE, X
            for u in nbrs[v]:
                if u != parent[v]:
                    without = without * (out[u] + inn[u])
                    with_v = with_v * out[u]
            out[v], inn[v] = without, with_v
        total = total * (out[root] + inn[root])
    return total
