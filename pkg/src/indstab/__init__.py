"""Independence polynomials of graphs and exact Hurwitz stability verdicts."""

from .graph import Graph, build_graph, family, from_graph6, to_graph6
from .indpoly import indpoly, indpoly_closed, indpoly_corona, indpoly_join, indpoly_kstar, indpoly_lex
from .poly import Poly
from .roots import all_roots, max_real_part
from .stability import Status, is_real_rooted, stability_verdict

__all__ = [
    "Graph", "Poly", "Status", "all_roots", "build_graph", "family", "from_graph6", "indpoly",
    "indpoly_closed", "indpoly_corona", "indpoly_join", "indpoly_kstar", "indpoly_lex", "is_real_rooted",
    "max_real_part", "stability_verdict", "to_graph6",
]
