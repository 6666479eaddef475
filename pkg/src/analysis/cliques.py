"""Exact clique search on sampled graphs."""

import networkx as nx

from src.core.exceptions import ValidationError
from src.sampling.sampled_graph import SampledGraph


def find_clique(graph: SampledGraph | nx.Graph, k: int) -> list[int] | None:
    """Vertices of some k-clique, or None if the graph is K_k-free.

    Vertices of degree below k - 1 are pruned first (the (k-1)-core), then
    maximal cliques are enumerated with pivoting Bron-Kerbosch until one of
    size at least k appears. The search is complete.
    """
    if k < 2:
        raise ValidationError(f"clique size must be at least 2, got {k}", "k")
    nx_graph = graph.to_networkx() if isinstance(graph, SampledGraph) else graph
    if k > nx_graph.number_of_nodes():
        return None
    if k == 2:
        edge = next(iter(nx_graph.edges()), None)
        return None if edge is None else sorted(edge)
    core = nx.k_core(nx_graph, k - 1)
    for clique in nx.find_cliques(core):
        if len(clique) >= k:
            return sorted(clique)[:k]
    return None


def is_ks_free(graph: SampledGraph, s: int) -> bool:
    return find_clique(graph, s) is None


def clique_number(graph: SampledGraph) -> int:
    """Size of the largest clique (0 for the empty vertex set)."""
    nx_graph = graph.to_networkx()
    return max((len(c) for c in nx.find_cliques(nx_graph)), default=0)
