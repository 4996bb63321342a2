"""Method C: Girvan-Newman edge removal scored by signed modularity"""

import logging
from fractions import Fraction
from typing import Dict, List, Tuple

import networkx as nx

from .graph_core import connected_components
from .modularity import level_score
from .models import Clustering, DendrogramLevel, MethodId, MethodReport, SignedGraph

logger = logging.getLogger(__name__)

TIE_TOL = 1e-9
LENGTH_DENOMINATOR = 10 ** 9

EdgeKey = Tuple[int, int]


def _length(w: float) -> Fraction:
    # exact rationals so networkx counts tied path lengths as equal
    return 1 / Fraction(float(w)).limit_denominator(LENGTH_DENOMINATOR)


def _unsigned_nx(g: SignedGraph, weighted: bool) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    for i, j, w, _ in g.edges:
        h.add_edge(i, j, length=_length(w) if weighted else 1)
    return h


def _betweenness(h: nx.Graph) -> Dict[EdgeKey, float]:
    raw = nx.edge_betweenness_centrality(h, normalized=False, weight="length")
    return {(min(u, v), max(u, v)): float(b) for (u, v), b in raw.items()}


def edge_betweenness(g: SignedGraph, weighted: bool = True) -> Dict[EdgeKey, float]:
    """Shortest-path betweenness per edge over unordered vertex pairs.

    Signs are ignored; edge length is 1/weight (or 1 when unweighted) and
    tied shortest paths share each pair's unit of flow equally. Weights are
    rounded to rationals with denominator at most 10^9 before inverting, so
    decimal weights such as 0.3 and 0.6 give exactly tied paths.
    """
    return _betweenness(_unsigned_nx(g, weighted))


def method_c(g: SignedGraph, weighted: bool = True, weighting: str = "weight") -> MethodReport:
    """Remove the max-betweenness edge until none remain, recording each new split.

    The all-in-one clustering is always a candidate. A disconnected graph
    records it ahead of its component partition; an edgeless graph keeps
    only the component level.
    """
    notes: List[str] = []
    if g.m == 0:
        notes.append("graph has no edges; signed modularity recorded as 0")

    h = _unsigned_nx(g, weighted)
    clustering = connected_components(g)
    levels = []
    if clustering.k > 1 and g.m > 0:
        whole = Clustering.single(g.n)
        levels.append(DendrogramLevel(whole, level_score(g, whole, weighting)))
    levels.append(DendrogramLevel(clustering, level_score(g, clustering, weighting)))
    trace = []

    scores: Dict[EdgeKey, float] = {}
    for component in nx.connected_components(h):
        scores.update(_betweenness(h.subgraph(component)))

    while scores:
        top = max(scores.values())
        edge = min(e for e, b in scores.items() if b >= top - TIE_TOL * max(1.0, top))
        removed_score = scores[edge]
        h.remove_edge(*edge)
        component = nx.node_connected_component(h, edge[0]) | nx.node_connected_component(h, edge[1])
        for e in [e for e in scores if e[0] in component]:
            del scores[e]
        scores.update(_betweenness(h.subgraph(component)))

        split = Clustering(_component_labels(h))
        trace.append([edge[0] + 1, edge[1] + 1, removed_score, split.k])
        if split.k > clustering.k:
            logger.debug("Method C: removing (%d, %d) leaves %d components", edge[0] + 1, edge[1] + 1, split.k)
            clustering = split
            levels.append(DendrogramLevel(clustering, level_score(g, clustering, weighting)))

    return MethodReport.from_levels(MethodId.C, levels, notes, {"removals": trace})


def _component_labels(h: nx.Graph) -> List[int]:
    labels = [0] * h.number_of_nodes()
    for cid, component in enumerate(nx.connected_components(h)):
        for v in component:
            labels[v] = cid
    return labels
