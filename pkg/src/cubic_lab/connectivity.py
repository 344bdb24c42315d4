"""Bridges, 2-edge-cuts, and the connectivity trichotomy for cubic graphs.

Terminology used throughout the package: a *bridge* is an edge whose removal
disconnects the graph; a *bi-bridge* is a pair of edges in a bridgeless graph
whose joint removal disconnects it; a connected cubic graph is exactly one of
bridge / biconnected (bridgeless but owning a bi-bridge) / three-connected
(bridgeless, no bi-bridge). For connected cubic graphs vertex and edge
connectivity coincide, so the trichotomy is just edge connectivity 1 / 2 / 3;
tests cross-check that equivalence against a brute-force vertex-cut oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantError
from .graphs import Edge, Graph, edge, is_connected, is_cubic, remove_edges


@dataclass(frozen=True)
class BiBridge:
    """A 2-edge-cut with its two-sided vertex partition.

    ``side_a`` is the side containing vertex 0; ``balance`` is the absolute
    size difference of the sides. Each cut edge has one endpoint per side,
    and neither edge alone is a bridge.
    """

    e1: Edge
    e2: Edge
    side_a: frozenset[int]
    side_b: frozenset[int]
    balance: int


@dataclass(frozen=True)
class ConnectivityClass:
    bridge_count: int
    is_bridge_graph: bool
    is_biconnected: bool
    is_three_connected: bool

    @property
    def label(self) -> str:
        if self.is_bridge_graph:
            return "bridge"
        if self.is_biconnected:
            return "biconnected"
        return "three-connected"


def find_bridges(g: Graph) -> tuple[Edge, ...]:
    """All bridges, via one DFS with low-link values. Requires a connected graph."""
    if not is_connected(g):
        raise InputError("find_bridges requires a connected graph")
    disc = [-1] * g.n
    low = [0] * g.n
    bridges: list[Edge] = []
    timer = 0
    for start in range(g.n):
        if disc[start] != -1:
            continue
        # iterative DFS; frame = (vertex, parent, neighbor cursor)
        stack = [(start, -1, 0)]
        disc[start] = low[start] = timer
        timer += 1
        while stack:
            v, parent, i = stack.pop()
            if i < len(g.adj[v]):
                stack.append((v, parent, i + 1))
                w = g.adj[v][i]
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, 0))
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        bridges.append(edge(parent, v))
    return tuple(sorted(bridges))


def _components_after(g: Graph, removed: set[Edge]) -> list[set[int]]:
    seen = [False] * g.n
    comps: list[set[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = {start}
        seen[start] = True
        queue = [start]
        while queue:
            u = queue.pop()
            for w in g.adj[u]:
                if not seen[w] and edge(u, w) not in removed:
                    seen[w] = True
                    comp.add(w)
                    queue.append(w)
        comps.append(comp)
    return comps


def two_edge_cuts(g: Graph) -> tuple[BiBridge, ...]:
    """Every unordered edge pair whose removal disconnects the graph.

    The host graph must be connected and bridgeless. A pair {e1, e2} cuts the
    graph iff e2 is a bridge of g - e1, so one bridge sweep per edge finds
    them all; the brute-force pair-deletion oracle in the tests stays
    independent of this route.
    """
    if not is_connected(g):
        raise InputError("two_edge_cuts requires a connected graph")
    if find_bridges(g):
        raise InputError("two_edge_cuts requires a bridgeless graph")
    cuts: list[BiBridge] = []
    for e1 in g.edges():
        reduced = remove_edges(g, [e1])
        for e2 in find_bridges(reduced):
            if e2 <= e1:
                continue  # each pair found once, from its smaller edge
            comps = _components_after(g, {e1, e2})
            if len(comps) != 2:
                raise InvariantError(
                    f"edge pair {tuple(e1)},{tuple(e2)} left {len(comps)} components"
                )
            side_a = comps[0] if 0 in comps[0] else comps[1]
            side_b = comps[1] if 0 in comps[0] else comps[0]
            for cut_edge in (e1, e2):
                if (cut_edge.u in side_a) == (cut_edge.v in side_a):
                    raise InvariantError(f"cut edge {tuple(cut_edge)} does not span the sides")
            cuts.append(
                BiBridge(e1, e2, frozenset(side_a), frozenset(side_b),
                         abs(len(side_a) - len(side_b)))
            )
    cuts.sort(key=lambda bb: (bb.e1, bb.e2))
    return tuple(cuts)


def classify_connectivity(g: Graph) -> ConnectivityClass:
    """Sort a connected cubic graph into bridge / biconnected / three-connected."""
    if not is_cubic(g):
        raise InputError("classify_connectivity requires a cubic graph")
    if not is_connected(g):
        raise InputError("classify_connectivity requires a connected graph")
    bridges = find_bridges(g)
    if bridges:
        return ConnectivityClass(len(bridges), True, False, False)
    has_cut = bool(two_edge_cuts(g))
    return ConnectivityClass(0, False, has_cut, not has_cut)


def most_balanced_bibridge(g: Graph) -> BiBridge:
    """The bi-bridge that most evenly splits the vertices.

    Ties resolve to the lexicographically least edge pair so repeated runs
    pick the same cut. Three-connected input has no bi-bridge and is an error.
    """
    if not is_cubic(g):
        raise InputError("most_balanced_bibridge requires a cubic graph")
    cuts = two_edge_cuts(g)
    if not cuts:
        raise InputError("graph has no bi-bridge (it is three-connected)")
    return min(cuts, key=lambda bb: (bb.balance, bb.e1, bb.e2))


def component_of(g: Graph, v: int, removed: set[Edge]) -> frozenset[int]:
    """Vertices reachable from v when ``removed`` edges are ignored."""
    comp = {v}
    queue = [v]
    while queue:
        u = queue.pop()
        for w in g.adj[u]:
            if w not in comp and edge(u, w) not in removed:
                comp.add(w)
                queue.append(w)
    return frozenset(comp)
