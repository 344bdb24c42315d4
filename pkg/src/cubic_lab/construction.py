"""Turning a biconnected cubic graph into a bridge graph, and the insertion
family that makes the result cubic again.

The construction: pick the most balanced bi-bridge, delete both cut edges,
and wire in four new vertices. One (the far anchor) reconnects the far side;
one (the root) hangs off the anchor and becomes a bridge endpoint; the last
two (the open nodes) reconnect the active side but are left at degree 2.
The active side is the side of the cut whose induced subgraph has more
distinct cycle edges; every later distance argument is measured from the
root inside that side.

A cycle insertion then removes one cycle edge of the active side and feeds
its endpoints to the two open nodes, producing a connected cubic graph whose
single bridge is the anchor-root edge. Doing this once per edge orbit of the
active side yields the insertion family.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .connectivity import BiBridge, classify_connectivity, find_bridges, most_balanced_bibridge
from .errors import InputError, InvariantError
from .graphs import (
    DistanceProfile,
    Edge,
    Graph,
    add_edges,
    add_vertices,
    bfs_distances,
    edge,
    emit_graph6,
    induced_subgraph,
    is_connected,
    is_cubic,
    remove_edges,
)
from .symmetry import (
    MODE_FULL,
    MODE_STABILIZER,
    canonical_form,
    distinct_cycle_edges,
    edge_orbits,
)


@dataclass(frozen=True)
class ConstructionRecord:
    """Everything the downstream stages need about one construction run.

    ``augmented`` has four more vertices than ``source``: the far anchor and
    the root (the bridge endpoints) plus the two degree-2 open nodes, which
    sit with the root on ``active_side``. ``profile`` holds BFS distances
    from the root measured inside the active side only.
    """

    source: Graph
    chosen_bibridge: BiBridge
    augmented: Graph
    bridge: Edge
    open_nodes: tuple[int, int]
    active_side: frozenset[int]
    root: int
    profile: DistanceProfile

    def side_subgraph(self) -> tuple[Graph, dict[int, int]]:
        return induced_subgraph(self.augmented, self.active_side)


def select_active_side(g: Graph, bb: BiBridge) -> str:
    """Which side of the bi-bridge hosts the construction: "a" or "b".

    The winner is the side whose induced subgraph has more distinct cycle
    edges (measured with that subgraph's own automorphism group). Ties go to
    the lexicographically smaller canonical form, then to the side holding
    vertex 0.
    """
    sub_a, _ = induced_subgraph(g, bb.side_a)
    sub_b, _ = induced_subgraph(g, bb.side_b)
    count_a = distinct_cycle_edges(sub_a, MODE_FULL).count
    count_b = distinct_cycle_edges(sub_b, MODE_FULL).count
    if count_a != count_b:
        return "a" if count_a > count_b else "b"
    form_a = canonical_form(sub_a).graph6
    form_b = canonical_form(sub_b).graph6
    if form_a != form_b:
        return "a" if form_a < form_b else "b"
    return "a" if 0 in bb.side_a else "b"


def bridge_construct(g: Graph) -> ConstructionRecord:
    """Run the construction on a biconnected cubic graph.

    Raises InputError unless the input is connected, cubic, and biconnected
    (bridgeless with at least one 2-edge-cut). Every structural claim about
    the output is asserted before the record is returned; a violation is an
    InvariantError, never a silent pass.
    """
    cls = classify_connectivity(g)
    if not cls.is_biconnected:
        raise InputError(
            f"bridge_construct requires a biconnected cubic graph, got {cls.label}"
        )
    bb = most_balanced_bibridge(g)
    label = select_active_side(g, bb)
    active = bb.side_a if label == "a" else bb.side_b

    def split(cut: Edge) -> tuple[int, int]:
        # (far endpoint, active endpoint)
        return (cut.v, cut.u) if cut.u in active else (cut.u, cut.v)

    far1, near1 = split(bb.e1)
    far2, near2 = split(bb.e2)
    n = g.n
    anchor, root, open1, open2 = n, n + 1, n + 2, n + 3
    augmented = add_vertices(remove_edges(g, [bb.e1, bb.e2]), 4)
    augmented = add_edges(augmented, [
        (far1, anchor), (far2, anchor), (anchor, root),
        (near1, open1), (root, open1),
        (near2, open2), (root, open2),
    ])
    active_side = frozenset(active) | {root, open1, open2}

    if augmented.n != g.n + 4:
        raise InvariantError("augmented graph has the wrong size")
    if not is_connected(augmented):
        raise InvariantError("augmented graph is disconnected")
    bridges = find_bridges(augmented)
    if bridges != (edge(anchor, root),):
        raise InvariantError(f"expected exactly the anchor-root bridge, got {bridges}")
    deg2 = tuple(v for v in range(augmented.n) if augmented.degree(v) == 2)
    if deg2 != (open1, open2):
        raise InvariantError(f"expected exactly two open nodes, got {deg2}")
    if any(augmented.degree(v) != 3 for v in range(augmented.n) if v not in deg2):
        raise InvariantError("a non-open vertex is not cubic")

    profile = bfs_distances(augmented, root, within=active_side)
    if any(profile.dist[v] is None for v in active_side):
        raise InvariantError("active side is not internally connected")
    return ConstructionRecord(
        source=g,
        chosen_bibridge=bb,
        augmented=augmented,
        bridge=edge(anchor, root),
        open_nodes=(open1, open2),
        active_side=active_side,
        root=root,
        profile=profile,
    )


@dataclass(frozen=True)
class DepthBoundReport:
    """Distinct-edge counts of the active side versus its BFS depth.

    ``holds_stabilizer`` is the load-bearing bound: orbits under root-fixing
    automorphisms cannot merge edges that reach different depths, so the
    orbit count is at least ``max_dist``. The full-group count is reported
    alongside because unrestricted automorphisms may move the root and merge
    depth classes; a full-group shortfall is a finding, not a failure.
    """

    max_dist: int
    orbit_count_full: int
    orbit_count_stabilizer: int
    holds_full_group: bool
    holds_stabilizer: bool
    facilitated_complete: bool


def depth_bound_report(rec: ConstructionRecord) -> DepthBoundReport:
    side, remap = rec.side_subgraph()
    root = remap[rec.root]
    full = len(edge_orbits(side, MODE_FULL).orbits)
    stab = len(edge_orbits(side, MODE_STABILIZER, root).orbits)
    d = rec.profile.max_dist
    dist = rec.profile.dist
    facilitated = set()
    for u, w in rec.augmented.edges():
        du, dw = dist[u], dist[w]
        if du is not None and dw is not None and abs(du - dw) == 1:
            facilitated.add(max(du, dw))
    complete = all(level in facilitated for level in range(1, d + 1))
    return DepthBoundReport(
        max_dist=d,
        orbit_count_full=full,
        orbit_count_stabilizer=stab,
        holds_full_group=full >= d,
        holds_stabilizer=stab >= d,
        facilitated_complete=complete,
    )


def active_side_bridgeless(rec: ConstructionRecord) -> bool:
    """True iff every edge of the active side lies on a cycle (no bridges).

    Expected true for every record the construction emits; callers treat a
    false return as a construction bug.
    """
    side, _ = rec.side_subgraph()
    return not find_bridges(side)


def _insertion_targets(rec: ConstructionRecord, cut: Edge) -> Optional[tuple[tuple[int, int], tuple[int, int]]]:
    """Pair the removed edge's endpoints with the open nodes.

    Low id joins the first open node by default; if that would duplicate an
    existing edge (the endpoint already touches that open node) the pairing
    flips. None means neither pairing stays simple, which happens only when
    an endpoint of the removed edge neighbors both open nodes.
    """
    open1, open2 = rec.open_nodes
    lo, hi = cut.u, cut.v
    g = rec.augmented
    if not g.has_edge(lo, open1) and not g.has_edge(hi, open2):
        return (lo, open1), (hi, open2)
    if not g.has_edge(lo, open2) and not g.has_edge(hi, open1):
        return (lo, open2), (hi, open1)
    return None


def _check_member(rec: ConstructionRecord, result: Graph) -> None:
    if result.n != rec.augmented.n:
        raise InvariantError("insertion changed the vertex count")
    if not is_cubic(result):
        raise InvariantError("insertion result is not cubic")
    if not is_connected(result):
        raise InvariantError("insertion result is disconnected")
    bridges = find_bridges(result)
    if bridges != (rec.bridge,):
        raise InvariantError(f"insertion result bridges {bridges} != ({tuple(rec.bridge)},)")
    after = bfs_distances(result, rec.root, within=rec.active_side)
    for v in rec.active_side:
        before = rec.profile.dist[v]
        now = after.dist[v]
        if now is None or (before is not None and now > before):
            raise InvariantError(f"distance from root increased at vertex {v}")


def cycle_insertion(rec: ConstructionRecord, e: Edge) -> Graph:
    """Remove one cycle edge of the active side and join its endpoints to the
    two open nodes, yielding a connected cubic graph with the same single
    bridge."""
    e = edge(e[0], e[1])
    g = rec.augmented
    if not (e.u in rec.active_side and e.v in rec.active_side and g.has_edge(e.u, e.v)):
        raise InputError(f"{tuple(e)} is not an edge of the active side")
    open1, open2 = rec.open_nodes
    if e.u in (open1, open2) or e.v in (open1, open2):
        raise InputError(f"{tuple(e)} touches an open node")
    side, remap = rec.side_subgraph()
    if edge(remap[e.u], remap[e.v]) in find_bridges(side):
        raise InputError(f"{tuple(e)} is not on a cycle of the active side")
    targets = _insertion_targets(rec, e)
    if targets is None:
        raise InputError(
            f"{tuple(e)} cannot be joined to the open nodes without duplicating an edge"
        )
    result = add_edges(remove_edges(g, [e]), list(targets))
    _check_member(rec, result)
    return result


def join_open_nodes(rec: ConstructionRecord) -> Graph:
    """Close the construction by joining the two open nodes directly.

    This is what the insertion degenerates to when the chosen cycle edge
    already touches the open-node cluster, so it stands in for orbits that
    have no insertable representative.
    """
    result = add_edges(rec.augmented, [rec.open_nodes])
    _check_member(rec, result)
    return result


MEMBER_INSERT = "insert"
MEMBER_JOIN = "join-open-nodes"


@dataclass(frozen=True)
class FamilyMember:
    chosen_edge: Edge
    kind: str
    graph: Graph


@dataclass(frozen=True)
class InsertionFamily:
    record: ConstructionRecord
    members: tuple[FamilyMember, ...]
    pairwise_noniso: bool
    collision_report: tuple[tuple[int, int], ...]


def insertion_family(rec: ConstructionRecord, mode: str = MODE_STABILIZER) -> InsertionFamily:
    """One member per distinct-cycle-edge orbit of the active side.

    Orbit representatives are chosen insertable (not touching the open
    nodes) whenever the orbit has such an edge; orbits made up entirely of
    open-node-adjacent edges collapse into the single join-open-nodes member.
    Isomorphism collisions between members are reported, never dropped.
    """
    side, remap = rec.side_subgraph()
    inverse = {new: old for old, new in remap.items()}
    root_sub = remap[rec.root] if mode == MODE_STABILIZER else None
    partition = edge_orbits(side, mode, root_sub)
    side_bridges = set(find_bridges(side))
    open_sub = {remap[v] for v in rec.open_nodes}

    members: list[FamilyMember] = []
    blocked_reps: list[Edge] = []
    for orbit in partition.orbits:
        if orbit[0] in side_bridges:
            continue
        insertable = [
            edge(inverse[e.u], inverse[e.v])
            for e in orbit
            if e.u not in open_sub and e.v not in open_sub
        ]
        insertable = [
            e for e in insertable if _insertion_targets(rec, e) is not None
        ]
        if insertable:
            rep = min(insertable)
            members.append(FamilyMember(rep, MEMBER_INSERT, cycle_insertion(rec, rep)))
        else:
            blocked_reps.append(edge(inverse[orbit[0].u], inverse[orbit[0].v]))
    if blocked_reps:
        members.append(
            FamilyMember(min(blocked_reps), MEMBER_JOIN, join_open_nodes(rec))
        )
    members.sort(key=lambda mem: (mem.kind != MEMBER_INSERT, mem.chosen_edge))

    forms = [canonical_form(mem.graph).graph6 for mem in members]
    collisions = tuple(
        (i, j)
        for i in range(len(forms))
        for j in range(i + 1, len(forms))
        if forms[i] == forms[j]
    )
    return InsertionFamily(rec, tuple(members), not collisions, collisions)


def record_to_dict(rec: ConstructionRecord) -> dict:
    """JSON-ready view of a record: graph6 strings plus the named pieces."""
    return {
        "source": emit_graph6(rec.source),
        "augmented": emit_graph6(rec.augmented),
        "bibridge": {
            "e1": list(rec.chosen_bibridge.e1),
            "e2": list(rec.chosen_bibridge.e2),
            "side_a": sorted(rec.chosen_bibridge.side_a),
            "side_b": sorted(rec.chosen_bibridge.side_b),
            "balance": rec.chosen_bibridge.balance,
        },
        "bridge": list(rec.bridge),
        "open_nodes": list(rec.open_nodes),
        "active_side": sorted(rec.active_side),
        "root": rec.root,
        "side_distances": {
            str(v): rec.profile.dist[v] for v in sorted(rec.active_side)
        },
        "max_dist": rec.profile.max_dist,
    }
