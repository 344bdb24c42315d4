"""Isomorphism-free enumeration of connected cubic graphs and the evidence
tables built on top of it.

The enumerator saturates vertices in id order: at each turn the smallest
unsaturated vertex receives all of its remaining edges, drawing partners
from already-introduced unsaturated vertices and from fresh ids handed out
consecutively. Every connected cubic graph admits such a numbering (number
the vertices by first touch along any breadth-first saturation), so the
search sees at least one labeling per isomorphism class, and a canonical
form pass deduplicates the survivors. Two cheap, provably sound filters cut
the duplication before the canonical pass: the graph is dropped unless
vertex 0 carries the minimal vertex signature (every class has a numbering
rooted at such a vertex), and a labeling that a same-block fresh-vertex
swap would lexicographically lower is dropped (the lowered labeling is
admissible too, so its class survives elsewhere).

Census classification can fan out over a process pool; aggregation is
count-based and therefore independent of completion order.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .connectivity import classify_connectivity, component_of, find_bridges
from .construction import bridge_construct, depth_bound_report, insertion_family
from .errors import InputError, InvariantError
from .graphs import (
    Graph,
    bfs_distances,
    emit_graph6,
    induced_subgraph,
    parse_graph6,
)
from .hamilton import has_hamiltonian_cycle
from .reduction import int_fifth_root
from .symmetry import GROUP_MAX_N, MODE_FULL, canonical_form, distinct_cycle_edges

DEFAULT_MAX_N = 18
ENV_MAX_N = "CUBIC_LAB_MAX_N"


def max_enumeration_n() -> int:
    raw = os.environ.get(ENV_MAX_N)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        return int(raw)
    except ValueError as exc:
        raise InputError(f"{ENV_MAX_N} must be an integer, got {raw!r}") from exc


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def _saturation_leaves(n: int) -> Iterator[tuple[list[list[int]], list[tuple[int, int, int]]]]:
    """Yield (adjacency, fresh blocks) for every connected cubic labeled
    graph whose vertex ids follow first-use order. A block (owner, start,
    size) records that ``owner``'s turn handed out ids start..start+size-1."""
    adj: list[list[int]] = [[] for _ in range(n)]
    deg = [0] * n
    blocks: list[tuple[int, int, int]] = []

    def turn(u: int, frontier: int) -> Iterator[tuple[list[list[int]], list[tuple[int, int, int]]]]:
        if u == n:
            if frontier == n:
                yield adj, blocks
            return
        if u >= frontier:
            # u was never attached to anything earlier: only legal for the
            # very first vertex, otherwise the prefix is a closed component
            if u != 0:
                return
            frontier = 1
        need = 3 - deg[u]
        if need == 0:
            yield from turn(u + 1, frontier)
            return
        existing = [
            w for w in range(u + 1, frontier) if deg[w] < 3 and w not in adj[u]
        ]
        for fresh in range(min(need, n - frontier), -1, -1):
            from_existing = need - fresh
            if from_existing > len(existing):
                continue
            new_ids = list(range(frontier, frontier + fresh))
            for combo in combinations(existing, from_existing):
                partners = list(combo) + new_ids
                for w in partners:
                    adj[u].append(w)
                    adj[w].append(u)
                    deg[w] += 1
                deg[u] += need
                if fresh:
                    blocks.append((u, frontier, fresh))
                yield from turn(u + 1, frontier + fresh)
                if fresh:
                    blocks.pop()
                deg[u] -= need
                for w in partners:
                    adj[u].pop()
                    adj[w].pop()
                    deg[w] -= 1

    yield from turn(0, 0)


def _sorted_edges(adj: list[list[int]]) -> list[tuple[int, int]]:
    return sorted(
        (u, w) if u < w else (w, u) for u in range(len(adj)) for w in adj[u] if w > u
    )


def _block_swap_reducible(adj: list[list[int]], blocks: list[tuple[int, int, int]]) -> bool:
    """True when swapping two same-block fresh siblings (neither of which
    introduced fresh vertices at its own turn) lowers the edge list.

    Such a swap keeps the labeling admissible: the siblings share their
    introduction turn, and because neither owns a block the frontier walks
    through their own turns unchanged. The lowered labeling is therefore
    generated too, so this leaf is a duplicate that can be skipped.
    """
    base = _sorted_edges(adj)
    owners = {owner for owner, _, _ in blocks}
    for _, start, size in blocks:
        for f in range(start, start + size - 1):
            if f in owners or (f + 1) in owners:
                continue
            swap = {f: f + 1, f + 1: f}
            swapped = sorted(
                tuple(sorted((swap.get(u, u), swap.get(w, w)))) for u, w in base
            )
            if swapped < base:
                return True
    return False


def _cheap_vertex_keys(adj: list[list[int]]) -> list[tuple]:
    """Isomorphism-invariant per-vertex signatures on raw adjacency lists."""
    n = len(adj)
    keys = []
    for v in range(n):
        dist = [-1] * n
        dist[v] = 0
        queue = [v]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            for w in adj[x]:
                if dist[w] < 0:
                    dist[w] = dist[x] + 1
                    queue.append(w)
        nbrs = adj[v]
        tri = sum(
            1 for i in range(len(nbrs)) for j in range(i + 1, len(nbrs))
            if nbrs[j] in adj[nbrs[i]]
        )
        keys.append((tri, tuple(sorted(dist))))
    return keys


@lru_cache(maxsize=None)
def _enumerate_cached(n: int) -> tuple[Graph, ...]:
    found: dict[bytes, None] = {}
    for adj, blocks in _saturation_leaves(n):
        keys = _cheap_vertex_keys(adj)
        if keys[0] != min(keys):
            continue
        if blocks and _block_swap_reducible(adj, blocks):
            continue
        g = Graph(n, tuple(tuple(sorted(row)) for row in adj))
        form = canonical_form(g).graph6
        if form not in found:
            found[form] = None
    return tuple(parse_graph6(form.decode("ascii")) for form in sorted(found))


def enumerate_cubic(n: int) -> tuple[Graph, ...]:
    """Every connected cubic graph on n vertices, exactly once per
    isomorphism class, as canonical representatives in canonical order."""
    if n % 2:
        raise InputError(
            f"no cubic graph exists on {n} vertices (odd degree sum)"
        )
    bound = max_enumeration_n()
    if not 4 <= n <= bound:
        raise InputError(f"n must lie in [4, {bound}], got {n}")
    return _enumerate_cached(n)


# ---------------------------------------------------------------------------
# census rows
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CensusRow:
    n: int
    total_cubic: int
    hamiltonian: int
    non_hamiltonian: int
    bridge: int
    biconnected: int
    three_connected: int
    non_ham_and_bridge: int
    non_ham_non3conn: int
    bridge_fraction_of_non_ham: float


def classify_graph6(g6: str) -> dict:
    """Per-graph facts; top-level so process pools can ship it around."""
    g = parse_graph6(g6)
    cls = classify_connectivity(g)
    ham = has_hamiltonian_cycle(g)
    return {
        "graph6": g6,
        "n": g.n,
        "bridge_count": cls.bridge_count,
        "class": cls.label,
        "is_hamiltonian": ham.is_hamiltonian,
        "certificate": ham.certificate_kind,
    }


def _classify_many(g6s: list[str], jobs: int) -> list[dict]:
    if jobs <= 1 or len(g6s) < 4:
        return [classify_graph6(s) for s in g6s]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(classify_graph6, g6s, chunksize=16))


def _row_from_facts(n: int, facts: list[dict]) -> CensusRow:
    total = len(facts)
    ham = sum(1 for f in facts if f["is_hamiltonian"])
    bridge = sum(1 for f in facts if f["class"] == "bridge")
    bicon = sum(1 for f in facts if f["class"] == "biconnected")
    three = sum(1 for f in facts if f["class"] == "three-connected")
    non_ham = total - ham
    nh_bridge = sum(
        1 for f in facts if f["class"] == "bridge" and not f["is_hamiltonian"]
    )
    nh_non3 = sum(
        1 for f in facts if f["class"] != "three-connected" and not f["is_hamiltonian"]
    )
    if bridge != nh_bridge:
        raise InvariantError(
            f"a bridge graph tested Hamiltonian at n={n}; the solver is broken"
        )
    if total != bridge + bicon + three:
        raise InvariantError("connectivity classes do not partition the census")
    return CensusRow(
        n=n,
        total_cubic=total,
        hamiltonian=ham,
        non_hamiltonian=non_ham,
        bridge=bridge,
        biconnected=bicon,
        three_connected=three,
        non_ham_and_bridge=nh_bridge,
        non_ham_non3conn=nh_non3,
        bridge_fraction_of_non_ham=(nh_bridge / non_ham) if non_ham else 0.0,
    )


def census_table(n_min: int, n_max: int, jobs: int = 1) -> list[CensusRow]:
    rows = []
    for n in range(n_min, n_max + 1):
        if n % 2:
            continue
        g6s = [emit_graph6(g) for g in enumerate_cubic(n)]
        rows.append(_row_from_facts(n, _classify_many(g6s, jobs)))
    return rows


def census_csv(rows: list[CensusRow]) -> str:
    names = [f.name for f in fields(CensusRow)]
    out = [",".join(names)]
    for row in rows:
        cells = []
        for name in names:
            value = getattr(row, name)
            cells.append(f"{value:.6f}" if isinstance(value, float) else str(value))
        out.append(",".join(cells))
    return "\n".join(out) + "\n"


def census_json(rows: list[CensusRow]) -> list[dict]:
    names = [f.name for f in fields(CensusRow)]
    return [{name: getattr(row, name) for name in names} for row in rows]


# ---------------------------------------------------------------------------
# complete-tree probe
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BridgeTreeReport:
    """Whether some bridge side of the graph carries a near-root region that
    is a complete tree of admissible size."""

    matches: bool
    tree_size: Optional[int]
    cycle_orbits: Optional[int]
    whole_cycle_orbits: Optional[int]


def _is_complete_tree(sub: Graph, root: int) -> bool:
    """Tree rooted at ``root`` with exactly two children under every internal
    vertex and all leaves at equal depth; a single vertex counts."""
    if sub.n == 1:
        return True
    if sub.m != sub.n - 1:
        return False
    profile = bfs_distances(sub, root)
    if any(d is None for d in profile.dist):
        return False
    depth = profile.max_dist
    for v in range(sub.n):
        d = profile.dist[v]
        children = sum(1 for w in sub.adj[v] if profile.dist[w] == d + 1)
        if d < depth and children != 2:
            return False
        if d == depth and children != 0:
            return False
    return True


def _size_in_window(size: int, k: int) -> bool:
    # [fifth_root(k) / 2, fifth_root(k)) checked in exact integer arithmetic
    return (2 * size) ** 5 >= k and size ** 5 < k


def is_complete_tree_at_bridge(h: Graph) -> BridgeTreeReport:
    """Check every bridge endpoint of a cubic bridge graph as a potential
    root of a complete-tree region on its own side."""
    bridges = find_bridges(h)
    if not bridges:
        raise InputError("is_complete_tree_at_bridge requires a bridge graph")
    whole = (
        distinct_cycle_edges(h, MODE_FULL).count if h.n <= GROUP_MAX_N else None
    )
    for br in bridges:
        for root in br:
            side = component_of(h, root, {br})
            side_sub, remap = induced_subgraph(h, side)
            k = distinct_cycle_edges(side_sub, MODE_FULL).count
            if k < 1:
                continue
            m = int_fifth_root(k)
            profile = bfs_distances(side_sub, remap[root])
            ordered = sorted(range(side_sub.n), key=lambda v: (profile.dist[v], v))
            chosen = ordered[:m]
            deepest = max(profile.dist[v] for v in chosen)
            region = [v for v in chosen if profile.dist[v] < deepest]
            if not region:
                continue
            region_sub, region_map = induced_subgraph(side_sub, region)
            if not _is_complete_tree(region_sub, region_map[remap[root]]):
                continue
            if _size_in_window(len(region), k):
                return BridgeTreeReport(True, len(region), k, whole)
    return BridgeTreeReport(False, None, None, whole)


@dataclass(frozen=True)
class ConjectureProbeRow:
    n: int
    lhs_count: int
    rhs_count: int
    injection_possible: bool


def conjecture_probe(n: int) -> ConjectureProbeRow:
    """Count cubic bridge graphs of size n+2 whose bridge side carries an
    in-window complete tree (lhs) against all cubic bridge graphs of size n
    (rhs). A finite injection from lhs into rhs exists iff lhs <= rhs."""
    lhs = 0
    for g in enumerate_cubic(n + 2):
        if find_bridges(g) and is_complete_tree_at_bridge(g).matches:
            lhs += 1
    rhs = sum(1 for g in enumerate_cubic(n) if find_bridges(g))
    return ConjectureProbeRow(n, lhs, rhs, lhs <= rhs)


def probe_csv(rows: list[ConjectureProbeRow]) -> str:
    out = ["n,lhs_count,rhs_count,injection_possible"]
    for r in rows:
        out.append(f"{r.n},{r.lhs_count},{r.rhs_count},{str(r.injection_possible).lower()}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# family statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilyStatsRow:
    graph6: str
    side_cycle_orbits: int
    max_dist: int
    family_size: int
    internal_collisions: int


def family_size_stats(n: int) -> tuple[list[FamilyStatsRow], list[tuple[str, str]]]:
    """Construct and expand every biconnected cubic graph of size n.

    Returns per-input rows plus cross-input canonical collisions (pairs of
    source graph6 strings whose families overlap); overlaps inside one family
    are counted in the row itself.
    """
    rows: list[FamilyStatsRow] = []
    seen_members: dict[bytes, str] = {}
    cross: list[tuple[str, str]] = []
    for g in enumerate_cubic(n):
        if not classify_connectivity(g).is_biconnected:
            continue
        rec = bridge_construct(g)
        fam = insertion_family(rec)
        report = depth_bound_report(rec)
        g6 = emit_graph6(g)
        side, remap = rec.side_subgraph()
        k = distinct_cycle_edges(side, MODE_FULL).count
        rows.append(FamilyStatsRow(
            graph6=g6,
            side_cycle_orbits=k,
            max_dist=report.max_dist,
            family_size=len(fam.members),
            internal_collisions=len(fam.collision_report),
        ))
        for member in fam.members:
            form = canonical_form(member.graph).graph6
            owner = seen_members.get(form)
            if owner is None:
                seen_members[form] = g6
            elif owner != g6:
                cross.append((owner, g6))
    return rows, cross
