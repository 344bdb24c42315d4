"""Exact isomorphism machinery for desk-scale graphs.

Canonical forms come from an individualization-refinement search that keeps
the lexicographically least relabeled edge list over all refinement leaves,
so equality of canonical byte strings is exactly isomorphism (no heuristic
invariants stand in for the search). Sizes are capped because the census
workloads this package targets never exceed a few dozen vertices and
exactness matters more than asymptotics here.

"Distinct" edges follow the orbit view: two edges are interchangeable when
some admitted automorphism maps one onto the other. The admitted group is
either the full automorphism group or the stabilizer of a chosen root; the
stabilizer mode matters because distance-from-root arguments only survive
automorphisms that fix the root.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .connectivity import find_bridges
from .errors import InputError, InvariantError
from .graphs import Edge, Graph, bfs_distances, edge, emit_graph6, relabel

CANON_MAX_N = 24
GROUP_MAX_N = 16

MODE_FULL = "full"
MODE_STABILIZER = "stabilizer"


@dataclass(frozen=True)
class CanonicalForm:
    """Canonical graph6 bytes plus the relabeling (old id -> new id) that
    produces them."""

    graph6: bytes
    labeling: tuple[int, ...]


@dataclass(frozen=True)
class EdgeOrbitPartition:
    orbits: tuple[tuple[Edge, ...], ...]
    mode: str
    root: Optional[int]


def _vertex_keys(g: Graph) -> list[tuple]:
    """Cheap isomorphism-invariant vertex signatures used to seed the
    refinement and to prune automorphism search."""
    keys = []
    for v in range(g.n):
        profile = bfs_distances(g, v)
        dists = tuple(sorted(g.n if d is None else d for d in profile.dist))
        nbrs = g.adj[v]
        triangles = sum(
            1 for i in range(len(nbrs)) for j in range(i + 1, len(nbrs))
            if g.has_edge(nbrs[i], nbrs[j])
        )
        keys.append((len(nbrs), triangles, dists))
    return keys


def _refine(adj_sets: list[frozenset[int]], cells: list[list[int]]) -> list[list[int]]:
    """Split cells by neighbor counts until the partition is equitable.

    Cell order and split order depend only on position and count keys, never
    on raw vertex ids, so the refinement commutes with relabeling.
    """
    cells = [sorted(c) for c in cells]
    changed = True
    while changed:
        changed = False
        sets = [frozenset(c) for c in cells]
        for i, cell in enumerate(cells):
            if len(cell) == 1:
                continue
            keyed: dict[tuple, list[int]] = {}
            for v in cell:
                k = tuple(len(adj_sets[v] & s) for s in sets)
                keyed.setdefault(k, []).append(v)
            if len(keyed) > 1:
                cells[i:i + 1] = [sorted(keyed[k]) for k in sorted(keyed)]
                changed = True
                break
    return cells


@lru_cache(maxsize=16384)
def canonical_form(g: Graph) -> CanonicalForm:
    """Deterministic, relabeling-invariant canonical form.

    The empty graph maps to the fixed sentinel b"?" (its graph6 encoding).
    """
    if g.n > CANON_MAX_N:
        raise InputError(f"canonical_form supports at most {CANON_MAX_N} vertices")
    if g.n == 0:
        return CanonicalForm(b"?", ())
    adj_sets = [frozenset(r) for r in g.adj]
    keys = _vertex_keys(g)
    by_key: dict[tuple, list[int]] = {}
    for v, k in enumerate(keys):
        by_key.setdefault(k, []).append(v)
    start = [sorted(by_key[k]) for k in sorted(by_key)]
    edges = g.edges()
    best_code: Optional[tuple] = None
    best_labeling: Optional[tuple[int, ...]] = None

    def visit(cells: list[list[int]]) -> None:
        nonlocal best_code, best_labeling
        cells = _refine(adj_sets, cells)
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            pos = {c[0]: i for i, c in enumerate(cells)}
            code = tuple(sorted(
                (pos[u], pos[w]) if pos[u] < pos[w] else (pos[w], pos[u])
                for u, w in edges
            ))
            if best_code is None or code < best_code:
                best_code = code
                best_labeling = tuple(pos[v] for v in range(len(pos)))
            return
        cell = cells[target]
        for v in cell:
            rest = [w for w in cell if w != v]
            visit(cells[:target] + [[v], rest] + cells[target + 1:])

    visit(start)
    assert best_labeling is not None
    return CanonicalForm(
        emit_graph6(relabel(g, best_labeling)).encode("ascii"), best_labeling
    )


def are_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_form(g).graph6 == canonical_form(h).graph6


@lru_cache(maxsize=4096)
def automorphism_group(g: Graph) -> tuple[tuple[int, ...], ...]:
    """The full automorphism group as explicit permutations (perm[old] = new).

    Backtracking over vertex images, pruned by the vertex signatures and by
    adjacency consistency with everything already mapped.
    """
    if g.n > GROUP_MAX_N:
        raise InputError(f"automorphism_group supports at most {GROUP_MAX_N} vertices")
    n = g.n
    if n == 0:
        return ((),)
    adj_sets = [frozenset(r) for r in g.adj]
    keys = _vertex_keys(g)
    candidates = [
        tuple(w for w in range(n) if keys[w] == keys[v]) for v in range(n)
    ]
    perms: list[tuple[int, ...]] = []
    perm = [-1] * n
    used = [False] * n

    def extend(v: int) -> None:
        if v == n:
            perms.append(tuple(perm))
            return
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in range(v):
                if (u in adj_sets[v]) != (perm[u] in adj_sets[w]):
                    ok = False
                    break
            if ok:
                perm[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False
                perm[v] = -1

    extend(0)
    if tuple(range(n)) not in perms:
        raise InvariantError("automorphism search lost the identity")
    return tuple(sorted(perms))


def vertex_stabilizer(g: Graph, v: int) -> tuple[tuple[int, ...], ...]:
    """Automorphisms fixing v."""
    if not 0 <= v < g.n:
        raise InputError(f"vertex {v} out of range")
    return tuple(p for p in automorphism_group(g) if p[v] == v)


def edge_orbits(g: Graph, mode: str = MODE_FULL, root: Optional[int] = None) -> EdgeOrbitPartition:
    """Partition the edges into orbits under the chosen group."""
    if mode not in (MODE_FULL, MODE_STABILIZER):
        raise InputError(f"unknown orbit mode {mode!r}")
    if mode == MODE_STABILIZER:
        if root is None:
            raise InputError("stabilizer mode needs a root vertex")
        perms = vertex_stabilizer(g, root)
    else:
        perms = automorphism_group(g)
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    parent = list(range(len(edges)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in perms:
        for e in edges:
            j = find(index[e])
            k = find(index[edge(p[e.u], p[e.v])])
            if j != k:
                parent[max(j, k)] = min(j, k)
    grouped: dict[int, list[Edge]] = {}
    for e in edges:
        grouped.setdefault(find(index[e]), []).append(e)
    orbits = tuple(
        tuple(sorted(members)) for _, members in sorted(
            grouped.items(), key=lambda kv: min(kv[1])
        )
    )
    return EdgeOrbitPartition(orbits, mode, root if mode == MODE_STABILIZER else None)


@dataclass(frozen=True)
class DistinctCycleEdges:
    """Count of edge orbits that lie on cycles, with one representative per
    orbit (an edge is on a cycle iff it is not a bridge)."""

    count: int
    representatives: tuple[Edge, ...]


def distinct_cycle_edges(g: Graph, mode: str = MODE_FULL, root: Optional[int] = None) -> DistinctCycleEdges:
    bridges = set(find_bridges(g))
    partition = edge_orbits(g, mode, root)
    reps: list[Edge] = []
    for orbit in partition.orbits:
        on_cycle = [e not in bridges for e in orbit]
        if any(on_cycle) != all(on_cycle):
            raise InvariantError("orbit mixes bridge and cycle edges")
        if on_cycle[0]:
            reps.append(orbit[0])
    return DistinctCycleEdges(len(reps), tuple(sorted(reps)))
