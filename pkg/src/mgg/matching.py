"""Maximum-cardinality matching.

Three routes with one result type:

* layered augmenting-path matching (BFS phases + disjoint shortest-path
  extraction) for bipartite graphs, O(sqrt(V) * E);
* blossom contraction for general graphs, O(V^3)-class -- correctness over
  speed, since only bipartite inputs carry the fast-bound claim;
* subset enumeration as a brute-force oracle for graphs with few edges.

Loops are stripped before matching; a loop can never be in a matching.
Augmenting searches scan vertices in ascending order, so every route is
deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .graphs import Bipartition, Graph, bipartition, induced_subgraph

BRUTE_FORCE_EDGE_CAP = 24

_INF = float("inf")


class MatchingCapacityError(RuntimeError):
    pass


@dataclass(frozen=True)
class Matching:
    """Symmetric pairing: mate[u] is u's partner or None."""

    mate: tuple[int | None, ...]

    @cached_property
    def size(self) -> int:
        return sum(1 for v in self.mate if v is not None) // 2

    def covers(self, u: int) -> bool:
        return self.mate[u] is not None

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u, v in enumerate(self.mate) if v is not None and u < v]

    def validate(self, g: Graph) -> None:
        for u, v in enumerate(self.mate):
            if v is None:
                continue
            if self.mate[v] != u:
                raise ValueError(f"mate map not symmetric at {u}<->{v}")
            if u != v and not g.has_edge(u, v):
                raise ValueError(f"matched pair ({u},{v}) is not an edge")
            if u == v:
                raise ValueError(f"vertex {u} matched to itself")


def _require_undirected(g: Graph) -> None:
    if g.directed:
        raise ValueError("matching is defined for undirected graphs")


def _check_bipartition(g: Graph, b: Bipartition) -> None:
    if b.left & b.right or (b.left | b.right) != set(range(g.n)):
        raise ValueError("bipartition does not partition the vertex set")
    for u, v in g.edges:
        if (u in b.left) == (v in b.left):
            raise ValueError(f"edge ({u},{v}) does not join the two sides")


def _mate_array(match: list[int]) -> tuple[int | None, ...]:
    return tuple(v if v >= 0 else None for v in match)


def _hopcroft_karp(n: int, left: list[int], adj: list[list[int]]):
    """Layered phase matching; returns (match array, phase count)."""
    match = [-1] * n
    for u in left:  # greedy start trims phases without affecting the bound
        for v in adj[u]:
            if match[v] < 0:
                match[u] = v
                match[v] = u
                break
    dist = [_INF] * n
    phases = 0
    while True:
        # BFS layering from the free left vertices
        queue = deque()
        for u in left:
            if match[u] < 0:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = _INF
        free_dist = _INF
        while queue:
            u = queue.popleft()
            du = dist[u]
            if du >= free_dist:
                continue
            for v in adj[u]:
                w = match[v]
                if w < 0:
                    if free_dist is _INF:
                        free_dist = du + 1
                elif dist[w] is _INF:
                    dist[w] = du + 1
                    queue.append(w)
        if free_dist is _INF:
            break
        phases += 1
        # extract a maximal set of vertex-disjoint shortest augmenting paths
        it = [0] * n
        for s in left:
            if match[s] >= 0:
                continue
            stack = [s]
            vpath: list[int] = []
            while stack:
                u = stack[-1]
                du = dist[u]
                moved = False
                while it[u] < len(adj[u]):
                    v = adj[u][it[u]]
                    it[u] += 1
                    w = match[v]
                    if w < 0:
                        if du + 1 == free_dist:
                            vpath.append(v)
                            for uu, vv in zip(stack, vpath):
                                match[uu] = vv
                                match[vv] = uu
                            stack = []
                            moved = True
                            break
                    elif dist[w] == du + 1:
                        vpath.append(v)
                        stack.append(w)
                        moved = True
                        break
                if moved:
                    continue
                dist[u] = _INF
                stack.pop()
                if vpath:
                    vpath.pop()
    return match, phases


def _bipartite_match(g: Graph, b: Bipartition):
    _require_undirected(g)
    _check_bipartition(g, b)
    adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in g.edges:
        if u == v:
            continue
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    left = sorted(b.left)
    return _hopcroft_karp(g.n, left, adj)


def max_matching_bipartite(g: Graph, b: Bipartition) -> Matching:
    match, _ = _bipartite_match(g, b)
    return Matching(_mate_array(match))


def max_matching_bipartite_with_phases(g: Graph, b: Bipartition) -> tuple[Matching, int]:
    match, phases = _bipartite_match(g, b)
    return Matching(_mate_array(match)), phases


def max_matching_general(g: Graph) -> Matching:
    """Blossom-contraction matching on an arbitrary undirected graph."""
    _require_undirected(g)
    n = g.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            continue
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()

    match = [-1] * n
    for u in range(n):  # deterministic greedy seed
        if match[u] < 0:
            for v in adj[u]:
                if match[v] < 0:
                    match[u] = v
                    match[v] = u
                    break

    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        x = a
        while True:
            x = base[x]
            seen[x] = True
            if match[x] < 0:
                break
            x = parent[match[x]]
        y = b
        while True:
            y = base[y]
            if seen[y]:
                return y
            y = parent[match[y]]

    def mark_path(v: int, ancestor: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != ancestor:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting_path(root: int) -> int:
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used = [False] * n
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] >= 0 and parent[match[to]] >= 0):
                    # odd cycle: contract the blossom around the common base
                    ancestor = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, ancestor, to, in_blossom)
                    mark_path(to, ancestor, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = ancestor
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] < 0:
                    parent[to] = v
                    if match[to] < 0:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for root in range(n):
        if match[root] >= 0:
            continue
        v = find_augmenting_path(root)
        while v >= 0:
            pv = parent[v]
            next_v = match[pv]
            match[v] = pv
            match[pv] = v
            v = next_v

    return Matching(_mate_array(match))


def covered_by_all_maximum_matchings(g: Graph, u: int, b: Bipartition | None = None) -> bool:
    """True iff nu(G - u) < nu(G), i.e. every maximum matching covers u.

    With a bipartition the two sizes come from the layered bipartite matcher,
    keeping the advertised O(sqrt(V) * E) route; otherwise blossom matching is
    used.
    """
    _require_undirected(g)
    if not 0 <= u < g.n:
        raise ValueError(f"vertex {u} outside graph")
    sub, _ = induced_subgraph(g, set(range(g.n)) - {u})
    if b is None:
        full = max_matching_general(g).size
        without = max_matching_general(sub).size
    else:
        full = max_matching_bipartite(g, b).size
        without = max_matching_bipartite(sub, bipartition(sub)).size
    return without < full


def brute_force_matching_size(g: Graph) -> int:
    """Exact nu(G) by enumeration over edge subsets (test oracle)."""
    _require_undirected(g)
    edges = [e for e in g.edges if e[0] != e[1]]
    m = len(edges)
    if m > BRUTE_FORCE_EDGE_CAP:
        raise MatchingCapacityError(
            f"brute force limited to {BRUTE_FORCE_EDGE_CAP} edges, got {m}"
        )
    best = 0
    stack = [(0, 0, 0)]  # (next edge index, used-vertex mask, size)
    while stack:
        i, used, size = stack.pop()
        if size + (m - i) <= best:
            continue
        if i == m:
            best = max(best, size)
            continue
        u, v = edges[i]
        stack.append((i + 1, used, size))
        bit = (1 << u) | (1 << v)
        if not used & bit:
            stack.append((i + 1, used | bit, size + 1))
    return best
