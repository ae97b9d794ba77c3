"""Immutable undirected graphs plus the exact path/cycle primitives the solvers need.

Vertices are 0..n-1.  A graph may mark some vertices as *forbidden*: they keep
their edges (and therefore count toward degrees) but solvers must never place
them inside an alliance.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

UNREACHABLE = -1


class GraphError(ValueError):
    """Base class for graph construction problems."""


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class VertexRangeError(GraphError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[int, ...], ...]
    adj_sets: tuple[frozenset[int], ...]
    forbidden: frozenset[int]

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)


def build_graph(
    n: int,
    edge_list: Iterable[tuple[int, int]],
    forbidden: Iterable[int] = (),
) -> Graph:
    """Validate and freeze a graph.

    Rejects self-loops, duplicate edges (regardless of endpoint order) and
    out-of-range endpoints, each with its own error type.
    """
    if n < 0:
        raise VertexRangeError(f"vertex count must be nonnegative, got {n}")
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for u, v in edge_list:
        if not (0 <= u < n) or not (0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge ({e[0]}, {e[1]})")
        seen.add(e)
        edges.append(e)
    edges.sort()
    neigh: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        neigh[u].append(v)
        neigh[v].append(u)
    bad = [v for v in forbidden if not (0 <= v < n)]
    if bad:
        raise VertexRangeError(f"forbidden vertex {bad[0]} out of range for n={n}")
    return Graph(
        n=n,
        edges=tuple(edges),
        adj=tuple(tuple(sorted(a)) for a in neigh),
        adj_sets=tuple(frozenset(a) for a in neigh),
        forbidden=frozenset(forbidden),
    )


def distances_from(g: Graph, v: int) -> list[int]:
    """BFS distances from v; unreachable vertices get UNREACHABLE (-1)."""
    if not (0 <= v < g.n):
        raise VertexRangeError(f"vertex {v} out of range for n={g.n}")
    dist = [UNREACHABLE] * g.n
    dist[v] = 0
    q = deque([v])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def bfs_path(g: Graph, v: int, target: int) -> list[int] | None:
    """One shortest v->target path (smallest-parent tie-break), or None."""
    if v == target:
        return [v]
    dist = [UNREACHABLE] * g.n
    parent = [-1] * g.n
    dist[v] = 0
    q = deque([v])
    while q:
        x = q.popleft()
        for y in g.adj[x]:
            if dist[y] == UNREACHABLE:
                dist[y] = dist[x] + 1
                parent[y] = x
                if y == target:
                    path = [y]
                    while path[-1] != v:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                q.append(y)
    return None


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return distances_from(g, 0).count(UNREACHABLE) == 0


@dataclass(frozen=True)
class PathPair:
    """Two internally vertex-disjoint paths from a common origin to distinct targets."""

    endpoint_x: int
    endpoint_y: int
    path_x: tuple[int, ...]
    path_y: tuple[int, ...]
    total_vertices: int


class _MinCostFlow:
    """Successive-shortest-path min-cost flow on a small network.

    Arc order is fixed by insertion, and the Bellman-Ford scan is
    deterministic, so equal-cost solutions always resolve the same way.
    """

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.head: list[list[int]] = [[] for _ in range(node_count)]
        # parallel arrays: to, cap, cost
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add(self, u: int, v: int, cap: int, cost: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)

    def run(self, s: int, t: int, want: int) -> tuple[int, int]:
        """Push up to `want` units s->t; returns (flow, cost)."""
        flow = 0
        total = 0
        inf = float("inf")
        while flow < want:
            dist = [inf] * self.node_count
            in_queue = [False] * self.node_count
            pre_arc = [-1] * self.node_count
            dist[s] = 0
            q = deque([s])
            in_queue[s] = True
            while q:
                x = q.popleft()
                in_queue[x] = False
                for a in self.head[x]:
                    if self.cap[a] > 0 and dist[x] + self.cost[a] < dist[self.to[a]]:
                        y = self.to[a]
                        dist[y] = dist[x] + self.cost[a]
                        pre_arc[y] = a
                        if not in_queue[y]:
                            q.append(y)
                            in_queue[y] = True
            if dist[t] == inf:
                break
            # augment one unit (all caps here are 0/1 on forward arcs)
            x = t
            while x != s:
                a = pre_arc[x]
                self.cap[a] -= 1
                self.cap[a ^ 1] += 1
                x = self.to[a ^ 1]
            flow += 1
            total += int(dist[t])
        return flow, total

    def flowed(self, arc: int) -> int:
        # arcs were added in pairs; the reverse arc holds the pushed flow
        return self.cap[arc ^ 1]


def _in(u: int) -> int:
    return 2 * u


def _out(u: int) -> int:
    return 2 * u + 1


def _trace_unit(net: _MinCostFlow, start: int, used: set[int]) -> list[int]:
    """Follow one unit of flow from `start`, consuming arcs via `used`."""
    seq = []
    node = start
    while True:
        nxt = None
        for a in net.head[node]:
            if a % 2 == 0 and a not in used and net.flowed(a) > 0:
                nxt = a
                break
        if nxt is None:
            return seq
        used.add(nxt)
        node = net.to[nxt]
        seq.append(node)


def shortest_cycle_with_vertices(g: Graph, v: int) -> tuple[int, tuple[int, ...]] | None:
    """Shortest simple cycle containing v, as (length, sorted vertex tuple).

    Computed exactly: for every other vertex w, the cheapest pair of
    internally disjoint v-w paths is a 2-unit min-cost flow where every
    vertex except v and w has unit capacity and unit cost.
    """
    if not (0 <= v < g.n):
        raise VertexRangeError(f"vertex {v} out of range for n={g.n}")
    if g.degree(v) < 2:
        return None
    dist = distances_from(g, v)
    best: tuple[int, tuple[int, ...]] | None = None
    for w in range(g.n):
        if w == v or dist[w] == UNREACHABLE or g.degree(w) < 2:
            continue
        if best is not None and 2 * dist[w] > best[0]:
            continue  # every cycle through v and w is strictly longer
        net = _MinCostFlow(2 * g.n)
        for u in range(g.n):
            if u != v and u != w:
                net.add(_in(u), _out(u), 1, 1)
        for a, b in g.edges:
            for x, y in ((a, b), (b, a)):
                if x == w or y == v:
                    continue
                net.add(_out(x), _in(y), 1, 0)
        flow, cost = net.run(_out(v), _in(w), 2)
        if flow < 2:
            continue
        length = cost + 2
        if best is not None and length > best[0]:
            continue
        used: set[int] = set()
        members = {v, w}
        for _ in range(2):
            for node in _trace_unit(net, _out(v), used):
                if node % 2 == 1:
                    members.add(node // 2)
        cand = (length, tuple(sorted(members)))
        if best is None or cand < best:
            best = cand
    return best


def shortest_cycle_through(g: Graph, v: int) -> int | None:
    """Length of the shortest simple cycle containing v, or None if acyclic at v."""
    found = shortest_cycle_with_vertices(g, v)
    return None if found is None else found[0]


def min_disjoint_path_pair(g: Graph, v: int, targets: Iterable[int]) -> PathPair | None:
    """Cheapest pair of internally vertex-disjoint paths from v to two distinct targets.

    Cost is the total number of distinct vertices used (v counted once).
    Returns None when no such pair exists.
    """
    tset = sorted(set(targets))
    for t in tset:
        if not (0 <= t < g.n):
            raise VertexRangeError(f"target {t} out of range for n={g.n}")
    if v in tset:
        raise ValueError(f"origin {v} may not be one of the targets")
    if len(tset) < 2:
        return None
    sink = 2 * g.n
    net = _MinCostFlow(2 * g.n + 1)
    for u in range(g.n):
        if u != v:
            net.add(_in(u), _out(u), 1, 1)
    for a, b in g.edges:
        for x, y in ((a, b), (b, a)):
            if y == v:
                continue
            net.add(_out(x), _in(y), 1, 0)
    for t in tset:
        net.add(_out(t), sink, 1, 0)
    flow, cost = net.run(_out(v), sink, 2)
    if flow < 2:
        return None
    used: set[int] = set()
    paths = []
    for _ in range(2):
        seq = _trace_unit(net, _out(v), used)
        verts = [v] + [node // 2 for node in seq if node % 2 == 1 and node != sink]
        paths.append(verts)
    paths.sort(key=lambda p: p[-1])
    return PathPair(
        endpoint_x=paths[0][-1],
        endpoint_y=paths[1][-1],
        path_x=tuple(paths[0]),
        path_y=tuple(paths[1]),
        total_vertices=cost + 1,
    )


def girth(g: Graph) -> int | None:
    """Length of the shortest cycle anywhere in the graph, or None if a forest.

    Per-root BFS: every non-tree edge closes a cycle of length at most
    dist(x)+dist(y)+1, and rooting the BFS on the shortest cycle attains it.
    """
    best: int | None = None
    for r in range(g.n):
        dist = [UNREACHABLE] * g.n
        parent = [-1] * g.n
        dist[r] = 0
        q = deque([r])
        while q:
            x = q.popleft()
            for y in g.adj[x]:
                if dist[y] == UNREACHABLE:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
        for x, y in g.edges:
            if parent[y] == x or parent[x] == y:
                continue
            if dist[x] == UNREACHABLE or dist[y] == UNREACHABLE:
                continue
            cand = dist[x] + dist[y] + 1
            if best is None or cand < best:
                best = cand
    return best
