"""Polynomial minimum-alliance search for graphs of maximum degree five.

One subproblem per vertex v: the smallest alliance containing v is either v
alone (degree <= 1), a shortest path from v to a nearby vertex of degree at
most three, a shortest cycle through v, or (degree 4 or 5) the cheapest pair
of internally disjoint paths from v to two such low-degree vertices.  The
global answer is the best subproblem result.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alliances import (
    AllianceSolution,
    InternalVerificationError,
    verify_alliance,
)
from .graphs import (
    Graph,
    UNREACHABLE,
    VertexRangeError,
    bfs_path,
    distances_from,
    is_connected,
    min_disjoint_path_pair,
    shortest_cycle_with_vertices,
)

_KIND_RANK = {"singleton": 0, "path": 1, "cycle": 2, "path-pair": 3}


class DegreeBoundError(ValueError):
    """The graph has a vertex of degree more than five."""


@dataclass(frozen=True)
class SubproblemResult:
    root: int
    best_size: int | None
    witness: tuple[int, ...]
    kind: str | None


def _check_lowdeg_input(g: Graph) -> None:
    if g.n == 0:
        raise ValueError("the empty graph has no alliance")
    if g.max_degree() > 5:
        raise DegreeBoundError(
            f"maximum degree {g.max_degree()} exceeds the bound of five"
        )
    if not is_connected(g):
        raise ValueError("the low-degree solver expects a connected graph")
    if g.forbidden:
        raise ValueError("the low-degree solver does not support forbidden vertices")


def _candidates(g: Graph, v: int):
    """Yield (size, kind, witness tuple) candidates for the subproblem at v."""
    d = g.degree(v)
    if d <= 1:
        yield 1, "singleton", (v,)
        return
    dist = distances_from(g, v)
    low = [x for x in range(g.n) if x != v and g.degree(x) <= 3]
    if d <= 3:
        reach = [(dist[x], x) for x in low if dist[x] != UNREACHABLE]
        if reach:
            dx, x = min(reach)
            path = bfs_path(g, v, x)
            yield dx + 1, "path", tuple(sorted(path))
    else:
        targets = [x for x in low if dist[x] != UNREACHABLE]
        pair = min_disjoint_path_pair(g, v, targets) if targets else None
        if pair is not None:
            merged = set(pair.path_x) | set(pair.path_y)
            yield pair.total_vertices, "path-pair", tuple(sorted(merged))
    cyc = shortest_cycle_with_vertices(g, v)
    if cyc is not None:
        yield cyc[0], "cycle", cyc[1]


def solve_subproblem(g: Graph, v: int) -> SubproblemResult:
    """Smallest alliance containing v, among the structured candidate shapes.

    Ties between equal-size candidates break by kind
    (singleton < path < cycle < path-pair), then by witness order.
    """
    _check_lowdeg_input(g)
    if not (0 <= v < g.n):
        raise VertexRangeError(f"vertex {v} out of range for n={g.n}")
    return _subproblem_unchecked(g, v)


def _subproblem_unchecked(g: Graph, v: int) -> SubproblemResult:
    best = None
    for size, kind, witness in _candidates(g, v):
        key = (size, _KIND_RANK[kind], witness)
        if best is None or key < best[0]:
            best = (key, kind)
    if best is None:
        return SubproblemResult(root=v, best_size=None, witness=(), kind=None)
    (size, _rank, witness), kind = best
    checked = verify_alliance(g, witness)
    if not checked.valid:
        raise InternalVerificationError(
            f"subproblem witness {witness} at root {v} is not an alliance: "
            f"{checked.violations}"
        )
    return SubproblemResult(root=v, best_size=size, witness=witness, kind=kind)


def solve_min_alliance_lowdeg(g: Graph) -> AllianceSolution:
    """Minimum defensive alliance of a connected graph with max degree five.

    Any minimum alliance S either induces a cycle (so the shortest-cycle
    candidate at a cycle vertex is no larger) or induces a tree whose leaves
    have at most one defender inside, hence degree at most three -- so the
    path / path-pair candidates rooted there are no larger.  The best
    candidate over all roots is therefore exact.
    """
    _check_lowdeg_input(g)
    best: tuple[tuple[int, int, tuple[int, ...]], SubproblemResult] | None = None
    for v in range(g.n):
        sub = _subproblem_unchecked(g, v)
        if sub.best_size is None:
            continue
        key = (sub.best_size, _KIND_RANK[sub.kind], sub.witness)
        if best is None or key < best[0]:
            best = (key, sub)
    if best is None:
        raise InternalVerificationError("no subproblem produced a candidate")
    return verify_alliance(g, best[1].witness)
