"""Structural modulators: distance-to-clique sets, twin covers, and the
partitions of the leftover graph that the parameterized solvers consume."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable

from .graphs import Graph, VertexRangeError

# lexicographic minimisation falls back to the branching witness above this
_ENUM_GUARD = 2_000_000


class RemainderNotCliqueError(ValueError):
    pass


class InvalidTwinCoverError(ValueError):
    pass


@dataclass(frozen=True)
class TwinClass:
    """One group of interchangeable remainder vertices.

    In clique-remainder mode `members` are true twins with respect to the
    modulator signature.  In cliques-remainder mode the group is a *clique
    set*: every clique (a maximal remainder component) whose vertices all see
    exactly `signature` inside the cover.
    """

    index: int
    signature: tuple[int, ...]
    members: tuple[int, ...]
    cliques: tuple[tuple[int, ...], ...] = ()

    def cliques_by_size(self) -> dict[int, tuple[tuple[int, ...], ...]]:
        out: dict[int, list[tuple[int, ...]]] = {}
        for cl in self.cliques:
            out.setdefault(len(cl), []).append(cl)
        return {size: tuple(cls) for size, cls in sorted(out.items())}


@dataclass(frozen=True)
class TwinPartition:
    modulator: tuple[int, ...]
    mode: str  # "clique-remainder" | "cliques-remainder"
    classes: tuple[TwinClass, ...]

    def max_clique_size(self) -> int:
        return max((len(cl) for tc in self.classes for cl in tc.cliques), default=0)


def remainder_is_clique(g: Graph, modulator: Iterable[int]) -> bool:
    rest = [v for v in range(g.n) if v not in set(modulator)]
    return all(g.has_edge(u, v) for u, v in combinations(rest, 2))


def is_twin_cover(g: Graph, cover: Iterable[int]) -> bool:
    """True when every edge outside `cover` joins closed twins."""
    cset = set(cover)
    for u, v in g.edges:
        if u in cset or v in cset:
            continue
        if g.adj_sets[u] | {u} != g.adj_sets[v] | {v}:
            return False
    return True


def _min_deletion_set(g: Graph, k_max: int, find_conflict, is_valid):
    """Shared branch-and-bound: smallest vertex set whose removal fixes every
    conflict pair, then the lexicographically smallest witness of that size."""
    if k_max < 0:
        raise ValueError(f"k_max must be nonnegative, got {k_max}")
    best: list[set[int] | None] = [None]

    def dfs(partial: set[int]):
        if best[0] is not None and len(partial) >= len(best[0]):
            return
        pair = find_conflict(partial)
        if pair is None:
            best[0] = set(partial)
            return
        if len(partial) >= k_max:
            return
        for v in pair:
            partial.add(v)
            dfs(partial)
            partial.remove(v)

    dfs(set())
    if best[0] is None:
        return None
    size = len(best[0])
    if size and math.comb(g.n, size) <= _ENUM_GUARD:
        for cand in combinations(range(g.n), size):
            if is_valid(cand):
                return frozenset(cand)
    return frozenset(best[0])


def distance_to_clique_set(g: Graph, k_max: int) -> frozenset[int] | None:
    """Smallest vertex set (size <= k_max) whose removal leaves a clique.

    Returns the lexicographically smallest witness of minimum size, or None
    when no such set within the budget exists.
    """
    non_edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.has_edge(u, v)
    ]

    def find_conflict(partial: set[int]):
        for u, v in non_edges:
            if u not in partial and v not in partial:
                return (u, v)
        return None

    return _min_deletion_set(
        g, k_max, find_conflict, lambda cand: remainder_is_clique(g, cand)
    )


def twin_cover_set(g: Graph, k_max: int) -> frozenset[int] | None:
    """Smallest twin cover of size <= k_max (lex-smallest witness), or None."""
    closed = [g.adj_sets[v] | {v} for v in range(g.n)]
    bad_edges = [(u, v) for u, v in g.edges if closed[u] != closed[v]]

    def find_conflict(partial: set[int]):
        for u, v in bad_edges:
            if u not in partial and v not in partial:
                return (u, v)
        return None

    return _min_deletion_set(
        g, k_max, find_conflict, lambda cand: is_twin_cover(g, cand)
    )


def _signature(g: Graph, v: int, modulator: set[int]) -> tuple[int, ...]:
    return tuple(sorted(g.adj_sets[v] & modulator))


def partition_twin_classes(g: Graph, modulator: Iterable[int]) -> TwinPartition:
    """Group the clique remainder into twin classes by modulator signature."""
    mod = set(modulator)
    for v in mod:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"modulator vertex {v} out of range")
    if not remainder_is_clique(g, mod):
        raise RemainderNotCliqueError(
            "removing the modulator must leave a clique"
        )
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        if v in mod:
            continue
        groups.setdefault(_signature(g, v, mod), []).append(v)
    classes = tuple(
        TwinClass(index=i, signature=sig, members=tuple(sorted(vs)))
        for i, (sig, vs) in enumerate(sorted(groups.items()))
    )
    return TwinPartition(
        modulator=tuple(sorted(mod)), mode="clique-remainder", classes=classes
    )


def partition_clique_sets(g: Graph, cover: Iterable[int]) -> TwinPartition:
    """Group the remainder components of a twin cover into clique sets.

    Every component outside a twin cover is a clique whose vertices share one
    cover signature; components with equal signatures form one clique set.
    """
    cov = set(cover)
    for v in cov:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"cover vertex {v} out of range")
    if not is_twin_cover(g, cov):
        raise InvalidTwinCoverError("not a twin cover: some outside edge joins non-twins")
    seen: set[int] = set()
    comps: list[tuple[int, ...]] = []
    for root in range(g.n):
        if root in cov or root in seen:
            continue
        comp = [root]
        seen.add(root)
        queue = [root]
        while queue:
            x = queue.pop()
            for y in g.adj[x]:
                if y not in cov and y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(tuple(sorted(comp)))
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for comp in comps:
        sig = _signature(g, comp[0], cov)
        for v in comp[1:]:
            if _signature(g, v, cov) != sig:
                raise InvalidTwinCoverError(
                    f"component {comp} has mixed cover signatures"
                )
            if not all(g.has_edge(v, u) for u in comp if u != v):
                raise InvalidTwinCoverError(f"component {comp} is not a clique")
        groups.setdefault(sig, []).append(comp)
    classes = []
    for i, (sig, cliques) in enumerate(sorted(groups.items())):
        ordered = tuple(sorted(cliques, key=lambda cl: (len(cl), cl)))
        members = tuple(sorted(v for cl in ordered for v in cl))
        classes.append(
            TwinClass(index=i, signature=sig, members=members, cliques=ordered)
        )
    return TwinPartition(
        modulator=tuple(sorted(cov)), mode="cliques-remainder", classes=tuple(classes)
    )
