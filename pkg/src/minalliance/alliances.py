"""Defensive-alliance semantics: thresholds, verification, and the exhaustive oracle.

A non-empty vertex set S is a defensive alliance when every member has at
least as many defenders (itself plus neighbours inside S) as attackers
(neighbours outside S): |N[v] cap S| >= ceil((d(v)+1)/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .graphs import Graph, VertexRangeError


class SearchGuardError(ValueError):
    """Raised when the exhaustive search is asked to handle too large a graph."""


class InternalVerificationError(RuntimeError):
    """A solver produced a witness that fails verification (solver bug)."""


def protection_threshold(degree: int) -> int:
    """Defenders needed by a member of degree `degree`: ceil((degree+1)/2)."""
    if degree < 0:
        raise ValueError(f"degree must be nonnegative, got {degree}")
    return (degree + 2) // 2


@dataclass(frozen=True)
class AllianceSolution:
    members: tuple[int, ...]
    size: int
    valid: bool
    violations: tuple[tuple[int, int, int], ...]  # (vertex, defenders, needed)


def verify_alliance(g: Graph, members: Iterable[int]) -> AllianceSolution:
    """Check the protection inequality for every member.

    The result records every violated vertex with its defender count and
    required threshold.  The empty set is reported invalid, and so is any
    set touching a forbidden vertex (those never gain a violations entry;
    the violations list is reserved for protection failures).
    """
    mset = set(members)
    for v in mset:
        if not (0 <= v < g.n):
            raise VertexRangeError(f"member {v} out of range for n={g.n}")
    ordered = tuple(sorted(mset))
    violations = []
    for v in ordered:
        defenders = 1 + sum(1 for u in g.adj[v] if u in mset)
        needed = protection_threshold(g.degree(v))
        if defenders < needed:
            violations.append((v, defenders, needed))
    blocked = any(v in g.forbidden for v in ordered)
    valid = bool(ordered) and not violations and not blocked
    return AllianceSolution(
        members=ordered,
        size=len(ordered),
        valid=valid,
        violations=tuple(violations),
    )


def _connected_subsets(g: Graph, size: int, allowed: list[bool]):
    """Yield every `size`-vertex subset inducing a connected subgraph, once each.

    Wernicke-style extension: subsets are rooted at their minimum vertex and
    grown through exclusive neighbourhoods, so no subset repeats.
    """
    adj = g.adj_sets

    def extend(sub: list[int], ext: list[int], seen: set[int], root: int):
        if len(sub) == size:
            yield tuple(sorted(sub))
            return
        rest = list(ext)
        while rest:
            w = rest.pop(0)
            fresh = sorted(
                u for u in adj[w] if u > root and allowed[u] and u not in seen
            )
            yield from extend(
                sub + [w],
                sorted(rest + fresh),
                seen | {w} | set(fresh),
                root,
            )

    for root in range(g.n):
        if not allowed[root]:
            continue
        if size == 1:
            yield (root,)
            continue
        ext = sorted(u for u in adj[root] if u > root and allowed[u])
        yield from extend([root], ext, {root} | set(ext), root)


def brute_force_min_alliance(
    g: Graph,
    size_cap: int | None = None,
    *,
    max_n: int = 24,
) -> AllianceSolution | None:
    """Smallest defensive alliance avoiding forbidden vertices, by exhaustion.

    Searches connected subsets in increasing size (a minimum alliance always
    induces a connected subgraph), breaking size ties toward the
    lexicographically smallest member tuple.  Returns None when no alliance
    exists within `size_cap`.
    """
    if g.n > max_n:
        raise SearchGuardError(
            f"refusing exhaustive search on n={g.n} (guard max_n={max_n})"
        )
    allowed = [v not in g.forbidden for v in range(g.n)]
    cap = g.n if size_cap is None else min(size_cap, g.n)
    need = [protection_threshold(g.degree(v)) for v in range(g.n)]
    for k in range(1, cap + 1):
        best: tuple[int, ...] | None = None
        for sub in _connected_subsets(g, k, allowed):
            if best is not None and sub >= best:
                continue
            sset = set(sub)
            if all(1 + len(g.adj_sets[v] & sset) >= need[v] for v in sub):
                best = sub
        if best is not None:
            return verify_alliance(g, best)
    return None
