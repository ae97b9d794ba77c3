"""Parameterized exact solvers: guess enumeration over a small modulator plus
tiny integer programs for the interchangeable remainder vertices.

Both solvers follow the same shape.  Fix how the solution meets the modulator
(and which remainder groups stay empty), check the guess is internally
coherent, then let an ILP choose how many interchangeable vertices each group
contributes.  Materialised witnesses are always re-verified; a failure there
is a solver bug, never a caller error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .alliances import (
    AllianceSolution,
    InternalVerificationError,
    protection_threshold,
    verify_alliance,
)
from .graphs import Graph
from .ilp import IlpProblem, solve_ilp
from .params import partition_clique_sets, partition_twin_classes


@dataclass(frozen=True)
class DtcGuess:
    picked_modulator: tuple[int, ...]
    null_classes: tuple[int, ...]


@dataclass(frozen=True)
class TcGuess:
    picked_cover: tuple[int, ...]
    # (class index, clique size, full count, partial count) per used group
    counts: tuple[tuple[int, int, int, int], ...]


@dataclass
class SolveStats:
    guesses: int = 0
    ilp_solves: int = 0
    pruned: int = 0
    best_guess: object = None


def demand(g: Graph, u: int, picked: frozenset[int] | set[int]) -> int:
    """Defenders vertex u still needs beyond `picked` members (u must be picked)."""
    if u not in picked:
        raise ValueError(f"demand is defined for picked vertices only, got {u}")
    have = 1 + sum(1 for w in g.adj[u] if w in picked)
    return protection_threshold(g.degree(u)) - have


def _require_plain(g: Graph) -> None:
    if g.n == 0:
        raise ValueError("the empty graph has no alliance")
    if g.forbidden:
        raise ValueError("parameterized solvers do not support forbidden vertices")


def solve_dtc(g: Graph, modulator) -> AllianceSolution:
    sol, _stats = solve_dtc_detailed(g, modulator)
    return sol


def solve_dtc_detailed(g: Graph, modulator) -> tuple[AllianceSolution, SolveStats]:
    """Minimum alliance when `g` minus `modulator` is a clique.

    Enumerates every subset P of the modulator and every set of twin classes
    forced empty; a per-guess ILP picks how many vertices each surviving class
    contributes.  Witnesses take the lexicographically smallest class members.
    """
    _require_plain(g)
    part = partition_twin_classes(g, modulator)
    mod = part.modulator
    classes = part.classes
    t = len(classes)
    stats = SolveStats()
    best: tuple[int, tuple[int, ...]] | None = None
    best_guess: DtcGuess | None = None
    # all members of a class share one degree, hence one threshold
    thr = [
        protection_threshold(g.degree(tc.members[0])) if tc.members else 0
        for tc in classes
    ]
    for pmask in range(1 << len(mod)):
        picked = [mod[i] for i in range(len(mod)) if pmask >> i & 1]
        pset = frozenset(picked)
        demands = [(u, demand(g, u, pset)) for u in picked]
        for nmask in range(1 << t):
            null = frozenset(i for i in range(t) if nmask >> i & 1)
            if not picked and len(null) == t:
                continue  # the empty set is not an alliance
            stats.guesses += 1
            live = [i for i in range(t) if i not in null]
            if best is not None and len(picked) + len(live) > best[0]:
                stats.pruned += 1
                continue
            bounds = tuple(
                (0, 0) if i in null else (1, len(classes[i].members))
                for i in range(t)
            )
            cons: list[tuple[tuple[int, ...], int]] = []
            for u, du in demands:
                coeffs = tuple(1 if u in classes[i].signature else 0 for i in range(t))
                cons.append((coeffs, du))
            for i in live:
                # the remainder is one clique: every picked remainder vertex
                # defends every class member, picked cover vertices add theirs
                inside_p = sum(1 for w in classes[i].signature if w in pset)
                cons.append((tuple([1] * t), thr[i] - inside_p))
            prob = IlpProblem(
                objective=tuple([1] * t), constraints=tuple(cons), bounds=bounds
            )
            stats.ilp_solves += 1
            sol = solve_ilp(prob)
            if sol.status != "optimal":
                continue
            size = len(picked) + sol.objective_value
            if best is not None and size > best[0]:
                continue
            members = list(picked)
            for i, cnt in enumerate(sol.assignment):
                members.extend(classes[i].members[:cnt])
            cand = (size, tuple(sorted(members)))
            if best is None or cand < best:
                checked = verify_alliance(g, cand[1])
                if not checked.valid:
                    raise InternalVerificationError(
                        f"dtc guess produced invalid witness {cand[1]}: "
                        f"{checked.violations}"
                    )
                best = cand
                best_guess = DtcGuess(
                    picked_modulator=tuple(picked),
                    null_classes=tuple(sorted(null)),
                )
    if best is None:
        raise InternalVerificationError("no feasible guess on a non-empty graph")
    stats.best_guess = best_guess
    return verify_alliance(g, best[1]), stats


def solve_twincover(g: Graph, cover) -> AllianceSolution:
    sol, _stats = solve_twincover_detailed(g, cover)
    return sol


def solve_twincover_detailed(g: Graph, cover) -> tuple[AllianceSolution, SolveStats]:
    """Minimum alliance given a twin cover of `g`.

    Case 1: if some clique has at least as many vertices as its set's cover
    signature, the smallest such clique alone carries an alliance of
    ceil((|C|+t_i)/2) vertices, and any optimum touching so big a clique is
    at least that large.  Case 2 therefore forces every such clique empty and
    enumerates, per (clique set, size): how many cliques are fully picked and
    how many partially, with an ILP choosing the partial amounts.  The answer
    is the better of the two cases.
    """
    _require_plain(g)
    part = partition_clique_sets(g, cover)
    cov = part.modulator
    stats = SolveStats()
    best: tuple[int, tuple[int, ...]] | None = None
    best_guess: TcGuess | None = None

    def offer(cand: tuple[int, tuple[int, ...]], guess: TcGuess) -> None:
        nonlocal best, best_guess
        if best is None or cand < best:
            checked = verify_alliance(g, cand[1])
            if not checked.valid:
                raise InternalVerificationError(
                    f"twin-cover witness {cand[1]} invalid: {checked.violations}"
                )
            best = cand
            best_guess = guess

    # --- case 1: one sufficiently large clique on its own
    for tc in part.classes:
        t_i = len(tc.signature)
        for cl in tc.cliques:  # sorted by (size, lex); first hit is smallest
            if len(cl) >= t_i:
                need = protection_threshold(len(cl) - 1 + t_i)
                offer((need, tuple(sorted(cl[:need]))), TcGuess((), ()))
                break

    # --- case 2: cliques of size >= t_i stay empty
    groups: list[tuple[int, int, tuple[tuple[int, ...], ...]]] = []
    for tc in part.classes:
        t_i = len(tc.signature)
        for size, cliques in tc.cliques_by_size().items():
            if size < t_i:
                groups.append((tc.index, size, cliques))
    groups.sort(key=lambda grp: (grp[0], grp[1]))
    sig_of = {tc.index: tc.signature for tc in part.classes}
    t_of = {tc.index: len(tc.signature) for tc in part.classes}

    def finish(picked: list[int], pset: frozenset[int],
               demands: list[tuple[int, int]], sig_in_p: dict[int, int],
               chosen: list[tuple[int, int, int, int]]) -> None:
        variables: list[tuple[int, int, int]] = []  # (class, size, slot)
        vbounds: list[tuple[int, int]] = []
        for ci, size, _f, y in chosen:
            thr = protection_threshold(size - 1 + t_of[ci])
            lo = max(1, thr - sig_in_p[ci])
            if y and lo > size - 1:
                return  # partials cannot be protected under this guess
            for slot in range(y):
                variables.append((ci, size, slot))
                vbounds.append((lo, size - 1))
        cons: list[tuple[tuple[int, ...], int]] = []
        for u, du in demands:
            rhs = du
            coeffs = [0] * len(variables)
            for ci, size, f, _y in chosen:
                if u in sig_of[ci]:
                    rhs -= size * f
            for j, (ci, _size, _slot) in enumerate(variables):
                if u in sig_of[ci]:
                    coeffs[j] = 1
            cons.append((tuple(coeffs), rhs))
        prob = IlpProblem(
            objective=tuple([1] * len(variables)),
            constraints=tuple(cons),
            bounds=tuple(vbounds),
        )
        stats.ilp_solves += 1
        sol = solve_ilp(prob)
        if sol.status != "optimal":
            return
        total = (
            len(picked)
            + sum(sz * f for _ci, sz, f, _y in chosen)
            + sum(sol.assignment)
        )
        members = list(picked)
        offset = 0
        for ci, sz, f, y in chosen:
            cliques = cliques_of[(ci, sz)]
            for cl in cliques[:f]:
                members.extend(cl)
            for slot in range(y):
                members.extend(cliques[f + slot][: sol.assignment[offset + slot]])
            offset += y
        offer(
            (total, tuple(sorted(members))),
            TcGuess(picked_cover=tuple(picked), counts=tuple(chosen)),
        )

    cliques_of = {(ci, size): cls for ci, size, cls in groups}

    for pmask in range(1 << len(cov)):
        picked = [cov[i] for i in range(len(cov)) if pmask >> i & 1]
        pset = frozenset(picked)
        demands = [(u, demand(g, u, pset)) for u in picked]
        sig_in_p = {i: sum(1 for w in sig_of[i] if w in pset) for i in sig_of}

        def walk(idx: int, chosen: list[tuple[int, int, int, int]], base: int):
            if best is not None and base > best[0]:
                stats.pruned += 1
                return
            if idx == len(groups):
                if not picked and not chosen:
                    return  # the empty set is not an alliance
                stats.guesses += 1
                finish(picked, pset, demands, sig_in_p, chosen)
                return
            ci, size, cliques = groups[idx]
            m = len(cliques)
            thr_full = protection_threshold(size - 1 + t_of[ci])
            full_ok = sig_in_p[ci] + size >= thr_full
            for y in range(min(size - 1, m) + 1):
                for f in range(m - y + 1):
                    if f and not full_ok:
                        continue  # fully picked cliques would go unprotected
                    nxt = chosen + [(ci, size, f, y)] if (f or y) else chosen
                    walk(idx + 1, nxt, base + size * f + y)

        walk(0, [], len(picked))

    if best is None:
        raise InternalVerificationError("no feasible guess on a non-empty graph")
    stats.best_guess = best_guess
    return verify_alliance(g, best[1]), stats


def normalize_partial_cliques(g: Graph, partition, members) -> frozenset[int]:
    """Rebalance an alliance so each (clique set, size-l) group keeps at most
    l-1 partially picked cliques.

    Repeatedly empties the least-filled partial clique by moving one vertex
    into each of the most-filled other partials (lex-smallest choices on
    ties).  Receivers are at least as full as the donor, so every moved-to
    clique clears the donor's protection threshold; totals per clique set are
    unchanged, so cover members keep their defenders.  Size and validity are
    preserved, and the result is a fixed point of the procedure.
    """
    if partition.mode != "cliques-remainder":
        raise ValueError("normalisation needs a cliques-remainder partition")
    start = verify_alliance(g, members)
    if not start.valid:
        raise ValueError("normalisation expects a valid alliance")
    result = set(start.members)
    for tc in partition.classes:
        for size, cliques in tc.cliques_by_size().items():
            while True:
                fills = [(len(result & set(cl)), cl) for cl in cliques]
                partials = sorted(
                    (cnt, cl) for cnt, cl in fills if 0 < cnt < size
                )
                if len(partials) < 2:
                    break
                cnt, donor = partials[0]
                receivers = sorted(
                    partials[1:], key=lambda pair: (-pair[0], pair[1])
                )
                if cnt > len(receivers):
                    break  # cannot place one vertex per other partial clique
                for v in donor:
                    result.discard(v)
                for _rcnt, rcl in receivers[:cnt]:
                    free = [v for v in rcl if v not in result]
                    result.add(free[0])
    final = verify_alliance(g, result)
    if not final.valid or final.size != start.size:
        raise InternalVerificationError(
            "normalisation broke validity or changed the size"
        )
    return frozenset(final.members)
