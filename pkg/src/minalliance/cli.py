"""Command-line front end.

Every subcommand prints one JSON document on stdout.  Exit codes: 0 success,
1 invalid input, 2 a solver returned a witness that failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .alliances import (
    InternalVerificationError,
    SearchGuardError,
    brute_force_min_alliance,
    verify_alliance,
)
from .dimacs import DimacsError, emit_dimacs, parse_dimacs
from .fpt import solve_dtc, solve_twincover
from .generators import generate
from .graphs import Graph, GraphError, is_connected
from .ilp import solve_min_alliance_ilp
from .lowdeg import solve_min_alliance_lowdeg
from .params import distance_to_clique_set, partition_clique_sets, twin_cover_set
from .reduction import (
    alliance_from_dominating_set,
    build_reduction,
    extract_dominating_set,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_INTERNAL = 2

SEED_ENV = "MINALLIANCE_SEED"


@dataclass
class ResultRecord:
    algorithm: str
    instance: str
    n: int
    m: int
    params: dict = field(default_factory=dict)
    size: int | None = None
    witness: list[int] = field(default_factory=list)
    valid: bool | None = None
    wall_time_s: float | None = None
    oracle_size: int | None = None
    match: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "algorithm": self.algorithm,
            "instance": self.instance,
            "n": self.n,
            "m": self.m,
            "params": self.params,
            "size": self.size,
            "witness": self.witness,
            "valid": self.valid,
            "wall_time_s": self.wall_time_s,
        }
        if self.oracle_size is not None:
            out["oracle_size"] = self.oracle_size
        if self.match is not None:
            out["match"] = self.match
        return out


def _read_graph(path: str) -> Graph:
    return parse_dimacs(Path(path).read_text())


def _read_vertex_set(path: str) -> list[int]:
    """1-indexed vertex ids separated by whitespace; 'c'/'#' lines are comments."""
    out = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        for tok in line.split():
            out.append(int(tok) - 1)
    return out


def _pick_algorithm(g: Graph, kmax: int) -> str:
    if not g.forbidden and is_connected(g) and g.max_degree() <= 5:
        return "lowdeg"
    if not g.forbidden and distance_to_clique_set(g, kmax) is not None:
        return "dtc"
    if not g.forbidden and twin_cover_set(g, kmax) is not None:
        return "twincover"
    return "brute" if g.n <= 24 else "ilp"


def _solve_one(g: Graph, algo: str, kmax: int, time_limit: float | None):
    if algo == "lowdeg":
        return solve_min_alliance_lowdeg(g)
    if algo == "brute":
        return brute_force_min_alliance(g)
    if algo == "ilp":
        return solve_min_alliance_ilp(g, time_limit=time_limit)
    if algo == "dtc":
        mod = distance_to_clique_set(g, kmax)
        if mod is None:
            raise ValueError(f"no distance-to-clique set within k_max={kmax}")
        return solve_dtc(g, mod)
    if algo == "twincover":
        cover = twin_cover_set(g, kmax)
        if cover is None:
            raise ValueError(f"no twin cover within k_max={kmax}")
        return solve_twincover(g, cover)
    raise ValueError(f"unknown algorithm {algo!r}")


def _record_for(g: Graph, instance: str, algo: str) -> ResultRecord:
    return ResultRecord(
        algorithm=algo,
        instance=instance,
        n=g.n,
        m=g.m,
        params={"max_degree": g.max_degree(), "forbidden": len(g.forbidden)},
    )


def _solve_record(g: Graph, instance: str, algo: str, kmax: int,
                  oracle: bool, time_limit: float | None) -> ResultRecord:
    rec = _record_for(g, instance, algo)
    t0 = time.perf_counter()
    sol = _solve_one(g, algo, kmax, time_limit)
    rec.wall_time_s = round(time.perf_counter() - t0, 6)
    if sol is not None:
        rec.size = sol.size
        rec.witness = [v + 1 for v in sol.members]
        rec.valid = sol.valid
        if not sol.valid:
            raise InternalVerificationError(
                f"{algo} returned an invalid witness on {instance}"
            )
    if oracle:
        ref = brute_force_min_alliance(g)
        rec.oracle_size = None if ref is None else ref.size
        rec.match = (rec.size == rec.oracle_size)
    return rec


def write_counterexample(
    directory: str | Path,
    instance_id: str,
    g: Graph,
    records: dict[str, object],
) -> Path:
    """Persist a mismatch: the instance in DIMACS plus every witness, as JSON."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{instance_id}.dimacs").write_text(emit_dimacs(g))
    payload = {"instance": instance_id, "records": records}
    path = directory / f"{instance_id}.counterexample.json"
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def _cmd_verify(args) -> tuple[int, dict]:
    g = _read_graph(args.graph)
    members = _read_vertex_set(args.set)
    sol = verify_alliance(g, members)
    rec = _record_for(g, args.graph, "verify")
    rec.size = sol.size
    rec.witness = [v + 1 for v in sol.members]
    rec.valid = sol.valid
    out = rec.to_dict()
    out["violations"] = [
        {"vertex": v + 1, "defenders": have, "needed": need}
        for v, have, need in sol.violations
    ]
    return EXIT_OK, out


def _cmd_solve(args) -> tuple[int, dict]:
    g = _read_graph(args.graph)
    algo = args.algo
    if algo == "auto":
        algo = _pick_algorithm(g, args.kmax)
    rec = _solve_record(g, args.graph, algo, args.kmax, args.oracle, args.time_limit)
    return EXIT_OK, rec.to_dict()


def _cmd_params(args) -> tuple[int, dict]:
    g = _read_graph(args.graph)
    dtc = distance_to_clique_set(g, args.kmax)
    cover = twin_cover_set(g, args.kmax)
    out = {
        "instance": args.graph,
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree(),
        "distance_to_clique": None if dtc is None else sorted(v + 1 for v in dtc),
        "twin_cover": None if cover is None else sorted(v + 1 for v in cover),
    }
    if cover is not None:
        part = partition_clique_sets(g, cover)
        out["max_clique_outside_cover"] = part.max_clique_size()
    return EXIT_OK, out


def _cmd_reduce(args) -> tuple[int, dict]:
    g = _read_graph(args.graph)
    inst = build_reduction(g, args.k)
    out = {
        "instance": args.graph,
        "k": inst.k,
        "k_prime": inst.k_prime,
        "target_n": inst.target.n,
        "target_m": inst.target.m,
        "forbidden_count": inst.forbidden_count,
    }
    if args.out:
        Path(args.out).write_text(emit_dimacs(inst.target))
        out["target_path"] = args.out
    if args.instance_out:
        payload = {
            "kind": "dominating-set-reduction",
            "k": inst.k,
            "source_dimacs": emit_dimacs(g),
        }
        Path(args.instance_out).write_text(json.dumps(payload, indent=2) + "\n")
        out["instance_path"] = args.instance_out
    if args.witness_ds:
        ds = [int(tok) - 1 for tok in args.witness_ds.split(",")]
        sol = alliance_from_dominating_set(inst, ds)
        out["witness_size"] = sol.size
        out["witness"] = [v + 1 for v in sol.members]
    return EXIT_OK, out


def _cmd_extract(args) -> tuple[int, dict]:
    payload = json.loads(Path(args.instance).read_text())
    if payload.get("kind") != "dominating-set-reduction":
        raise ValueError(f"{args.instance} is not a reduction instance file")
    src = parse_dimacs(payload["source_dimacs"])
    inst = build_reduction(src, int(payload["k"]))
    members = _read_vertex_set(args.set)
    ds = extract_dominating_set(inst, members)
    return EXIT_OK, {
        "instance": args.instance,
        "k": inst.k,
        "dominating_set": sorted(v + 1 for v in ds),
    }


def _cmd_gen(args) -> tuple[int, dict]:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get(SEED_ENV, "0"))
    g = generate(args.spec, seed)
    text = emit_dimacs(g, comment=f"{args.spec} seed={seed}")
    out = {
        "spec": args.spec,
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "max_degree": g.max_degree(),
    }
    if args.out:
        Path(args.out).write_text(text)
        out["path"] = args.out
    else:
        out["dimacs"] = text
    return EXIT_OK, out


def _cmd_bench(args) -> tuple[int, list[dict]]:
    corpus = sorted(Path(args.corpus).glob("*.dimacs"))
    if not corpus:
        raise ValueError(f"no .dimacs files under {args.corpus}")
    algos = args.algo.split(",")
    records = []
    status = EXIT_OK
    for path in corpus:
        g = parse_dimacs(path.read_text())
        per_algo: dict[str, ResultRecord] = {}
        for algo in algos:
            real = _pick_algorithm(g, args.kmax) if algo == "auto" else algo
            rec = _solve_record(
                g, path.name, real, args.kmax, args.oracle, args.time_limit
            )
            per_algo[algo] = rec
            records.append(rec.to_dict())
        if args.oracle:
            bad = {a: r for a, r in per_algo.items() if r.match is False}
            if bad:
                write_counterexample(
                    args.artifacts,
                    path.stem,
                    g,
                    {a: r.to_dict() for a, r in per_algo.items()},
                )
                status = EXIT_INTERNAL
    return status, records


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="minalliance",
        description="Exact minimum defensive alliance toolkit",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a vertex set against a graph")
    p.add_argument("graph")
    p.add_argument("set")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("solve", help="find a minimum defensive alliance")
    p.add_argument("graph")
    p.add_argument(
        "--algo",
        default="auto",
        choices=["auto", "brute", "lowdeg", "ilp", "dtc", "twincover"],
    )
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--time-limit", type=float, default=None)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("params", help="report structural parameters")
    p.add_argument("graph")
    p.add_argument("--kmax", type=int, default=5)
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("reduce", help="build the dominating-set reduction")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", default=None, help="write target graph DIMACS here")
    p.add_argument("--instance-out", dest="instance_out", default=None)
    p.add_argument(
        "--witness-ds",
        default=None,
        help="comma-separated 1-indexed dominating set to map forward",
    )
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("extract", help="project an alliance back to a dominating set")
    p.add_argument("instance", help="instance JSON produced by reduce --instance-out")
    p.add_argument("set", help="alliance member file, 1-indexed")
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("gen", help="generate a corpus graph")
    p.add_argument("spec")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("bench", help="run solvers across a corpus directory")
    p.add_argument("corpus")
    p.add_argument("--algo", default="auto")
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--artifacts", default="counterexamples")
    p.set_defaults(func=_cmd_bench)

    return ap


def run_command(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        status, payload = args.func(args)
    except InternalVerificationError as exc:
        print(json.dumps({"error": str(exc), "kind": "internal"}))
        return EXIT_INTERNAL
    except (
        GraphError,
        DimacsError,
        SearchGuardError,
        ValueError,
        OSError,
        json.JSONDecodeError,
    ) as exc:
        print(json.dumps({"error": str(exc), "kind": "invalid-input"}))
        return EXIT_INVALID
    print(json.dumps(payload, indent=2, sort_keys=True))
    return status


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))
