"""End-to-end command-line checks: every subcommand, exit codes, artifacts."""

import json

import pytest

from minalliance import build_graph, emit_dimacs, generate, parse_dimacs, verify_alliance
from minalliance.cli import (
    EXIT_INTERNAL,
    EXIT_INVALID,
    EXIT_OK,
    SEED_ENV,
    run_command,
    write_counterexample,
)

from conftest import SQUARE_BRIDGE_CLIQUE_EDGES, TRIANGULAR_PRISM_EDGES


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


@pytest.fixture
def bridge_file(tmp_path):
    g = build_graph(9, SQUARE_BRIDGE_CLIQUE_EDGES)
    path = tmp_path / "bridge.dimacs"
    path.write_text(emit_dimacs(g))
    return str(path)


@pytest.fixture
def prism_file(tmp_path):
    g = build_graph(6, TRIANGULAR_PRISM_EDGES)
    path = tmp_path / "prism.dimacs"
    path.write_text(emit_dimacs(g))
    return str(path)


def vertex_file(tmp_path, name, vertices_one_indexed):
    path = tmp_path / name
    path.write_text(" ".join(str(v) for v in vertices_one_indexed) + "\n")
    return str(path)


def test_verify_valid_set(capsys, tmp_path, bridge_file):
    sfile = vertex_file(tmp_path, "set.txt", [5, 6, 7])
    code, out = run(capsys, "verify", bridge_file, sfile)
    assert code == EXIT_OK
    assert out["valid"] is True
    assert out["size"] == 3
    assert out["violations"] == []


def test_verify_reports_violations(capsys, tmp_path, bridge_file):
    sfile = vertex_file(tmp_path, "set.txt", [5])
    code, out = run(capsys, "verify", bridge_file, sfile)
    assert code == EXIT_OK
    assert out["valid"] is False
    assert out["violations"] == [{"vertex": 5, "defenders": 1, "needed": 3}]


def test_solve_lowdeg(capsys, bridge_file):
    code, out = run(capsys, "solve", bridge_file, "--algo", "lowdeg")
    assert code == EXIT_OK
    assert out["algorithm"] == "lowdeg"
    assert out["size"] == 2
    assert out["valid"] is True
    assert len(out["witness"]) == 2


def test_solve_auto_picks_lowdeg(capsys, bridge_file):
    code, out = run(capsys, "solve", bridge_file)
    assert code == EXIT_OK
    assert out["algorithm"] == "lowdeg"


def test_solve_auto_on_high_degree_clique_attachments(capsys, tmp_path):
    g = generate("cliqueplus:n=12,k=2", 3)
    assert g.max_degree() > 5  # otherwise the dispatcher rightly picks lowdeg
    path = tmp_path / "cp.dimacs"
    path.write_text(emit_dimacs(g))
    code, out = run(capsys, "solve", str(path), "--oracle")
    assert code == EXIT_OK
    assert out["algorithm"] == "dtc"
    assert out["match"] is True


def test_solve_every_algorithm_agrees(capsys, tmp_path):
    g = generate("twincover:n=11,t=2,zmax=3", 9)
    path = tmp_path / "tc.dimacs"
    path.write_text(emit_dimacs(g))
    sizes = {}
    for algo in ("brute", "ilp", "twincover"):
        code, out = run(capsys, "solve", str(path), "--algo", algo)
        assert code == EXIT_OK
        sizes[algo] = out["size"]
    assert len(set(sizes.values())) == 1


def test_solve_oracle_match_flag(capsys, bridge_file):
    code, out = run(capsys, "solve", bridge_file, "--algo", "brute", "--oracle")
    assert code == EXIT_OK
    assert out["oracle_size"] == 2
    assert out["match"] is True


def test_solve_kmax_too_small_is_invalid_input(capsys, tmp_path):
    g = generate("cliqueplus:n=12,k=3", 1)
    path = tmp_path / "cp.dimacs"
    path.write_text(emit_dimacs(g))
    code, out = run(capsys, "solve", str(path), "--algo", "dtc", "--kmax", "0")
    assert code == EXIT_INVALID
    assert out["kind"] == "invalid-input"


def test_params_of_star(capsys, tmp_path):
    g = build_graph(7, [(0, i) for i in range(1, 7)])
    path = tmp_path / "star.dimacs"
    path.write_text(emit_dimacs(g))
    code, out = run(capsys, "params", str(path))
    assert code == EXIT_OK
    assert out["twin_cover"] == [1]
    assert out["max_clique_outside_cover"] == 1
    assert out["distance_to_clique"] is not None
    assert len(out["distance_to_clique"]) == 5


def test_reduce_reports_budget(capsys, prism_file):
    code, out = run(capsys, "reduce", prism_file, "--k", "2")
    assert code == EXIT_OK
    assert out["k_prime"] == 40
    assert out["target_n"] == 270
    assert out["forbidden_count"] == 192


def test_reduce_extract_round_trip(capsys, tmp_path, prism_file):
    target = tmp_path / "target.dimacs"
    instance = tmp_path / "instance.json"
    code, out = run(
        capsys,
        "reduce", prism_file, "--k", "2",
        "--out", str(target),
        "--instance-out", str(instance),
        "--witness-ds", "2,5",
    )
    assert code == EXIT_OK
    assert out["witness_size"] == 40
    tg = parse_dimacs(target.read_text())
    assert tg.n == 270 and len(tg.forbidden) == 192
    assert verify_alliance(tg, [v - 1 for v in out["witness"]]).valid

    members = vertex_file(tmp_path, "alliance.txt", out["witness"])
    code, out2 = run(capsys, "extract", str(instance), members)
    assert code == EXIT_OK
    assert out2["dominating_set"] == [2, 5]


def test_reduce_rejects_non_dominating_witness(capsys, prism_file):
    code, out = run(
        capsys, "reduce", prism_file, "--k", "2", "--witness-ds", "1,2"
    )
    assert code == EXIT_INVALID
    assert out["kind"] == "invalid-input"


def test_extract_rejects_foreign_json(capsys, tmp_path):
    bogus = tmp_path / "bogus.json"
    bogus.write_text(json.dumps({"kind": "something-else"}))
    sfile = vertex_file(tmp_path, "s.txt", [1])
    code, out = run(capsys, "extract", str(bogus), sfile)
    assert code == EXIT_INVALID


def test_gen_inline_and_to_file(capsys, tmp_path):
    code, out = run(capsys, "gen", "cubic:n=8", "--seed", "5")
    assert code == EXIT_OK
    g = parse_dimacs(out["dimacs"])
    assert g.n == 8 and all(g.degree(v) == 3 for v in range(8))

    path = tmp_path / "gen.dimacs"
    code, out2 = run(capsys, "gen", "cubic:n=8", "--seed", "5", "--out", str(path))
    assert code == EXIT_OK
    assert parse_dimacs(path.read_text()).edges == g.edges


def test_gen_seed_env_fallback(capsys, monkeypatch):
    monkeypatch.setenv(SEED_ENV, "11")
    _, from_env = run(capsys, "gen", "degcap:n=9,dmax=4")
    _, from_flag = run(capsys, "gen", "degcap:n=9,dmax=4", "--seed", "11")
    assert from_env["dimacs"] == from_flag["dimacs"]
    assert from_env["seed"] == 11


def test_gen_rejects_bad_spec(capsys):
    code, out = run(capsys, "gen", "cubic:n=5")
    assert code == EXIT_INVALID
    assert out["kind"] == "invalid-input"


def test_bench_clean_corpus(capsys, tmp_path):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    for seed in range(3):
        g = generate("degcap:n=9,dmax=5", seed)
        (corpus / f"g{seed}.dimacs").write_text(emit_dimacs(g))
    code, out = run(
        capsys, "bench", str(corpus), "--algo", "lowdeg,brute", "--oracle",
        "--artifacts", str(tmp_path / "bad"),
    )
    assert code == EXIT_OK
    assert len(out) == 6
    assert all(rec["match"] for rec in out)
    assert [rec["instance"] for rec in out] == sorted(
        rec["instance"] for rec in out
    )
    assert not (tmp_path / "bad").exists()


def test_bench_mismatch_writes_artifact(capsys, tmp_path, monkeypatch):
    corpus = tmp_path / "corpus"
    corpus.mkdir()
    g = generate("degcap:n=9,dmax=5", 4)
    (corpus / "g.dimacs").write_text(emit_dimacs(g))

    import minalliance.cli as cli_mod

    def oversized_solver(graph):
        # valid alliance, wrong size: the whole graph is always an alliance
        return verify_alliance(graph, range(graph.n))

    monkeypatch.setattr(cli_mod, "solve_min_alliance_lowdeg", oversized_solver)
    code, out = run(
        capsys, "bench", str(corpus), "--algo", "lowdeg", "--oracle",
        "--artifacts", str(tmp_path / "bad"),
    )
    assert code == EXIT_INTERNAL
    assert (tmp_path / "bad" / "g.dimacs").exists()
    payload = json.loads((tmp_path / "bad" / "g.counterexample.json").read_text())
    assert payload["instance"] == "g"
    assert payload["records"]["lowdeg"]["match"] is False


def test_invalid_witness_is_internal_error(capsys, bridge_file, monkeypatch):
    import minalliance.cli as cli_mod
    from minalliance import AllianceSolution

    def broken_solver(graph):
        return AllianceSolution(members=(0,), size=1, valid=False, violations=())

    monkeypatch.setattr(cli_mod, "solve_min_alliance_lowdeg", broken_solver)
    code, out = run(capsys, "solve", bridge_file, "--algo", "lowdeg")
    assert code == EXIT_INTERNAL
    assert out["kind"] == "internal"


def test_missing_file_is_invalid_input(capsys):
    code, out = run(capsys, "solve", "/no/such/file.dimacs")
    assert code == EXIT_INVALID
    assert out["kind"] == "invalid-input"


def test_bad_dimacs_is_invalid_input(capsys, tmp_path):
    path = tmp_path / "junk.dimacs"
    path.write_text("p edge 2 1\ne 1 5\n")
    code, out = run(capsys, "verify", str(path), str(path))
    assert code == EXIT_INVALID


def test_unknown_flag_is_invalid_input(capsys):
    assert run_command(["solve", "--nonsense"]) == EXIT_INVALID
    capsys.readouterr()


def test_json_output_is_deterministic(capsys, bridge_file):
    first = run(capsys, "solve", bridge_file, "--algo", "lowdeg")
    second = run(capsys, "solve", bridge_file, "--algo", "lowdeg")
    assert first[1]["witness"] == second[1]["witness"]
    assert first[1]["size"] == second[1]["size"]


def test_write_counterexample_helper(tmp_path):
    g = build_graph(3, [(0, 1), (1, 2)])
    path = write_counterexample(
        tmp_path / "artifacts", "case7", g, {"lowdeg": {"size": 3}}
    )
    assert path.name == "case7.counterexample.json"
    assert (tmp_path / "artifacts" / "case7.dimacs").read_text() == emit_dimacs(g)
    assert json.loads(path.read_text())["records"]["lowdeg"]["size"] == 3
