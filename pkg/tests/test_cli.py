"""Command-line surface: pinned outputs, file artifacts, exit codes."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

import pytest

import scatterset.cli as cli
from conftest import cycle_graph, path_graph
from scatterset.cli import main
from scatterset.graph_core import format_dss, parse_graph

YES_MCIS = "p mcis 2 2\ne 1.1 2.2\n"


def run_cli(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture()
def p5(tmp_path) -> str:
    target = tmp_path / "p5.dss"
    target.write_text(format_dss(path_graph(5)))
    return str(target)


@pytest.fixture()
def c5(tmp_path) -> str:
    target = tmp_path / "c5.dss"
    target.write_text(format_dss(cycle_graph(5)))
    return str(target)


# -- solve --------------------------------------------------------------------


def test_solve_brute_pinned(capsys, p5):
    code, out, _ = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--algo", "brute")
    assert code == 0
    assert "size: 2" in out
    assert "witness: " in out


@pytest.mark.parametrize("algo", ["tw", "vc", "brute"])
def test_solve_algorithms_agree(capsys, p5, algo):
    code, out, _ = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--algo", algo)
    assert code == 0 and "size: 2" in out


def test_solve_approx_meets_guarantee(capsys, p5):
    code, out, _ = run_cli(
        capsys, "solve", "--graph", p5, "--d", "3",
        "--algo", "approx", "--epsilon", "1/2", "--json",
    )
    assert code == 0
    report = json.loads(out)
    assert report["result"]["size"] >= 2
    assert report["validation"]["ok"] is True
    assert report["parameters"]["epsilon"] == "1/2"


def test_solve_vc_redirects_small_d(capsys, tmp_path):
    p4 = tmp_path / "p4.dss"
    p4.write_text(format_dss(path_graph(4)))
    code, _, err = run_cli(capsys, "solve", "--graph", str(p4), "--d", "2", "--algo", "vc")
    assert code == 3
    assert "d = 2" in err


def test_solve_approx_requires_epsilon(capsys, p5):
    code, _, err = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--algo", "approx")
    assert code == 2
    assert "epsilon" in err


def test_solve_reports_target(capsys, p5):
    code, out, _ = run_cli(
        capsys, "solve", "--graph", p5, "--d", "3", "--k", "2", "--threads", "2"
    )
    assert code == 0 and "target_met: true" in out
    code, out, _ = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--k", "3")
    assert code == 0 and "target_met: false" in out


def test_solve_with_supplied_decomposition(capsys, p5, tmp_path):
    td_file = tmp_path / "p5.td"
    code, _, _ = run_cli(capsys, "decompose", "--graph", p5, "--out", str(td_file))
    assert code == 0
    code, out, _ = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--td", str(td_file))
    assert code == 0 and "size: 2" in out


def test_solve_rejects_invalid_decomposition(capsys, p5, tmp_path):
    td_file = tmp_path / "bad.td"
    td_file.write_text("s td 1 1 5\nb 1 1\n")  # misses vertices 2..5
    code, _, err = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--td", str(td_file))
    assert code == 3 and "invalid" in err


# -- count --------------------------------------------------------------------


def test_count_path_pinned(capsys, p5):
    code, out, _ = run_cli(capsys, "count", "--graph", p5, "--d", "3", "--k", "2")
    assert code == 0
    assert "counts: 1 5 3" in out


def test_count_cycle_pinned(capsys, c5):
    code, out, _ = run_cli(capsys, "count", "--graph", c5, "--d", "2", "--k", "2")
    assert code == 0
    assert "counts: 1 5 5" in out


def test_count_pads_beyond_n(capsys, p5):
    code, out, _ = run_cli(
        capsys, "count", "--graph", p5, "--d", "2", "--k", "8", "--json"
    )
    assert code == 0
    counts = json.loads(out)["result"]["counts"]
    assert len(counts) == 9
    assert counts[6:] == ["0", "0", "0"]
    assert all(isinstance(c, str) for c in counts)


# -- gen ----------------------------------------------------------------------


def test_gen_random_is_deterministic(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    code, _, _ = run_cli(
        capsys, "gen", "random", "--n", "10", "--p", "1/3", "--seed", "7", "--out", "a"
    )
    assert code == 0
    code, _, _ = run_cli(
        capsys, "gen", "random", "--n", "10", "--p", "1/3", "--seed", "7", "--out", "b"
    )
    assert code == 0
    assert Path("a.dss").read_text() == Path("b.dss").read_text()
    g = parse_graph(Path("a.dss").read_text())
    assert g.n == 10


def test_gen_w1vc_writes_all_artifacts(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    Path("in.mcis").write_text(YES_MCIS)
    Path("a.txt").write_text("1 1\n")
    code, out, _ = run_cli(
        capsys, "gen", "w1vc", "--mcis", "in.mcis", "--assignment", "a.txt", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["result"]["files"] == [
        "w1vc.dss", "w1vc.witness", "w1vc.certificate", "w1vc.params.json"
    ]
    assert Path("w1vc.certificate").read_text().startswith("c kind: vertex-cover")
    manifest = json.loads(Path("w1vc.params.json").read_text())
    assert manifest["d"] == 24 and manifest["target_size"] == 4
    # The emitted witness file names a set the validator accepts.
    code, _, _ = run_cli(
        capsys, "validate", "--graph", "w1vc.dss", "--set", "w1vc.witness", "--d", "24"
    )
    assert code == 0


def test_gen_rejected_assignment_fails(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    Path("in.mcis").write_text(YES_MCIS)
    Path("dep.txt").write_text("1 2\n")  # 1.1-2.2 is an edge
    code, _, err = run_cli(
        capsys, "gen", "fvs", "--mcis", "in.mcis", "--assignment", "dep.txt"
    )
    assert code == 3 and "assignment rejected" in err


def test_gen_seth_manifest_pinned(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    Path("f.cnf").write_text("p cnf 2 2\n1 2 0\n-1 2 0\n")
    code, _, _ = run_cli(
        capsys, "gen", "seth", "--cnf", "f.cnf", "--d", "4", "--epsilon", "1"
    )
    assert code == 0
    manifest = json.loads(Path("seth.params.json").read_text())
    assert manifest["p"] == 3
    assert manifest["gamma"] == 8
    assert not Path("seth.witness").exists()  # no assignment given
    assert not Path("seth.certificate").exists()


def test_gen_tdeth_round_trips_through_validate(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    Path("phi.cnf").write_text("p cnf 1 1\n1 0\n")
    Path("a.txt").write_text("1\n")
    code, _, _ = run_cli(
        capsys, "gen", "tdeth", "--cnf", "phi.cnf", "--assignment", "a.txt"
    )
    assert code == 0
    manifest = json.loads(Path("tdeth.params.json").read_text())
    code, _, _ = run_cli(
        capsys, "validate", "--graph", "tdeth.dss",
        "--set", "tdeth.witness", "--d", str(manifest["d"]),
    )
    assert code == 0


# -- decompose ------------------------------------------------------------------


def test_decompose_tree_width_one(capsys, tmp_path):
    tree = tmp_path / "tree.dss"
    tree.write_text("p dss 7 6\n" + "".join(f"e 1 {i} 1\n" for i in range(2, 8)))
    code, out, _ = run_cli(capsys, "decompose", "--graph", str(tree))
    assert code == 0
    assert "c width: 1" in out
    # The comment-led stream is still a valid .td file.
    from scatterset.decomp import parse_td, validate_decomposition

    td = parse_td(out)
    assert validate_decomposition(parse_graph(tree.read_text()), td) is None


def test_decompose_balance_depth_bound(capsys, tmp_path):
    p64 = tmp_path / "p64.dss"
    p64.write_text(format_dss(path_graph(64)))
    code, out, _ = run_cli(capsys, "decompose", "--graph", str(p64), "--balance", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["depth"] <= 28


def test_decompose_nice_round_trip(capsys, p5, tmp_path):
    td_file = tmp_path / "nice.td"
    code, out, _ = run_cli(
        capsys, "decompose", "--graph", p5, "--nice", "--out", str(td_file)
    )
    assert code == 0
    assert "valid: true" in out
    code, _, _ = run_cli(capsys, "validate", "--graph", p5, "--td", str(td_file))
    assert code == 0


# -- validate -------------------------------------------------------------------


def test_validate_reports_offending_pair(capsys, p5, tmp_path):
    claim = tmp_path / "set.txt"
    claim.write_text("v0 v2\n")
    code, out, _ = run_cli(
        capsys, "validate", "--graph", p5, "--set", str(claim), "--d", "3"
    )
    assert code == 1
    assert "violation: pair (v0, v2) dist 2 < 3" in out


def test_validate_empty_set_is_vacuous(capsys, p5, tmp_path):
    claim = tmp_path / "empty.txt"
    claim.write_text("c nothing claimed\n")
    code, out, _ = run_cli(
        capsys, "validate", "--graph", p5, "--set", str(claim), "--d", "3"
    )
    assert code == 0 and "size: 0" in out


def test_validate_accepts_plain_integer_tokens(capsys, p5, tmp_path):
    claim = tmp_path / "set.txt"
    claim.write_text("0 3\n")
    code, _, _ = run_cli(
        capsys, "validate", "--graph", p5, "--set", str(claim), "--d", "3"
    )
    assert code == 0


def test_validate_set_requires_d(capsys, p5, tmp_path):
    claim = tmp_path / "set.txt"
    claim.write_text("v0\n")
    code, _, err = run_cli(capsys, "validate", "--graph", p5, "--set", str(claim))
    assert code == 2 and "--d" in err


def test_validate_rejects_out_of_range_vertex(capsys, p5, tmp_path):
    claim = tmp_path / "set.txt"
    claim.write_text("v9\n")
    code, _, err = run_cli(
        capsys, "validate", "--graph", p5, "--set", str(claim), "--d", "2"
    )
    assert code == 3 and "out of range" in err


def test_validate_flags_broken_decomposition(capsys, p5, tmp_path):
    td_file = tmp_path / "bad.td"
    td_file.write_text("s td 3 2 5\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n")
    code, out, _ = run_cli(capsys, "validate", "--graph", p5, "--td", str(td_file))
    assert code == 1
    assert "violation: vertex-coverage" in out


# -- exit codes and report schema ------------------------------------------------


def test_missing_file_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "solve", "--graph", "nope.dss", "--d", "3")
    assert code == 2


def test_malformed_graph_is_precondition_error(capsys, tmp_path):
    bad = tmp_path / "bad.dss"
    bad.write_text("p dss x y\n")
    code, _, err = run_cli(capsys, "solve", "--graph", str(bad), "--d", "3")
    assert code == 3 and "error:" in err


def test_decimal_epsilon_rejected(capsys, p5):
    code, _, err = run_cli(
        capsys, "solve", "--graph", p5, "--d", "3", "--algo", "approx",
        "--epsilon", "0.5",
    )
    assert code == 2
    assert "rational" in err


def test_bogus_witness_is_internal_error(capsys, p5, monkeypatch):
    monkeypatch.setattr(cli, "brute_force_max", lambda g, d: (2, (0, 1)))
    code, _, err = run_cli(capsys, "solve", "--graph", p5, "--d", "3", "--algo", "brute")
    assert code == 4
    assert err.startswith("internal error:")


def test_json_reports_share_one_schema(capsys, p5, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    claim = tmp_path / "set.txt"
    claim.write_text("v0 v3\n")
    td_file = tmp_path / "p5.td"
    run_cli(capsys, "decompose", "--graph", p5, "--out", str(td_file))
    invocations = [
        ("solve", "--graph", p5, "--d", "3", "--json"),
        ("solve", "--graph", p5, "--d", "3", "--algo", "approx", "--epsilon", "1", "--json"),
        ("count", "--graph", p5, "--d", "3", "--k", "2", "--json"),
        ("gen", "random", "--n", "4", "--p", "1/2", "--json"),
        ("decompose", "--graph", p5, "--json"),
        ("validate", "--graph", p5, "--td", str(td_file), "--json"),
        ("validate", "--graph", p5, "--set", str(claim), "--d", "3", "--json"),
    ]
    shapes = set()
    for argv in invocations:
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        report = json.loads(out)
        shapes.add(
            (
                tuple(report),
                tuple(report["parameters"]),
                tuple(report["result"]),
                tuple(report["validation"]),
            )
        )
    assert len(shapes) == 1
