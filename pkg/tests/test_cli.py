"""cli: dispatch surface, exit codes, determinism, formats."""

from __future__ import annotations

import json

import pytest

from fankit.cli import dispatch
from fankit.extremal import turan_graph
from fankit.graphs import Graph, from_graph6, to_graph6


def run(capsys, *argv) -> tuple[int, str]:
    status = dispatch(list(argv))
    out = capsys.readouterr().out
    return status, out


def run_json(capsys, *argv):
    status, out = run(capsys, *argv)
    return status, json.loads(out)


class TestPhiCommand:
    def test_k4_triangles(self, capsys):
        status, payload = run_json(capsys, "phi", "--graph6", "C~", "-k", "1", "-r", "3")
        assert status == 0
        assert payload["phi"] == 4
        assert payload["exact"] is True

    def test_multiple_graphs_from_file(self, capsys, tmp_path):
        path = tmp_path / "graphs.g6"
        path.write_text("C~\nA_\n")
        status, payload = run_json(capsys, "phi", "--file", str(path), "-k", "1", "-r", "3")
        assert status == 0
        assert [entry["phi"] for entry in payload] == [4, 1]


class TestPackCommand:
    def test_k7_steiner(self, capsys):
        k7 = to_graph6(Graph.complete(7))
        status, payload = run_json(capsys, "pack", "--graph6", k7, "-k", "1", "-r", "3")
        assert status == 0
        assert payload["size"] == 7

    def test_budget_exhaustion_exit_code(self, capsys):
        k7 = to_graph6(Graph.complete(7))
        status, payload = run_json(
            capsys, "pack", "--graph6", k7, "-k", "1", "-r", "3", "--budget", "3"
        )
        assert status == 4
        assert payload["kind"] == "budget"
        assert payload["partial_packing"]["size"] >= 1


class TestConstructCommand:
    def test_extremal_graph6(self, capsys):
        status, out = run(capsys, "construct", "extremal", "-n", "12", "-k", "3", "-r", "3",
                          "--format", "graph6")
        assert status == 0
        assert from_graph6(out.strip()).edge_count == 42

    def test_extremal_json(self, capsys):
        status, payload = run_json(capsys, "construct", "extremal", "-n", "12", "-k", "3", "-r", "3")
        assert status == 0
        assert payload["edges"] == 42
        assert payload["proven_extremal"] is False

    def test_fan(self, capsys):
        status, payload = run_json(capsys, "construct", "fan", "-k", "2", "-r", "3")
        assert status == 0
        assert payload == {"n": 5, "edges": 6, "graph6": payload["graph6"]}

    def test_turan(self, capsys):
        status, payload = run_json(capsys, "construct", "turan", "-n", "6", "-p", "2")
        assert status == 0
        assert payload["edges"] == 9

    def test_part_too_small_is_input_error(self, capsys):
        status, payload = run_json(capsys, "construct", "extremal", "-n", "12", "-k", "4", "-r", "3")
        assert status == 2
        assert payload["kind"] == "bad-input"


class TestSearchCommands:
    def test_verify_alias(self, capsys):
        status, payload = run_json(capsys, "verify", "-n", "5", "-k", "1", "-r", "3", "--no-cache")
        assert status == 0
        assert payload["identity_holds"] is True
        assert payload["phi"] == 6 and payload["ex"] == 6

    def test_search_ex(self, capsys):
        status, payload = run_json(capsys, "search", "ex", "-n", "5", "-k", "1", "-r", "3")
        assert status == 0
        assert payload["ex"] == 6

    def test_search_phi_matches_verify(self, capsys):
        s1, p1 = run_json(capsys, "search", "phi", "-n", "4", "-k", "1", "-r", "3", "--no-cache")
        s2, p2 = run_json(capsys, "search", "verify", "-n", "4", "-k", "1", "-r", "3", "--no-cache")
        assert s1 == s2 == 0
        assert p1 == p2


class TestBoundsCommands:
    def test_g(self, capsys):
        assert run_json(capsys, "bounds", "g", "-k", "3")[1] == {"k": 3, "g": 6}

    def test_hanson(self, capsys):
        status, payload = run_json(capsys, "bounds", "hanson", "--nu", "2", "--delta", "2")
        assert payload["bound"] == 6

    def test_constants(self, capsys):
        status, payload = run_json(capsys, "bounds", "constants", "-n", "8640", "-k", "2", "-r", "3")
        assert status == 0
        assert payload["t1"] == 10
        assert payload["gamma"] == "1/41990400"

    def test_constants_reject_k1(self, capsys):
        status, payload = run_json(capsys, "bounds", "constants", "-n", "10", "-k", "1", "-r", "3")
        assert status == 2


class TestDecomposeCommand:
    def planted(self) -> str:
        base = turan_graph(20, 2)
        rows = list(base.adj)
        for u, v in [(0, 1), (0, 2)]:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return to_graph6(Graph(20, rows))

    def test_reports_fans(self, capsys):
        status, payload = run_json(
            capsys, "decompose", "--graph6", self.planted(), "-k", "2", "-r", "3"
        )
        assert status == 0
        assert payload["fan_count"] == 1
        assert payload["m"] == 2
        assert all(entry["passed"] for entry in payload["claims_checked"])

    def test_threshold_flags(self, capsys):
        status, payload = run_json(
            capsys, "decompose", "--graph6", self.planted(), "-k", "2", "-r", "3",
            "--t1", "3", "--t2", "2",
        )
        assert status == 0
        assert payload["t1"] == 3 and payload["t2"] == 2

    def test_dot_output(self, capsys):
        status, out = run(
            capsys, "decompose", "--graph6", self.planted(), "-k", "2", "-r", "3",
            "--format", "dot",
        )
        assert status == 0
        assert out.startswith("graph fankit {")
        assert "--" in out and "fillcolor" in out


class TestErrorPaths:
    def test_unknown_flag(self, capsys):
        status, out = run(capsys, "phi", "--bogus", "x", "-k", "1", "-r", "3")
        assert status == 2
        assert json.loads(out)["kind"] == "usage"

    def test_malformed_graph6(self, capsys):
        status, payload = run_json(capsys, "phi", "--graph6", "A", "-k", "1", "-r", "3")
        assert status == 2
        assert payload["kind"] == "bad-input"
        assert "offset" in payload["error"]

    def test_search_cap(self, capsys):
        status, payload = run_json(capsys, "search", "ex", "-n", "9", "-k", "1", "-r", "3")
        assert status == 4
        assert payload["kind"] == "budget"


class TestDeterminism:
    @pytest.mark.parametrize(
        "argv",
        [
            ("phi", "--graph6", "C~", "-k", "1", "-r", "3"),
            ("bounds", "constants", "-n", "8640", "-k", "2", "-r", "3"),
            ("construct", "extremal", "-n", "12", "-k", "3", "-r", "3"),
            ("search", "phi", "-n", "5", "-k", "1", "-r", "3", "--no-cache"),
        ],
    )
    def test_byte_identical_across_thread_counts(self, capsys, argv):
        s1, out1 = run(capsys, *argv, "--threads", "1")
        s2, out2 = run(capsys, *argv, "--threads", "8")
        assert s1 == s2 == 0
        assert out1 == out2
