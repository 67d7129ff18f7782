"""End-to-end tests for the command-line front end.

Every invocation goes through ``cli.main`` in-process; the contract under
test is exit codes (decision verbs 0/1, errors 2), output documents that
reparse bit-exactly, witness files that replay, and batch fault isolation.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from sphereminors import (
    contracted_model_map,
    cycle_map,
    dual,
    equivalent,
    format_diagram,
    format_map,
    medial,
    one_crossing_unknot,
    parse_diagram,
    parse_map,
    parse_model,
    trefoil_diagram,
    verify_model,
)
from sphereminors.cli import main


@pytest.fixture
def files(tmp_path, tetrahedron):
    """Write the shared fixture documents and hand back their paths."""
    paths = {}

    def put(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        paths[name] = str(p)
        return p

    put("c3.map", format_map(cycle_map(3)))
    put("c4.map", format_map(cycle_map(4)))
    put("k4.map", format_map(tetrahedron))
    put("tref.diag", format_diagram(trefoil_diagram()))
    put("u1.diag", format_diagram(one_crossing_unknot()))
    put("wit.list", "witnessset v1 name=unknot\ndiagram u1.diag\n")
    paths["dir"] = str(tmp_path)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_map_document(self, files, capsys):
        code, out, _ = run(capsys, "validate", files["c3.map"])
        assert code == 0
        assert out == "OK spheremap vertices=3 edges=3 faces=2\n"

    def test_diagram_document(self, files, capsys):
        code, out, _ = run(capsys, "validate", files["tref.diag"])
        assert code == 0
        assert out == "OK linkdiag crossings=3\n"

    def test_digraph_document(self, files, tmp_path, capsys):
        code, _, _ = run(capsys, "dm", files["c3.map"], "--out", str(tmp_path / "c3.dg"))
        assert code == 0
        code, out, _ = run(capsys, "validate", str(tmp_path / "c3.dg"))
        assert code == 0
        assert out.startswith("OK gooddigraph vertices=3")

    def test_garbage_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.map"
        bad.write_text("not a document\n", encoding="utf-8")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert err.startswith("error:")

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "validate", str(tmp_path / "nope.map"))
        assert code == 2
        assert "error:" in err

    def test_corrupt_map_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.map"
        bad.write_text("spheremap v1 darts=2\nd 0 sigma=0 alpha=0\nd 1 sigma=1 alpha=1\n")
        code, _, err = run(capsys, "validate", str(bad))
        assert code == 2
        assert "error:" in err


class TestDecisionVerbs:
    def test_iso_yes(self, files, capsys):
        code, out, _ = run(capsys, "iso", files["c3.map"], files["c3.map"])
        assert (code, out) == (0, "YES\n")

    def test_iso_no(self, files, capsys):
        code, out, _ = run(capsys, "iso", files["c3.map"], files["c4.map"])
        assert (code, out) == (1, "NO\n")

    def test_minor_yes_and_no(self, files, capsys):
        assert run(capsys, "minor", files["c3.map"], files["k4.map"])[0] == 0
        assert run(capsys, "minor", files["c4.map"], files["c3.map"])[0] == 1

    def test_minor_oracle_agrees(self, files, capsys):
        assert run(capsys, "minor", files["c3.map"], files["k4.map"], "--oracle")[0] == 0
        assert run(capsys, "minor", files["c4.map"], files["c3.map"], "--oracle")[0] == 1

    def test_split_reach_reflexive(self, files, tmp_path, capsys):
        dg = str(tmp_path / "c3.dg")
        run(capsys, "dm", files["c3.map"], "--out", dg)
        code, out, _ = run(capsys, "split-reach", dg, dg)
        assert (code, out) == (0, "YES\n")

    def test_dleq_both_directions(self, files, capsys):
        assert run(capsys, "dleq", files["u1.diag"], files["tref.diag"])[0] == 0
        assert run(capsys, "dleq", files["tref.diag"], files["u1.diag"])[0] == 1

    def test_dleq_oracle(self, files, capsys):
        assert run(capsys, "dleq", files["u1.diag"], files["tref.diag"], "--oracle")[0] == 0

    def test_leadsto(self, files, capsys):
        code, out, _ = run(capsys, "leadsto", files["tref.diag"], "--witness", files["wit.list"])
        assert (code, out) == (0, "YES\n")

    def test_reach(self, files, capsys):
        code, out, _ = run(
            capsys, "reach", files["tref.diag"], "--targets", files["u1.diag"]
        )
        assert (code, out) == (0, "YES\n")


class TestWitnessFiles:
    def test_minor_witness_replays(self, files, tmp_path, capsys):
        wpath = tmp_path / "w.model"
        code, _, _ = run(
            capsys, "minor", files["c3.map"], files["k4.map"], "--witness", str(wpath)
        )
        assert code == 0
        host = parse_map(Path(files["k4.map"]).read_text())
        model = parse_model(wpath.read_text(), host, source=str(wpath))
        assert verify_model(cycle_map(3), model)
        carved = contracted_model_map(model)
        assert equivalent(carved, cycle_map(3))

    def test_no_witness_file_on_no(self, files, tmp_path, capsys):
        wpath = tmp_path / "w.model"
        code, _, _ = run(
            capsys, "minor", files["c4.map"], files["c3.map"], "--witness", str(wpath)
        )
        assert code == 1
        assert not wpath.exists()

    def test_empty_witness_set_exits_2(self, files, tmp_path, capsys):
        empty = tmp_path / "empty.list"
        empty.write_text("witnessset v1 name=hollow\n", encoding="utf-8")
        code, _, err = run(capsys, "leadsto", files["tref.diag"], "--witness", str(empty))
        assert code == 2
        assert "hollow" in err

    def test_malformed_witness_list_exits_2(self, files, tmp_path, capsys):
        bad = tmp_path / "bad.list"
        bad.write_text("diagram u1.diag\n", encoding="utf-8")
        code, _, err = run(capsys, "leadsto", files["tref.diag"], "--witness", str(bad))
        assert code == 2
        assert "witnessset" in err


class TestConstructiveVerbs:
    def test_canon_is_idempotent_bitwise(self, files, tmp_path, capsys):
        first = tmp_path / "a.map"
        second = tmp_path / "b.map"
        run(capsys, "canon", files["c4.map"], "--out", str(first))
        run(capsys, "canon", str(first), "--out", str(second))
        assert first.read_text() == second.read_text()
        assert equivalent(parse_map(first.read_text()), cycle_map(4))

    def test_dual_twice_returns(self, files, tetrahedron, tmp_path, capsys):
        once = tmp_path / "d1.map"
        twice = tmp_path / "d2.map"
        run(capsys, "dual", files["k4.map"], "--out", str(once))
        run(capsys, "dual", str(once), "--out", str(twice))
        assert equivalent(parse_map(twice.read_text()), tetrahedron)
        assert parse_map(once.read_text()).face_count == tetrahedron.vertex_count

    def test_medial_matches_library(self, files, capsys):
        code, out, _ = run(capsys, "medial", files["c3.map"])
        assert code == 0
        expected, _ = medial(cycle_map(3))
        assert equivalent(parse_map(out), expected)

    def test_dm_undm_round_trip(self, files, tmp_path, capsys):
        dg = tmp_path / "c4.dg"
        back = tmp_path / "back.map"
        run(capsys, "dm", files["c4.map"], "--out", str(dg))
        run(capsys, "undm", str(dg), "--out", str(back))
        assert equivalent(parse_map(back.read_text()), cycle_map(4))

    def test_grid_output(self, capsys):
        code, out, _ = run(capsys, "grid", "2")
        assert code == 0
        m = parse_map(out)
        assert (m.vertex_count, m.edge_count) == (4, 4)

    def test_tait_writes_both_maps(self, files, tmp_path, capsys):
        black = tmp_path / "b.map"
        white = tmp_path / "w.map"
        code, _, _ = run(
            capsys,
            "tait",
            files["tref.diag"],
            "--black",
            str(black),
            "--white",
            str(white),
        )
        assert code == 0
        b = parse_map(black.read_text())
        w = parse_map(white.read_text())
        assert equivalent(dual(b), w)
        assert {b.vertex_count, w.vertex_count} == {2, 3}

    def test_exchange_is_involution_through_files(self, files, tmp_path, capsys):
        once = tmp_path / "x1.diag"
        twice = tmp_path / "x2.diag"
        run(capsys, "exchange", files["tref.diag"], "--crossing", "1", "--out", str(once))
        run(capsys, "exchange", str(once), "--crossing", "1", "--out", str(twice))
        assert twice.read_text() == Path(files["tref.diag"]).read_text()
        assert once.read_text() != twice.read_text()

    def test_smooth_unknot_gives_round(self, files, capsys):
        code, out, _ = run(
            capsys, "smooth", files["u1.diag"], "--crossing", "0", "--kind", "black_delete"
        )
        assert code == 0
        assert parse_diagram(out).is_round

    def test_smooth_refusal_exits_2(self, files, capsys):
        code, _, err = run(
            capsys, "smooth", files["u1.diag"], "--crossing", "0", "--kind", "white_delete"
        )
        assert code == 2
        assert "error:" in err

    def test_enumerate_streams_corpus(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--max-edges", "2")
        assert code == 0
        docs = [d for d in out.split("\n\n") if d.strip()]
        assert len(docs) == 6
        maps = [parse_map(doc + "\n") for doc in docs]
        assert all(m.edge_count <= 2 for m in maps)

    def test_serialize_parse_bit_exact(self, files, tmp_path, capsys):
        copy = tmp_path / "copy.diag"
        original = Path(files["tref.diag"]).read_text()
        copy.write_text(format_diagram(parse_diagram(original)), encoding="utf-8")
        assert copy.read_text() == original


class TestBudgets:
    def test_minor_node_budget_exits_2(self, files, capsys):
        code, _, err = run(
            capsys,
            "minor",
            files["c3.map"],
            files["k4.map"],
            "--node-budget",
            "1",
        )
        assert code == 2
        assert "exceeded" in err

    def test_oracle_edge_cap_exits_2(self, files, capsys):
        code, _, err = run(
            capsys,
            "minor",
            files["c3.map"],
            files["k4.map"],
            "--oracle",
            "--edge-cap",
            "3",
        )
        assert code == 2
        assert "error:" in err

    def test_dleq_oracle_crossing_cap_exits_2(self, files, capsys):
        code, _, err = run(
            capsys,
            "dleq",
            files["u1.diag"],
            files["tref.diag"],
            "--oracle",
            "--crossing-cap",
            "1",
        )
        assert code == 2
        assert "error:" in err


class TestBatch:
    def manifest(self, tmp_path, files, lines):
        m = tmp_path / "jobs.txt"
        m.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return str(m)

    def test_result_lines_and_summary(self, files, tmp_path, capsys):
        path = self.manifest(
            tmp_path,
            files,
            [
                "# comment",
                "",
                f"iso {files['c3.map']} {files['c3.map']}",
                f"iso {files['c3.map']} {files['c4.map']}",
                f"validate {files['tref.diag']}",
                "minor missing.map also-missing.map",
                "unknown-verb x",
            ],
        )
        code, out, _ = run(capsys, "batch", path)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "3 YES"
        assert lines[1] == "4 NO"
        assert lines[2] == "5 OK"
        assert lines[3].startswith("6 ERROR")
        assert lines[4] == "7 ERROR unparseable command"
        assert lines[5] == "summary yes=1 no=1 ok=1 error=2"

    def test_errors_do_not_abort(self, files, tmp_path, capsys):
        path = self.manifest(
            tmp_path,
            files,
            [
                "minor nope.map nope.map",
                f"iso {files['c4.map']} {files['c4.map']}",
            ],
        )
        code, out, _ = run(capsys, "batch", path)
        assert code == 0
        assert "2 YES" in out.splitlines()

    def test_batch_cannot_nest(self, files, tmp_path, capsys):
        inner = self.manifest(tmp_path, files, [f"validate {files['c3.map']}"])
        path = self.manifest(tmp_path, files, [f"batch {inner}"])
        code, out, _ = run(capsys, "batch", path)
        assert code == 0
        assert "ERROR batch lines cannot nest" in out

    def test_deterministic(self, files, tmp_path, capsys):
        path = self.manifest(
            tmp_path,
            files,
            [
                f"minor {files['c3.map']} {files['k4.map']}",
                f"dleq {files['u1.diag']} {files['tref.diag']}",
                "garbage",
            ],
        )
        first = run(capsys, "batch", path)
        second = run(capsys, "batch", path)
        assert first == second

    def test_missing_manifest_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "batch", str(tmp_path / "none.txt"))
        assert code == 2
        assert "error:" in err
