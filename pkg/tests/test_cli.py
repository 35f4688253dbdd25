"""CLI surface: spec grammar, output formats, exit codes, determinism."""

import csv
import io
import json

from circdepth.cli import CSV_COLUMNS, _verdict, main
from circdepth.formulas import FormulaReport, FormulaValue
from circdepth.homology import GF32003, InvariantReport
from circdepth.sdepth import SdepthResult


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_invariants_all_match(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "cubic:5:1", "--method", "all"
    )
    assert code == 0
    assert "depth=3" in out
    assert "verdict: match" in out


def test_invariants_oracle_ladder_c2(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "ladderC:2", "--method", "oracle"
    )
    assert code == 0
    assert "depth=3" in out


def test_invariants_formula_path2(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "path:2", "--method", "formula"
    )
    assert code == 0
    assert "depth=1" in out


def test_invariants_bad_spec_exits_2(capsys):
    code, _, err = run_cli(capsys, "invariants", "--graph", "moon:3")
    assert code == 2
    assert "error" in err


def test_invariants_json_schema(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "cubic:3:1", "--method", "all",
        "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert set(obj) == {"spec", "vertices", "edges", "invariants", "provenance", "seconds"}
    assert set(obj["invariants"]) == {"depth", "pdim", "reg", "sdepth"}
    assert set(obj["provenance"]) == {"method", "field", "theorem"}
    assert obj["vertices"] == 6
    assert obj["invariants"]["depth"] == 1
    assert obj["invariants"]["sdepth"]["exact"] == 2


def test_invariants_json_deterministic(capsys, monkeypatch):
    def normalized(out):
        obj = json.loads(out)
        obj["seconds"] = 0
        return json.dumps(obj, sort_keys=True)

    args = ["invariants", "--graph", "cubic:4:2", "--method", "all", "--format", "json"]
    _, out1, _ = run_cli(capsys, *args)
    monkeypatch.setenv("CIRC_THREADS", "2")
    _, out2, _ = run_cli(capsys, *args)
    assert normalized(out1) == normalized(out2)


def test_invariants_exact_field(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "path:4", "--method", "oracle",
        "--field", "exact", "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["invariants"]["depth"] == 2
    assert obj["provenance"]["field"] == "exact"


def test_invariants_csv_columns(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "path:4", "--method", "all",
        "--format", "csv",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1][0] == "path"


def test_oracle_slow_tier_gate(capsys):
    code, _, err = run_cli(
        capsys, "invariants", "--graph", "ladderC:7", "--method", "oracle"
    )
    assert code == 2
    assert "--slow" in err
    code, _, err = run_cli(
        capsys, "invariants", "--graph", "path:21", "--method", "oracle", "--slow"
    )
    assert code == 2
    assert "hard cap" in err


def test_sdepth_method_cap(capsys):
    code, _, err = run_cli(
        capsys, "invariants", "--graph", "path:15", "--method", "sdepth"
    )
    assert code == 2
    assert "sdepth solver" in err


def test_verify_paper_small(capsys):
    code, out, _ = run_cli(capsys, "verify-paper", "--max-n", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    body = rows[1:]
    families = {r[0] for r in body}
    assert {"path", "cycle", "star", "complete", "ladderA", "ladderB", "ladderC",
            "ladderD", "cubic1n", "cubic2n", "cubic", "davis-domke",
            "colon-ladderA", "colon-cubic1n", "colon-cubic2n",
            "sdepth-path", "sdepth-cubic"} <= families
    verdicts = {r[CSV_COLUMNS.index("verdict")] for r in body}
    assert "MISMATCH" not in verdicts
    d3 = next(r for r in body if r[0] == "ladderD" and r[1] == "n=3")
    assert d3[CSV_COLUMNS.index("depth_formula")] == "2"
    assert d3[CSV_COLUMNS.index("depth_oracle")] == "2"
    assert d3[CSV_COLUMNS.index("verdict")] == "match"


def test_verify_paper_json_and_out_file(capsys, tmp_path):
    out_file = tmp_path / "rows.json"
    code, out, _ = run_cli(
        capsys, "verify-paper", "--max-n", "2", "--format", "json",
        "--out", str(out_file),
    )
    assert code == 0
    assert out == ""
    obj = json.loads(out_file.read_text())
    assert obj["mismatches"] == 0
    assert all(set(r) == set(CSV_COLUMNS) for r in obj["rows"])


def test_verify_paper_tier_limits(capsys):
    code, _, err = run_cli(capsys, "verify-paper", "--max-n", "8")
    assert code == 2
    assert "tier limit" in err


def test_decompose_examples(capsys):
    code, out, _ = run_cli(capsys, "decompose", "4", "2")
    assert code == 0
    assert "2 × C_4(1,2)" in out and "verified" in out
    code, out, _ = run_cli(capsys, "decompose", "5", "2")
    assert "1 × C_10(2,5)" in out
    code, out, _ = run_cli(capsys, "decompose", "3", "1")
    assert "1 × C_6(1,3)" in out


def test_decompose_json(capsys):
    code, out, _ = run_cli(capsys, "decompose", "6", "4", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["verified"] is True
    # t = gcd(12, 4) = 4, 2n/t = 3 odd: two copies of C_6(2,3)
    assert (obj["t"], obj["parity"], obj["copy_count"]) == (4, "odd", 2)
    assert obj["component"] == "circulant:6:2,3"
    assert len(obj["witnesses"]) == 2


def test_decompose_invalid_exits_2(capsys):
    code, _, err = run_cli(capsys, "decompose", "4", "4")
    assert code == 2
    assert "error" in err


def test_union_spec_through_all_methods(capsys):
    code, out, _ = run_cli(
        capsys, "invariants", "--graph", "union:(path:2;path:3)", "--method", "all",
        "--format", "json",
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["invariants"]["depth"] == 2
    assert obj["invariants"]["sdepth"]["exact"] == 2


def test_verify_paper_worker_count_invariant(capsys, monkeypatch):
    def body_without_seconds(out):
        rows = list(csv.reader(io.StringIO(out)))
        return [r[:-1] for r in rows]

    args = ["verify-paper", "--max-n", "2", "--format", "csv"]
    _, out1, _ = run_cli(capsys, *args)
    monkeypatch.setenv("CIRC_THREADS", "2")
    _, out2, _ = run_cli(capsys, *args)
    assert body_without_seconds(out1) == body_without_seconds(out2)


def _report(depth, pdim, sdepth, nvars):
    return FormulaReport(
        depth=depth, sdepth=sdepth, pdim=pdim, source="synthetic", ambient_vars=nvars
    )


def test_verdict_logic():
    exact = _report(
        FormulaValue.exact(2), FormulaValue.exact(3), FormulaValue.exact(2), 5
    )
    good = InvariantReport(
        depth=2, pdim=3, reg=1, ambient_vars=5, field=GF32003, method="hochster"
    )
    off = InvariantReport(
        depth=3, pdim=2, reg=1, ambient_vars=5, field=GF32003, method="hochster"
    )
    assert _verdict(exact, good, None) == "match"
    assert _verdict(exact, off, None) == "MISMATCH"

    bounded = _report(
        FormulaValue.exact(2), FormulaValue.exact(3), FormulaValue.bounds(2, 3), 5
    )
    inside = SdepthResult(value=3, is_exact=True, witness=None, status="exact")
    outside = SdepthResult(value=4, is_exact=True, witness=None, status="exact")
    assert _verdict(bounded, good, inside) == "bounds-consistent"
    assert _verdict(bounded, good, outside) == "MISMATCH"

    # exact solver value below oracle depth violates the Stanley inequality
    low = SdepthResult(value=1, is_exact=True, witness=None, status="exact")
    assert _verdict(None, good, low) == "MISMATCH"
