"""Command-line behavior: output shapes, exit codes, files, determinism."""

import json
import subprocess
import sys

import pytest
from click.testing import CliRunner

from cycensus.cli import main
from cycensus.tableio import HEADER, emit_cayley, parse_cayley
from cycensus.construct import cyclic
from cycensus.groups import GroupError

runner = CliRunner()


def invoke(*args, **kwargs):
    return runner.invoke(main, list(args), **kwargs)


# -- count ---------------------------------------------------------------------


def test_count_d8_output_is_exact():
    result = invoke("count", "--group", "D8")
    assert result.exit_code == 0
    assert result.output.splitlines() == [
        "group: D8",
        "order: 8",
        "total cyclic subgroups: 7",
        "per-order breakdown: {1: 1, 2: 5, 4: 1}",
        "fingerprint-identical catalog entries: D8",
    ]


def test_count_a4():
    result = invoke("count", "--group", "A4")
    assert result.exit_code == 0
    assert "total cyclic subgroups: 8" in result.output


def test_count_name_with_spaces():
    result = invoke("count", "--group", "C4x C2")
    assert result.exit_code == 0
    assert "total cyclic subgroups: 6" in result.output


def test_count_out_of_catalog_group():
    result = invoke("count", "--group", "C2xC2xC2xC2xC2")
    assert result.exit_code == 0
    assert "none (outside the catalog)" in result.output


def test_count_requires_exactly_one_source():
    assert invoke("count").exit_code == 2
    assert invoke("count", "--group", "D8", "--file", "x").exit_code == 2


def test_count_unknown_name_exits_2_with_the_grammar():
    result = invoke("count", "--group", "K4")
    assert result.exit_code == 2
    assert "available names" in result.output


def test_count_missing_file_exits_2(tmp_path):
    result = invoke("count", "--file", str(tmp_path / "absent.tbl"))
    assert result.exit_code == 2


# -- import / export --------------------------------------------------------------


def test_export_writes_the_documented_bytes(tmp_path):
    out = tmp_path / "c3.tbl"
    result = invoke("export", "--group", "C3", "--out", str(out))
    assert result.exit_code == 0
    assert out.read_text() == "cayley v1 3\n0 1 2\n1 2 0\n2 0 1\n"


def test_round_trip_export_import(tmp_path):
    out = tmp_path / "d8.tbl"
    assert invoke("export", "--group", "D8", "--out", str(out)).exit_code == 0
    result = invoke("import", "--file", str(out))
    assert result.exit_code == 0
    assert "total cyclic subgroups: 7" in result.output
    assert "fingerprint-identical catalog entries: D8" in result.output


def test_import_non_associative_table_exits_2_naming_a_triple(tmp_path):
    rows = [
        "0 1 2 3 4",
        "1 0 3 4 2",
        "2 4 0 1 3",
        "3 2 4 0 1",
        "4 3 1 2 0",
    ]
    bad = tmp_path / "loop.tbl"
    bad.write_text(f"{HEADER} 5\n" + "\n".join(rows) + "\n")
    result = invoke("import", "--file", str(bad))
    assert result.exit_code == 2
    assert "not a group table" in result.output
    assert "associativity fails: (1*1)*2 != 1*(1*2)" in result.output


def test_import_short_file_exits_2(tmp_path):
    bad = tmp_path / "short.tbl"
    bad.write_text(f"{HEADER} 3\n0 1 2\n1 2 0\n")
    result = invoke("import", "--file", str(bad))
    assert result.exit_code == 2
    assert "expected 3 table rows, found 2" in result.output


def test_import_out_of_range_entry_exits_2(tmp_path):
    bad = tmp_path / "range.tbl"
    bad.write_text(f"{HEADER} 3\n0 1 2\n1 2 0\n2 0 9\n")
    result = invoke("import", "--file", str(bad))
    assert result.exit_code == 2
    assert "line 4, column 3: entry 9 outside 0..2" in result.output


def test_import_bad_header_exits_2(tmp_path):
    bad = tmp_path / "hdr.tbl"
    bad.write_text("caylee v9 2\n0 1\n1 0\n")
    assert invoke("import", "--file", str(bad)).exit_code == 2


def test_import_accepts_comments_and_blank_lines(tmp_path):
    ok = tmp_path / "c2.tbl"
    ok.write_text(f"# a comment\n{HEADER} 2\n\n0 1\n1 0\n# trailing\n")
    result = invoke("import", "--file", str(ok))
    assert result.exit_code == 0
    assert "total cyclic subgroups: 2" in result.output


def test_export_unknown_name_exits_2(tmp_path):
    result = invoke("export", "--group", "K4", "--out", str(tmp_path / "x.tbl"))
    assert result.exit_code == 2


def test_emit_parse_round_trip_small():
    for n in (1, 2, 5, 12):
        g = cyclic(n)
        text = emit_cayley(g)
        back = parse_cayley(text)
        assert back.n == n
        assert back.cyclic_census() == g.cyclic_census()


# -- verify ------------------------------------------------------------------------


def test_verify_lagrange_names_the_exception():
    result = invoke("verify", "--target", "lagrange", "--max-order", "100")
    assert result.exit_code == 0
    assert "lagrange/unique-failure" in result.output
    assert "A4" in result.output
    assert "0 fail" in result.output


def test_verify_formulas_reports_the_honest_failure():
    result = invoke("verify", "--target", "formulas", "--max-order", "90")
    assert result.exit_code == 1
    assert "census-formula/Gxi@p=3" in result.output
    assert "1 fail" in result.output


def test_verify_all_passes_below_the_degenerate_order():
    result = invoke("verify", "--max-order", "60")
    assert result.exit_code == 0
    assert "0 fail" in result.output


def test_verify_over_the_sweep_cap_exits_2():
    result = invoke("verify", "--target", "lagrange", "--max-order", "600")
    assert result.exit_code == 2
    assert "capped" in result.output


def test_verify_writes_json_and_csv(tmp_path):
    jpath, cpath = tmp_path / "r.json", tmp_path / "v.csv"
    result = invoke(
        "verify", "--max-order", "30", "--json", str(jpath), "--csv", str(cpath)
    )
    assert result.exit_code == 0
    doc = json.loads(jpath.read_text())
    assert doc["schema_version"] == 1
    assert doc["invocation"]["max_order"] == 30
    assert doc["summary"]["fail"] == 0
    header = cpath.read_text().splitlines()[0]
    assert header == "id,family,label,expected,observed,status,witness"


def test_verify_json_validates_against_the_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    from importlib.resources import files

    schema = json.loads(
        files("cycensus").joinpath("schema/report.schema.json").read_text()
    )
    jpath = tmp_path / "r.json"
    assert invoke("verify", "--max-order", "40", "--json", str(jpath)).exit_code == 0
    jsonschema.validate(json.loads(jpath.read_text()), schema)


def test_verify_reports_are_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    invoke("verify", "--max-order", "25", "--json", str(a))
    invoke("verify", "--max-order", "25", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()


# -- catalog ----------------------------------------------------------------------


def test_catalog_summary_and_collisions(tmp_path):
    out = tmp_path / "rows.csv"
    result = invoke("catalog", "--max-order", "20", "--out", str(out))
    assert result.exit_code == 0
    assert "catalog: 54 groups across 20 orders (up to 20)" in result.output
    assert "G9 ~ G8, G10 ~ G7" in result.output
    lines = out.read_text().splitlines()
    assert lines[0].startswith("order,label,family,census_total")
    assert len(lines) == 55


def test_catalog_renders_figures(tmp_path):
    plots = tmp_path / "figs"
    result = invoke("catalog", "--max-order", "16", "--plots", str(plots))
    assert result.exit_code == 0
    written = sorted(p.name for p in plots.iterdir())
    assert written == ["census_scatter.png", "census_totals_bar.png"]
    for p in plots.iterdir():
        assert p.stat().st_size > 1000


# -- plumbing ----------------------------------------------------------------------


def test_version_flag():
    result = invoke("--version")
    assert result.exit_code == 0


def test_help_lists_subcommands():
    result = invoke("--help")
    assert result.exit_code == 0
    for sub in ("catalog", "count", "verify", "export", "import"):
        assert sub in result.output


def test_color_respects_no_color(monkeypatch):
    from cycensus import cli

    monkeypatch.setattr(sys.stdout, "isatty", lambda: True, raising=False)
    monkeypatch.delenv("NO_COLOR", raising=False)
    assert cli._color_enabled()
    monkeypatch.setenv("NO_COLOR", "1")
    assert not cli._color_enabled()


def test_no_ansi_codes_in_piped_output():
    result = invoke("verify", "--target", "formulas", "--max-order", "85")
    assert "\x1b" not in result.output


def test_real_process_exit_codes(tmp_path):
    env_ok = subprocess.run(
        [sys.executable, "-m", "cycensus.cli", "count", "--group", "Q8"],
        capture_output=True, text=True,
    )
    assert env_ok.returncode == 0
    env_fail = subprocess.run(
        [sys.executable, "-m", "cycensus.cli", "verify", "--target", "formulas",
         "--max-order", "85"],
        capture_output=True, text=True,
    )
    assert env_fail.returncode == 1
    env_usage = subprocess.run(
        [sys.executable, "-m", "cycensus.cli", "count", "--group", "nope"],
        capture_output=True, text=True,
    )
    assert env_usage.returncode == 2
