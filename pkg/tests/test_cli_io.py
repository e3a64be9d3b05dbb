import csv
import io
import json
import subprocess
import sys

import pytest
from hypothesis import given

from augtor.catalog import catalog_entries, catalog_lookup
from augtor.cli import CommandConfig, UsageError, main, parse_r_range, run_command
from augtor.errors import CatalogLookupError, LoadError, ParseError
from augtor.linalg import PresentationMatrix
from augtor.parsing import load_presentation, parse_poly
from augtor.poly import LaurentPoly, evaluate_int, format_poly
from augtor.torsion import torsion_snf
from conftest import laurent


def run(**kwargs):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(CommandConfig(**kwargs), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_examples():
    assert parse_poly("t^2-3t+1") == LaurentPoly((1, -3, 1))
    f = parse_poly("t^-1 - 3 + t")
    assert f.coeffs == (1, -3, 1) and f.min_exp == -1
    with pytest.raises(ParseError) as exc:
        parse_poly("t^^2")
    assert exc.value.offset == 2 and "offset 2" in str(exc.value)


def test_parse_grammar_details():
    assert parse_poly("2*(t^2-3t+1)") == parse_poly("2t^2-6t+2")
    assert parse_poly("-(t-1)(t+1)") == parse_poly("1-t^2")
    assert parse_poly("(-t)^-3") == LaurentPoly((-1,), -3)
    assert parse_poly("123456789012345678901234567890 t") == LaurentPoly((123456789012345678901234567890,), 1)
    for bad, offset in (("", 0), ("t+", 2), ("2t x", 3), ("(t-1)^-1", 7), ("((t)", 4)):
        with pytest.raises(ParseError) as exc:
            parse_poly(bad)
        assert exc.value.offset == offset, bad


@given(laurent(max_deg=6, max_coeff=50, min_exp=-4, max_min_exp=4, nonzero=False))
def test_parse_print_round_trip(f):
    assert parse_poly(format_poly(f)) == f


def test_load_examples(tmp_path):
    p = tmp_path / "ex211.json"
    p.write_text(json.dumps({"entries": [["2*(t^2-3t+1)", "(t-1)*(t^2-3t+1)"]]}), encoding="utf-8")
    a = load_presentation(p)
    assert a.n_rows == 1 and a.n_cols == 2
    assert a.entries[0][1] == parse_poly("t^3-4t^2+4t-1")
    p = tmp_path / "ex43.json"
    p.write_text(json.dumps({"rows": 1, "cols": 1, "entries": [["6*(t-1)"]]}), encoding="utf-8")
    assert load_presentation(p).entries[0][0] == parse_poly("6t-6")
    p = tmp_path / "ints.json"
    p.write_text(json.dumps({"entries": [[2, "t"], [0, 1]]}), encoding="utf-8")
    assert load_presentation(p).entries[0][0] == parse_poly("2")


def test_load_adjoins_zero_columns(tmp_path):
    p = tmp_path / "tall.json"
    p.write_text(json.dumps({"entries": [["t-1"], ["2"]]}), encoding="utf-8")
    a = load_presentation(p)
    assert (a.n_rows, a.n_cols) == (2, 2)


@pytest.mark.parametrize("doc, needle", [
    ({"entries": [["t-1"], ["extra", "row"]]}, "row 1"),
    ({"entries": [["t^^2"]]}, "entry (0, 0)"),
    ({"entries": [[1.5]]}, "entry (0, 0)"),
    ({"entries": []}, "nonempty"),
    ({"rows": 2, "entries": [["t"]]}, "declared rows"),
    ([1, 2], "JSON object"),
])
def test_load_errors(tmp_path, doc, needle):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    with pytest.raises(LoadError) as exc:
        load_presentation(p)
    assert needle in str(exc.value)


def test_load_invalid_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"entries": [["t"]', encoding="utf-8")
    with pytest.raises(LoadError):
        load_presentation(p)
    with pytest.raises(LoadError):
        load_presentation(tmp_path / "missing.json")


def test_catalog_examples():
    e = catalog_lookup("4_1")
    assert e.delta == parse_poly("t^2-3t+1") and e.kind == "knot"
    assert catalog_lookup("3_1").delta == parse_poly("t^2-t+1")
    e = catalog_lookup("ex4.3:m=6")
    assert e.delta == parse_poly("6(t-1)") and e.kind == "synthetic"
    with pytest.raises(CatalogLookupError) as exc:
        catalog_lookup("9_99")
    assert "4_1" in str(exc.value)


def test_catalog_invariants():
    for e in catalog_entries():
        assert e.provenance
        if e.kind == "knot":
            assert abs(evaluate_int(e.delta, 1)) == 1
        if e.kind == "link" and e.linking_number is not None:
            assert abs(evaluate_int(e.delta, 1)) == abs(e.linking_number)


def test_trefoil_entry_oracle():
    a = PresentationMatrix.cyclic(catalog_lookup("3_1").delta)
    assert torsion_snf(a, 2).torsion == 3 and torsion_snf(a, 3).torsion == 4


def test_run_torsion_example():
    code, out, _ = run(subcommand="torsion", poly="t^2-3t+1", r_range=(1, 4), fmt="csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "betti", "torsion", "method"]
    assert [tuple(map(int, r[:3])) for r in rows[1:]] == [(1, 0, 1), (2, 0, 5), (3, 0, 16), (4, 0, 45)]
    assert out.endswith("\n") and not any(line.endswith(",") for line in out.splitlines())


def test_run_recurrence_example():
    code, out, _ = run(subcommand="recurrence", poly="t^2-3t+1", fmt="json")
    doc = json.loads(out)
    assert code == 0 and [r["coefficient"] for r in doc["rows"]] == [1, -4, 4, -1]


def test_run_betti_example():
    code, out, _ = run(subcommand="betti", poly="t^2-t+1", r_range=(1, 6), fmt="json")
    assert [r["betti"] for r in json.loads(out)["rows"]] == [0, 0, 0, 0, 0, 2]


def test_json_rows_carry_method():
    code, out, _ = run(subcommand="torsion", name="4_1", r_range=(1, 3), fmt="json", method="snf")
    assert all(r["method"] == "snf" for r in json.loads(out)["rows"])


def test_other_subcommands():
    code, out, _ = run(subcommand="reduced", poly="t-3", r_range=(1, 3), fmt="csv")
    assert out.splitlines()[0] == "r,betti_reduced,torsion_reduced,delta,delta_prime"
    assert out.splitlines()[2] == "2,0,4,2,"
    code, out, _ = run(subcommand="growth", name="4_1", r_range=(100, 100), fmt="json")
    doc = json.loads(out)
    assert doc["mahler"] == 2.61803399 and abs(doc["rows"][0]["sample"] - 2.61803399) < 1e-3
    code, out, _ = run(subcommand="pgrowth", name="ex4.3:m=6", p=2, r_range=(200, 200), fmt="json")
    doc = json.loads(out)
    assert doc["target"] == 2 and doc["rows"][0]["sample"] == 1.99308053
    code, out, _ = run(subcommand="probe-square", name="4_1", r_range=(1361, 1361), fmt="csv")
    assert out.splitlines()[1] == "1361,true,285,true"
    code, out, _ = run(subcommand="catalog", fmt="csv")
    assert code == 0 and "4_1" in out
    code, out, _ = run(subcommand="recurrence", poly="(t-1)^2", full=True, fmt="json")
    assert [r["coefficient"] for r in json.loads(out)["rows"]] == [1, -2, 1]


def test_matrix_input(tmp_path):
    p = tmp_path / "ex211.json"
    p.write_text(json.dumps({"entries": [["2*(t^2-3t+1)", "(t-1)*(t^2-3t+1)"]]}), encoding="utf-8")
    code, out, _ = run(subcommand="torsion", matrix=str(p), r_range=(1, 3), fmt="csv")
    assert code == 0 and out.splitlines()[1:] == ["1,0,2,snf", "2,0,10,snf", "3,0,32,snf"]
    code, _, err = run(subcommand="reduced", matrix=str(p))
    assert code == 2 and "cyclic" in err


def test_output_is_deterministic():
    outs = set()
    for fmt in ("table", "json", "csv"):
        first = run(subcommand="growth", name="4_1", r_range=(1, 12), fmt=fmt)[1]
        assert first == run(subcommand="growth", name="4_1", r_range=(1, 12), fmt=fmt)[1]
        outs.add(first)
    assert len(outs) == 3


def test_parallel_sweep_matches_serial():
    serial = run(subcommand="torsion", name="6_2", r_range=(1, 12), fmt="csv")[1]
    parallel = run(subcommand="torsion", name="6_2", r_range=(1, 12), fmt="csv", jobs=3)[1]
    assert serial == parallel


def test_exit_codes():
    assert run(subcommand="torsion", poly="t^^2")[0] == 2
    assert run(subcommand="torsion", name="nope")[0] == 2
    assert run(subcommand="torsion")[0] == 2
    assert run(subcommand="pgrowth", poly="t-2")[0] == 2
    code, _, err = run(subcommand="torsion", poly="t^2-t+1", method="fox", r_range=(6, 6))
    assert code == 1 and "HypothesisError" in err
    code, _, err = run(subcommand="pgrowth", poly="t-2", p=4)
    assert code == 1 and "not prime" in err
    with pytest.raises(UsageError):
        CommandConfig(subcommand="torsion", r_range=(0, 3))
    with pytest.raises(UsageError):
        CommandConfig(subcommand="torsion", r_range=(5, 3))
    with pytest.raises(UsageError):
        parse_r_range("a..b")


def test_size_guard_env(monkeypatch):
    monkeypatch.setenv("AUGTOR_MAX_SNF_DIM", "5")
    code, _, err = run(subcommand="torsion", poly="t-2", method="snf", r_range=(6, 6))
    assert code == 1 and "AUGTOR_MAX_SNF_DIM" in err


def test_main_and_module_entry_point(capsys):
    assert main(["torsion", "--poly", "t^2-3t+1", "--r", "2..2", "--format", "csv"]) == 0
    assert capsys.readouterr().out.splitlines()[1] == "2,0,5,extended"
    assert main(["torsion", "--poly", "t", "--r", "0..2"]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 2
    proc = subprocess.run([sys.executable, "-m", "augtor", "recurrence", "--name", "4_1", "--format", "csv"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.splitlines() == ["k,coefficient", "0,1", "1,-4", "2,4", "3,-1"]
