import json
import subprocess
import sys

import pytest

from hmoduli import cli
from hmoduli.diagfile import format_diagonal, parse_diagonal, parse_diagonal_file
from hmoduli.graded import ParseError
from hmoduli.homloop import CounitError, deviation_P, primitive_diagonal
from hmoduli.cli import RunConfig, UsageError, main, run

PRIMITIVE = "# Lambda(y), deg y = 2\ngenerator y 2\ndiagonal y = y_1 + y_2\n"
TWO_GEN = """generator y 2
generator z 4
diagonal y = y_1 + y_2
diagonal z = z_1 + z_2 + y_1.y_2
"""


def invoke(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_report_ratio_four(capsys):
    code, out, _ = invoke(capsys, "report", "--deg-x", "8", "--deg-y", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "hmoduli/1"
    q = doc["per_generator"][0]["quotients"]
    assert (q["inv"], q["pa"], q["sa"], q["mo"]) == (2, 1, 1, 0)
    assert doc["per_generator"][0]["spaces"]["mo"]["basis_rows"] == [["1", "3/2", "1"]]


def test_output_is_byte_identical(capsys):
    _, first, _ = invoke(capsys, "report", "--deg-x", "8", "10", "--deg-y", "2")
    _, second, _ = invoke(capsys, "report", "--deg-x", "8", "10", "--deg-y", "2")
    assert first == second


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_sweep_is_concatenated_reports(capsys, jobs):
    code, out, _ = invoke(capsys, "sweep", "--deg-y", "2", "--k-max", "5", "--jobs", jobs)
    assert code == 0
    sweep = json.loads(out)
    assert sweep["k_values"] == [2, 3, 4, 5]
    singles = []
    for k in sweep["k_values"]:
        _, text, _ = invoke(capsys, "report", "--deg-x", str(2 * k), "--deg-y", "2")
        singles.append(json.loads(text))
    assert sweep["reports"] == singles


def test_assertion_case_two(capsys):
    code, out, _ = invoke(capsys, "assertion", "--k", "5", "--deg-y", "2")
    assert code == 0
    [r] = json.loads(out)["results"]
    assert r["claimed_case"] == 2 and all(c["holds"] for c in r["claims"])


def test_sketch_discrepancy_exits_two(capsys):
    code, out, err = invoke(capsys, "assertion", "--k", "4", "--deg-y", "2")
    assert code == 2
    assert json.loads(out)["agrees"] is True
    assert "S_sa < S_pa" in err and "rhs basis" in err


def test_closed_form_check_passes(capsys):
    code, out, _ = invoke(capsys, "closed-form-check", "--deg-y", "4", "--k-max", "8")
    assert code == 0 and json.loads(out)["agrees"]


def test_disagreement_is_printed_and_exits_two(capsys, monkeypatch):
    def fake(n, m):
        return {"deg_x": n, "deg_y": m, "ratio": 4, "agrees": False,
                "spaces": {"pa": {"computed": [["1"]], "expected": [], "verdict": "mismatch"}}}
    monkeypatch.setattr(cli, "closed_form_check", fake)
    code, _, err = invoke(capsys, "closed-form-check", "--deg-y", "2", "--k", "4")
    assert code == 2
    assert "V_pa disagrees" in err and "computed [['1']]" in err


def test_loops_survey_order_four(capsys):
    code, out, _ = invoke(capsys, "loops-survey", "--order", "4")
    s = json.loads(out)["survey"]
    assert code == 0
    assert s["tables"] == 4
    assert s["property_counts"] == {"inv": 4, "pa": 4, "mo": 4, "sa": 4}


def test_loops_check(capsys, tmp_path):
    f = tmp_path / "t.txt"
    f.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    code, out, _ = invoke(capsys, "loops-check", "--table", str(f))
    assert code == 0 and json.loads(out)["properties"]["mo"] is True
    f.write_text("2\n0 1\n0 1\n")
    code, _, _ = invoke(capsys, "loops-check", "--table", str(f))
    assert code == 1


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate"],
    ["report", "--deg-y", "2"],
    ["report", "--deg-x", "8"],
    ["report", "--deg-x", "8", "--deg-y", "0"],
    ["sweep", "--deg-y", "2", "--k-max", "1"],
    ["loops-survey", "--order", "7"],
    ["assertion", "--deg-y", "2"],
    ["report", "--deg-x", "8", "--deg-y", "2", "--format", "xml"],
])
def test_usage_errors_exit_one(capsys, argv):
    with pytest.raises(SystemExit) as info:
        sys.exit(main(argv))
    assert info.value.code == 1


def test_run_config_rejects_unknown_keys():
    with pytest.raises(UsageError, match="colour"):
        RunConfig.from_mapping({"command": "report", "colour": "red"})
    assert RunConfig.from_mapping({"command": "report", "deg_x": [8]}).deg_x == (8,)


def test_run_returns_document():
    code, doc, msgs = run(RunConfig(command="report", deg_x=(6,), deg_y=2))
    assert code == 0 and msgs == []
    assert doc["totals"]["imhd"] == 1


def test_table_format(capsys):
    code, out, _ = invoke(capsys, "report", "--deg-x", "8", "--deg-y", "2", "--format", "table")
    assert code == 0
    assert "| mo    | 1   | 0            | (1,3/2,1)" in out


def test_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("HMODULI_OUTPUT_DIR", str(tmp_path))
    code, out, _ = invoke(capsys, "report", "--deg-x", "4", "--deg-y", "2", "--output", "r.json")
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "r.json").read_text())["totals"]["V"] == 1


# diagonal files


def test_primitive_file_matches_builtin(capsys, tmp_path):
    f = tmp_path / "y.txt"
    f.write_text(PRIMITIVE)
    nu = parse_diagonal_file(f)
    assert nu.is_primitive()
    assert nu == primitive_diagonal(nu.algebra)
    _, from_file, _ = invoke(capsys, "report", "--deg-x", "8", "--diagonal-file", str(f))
    _, builtin, _ = invoke(capsys, "report", "--deg-x", "8", "--deg-y", "2")
    assert from_file == builtin


def test_two_generator_file_with_perturbation():
    nu = parse_diagonal(TWO_GEN)
    assert not nu.is_primitive()
    assert not deviation_P(nu, "z").is_zero()
    assert parse_diagonal(format_diagonal(nu)) == nu


def test_counit_rejection(capsys, tmp_path):
    with pytest.raises(CounitError, match="'y'"):
        parse_diagonal("generator y 2\ndiagonal y = y_1\n")
    f = tmp_path / "bad.txt"
    f.write_text("generator y 2\ndiagonal y = y_1\n")
    code, _, err = invoke(capsys, "report", "--deg-x", "8", "--diagonal-file", str(f))
    assert code == 1 and "'y'" in err


@pytest.mark.parametrize("text,line,column", [
    ("generator y 2\ndiagonal y = y_1 + * y_2\n", 2, 20),
    ("generator y two\n", 1, 11),
    ("generator y 2\nwibble\n", 2, 1),
    ("generator y 2\n", 1, 1),
    ("generator y 2\ndiagonal y = y_1 + y_2 + y_1.y_2\n", 2, 26),
    ("generator y 2\ngenerator x 4\ndiagonal y = y_1 + y_2\ndiagonal x = x_1 + x_2 + y_1\n", 4, 14),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_diagonal(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hmoduli", "assertion", "--k", "3", "--deg-y", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"][0]["claimed_case"] == 3
