import csv
import io
import json
import pathlib
import subprocess
import sys

import pytest

from mievirial import cli

GOLDEN = pathlib.Path(__file__).parent / "golden"
CRIT1_GRID = "0.5,1,2,5,10,50"


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize("argv,golden", [
    (["brackets-demo", "--n", "12", "--m", "6"], "brackets_demo_12_6.txt"),
    (["brackets-demo", "--n", "9", "--m", "6", "--tstar", "2", "--terms", "5"], "brackets_demo_9_6.txt"),
])
def test_brackets_demo_golden(argv, golden, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text(encoding="utf-8")


def test_brackets_demo_content(capsys):
    _, out, _ = run(["brackets-demo", "--n", "9", "--m", "6"], capsys)
    assert "determinant: 9" in out and "determinant: 6" in out
    assert "sign exponent: -1/2*l + 1/2" in out
    assert out.count("real: no") == 1


def test_compute_csv_rows(capsys):
    code, out, _ = run(["compute", "--n", "12", "--m", "6", "--tstar", "1"], capsys)
    assert code == 0
    assert out.splitlines()[0] == ",".join(cli.CSV_HEADER)
    rows = parse_csv(out)
    assert [r["method"] for r in rows] == ["GeneralSeries", "KummerN2M", "LennardJones1F1",
                                          "LennardJonesBessel", "Quadrature", "Brackets"]
    vals = [float(r["b_over_sigma3"]) for r in rows]
    assert max(vals) - min(vals) < 1e-8 * abs(vals[0])


def test_compute_no_closed_form(capsys):
    _, out, _ = run(["compute", "--n", "7.5", "--m", "4.2", "--tstar", "2"], capsys)
    assert [r["method"] for r in parse_csv(out)] == ["GeneralSeries", "Quadrature", "Brackets"]


def test_kt_and_tstar_give_identical_values(capsys):
    _, a, _ = run(["compute", "--n", "12", "--m", "6", "--tstar", "1"], capsys)
    _, b, _ = run(["compute", "--n", "12", "--m", "6", "--kT-over-eps", "4"], capsys)
    assert a == b


def test_compute_is_byte_identical(tmp_path):
    argv = [sys.executable, "-m", "mievirial", "compute", "--n", "9", "--m", "6",
            "--tstar", "0.5:50:log:7", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_json_schema(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(["compute", "--n", "8", "--m", "4", "--tstar", "1,2", "--format", "json",
                        "--output", str(target)], capsys)
    assert code == 0 and out == ""
    doc = json.loads(target.read_text(encoding="utf-8"))
    assert doc["schema_version"] == 1
    assert set(doc) == {"schema_version", "config", "rows", "diagnostics"}
    assert doc["config"]["prefactor_A"] == 4
    assert len(doc["rows"]) == 2 * 5
    assert set(doc["rows"][0]) == set(cli.CSV_HEADER)


def test_seventeen_digits():
    assert cli.fmt17(0.1) == "0.10000000000000001"
    assert cli.fmt10(0.1) == "0.1"
    assert cli.dumps_json({"x": 0.1, "y": [float("nan")]}) == '{\n  "x": 0.10000000000000001,\n  "y": [\n    null\n  ]\n}\n'


@pytest.mark.parametrize("text,expected", [
    ("1,2,5", [1.0, 2.0, 5.0]),
    ("1:100:log:3", [1.0, 10.0, 100.0]),
    ("0:1:lin:5", [0.0, 0.25, 0.5, 0.75, 1.0]),
])
def test_parse_values(text, expected):
    assert cli.parse_values(text) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("text", ["1:2:cubic:3", "a,b", "1:2:log", "-1:2:log:3"])
def test_parse_values_rejects(text):
    with pytest.raises(cli.ConfigError):
        cli.parse_values(text)


def test_compare_pass_on_grid(capsys):
    code, out, _ = run(["compare", "--n", "12", "--m", "6", "--tstar", CRIT1_GRID], capsys)
    assert code == 0
    assert all(r["status"] == "PASS" for r in parse_csv(out))


def test_compare_fails_below_observed(capsys):
    code, out, _ = run(["compare", "--n", "12", "--m", "6", "--tstar", CRIT1_GRID, "--max-dev", "1e-18"], capsys)
    assert code == cli.EXIT_FAIL
    assert "FAIL" in out


def test_compare_loose_series_tolerance_fails(capsys):
    code, out, _ = run(["compare", "--n", "12", "--m", "6", "--tstar", "1", "--tolerance", "1e-4"], capsys)
    assert code != 0
    assert float(parse_csv(out)[0]["max_rel_dev"]) > 1e-8


def test_compare_single_method_is_usage_error(capsys):
    code, _, err = run(["compare", "--n", "7.5", "--m", "4.2", "--tstar", "1", "--methods", "GeneralSeries"], capsys)
    assert code == 2
    assert err.startswith("error:")


@pytest.mark.parametrize("argv", [
    ["compute", "--n", "4", "--m", "3", "--tstar", "1"],
    ["compute", "--n", "12", "--m", "6", "--tstar", "-1"],
    ["compute", "--n", "12", "--m", "6", "--tstar", "1", "--methods", "NineSix"],
    ["compute", "--n", "12", "--m", "6", "--tstar", "1", "--methods", "Bogus"],
    ["boyle", "--n", "4", "--m", "3"],
    ["asymptotic", "--n", "10", "--m", "4"],
])
def test_config_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert len(err.strip().splitlines()) == 1


def test_both_temperatures_rejected(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["compute", "--n", "12", "--m", "6", "--tstar", "1", "--kT-over-eps", "4"])
    assert info.value.code == 2


def test_convergence_failure_exit_3(capsys):
    code, out, err = run(["compute", "--n", "12", "--m", "6", "--tstar", "1,1e-4", "--methods",
                          "GeneralSeries,Quadrature"], capsys)
    assert code == 3
    assert "convergence failure" in err
    assert [r["t_star"] for r in parse_csv(out)] == ["1", "1"]


def test_boyle_text_and_json(capsys):
    code, out, _ = run(["boyle", "--n", "12", "--m", "6"], capsys)
    assert code == 0
    assert "T*_B      = 0.8544820058" in out
    code, out, _ = run(["boyle", "--n", "5", "--m", "4", "--format", "json"], capsys)
    doc = json.loads(out)
    assert doc["rows"][0]["t_star_boyle"] == pytest.approx(4.856822381472277, rel=1e-10)
    assert len(doc["diagnostics"]["history"]) > 10


def test_boyle_root_not_found_exit_4(monkeypatch, capsys):
    from mievirial import virial
    from mievirial.errors import BracketNotFoundError

    def nope(*a, **k):
        raise BracketNotFoundError("no sign change")
    monkeypatch.setattr(virial, "boyle_search", nope)
    code, _, _ = run(["boyle", "--n", "12", "--m", "6"], capsys)
    assert code == 4


@pytest.mark.parametrize("n,m,order,expected", [
    ("12", "6", "3", ["1", "15/16", "945/512", "45045/8192"]),
    ("9", "6", "2", ["1", "35/36", "5005/2592"]),
    ("8", "4", "1", ["1", "77/64"]),
])
def test_asymptotic_rationals(n, m, order, expected, capsys):
    code, out, _ = run(["asymptotic", "--n", n, "--m", m, "--order", order, "--format", "json"], capsys)
    assert code == 0
    assert [r["coefficient"] for r in json.loads(out)["rows"]] == expected


def test_console_entry_point_help():
    out = subprocess.run([sys.executable, "-m", "mievirial", "--help"], capture_output=True, text=True)
    assert out.returncode == 0
    assert "2 pi sigma^3 / 3" in out.stdout
