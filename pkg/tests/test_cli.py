import json
import subprocess
import sys

import pytest

from fourint.cli import main, parse_complex

DIRAC0 = '{"atoms": [{"t": 0, "re": 1}]}'
EXPDECAY = '{"pieces": [{"a": 0, "b": "inf", "re": "exp(-t)"}]}'
EXPLAP = '{"pieces": [{"a": "-inf", "b": "inf", "re": "exp(-abs(t))"}]}'
COEFFS = '{"coeffs": [{"n": 0, "re": 0.5}, {"n": 1, "re": 1}, {"n": -2, "im": 1}]}'
COEFFS_W0 = '{"coeffs": [{"n": 1, "re": 1}, {"n": -2, "im": 1}]}'
C0ONLY = '{"coeffs": [{"n": 0, "re": 1}]}'


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in {"dirac0": DIRAC0, "expdecay": EXPDECAY, "explap": EXPLAP,
                       "c": COEFFS, "w0": COEFFS_W0, "c0only": C0ONLY,
                       "bad": '{"atoms": [{"t": 0, "re": 1}'}.items():
        p = tmp_path / f"{name}.json"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


@pytest.mark.parametrize("text,value", [("0+1i", 1j), ("1-2.5i", 1 - 2.5j), ("-3", -3),
                                        ("2i", 2j), ("-i", -1j), ("1e-3+1e2j", 1e-3 + 100j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_spaces():
    with pytest.raises(Exception):
        parse_complex("1 + 2i")


def test_fourier_dirac(files, capsys):
    code, out, _ = run(["transform", "fourier", "--measure", files["dirac0"], "--points", "0,1,2"],
                       capsys)
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 3
    assert all(abs(r["re"] - 0.3989422804014327) < 1e-12 for r in doc["rows"])
    assert doc["header"]["budget"] == 1_000_000 and "schedule" in doc["header"]


def test_carleman_expdecay(files, capsys):
    code, out, _ = run(["transform", "carleman", "--measure", files["expdecay"], "--z", "0+1i"],
                       capsys)
    assert code == 0 and abs(json.loads(out)["rows"][0]["re"] - 0.5) < 1e-8


def test_bad_json_exit_1(files, capsys):
    code, _, err = run(["transform", "fourier", "--measure", files["bad"], "--points", "0"], capsys)
    assert code == 1 and "line 1" in err


def test_bad_expression_reports_position(capsys):
    code, _, err = run(["transform", "sine", "--expr", "exp(-x", "--points", "1"], capsys)
    assert code == 1 and "offset 6" in err


def test_nonconvergence_exit_2(capsys):
    assert run(["transform", "sine", "--expr", "1", "--points", "1"], capsys)[0] == 2


def test_csv_output(files, capsys):
    code, out, _ = run(["transform", "fourier", "--measure", files["dirac0"], "--points", "0,1",
                        "--format", "csv"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "x,re,im,err" and len(lines) == 3


def test_verify_exit_codes(files, capsys):
    assert run(["verify", "povzner", "--measure", files["explap"], "--k", "1", "--z", "0+1i"],
               capsys)[0] == 0
    assert run(["verify", "c0", "--expr", "1/sqrt(1+log(abs(x))^2)",
                "--breakpoints", "auto:paper-example"], capsys)[0] == 0
    assert run(["verify", "s2", "--expr", "sin(x)"], capsys)[0] == 4
    assert run(["verify", "c0", "--expr", "sign(x)*exp(-abs(x))/log(exp(1)+1/abs(x))",
                "--breakpoints", "auto:negative-example"], capsys)[0] == 3


def test_circle_commands(files, capsys):
    code, out, _ = run(["circle", "pv", "--coeffs", files["c0only"], "--z", "1+0i"], capsys)
    doc = json.loads(out)
    assert code == 0 and abs(doc["value"]["im"] - 1) < 1e-12 and abs(doc["value"]["re"]) < 1e-12
    code, out, _ = run(["circle", "cauchy", "--coeffs", files["c"], "--z", "0+0i"], capsys)
    assert code == 0 and abs(json.loads(out)["value"]["im"] - 3.141592653589793) < 1e-12
    code, out, _ = run(["circle", "hilbert", "--coeffs", files["w0"]], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["norm_in"] == doc["norm_out"]
    assert run(["circle", "isometry", "--coeffs", files["c"]], capsys)[0] == 4


def test_out_file(files, tmp_path, capsys):
    target = tmp_path / "r.json"
    code, out, _ = run(["circle", "isometry", "--coeffs", files["w0"], "--out", str(target)],
                       capsys)
    assert code == 0 and out == "" and json.loads(target.read_text())["verdict"]["passed"]


def test_byte_identical_across_processes(files):
    argv = [sys.executable, "-m", "fourint.cli", "verify", "carleman",
            "--measure", files["explap"], "--z", "1+2i"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
