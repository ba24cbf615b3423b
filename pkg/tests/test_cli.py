import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from superend.cli import main, render_text
from superend.report import build_report
from superend.sweeps import check_classgroup, check_rigidity, check_spectrum, run_sweep


@pytest.fixture(scope="module")
def schema():
    return json.loads(resources.files("superend").joinpath("schemas/report.schema.v1.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_text(text):
    out = {}
    for line in text.splitlines():
        key, _, value = line.partition(" = ")
        out[key] = json.loads(value)
    return out


def test_report_headline_curve(capsys, schema):
    code, out, _ = run(capsys, "report", "--poly", "1,0,0,0,-1,-1", "--q", "8", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert doc["genus"] == 14
    assert doc["discriminant"] == "2869"
    assert doc["rigidity"]["rigid"] is True
    assert doc["galois"]["level"] == "CertifiedSn"
    assert doc["endo"]["algebra"] == "Q x Q(zeta_4) x Q(zeta_8)"
    assert doc["spectrum"]["multiplicities"] == [0, 1, 1, 2, 3, 3, 4]
    assert doc["class_group"]["elementary_divisors"] == [8, 8, 8, 8]
    assert doc["fixed_submodule"]["dimension"] == 4


def test_report_small_degree_refused(capsys, schema):
    code, out, err = run(capsys, "report", "--poly", "1,0,-2", "--q", "3", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert doc["endo"] is None
    assert doc["genus"] == 1 and doc["spectrum"]["lattice_point_count"] == 1
    assert "prediction refused" in err


def test_report_not_separable(capsys, schema):
    code, out, err = run(capsys, "report", "--poly", "1,2,1", "--q", "2", "--format", "json")
    assert code == 2
    jsonschema.validate(json.loads(out), schema)
    assert "not separable" in err


def test_report_divisible_case(capsys, schema):
    code, out, _ = run(capsys, "report", "--poly", "1,0,0,0,0,-2", "--q", "5", "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, schema)
    assert code == 0
    assert doc["case"] == "DivisibleCase"
    assert doc["reduction"]["h1_degree"] == 4
    assert doc["endo"]["effective_n"] == 4
    assert doc["endo"]["jacobian_dimension"] == doc["genus"] == 6


def test_report_bad_shape(capsys):
    code, _, err = run(capsys, "report", "--poly", "1,0,0,0,0,0,1", "--q", "4")
    assert code == 2 and "does not" in err


def test_text_and_json_agree(capsys):
    _, text_out, _ = run(capsys, "report", "--poly", "1,5,20,60,120,120", "--q", "9")
    _, json_out, _ = run(capsys, "report", "--poly", "1,5,20,60,120,120", "--q", "9", "--format", "json")
    assert parse_text(text_out) == parse_text(render_text(json.loads(json_out)))


def test_report_is_deterministic():
    a, _ = build_report([1, 0, 0, 0, -1, -1], 8)
    b, _ = build_report([1, 0, 0, 0, -1, -1], 8)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    timed, _ = build_report([1, 0, 0, 0, -1, -1], 8, timing=True)
    assert "timing" in timed and "timing" not in a


@pytest.mark.parametrize(
    "argv",
    [
        ["report", "--poly", "1,x,3", "--q", "8"],
        ["report", "--poly", "5", "--q", "8"],
        ["report", "--poly", "1,0,1", "--q", "6"],
        ["sweep", "rigidity", "--n-max", "3", "--q-max", "10"],
        ["sweep", "spectrum", "--n-max", "5", "--q-max", "1"],
        ["sweep", "bogus", "--n-max", "5", "--q-max", "5"],
        ["galois", "--poly", "1,0,1", "--prime-budget", "0"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 64


def test_reduce_examples(capsys):
    code, out, _ = run(capsys, "reduce", "--poly", "1,0,0,0,0,-2", "--q", "5", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["h1_degree"] == 4 and doc["h1_separable"] and doc["reconstructs"]
    code, out, _ = run(capsys, "reduce", "--poly", "1,0,0,1,1", "--q", "4", "--format", "json")
    assert code == 0 and json.loads(out)["h1_degree"] == 3
    code, _, _ = run(capsys, "reduce", "--poly", "1,0,0,-3,0,0,1", "--q", "4")
    assert code == 2


def test_galois_and_cyclotomic(capsys):
    code, out, _ = run(capsys, "galois", "--poly", "1,0,0,0,-1,-1", "--format", "json")
    assert code == 0 and json.loads(out)["level"] == "CertifiedSn"
    code, out, _ = run(capsys, "cyclotomic", "--q", "9", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == 8 and doc["product_matches"]
    assert [f["conductor"] for f in doc["factors"]] == [3, 9]


def test_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "classgroup", "--n-max", "5", "--q-max", "9", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["summary"].startswith("0 counterexamples / ")


def test_sweep_counterexample_exit_code(capsys, monkeypatch):
    import superend.cli as cli
    from superend.sweeps import SweepResult

    fake = SweepResult(kind="spectrum", n_max=3, q_max=3, shapes=1,
                       counterexamples=[{"n": 2, "q": 3, "failure": "planted"}])
    monkeypatch.setattr(cli, "run_sweep", lambda *a, **k: fake)
    code, out, _ = run(capsys, "sweep", "spectrum", "--n-max", "3", "--q-max", "3", "--format", "json")
    assert code == 3
    assert json.loads(out)["counterexamples"] == [{"n": 2, "q": 3, "failure": "planted"}]


def test_sweep_checkers_flag_planted_faults(monkeypatch):
    import superend.sweeps as sw

    assert check_spectrum(5, 8)[0] == []
    assert check_rigidity(5, 8)[0] == []
    assert check_classgroup(4, 3, samples=200)[0] == []
    monkeypatch.setattr(sw, "genus", lambda shape: -1)
    assert check_spectrum(5, 8)[0]


def test_sweep_jobs_are_order_stable():
    one = run_sweep("spectrum", 12, 64, jobs=1).to_dict()
    two = run_sweep("spectrum", 12, 64, jobs=2).to_dict()
    assert json.dumps(one, sort_keys=True) == json.dumps(two, sort_keys=True)


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "superend.cli", "cyclotomic", "--q", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "P_q" in proc.stdout
