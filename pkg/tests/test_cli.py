import json
import os
import subprocess
import sys
from importlib import resources

import pytest

from confprop.cli import main

DATA = str(resources.files("confprop").joinpath("data"))


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "confprop.cli", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def data(name):
    return os.path.join(DATA, name)


def test_measure_prints_value():
    code, out, _ = run("measure", "--log", data("l9.log"), "--net", data("m6.net"), "--measure", "rec_B")
    assert code == 0
    assert out == "rec_B\t0.833333\n"


def test_measure_baseline():
    code, out, _ = run("measure", "--log", data("l3.log"), "--net", data("m3.net"), "--measure", "rec_TB")
    assert (code, out) == (0, "rec_TB\t1.000000\n")


def test_measure_undefined_exit_code():
    code, out, _ = run("measure", "--log", data("l12.log"), "--net", data("m1.net"), "--measure", "prec_TB")
    assert code == 2
    assert out == "prec_TB\tundefined(infinite language)\n"


def test_measure_several_ids_and_options(capsys):
    code = main(["measure", "--log", data("l_ag.log"), "--net", data("m7.net"),
                 "--measure", "prec_K,prec_L", "--policy-seed", "1", "--etc-variant", "one"])
    assert code == 0
    assert capsys.readouterr().out.splitlines()[0] == "prec_K\t0.666667"


@pytest.mark.parametrize("args", [
    ["--log", "missing.log", "--net", data("m6.net"), "--measure", "rec_B"],
    ["--log", data("l9.log"), "--net", data("m6.net"), "--measure", "rec_Z"],
    ["--log", data("m6.net"), "--net", data("m6.net"), "--measure", "rec_B"],
])
def test_measure_input_errors(args):
    code, _, err = run("measure", *args)
    assert code == 1
    assert err.startswith("confprop: error:")


def test_measure_on_automaton(tmp_path):
    from confprop.automata.dfa import serialize_dfa
    from confprop.procmodel.language import model_dfa
    from confprop.propositions.fixtures import load_net
    path = tmp_path / "m6.dfa"
    path.write_text(serialize_dfa(model_dfa(load_net("m6"))))
    code, out, _ = run("measure", "--log", data("l9.log"), "--dfa", str(path), "--measure", "rec_TB")
    assert (code, out) == (0, "rec_TB\t0.000000\n")
    code, _, _ = run("measure", "--log", data("l9.log"), "--dfa", str(path), "--measure", "rec_B")
    assert code == 1


def test_suite_single_column(capsys):
    code = main(["suite", "--measures", "rec_G", "--props", "RecPro1..5", "--budget", "20",
                 "--workers", "1", "--format", "csv"])
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("table,proposition,measure,verdict")
    assert len(lines) == 6


def test_suite_reports_are_byte_identical(tmp_path):
    args = ["suite", "--measures", "rec_B,prec_TB", "--props", "DetPro,RecPro3", "--budget", "20",
            "--format", "json-lines", "--workers", "1"]
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    record = json.loads(a.read_text().splitlines()[0])
    assert record["policy_seeds"] == [0, 1, 2, 3]


def test_suite_mismatch_exit_code(tmp_path, capsys):
    ref = tmp_path / "ref.csv"
    ref.write_text("table,proposition,measure,expected\nrecall,DetPro,rec_B,holds\n")
    code = main(["suite", "--measures", "rec_B", "--props", "DetPro", "--budget", "5",
                 "--workers", "1", "--expect", str(ref)])
    assert code == 3
    assert "diff: recall DetPro rec_B: expected holds, got violated" in capsys.readouterr().err


def test_suite_writes_witnesses(tmp_path):
    code = main(["suite", "--measures", "prec_K", "--props", "DetPro", "--budget", "5",
                 "--workers", "1", "--witness-dir", str(tmp_path), "--output", str(tmp_path / "g.md")])
    assert code == 0
    index = json.loads((tmp_path / "manifest.json").read_text())
    assert index["witnesses"] == ["prec_K__DetPro"]


def test_suite_bad_budget():
    code, _, err = run("suite", "--measures", "rec_B", "--budget", "0")
    assert code == 1 and "positive" in err


def test_fixtures_list():
    code, out, _ = run("fixtures", "--list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 15
    assert all(len(line.split("\t")) == 4 and line.split("\t")[3] for line in lines)


def test_fixtures_verify():
    code, out, _ = run("fixtures", "--verify")
    assert code == 0
    assert out.endswith("fixtures verified\n")


def test_fixtures_verify_tampered(tmp_path):
    pins = tmp_path / "pins.csv"
    pins.write_text("fixture,measure,log,model,value,policy_seed\n"
                    "replay_nonfitting_extension,rec_B,l9,m6,0.900000,0\n")
    code, out, _ = run("fixtures", "--verify", "--pins", str(pins))
    assert code == 3
    assert out.startswith("drift: replay_nonfitting_extension: rec_B(l9, m6, seed 0) pinned 0.900000, got 0.833333")
