import json

import jsonschema
import pytest

from gradedpi import experiments
from gradedpi.cli import cmd_run
from gradedpi.experiments import UnknownExperiment

SCHEMA = experiments.load_data("report.schema.json")


def run_json(capsys, *argv):
    code = cmd_run([*argv, "--out", "json"])
    out = json.loads(capsys.readouterr().out)
    jsonschema.validate(out, SCHEMA)
    return code, out


def test_check_identity_example(capsys):
    code, out = run_json(capsys, "check-identity", "--algebra", "c3c3.json",
                         "--poly", "x[1,s]*x[2,t]-z*x[2,t]*x[1,s]")
    assert code == 0 and out["verdict"] == "identity"


def test_check_identity_negative(capsys):
    code, out = run_json(capsys, "check-identity", "--algebra", "M_(e,t)(Q)", "--poly", "x[1,e]*x[2,t]-x[2,t]*x[1,e]")
    assert code == 1 and out["verdict"] == "not_identity"
    assert out["witnesses"][0][0]["var"] == [1, "e"]


def test_regev_text(capsys):
    assert cmd_run(["regev", "--n", "1"]) == 0
    assert capsys.readouterr().out.strip() == "x[1,?]*x[2,?]"


def test_q_stable_example(capsys):
    code, out = run_json(capsys, "q-stable", "--group", "c4.json", "--kernel", "t2", "--poly", "x[2,t2]")
    assert code == 1 and out["verdict"] == "false"
    code, out = run_json(capsys, "q-stable", "--group", "C4", "--kernel", "t2", "--poly", "2*x[1,e]")
    assert code == 0 and out["verdict"] == "true"


def test_usage_errors(capsys):
    assert cmd_run(["regev"]) == 2
    assert cmd_run([]) == 2
    code, out = run_json(capsys, "check-identity", "--algebra", "QC2", "--poly", "x[1,e]*")
    assert code == 2 and out["error"]["code"] == "SyntaxError"
    code, out = run_json(capsys, "quotient-map", "--group", "S3", "--kernel", "(1 2)")
    assert code == 2


def test_file_and_inline_conflict(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "x[1,e]").write_text("x[1,t]\n")
    code, out = run_json(capsys, "poly", "--group", "C2", "--poly", "x[1,e]")
    assert code == 2 and out["error"]["code"] == "UsageError"
    (tmp_path / "f.txt").write_text("x[1,t]*x[2,e]\n")
    code, out = run_json(capsys, "poly", "--group", "C2", "--poly", "f.txt")
    assert code == 0 and out["poly"] == "x[1,t]*x[2,e]"


def test_other_subcommands(capsys):
    assert run_json(capsys, "group", "--group", "C3xC3")[1]["group"]["order"] == 9
    assert run_json(capsys, "algebra", "--algebra", "QC2")[1]["algebra"]["exponent"] == 1
    assert run_json(capsys, "project", "--group", "C4", "--poly", "x[1,t]*x[2,t3] + x[1,t]", "--g", "e")[1]["poly"] \
        == "x[1,t]*x[2,t3]"
    assert run_json(capsys, "quotient-map", "--group", "C4", "--kernel", "t2")[1]["map"]["t3"] == "t"
    assert run_json(capsys, "find-central", "--algebra", "QC2")[1]["poly"] == "x[1,e]*x[2,e]"
    assert run_json(capsys, "idspace", "--algebra", "QC2", "--degrees", "t,t")[1]["dim"] == 1
    code, out = run_json(capsys, "compare", "--algebra", "QC2", "--algebra2", "M_(e,t)(Q)", "--max-len", "2")
    assert code == 1 and out["verdict"] == "differ"
    code, out = run_json(capsys, "check-central", "--algebra", "QC2", "--poly", "x[1,e]")
    assert code == 0 and out["verdict"] == "central"


@pytest.mark.parametrize("name", ["c3c3-identity", "qstable-c4", "division-structure", "mu-e-idempotents",
                                  "aljadeff-haile-desk"])
def test_fast_experiments_pass_and_repeat(capsys, name):
    code, first = run_json(capsys, "experiment", name)
    assert code == 0 and first["verdict"] == "pass"
    _, second = run_json(capsys, "experiment", name)
    first.pop("runtime_ms"), second.pop("runtime_ms")
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)


def test_unknown_experiment(capsys):
    with pytest.raises(UnknownExperiment):
        experiments.run("nonexistent")
    code, out = run_json(capsys, "experiment", "nonexistent")
    assert code == 2 and out["error"]["code"] == "UnknownExperiment"


def test_catalog_names_unique():
    names = [e["name"] for e in experiments.load_data("experiments.json")["experiments"]]
    assert len(names) == len(set(names)) == 8


def test_run_catalog_script(tmp_path):
    import importlib.util
    import pathlib
    path = pathlib.Path(__file__).resolve().parents[1] / "scripts" / "run_catalog.py"
    spec = importlib.util.spec_from_file_location("run_catalog", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    assert mod.main(["c3c3-identity", "qstable-c4", "--out-dir", str(tmp_path)]) == 0
    rep = json.loads((tmp_path / "qstable-c4.json").read_text())
    jsonschema.validate(rep, SCHEMA)
    assert rep["evidence"] == [{"poly": "x[2,t2]", "q_stable": False}, {"poly": "2*x[1,e]", "q_stable": True}]
    assert json.loads((tmp_path / "config.json").read_text())["experiments"] == ["c3c3-identity", "qstable-c4"]
