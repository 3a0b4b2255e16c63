import io
import json
import math
import subprocess
import sys

import pytest

from tailbound import registry
from tailbound.cli import applicable_bounds, main
from tailbound.dist import parse_spec


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_bound_chebyshev():
    code, text = run("bound", "--ineq", "chebyshev", "--param", "var=1", "--param", "t=2")
    assert code == 0
    assert "0.25" in text


def test_bound_params_list_form():
    code, text = run("bound", "--ineq", "mcdiarmid_upper", "--params", "c=[1,1,1,1],t=1")
    assert code == 0
    assert "0.606531" in text


def test_bound_unknown_id_lists_registry(capsys):
    code, _ = run("bound", "--ineq", "nonesuch")
    assert code == 2
    err = capsys.readouterr().err
    assert "chebyshev" in err and "markov" in err


def test_bound_missing_param_named(capsys):
    code, _ = run("bound", "--ineq", "chebyshev", "--param", "var=1")
    assert code == 2
    assert "t" in capsys.readouterr().err


def test_bound_precondition_failure():
    assert run("bound", "--ineq", "chebyshev", "--param", "var=1", "--param", "t=-1")[0] == 2


def test_bound_list_covers_registry():
    code, text = run("bound", "--list")
    assert code == 0
    for ident in registry.bound_ids():
        assert ident in text


def _rows(text):
    vals = {}
    for line in text.splitlines()[2:]:
        parts = line.split()
        if len(parts) == 2:
            try:
                vals[parts[0]] = float(parts[1])
            except ValueError:
                pass
    return vals


def test_compare_rademacher_ordering():
    code, text = run("compare", "--spec", "rademacher", "--threshold", "20", "--n", "100")
    assert code == 0
    rows = _rows(text)
    assert rows["chernoff_sum"] <= rows["hoeffding_1"] <= rows["chebyshev"]
    values = list(rows.values())
    assert values == sorted(values)


def test_compare_threshold_zero_clamps():
    code, text = run("compare", "--spec", "normal(0,1)", "--threshold", "0", "--n", "5", "--tail", "two-sided")
    assert code == 0
    assert set(_rows(text).values()) == {1.0}


def test_compare_reports_inapplicable():
    code, text = run("compare", "--spec", "normal(0,1)", "--threshold", "2")
    assert "not applicable" in text
    rows, skipped = applicable_bounds(parse_spec("normal(0,1)"), 2.0)
    assert dict(skipped).keys() >= {"hoeffding_1"}


def test_compare_spec_file(tmp_path):
    f = tmp_path / "spec.json"
    f.write_text(parse_spec("bernoulli(0.3)").to_json())
    assert run("compare", "--spec", str(f), "--threshold", "3", "--n", "20")[0] == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"family": "bernoulli", "p": 2}')
    assert run("compare", "--spec", str(bad), "--threshold", "3")[0] == 2


def test_means():
    code, text = run("means", "--values", "1,4")
    assert code == 0
    assert "harmonic 1.6 <= geometric 2 <= arithmetic 2.5" in text
    code, text = run("means", "--values", "2,2")
    assert "harmonic 2 <= geometric 2 <= arithmetic 2" in text
    assert run("means", "--values", "1,-1")[0] == 2
    assert run("means", "--values", "1,x")[0] == 2


def test_report(tmp_path):
    f = tmp_path / "sample.txt"
    f.write_text("0\n1\n")
    code, text = run("report", str(f))
    assert code == 0
    assert "hurlimann_stop_loss" in text and "samuelson interval" in text
    f.write_text("3\n")
    assert run("report", str(f))[0] == 2


def test_verify_reps_below_floor():
    assert run("verify", "--reps", "10")[0] == 2


def test_verify_malformed_corpus_names_line(tmp_path, capsys):
    f = tmp_path / "c.json"
    f.write_text('{\n "scenarios": [\n  {"id": 1,,}\n ]\n}\n')
    assert run("verify", "--corpus", str(f))[0] == 2
    assert "line 3" in capsys.readouterr().err


def _small_corpus():
    code, text = run("verify", "--dump-corpus")
    assert code == 0
    doc = json.loads(text)
    keep = [sc for sc in doc["scenarios"] if sc["inequality"] in ("chebyshev", "markov", "hoeffding_2_printed")]
    return {"scenarios": keep}


def test_verify_small_corpus_passes(tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps(_small_corpus()))
    assert run("verify", "--corpus", str(f), "--reps", "20000")[0] == 0


def test_verify_corrupted_constant_fails(tmp_path, capsys):
    doc = _small_corpus()
    hit = None
    for sc in doc["scenarios"]:
        # halving the variance breaks the tight three-point case
        if sc["inequality"] == "chebyshev" and sc["oracle"]["kind"] == "enumerate":
            sc["params"]["variance"] = float(sc["params"]["variance"]) / 2
            hit = sc["id"]
            break
    assert hit is not None
    f = tmp_path / "c.json"
    f.write_text(json.dumps(doc))
    code, csv_text = run("verify", "--corpus", str(f), "--reps", "20000")
    assert code == 1
    assert f"FAIL {hit}" in capsys.readouterr().err
    row = [line for line in csv_text.splitlines() if line.startswith(hit + ",")][0]
    assert row.split(",")[5] == "false"


def test_verify_seed_env_and_identical_csv(tmp_path, monkeypatch):
    f = tmp_path / "c.json"
    f.write_text(json.dumps(_small_corpus()))
    monkeypatch.setenv("TAILBOUND_SEED", "42")
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    assert run("verify", "--corpus", str(f), "--reps", "5000", "--out", str(a))[0] == 0
    assert run("verify", "--corpus", str(f), "--reps", "5000", "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert all(line.endswith(",") is False for line in a.read_text().splitlines())
    seeds = {json.loads(a.with_suffix(".json").read_text())["seed"]}
    assert seeds == {42}
    monkeypatch.setenv("TAILBOUND_SEED", "not-a-number")
    assert run("verify", "--corpus", str(f), "--reps", "5000")[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tailbound", "bound", "--ineq", "markov", "--param", "mean=1", "--param", "t=4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "0.25" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "tailbound", "means", "--values", "0,1"], capture_output=True, text=True)
    assert proc.returncode == 2
