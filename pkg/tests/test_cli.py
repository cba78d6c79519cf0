import json
import subprocess
import sys

import pytest

from engel.cli import build_parser, run

SUBCOMMANDS = ["expand", "reconstruct", "cylinder", "locate", "admissible", "construct",
               "lambda-hat", "d-hat", "series", "dim-level", "dim-fast", "dim-window",
               "dim-phi", "xi", "count", "mc-slln", "cover-beta", "cover-pq", "ekj"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand(capsys):
    code, out, _ = call(capsys, "expand", "--num", "5", "--den", "7")
    assert code == 0
    assert json.loads(out) == ["2", "3", "4", "7"]


def test_expand_domain_error(capsys):
    code, _, err = call(capsys, "expand", "--num", "7", "--den", "5")
    assert code == 1
    assert "(0, 1)" in err


def test_usage_error(capsys):
    code, _, _ = call(capsys, "expand", "--num", "5")
    assert code == 2
    code, _, _ = call(capsys, "no-such-command")
    assert code == 2


def test_dim_level(capsys):
    code, out, _ = call(capsys, "dim-level", "--kind", "lambda", "--alpha", "0.5")
    assert code == 0 and json.loads(out)["value"] == 0.5
    _, out, _ = call(capsys, "dim-level", "--kind", "D", "--alpha", "inf")
    assert json.loads(out)["value"] == 1.0


def test_help_lists_every_subcommand():
    text = build_parser().format_help()
    for name in SUBCOMMANDS:
        assert name in text


def test_reconstruct_and_cylinder(capsys):
    _, out, _ = call(capsys, "reconstruct", "--digits", '["2","3","4"]')
    assert json.loads(out) == {"num": "17", "den": "24"}
    _, out, _ = call(capsys, "cylinder", "--digits", '["2","3"]')
    d = json.loads(out)
    assert d["left"] == {"num": "2", "den": "3"} and d["length"] == {"num": "1", "den": "12"}
    code, _, err = call(capsys, "locate", "--num", "1", "--den", "2", "--n", "2")
    assert code == 1 and "1 digit" in err


def test_admissible_and_count(capsys):
    _, out, _ = call(capsys, "admissible", "--digits", '["2","4","3"]')
    assert json.loads(out) == {"admissible": False}
    _, out, _ = call(capsys, "count", "--n", "3", "--M", "4")
    assert json.loads(out)["value"] == "10"
    _, out, _ = call(capsys, "count", "--n", "3", "--M", "4", "--brute")
    assert json.loads(out)["value"] == "10"


def test_construct_modes(capsys):
    _, out, _ = call(capsys, "construct", "--alpha", "0.5", "--n", "3")
    assert json.loads(out) == ["4", "9", "16"]
    _, out, _ = call(capsys, "construct", "--perturb", "111", "--n", "3")
    assert json.loads(out) == ["3", "4", "5"]
    _, out, _ = call(capsys, "construct", "--approx", '["2"]', "--m", "2", "--n", "5")
    assert json.loads(out) == ["2", "4", "4", "5", "6"]
    _, out, _ = call(capsys, "construct", "--window", '{"rule": "constant", "value": 2}',
                     "--n", "3")
    assert json.loads(out) == ["3", "5", "7"]
    _, out, _ = call(capsys, "construct", "--tidy", '{"rule": "power", "a": 2}',
                     "--A", "1", "--epsilon", "1", "--n", "5")
    assert json.loads(out)["achiever"] == [3, 3, 3, 4, 5]
    code, _, _ = call(capsys, "construct", "--alpha", "1", "--window", "[]")
    assert code == 2


def test_estimators(capsys):
    _, out, _ = call(capsys, "lambda-hat", "--alpha", "1", "--N", "1000")
    d = json.loads(out)
    assert abs(d["value"] - 1) < 0.01 and d["window"] == [500, 1000]
    _, out, _ = call(capsys, "lambda-hat", "--rational", "3/4", "--N", "10")
    assert json.loads(out)["value"] == 0
    _, out, _ = call(capsys, "d-hat", "--digits", json.dumps([str(n + 1) for n in range(1, 101)]),
                     "--N", "100")
    assert abs(json.loads(out)["value"] - 1) < 0.05
    _, out, _ = call(capsys, "series", "--alpha", "1", "--N", "50", "--s", "0")
    assert json.loads(out)["value"] == 50


def test_growth_dimensions(capsys):
    phi = '{"rule": "double-exp", "c": 1}'
    _, out, _ = call(capsys, "dim-fast", "--phi", phi, "--N", "200")
    fast = json.loads(out)["value"]
    _, out, _ = call(capsys, "dim-window", "--phi", phi, "--N", "200")
    assert abs(json.loads(out)["value"] - fast) < 1e-3
    _, out, _ = call(capsys, "dim-phi", "--phi", '{"rule": "exp", "b": 2}', "--N", "100")
    assert json.loads(out)["value"] == pytest.approx(0.1353352832366127)
    _, out, _ = call(capsys, "xi", "--phi", '{"rule": "exp", "b": 1}', "--N", "100")
    assert json.loads(out)["value"] == pytest.approx(1.718281828459045)


def test_experiments_csv_and_out(capsys, tmp_path):
    path = tmp_path / "cover.csv"
    code, out, _ = call(capsys, "--format", "csv", "--out", str(path), "cover-beta",
                        "--beta", "0.5", "--epsilon", "0.2", "--max", "20")
    assert code == 0 and out == ""
    assert path.read_text().splitlines()[1] == "n,log_term,partial_sum_from_n"
    code, out, _ = call(capsys, "ekj", "--alpha", "2", "--k", "4", "--format", "csv")
    assert out.splitlines()[-1] == "4,7/4,2,4/7"
    code, out, _ = call(capsys, "cover-pq", "--p", "2", "--q", "2", "--epsilon", "0.5",
                        "--max", "10")
    assert json.loads(out)["s"] == pytest.approx(2 / 1.5)


def test_no_csv_form_is_usage_error(capsys):
    code, _, _ = call(capsys, "--format", "csv", "admissible", "--digits", '["2"]')
    assert code == 2


def test_mc_deterministic_bytes(capsys):
    args = ["mc-slln", "--trials", "20", "--bits", "512", "--seed", "5", "--n", "1", "5"]
    _, a, _ = call(capsys, *args)
    _, b, _ = call(capsys, *args)
    assert a == b
    assert json.loads(a)["config"]["seed"] == 5


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "engel.cli", "expand", "--num", "3",
                           "--den", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == ["2", "2"]
