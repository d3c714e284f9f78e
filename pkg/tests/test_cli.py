"""
Test the command-line interface end to end
"""
import csv
import json

import pytest

from hardygkz.__main__ import main

FAST = ["--degree", "64", "--grid", "1024"]


@pytest.fixture
def run(tmp_path):
    def _run(command, payload=None, *options):
        argv = [command, *options, "--out", str(tmp_path / "report")]
        if payload is not None:
            source = tmp_path / "input.json"
            source.write_text(payload if isinstance(payload, str) else json.dumps(payload))
            argv += ["--in", str(source)]
        code = main(argv)
        return code, (tmp_path / "report").read_text()

    return _run


def test_factor_outer_polynomial(run):
    code, text = run("factor", [2, 1])
    report = json.loads(text)
    assert code == 0
    assert report["outerness_report"]["verdict"] is True
    assert report["outer"]["taylor"][0] == pytest.approx([2, 0], abs=1e-8)
    assert report["outer"]["taylor"][1] == pytest.approx([1, 0], abs=1e-8)


def test_factor_zero_function(run):
    code, text = run("factor", [0])
    report = json.loads(text)
    assert code == 2
    assert report["error"] == "DomainError"
    assert "zero function" in report["message"]


def test_recover_functional(run):
    code, text = run("recover-functional", {"functional": {"lambda": [2 * 0.5**k for k in range(9)]}})
    report = json.loads(text)
    assert code == 0
    assert report["recovery"]["c"] == [2.0, 0.0]
    assert report["recovery"]["w"] == [0.5, 0.0]
    assert report["recovery"]["verdict"] is True


def test_recover_functional_vanishing_on_one(run):
    code, text = run("recover-functional", {"lambda": [0, 1, 0]})
    report = json.loads(text)
    assert code == 2
    assert report["error"] == "VanishesOnOuterError"
    assert "witness" in report


def test_recover_operator(run):
    payload = {"builder": {"kind": "wco", "psi": [1, 0.5], "phi": [0, 0.5]}}
    code, text = run("recover-operator", payload, *FAST)
    assert code == 0
    assert json.loads(text)["recovery"]["verdict"] is True

    code, text = run("recover-operator", {"builder": {"kind": "swap"}}, *FAST)
    report = json.loads(text)
    assert code == 2
    assert report["error"] == "WeightVanishesError"


def test_classify_swap(run):
    code, text = run("classify-isometry", {"builder": {"kind": "swap"}}, *FAST)
    report = json.loads(text)
    assert code == 3
    assert report["counterexample"]["witness"]["z0"] == [0.0, 0.0]


def test_classify_swap_with_family(run):
    payload = {"builder": {"kind": "swap"}, "family": [[1, 0.5]]}
    code, text = run("classify-isometry", payload, *FAST)
    z0 = json.loads(text)["counterexample"]["witness"]["z0"]
    assert code == 3
    assert z0 == pytest.approx([-0.5, 0], abs=1e-3)


def test_classify_forelli(run):
    payload = {"builder": {"kind": "forelli", "w": [0.3, 0], "c": [0, 1]}}
    code, text = run("classify-isometry", payload, *FAST)
    certificate = json.loads(text)["certificate"]
    assert code == 0
    assert certificate["w"] == pytest.approx([0.3, 0], abs=1e-8)
    assert certificate["c"] == pytest.approx([0, 1], abs=1e-8)


def test_module_gkz_builder(run):
    code, text = run("module-gkz", {"builder": {"kind": "conjugated-diagonal", "n": 3}})
    report = json.loads(text)
    assert code == 0
    assert report["character"]["verdict"] is True
    assert report["algebra_check"]["ok"] is True


def test_module_gkz_vanishing_functional(run):
    payload = {
        "algebra": {"dim": 2, "structure": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "unit": [1, 1]},
        "S": {"elements": [[1, -1]], "tag": "all-coordinates-nonzero"},
        "functional": [1, 1],
    }
    code, text = run("module-gkz", payload)
    report = json.loads(text)
    assert code == 2
    assert report["error"] == "NonvanishingViolation"
    assert report["witness"] == [[1.0, 0.0], [-1.0, 0.0]]


def test_module_gkz_scalar_counterexample(run):
    payload = {
        "algebra": {"structure": [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], "unit": [1, 1]},
        "S": {"elements": [[1, 1]]},
        "functional": [1, 0],
        "scalar_functional": [0.5, 0.5],
    }
    code, text = run("module-gkz", payload)
    report = json.loads(text)
    assert code == 3
    assert report["scalar"]["ok"] is False
    assert report["character"]["verdict"] is True


def test_shift_norms_csv(run):
    code, text = run("shift-norms", None, "--space", "Dirichlet", "--n", "3", "--format", "csv")
    lines = text.splitlines()
    assert code == 0
    assert lines[0].startswith("# n=3 norm=")
    assert float(lines[0].split("norm=")[1]) == pytest.approx(2.0, abs=1e-12)
    rows = list(csv.DictReader(lines[1:]))
    assert len(rows) == 64
    assert float(rows[2]["norm"]) == pytest.approx(2.0, abs=1e-12)


def test_shift_norms_csv_without_n_has_no_norm_line(run):
    code, text = run("shift-norms", None, "--space", "Hardy2", "--n-max", "4", "--format", "csv")
    assert code == 0
    assert text.splitlines()[0] == "n,norm,nth_root"


def test_csv_requires_trend(run):
    code, text = run("factor", [2, 1], "--format", "csv")
    assert code == 2
    assert json.loads(text)["error"] == "ValueError"


def test_reports_are_deterministic(run):
    payload = {"builder": {"kind": "forelli", "w": [0.2, 0.1], "c_phi": [0, 1]}}
    first = run("classify-isometry", payload, *FAST)
    second = run("classify-isometry", payload, *FAST)
    assert first == second


def test_unreadable_input(run):
    code, text = run("factor", "{")
    assert code == 2
    assert json.loads(text)["error"] == "JSONDecodeError"


def test_invalid_grid(run):
    code, text = run("factor", [2, 1], "--grid", "1000")
    assert code == 2
    assert "power of two" in json.loads(text)["message"]


@pytest.mark.parametrize(
    "command, payload",
    [
        ("recover-functional", [[1, 0], [0, 0]]),
        ("recover-functional", {"functional": [1, 2]}),
        ("recover-operator", [[1, 0], [0, 1]]),
        ("classify-isometry", {"builder": ["swap"]}),
        ("module-gkz", [1, 0]),
        ("module-gkz", {"builder": "conjugated-diagonal"}),
        ("shift-norms", [3]),
    ],
)
def test_non_object_input_is_a_violation(run, command, payload):
    code, text = run(command, payload)
    report = json.loads(text)
    assert code == 2
    assert report["error"] == "ValueError"
    assert "Expected a JSON object" in report["message"]


def test_missing_input_file(tmp_path):
    out = tmp_path / "report"
    code = main(["factor", "--in", str(tmp_path / "missing.json"), "--out", str(out)])
    assert code == 2
    assert json.loads(out.read_text())["error"] == "FileNotFoundError"
