"""CLI subcommands: JSON shapes, exit codes, SVG output."""

import json

import pytest

from markov_morse import StabilityReport
from markov_morse.cli import main

from conftest import WORKED_CSV


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "chain.csv"
    path.write_text(WORKED_CSV)
    return str(path)


@pytest.fixture
def matrix_json_file(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(
        '{"states": ["N1", "N2", "N3"],'
        ' "matrix": [[0.5, 0.17, 0.33], [0.17, 0.6, 0.23], [0.15, 0.15, 0.7]]}'
    )
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestThresholds:
    def test_golden_grid(self, capsys, matrix_file):
        code, out, _ = run(capsys, "thresholds", matrix_file)
        assert code == 0
        assert json.loads(out) == {"grid": [0.0, 0.15, 0.17, 0.23, 0.33]}

    def test_json_input(self, capsys, matrix_json_file):
        code, out, _ = run(capsys, "thresholds", matrix_json_file)
        assert code == 0
        assert json.loads(out)["grid"] == [0.0, 0.15, 0.17, 0.23, 0.33]


class TestMvf:
    def test_partition_at_gamma(self, capsys, matrix_file):
        code, out, _ = run(capsys, "mvf", matrix_file, "--gamma", "0.15")
        assert code == 0
        obj = json.loads(out)
        assert obj["gamma"] == 0.15
        assert obj["multivectors"] == [
            ["N1"],
            ["N2"],
            ["N3", "N1-N3", "N2-N3"],
            ["N1-N2"],
        ]


class TestMorse:
    def test_sets_indices_order(self, capsys, matrix_file):
        code, out, _ = run(capsys, "morse", matrix_file, "--gamma", "0.15")
        assert code == 0
        obj = json.loads(out)
        assert obj["morse_sets"] == [
            {"label": "N1", "cells": ["N1"], "index": [0, 0]},
            {"label": "N2", "cells": ["N2"], "index": [0, 0]},
            {"label": "N3", "cells": ["N3", "N1-N3", "N2-N3"], "index": [0, 1]},
            {"label": "N1-N2", "cells": ["N1-N2"], "index": [0, 1]},
        ]
        assert sorted(map(tuple, obj["order"])) == [
            ("N1-N2", "N1"),
            ("N1-N2", "N2"),
            ("N3", "N1"),
            ("N3", "N2"),
        ]


class TestDiagram:
    def test_diagram_json(self, capsys, matrix_file):
        code, out, _ = run(capsys, "diagram", matrix_file)
        assert code == 0
        obj = json.loads(out)
        assert obj["grid"] == [0.0, 0.15, 0.17, 0.23, 0.33]
        assert {"birth": 0.23, "death": "inf", "index": [1, 1]} in obj["points"]
        assert len(obj["points"]) == 7

    def test_svg_render(self, capsys, matrix_file, tmp_path):
        svg_path = tmp_path / "out.svg"
        code, out, err = run(capsys, "diagram", matrix_file, "--svg", str(svg_path))
        assert code == 0
        assert json.loads(out)["points"]  # JSON still on stdout
        assert "out.svg" in err  # diagnostics on stderr
        svg = svg_path.read_text()
        assert svg.startswith("<svg")
        assert "&#8734;" in svg  # infinity rail label
        assert "index (1, 1)" in svg  # legend carries the classes
        assert svg.count("<circle") >= 1


class TestBottleneck:
    def test_self_distance_zero(self, capsys, matrix_file):
        code, out, _ = run(capsys, "bottleneck", matrix_file, matrix_file)
        assert code == 0
        obj = json.loads(out)
        assert obj["distance"] == 0.0
        assert all(pair["cost"] == 0.0 for pair in obj["matching"])

    def test_matrix_against_its_diagram_json(self, capsys, matrix_file, tmp_path):
        code, out, _ = run(capsys, "diagram", matrix_file)
        diagram_path = tmp_path / "d.json"
        diagram_path.write_text(out)
        code, out, _ = run(capsys, "bottleneck", matrix_file, str(diagram_path))
        assert code == 0
        assert json.loads(out)["distance"] == 0.0

    def test_perturbed_distance(self, capsys, matrix_file, tmp_path):
        perturbed = tmp_path / "q.csv"
        perturbed.write_text("# N1,N2,N3\n0.49,0.18,0.33\n0.17,0.6,0.23\n0.15,0.15,0.7\n")
        code, out, _ = run(capsys, "bottleneck", matrix_file, str(perturbed))
        assert code == 0
        obj = json.loads(out)
        assert obj["distance"] == pytest.approx(0.01, abs=1e-12)
        pairs = [m["pair"] for m in obj["matching"]]
        assert all(len(p) == 2 for p in pairs)


class TestStabilityCommand:
    def test_random_chains_clean(self, capsys):
        code, out, _ = run(
            capsys, "stability", "--random", "4,0.8", "--trials", "5", "--seed", "9"
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["mode"] == "single"
        assert obj["violations"] == 0
        assert len(obj["records"]) == 5

    def test_multi_mode(self, capsys):
        code, out, _ = run(
            capsys,
            "stability", "--random", "4", "--trials", "3", "--multi", "2", "--seed", "1",
        )
        assert code == 0
        assert json.loads(out)["mode"] == "multi"

    def test_fixed_matrix(self, capsys, matrix_file):
        code, out, _ = run(capsys, "stability", matrix_file, "--trials", "3", "--seed", "2")
        assert code == 0
        assert json.loads(out)["violations"] == 0

    def test_matrix_and_random_together_is_usage_error(self, capsys, matrix_file):
        code, _, err = run(
            capsys, "stability", matrix_file, "--random", "4", "--trials", "2"
        )
        assert code == 1
        assert "error" in err

    def test_violation_exit_code(self, capsys, monkeypatch, matrix_file):
        # wire-level check: a report carrying violations must exit 3
        fake = StabilityReport("single", 1, 1, 2.0, (), ())
        monkeypatch.setattr("markov_morse.cli.stability_trials", lambda *a, **k: fake)
        code, _, err = run(capsys, "stability", matrix_file, "--trials", "1")
        assert code == 3
        assert "violation" in err


class TestPropertiesCommand:
    def test_clean_run(self, capsys):
        code, out, _ = run(
            capsys, "properties", "--random", "4,0.7", "--trials", "4", "--seed", "3"
        )
        assert code == 0
        obj = json.loads(out)
        assert obj["violations"] == 0
        assert obj["checks"]["valid_field"] > 0


class TestExitCodes:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "thresholds", "/does/not/exist.csv")
        assert code == 2
        assert "error" in err

    def test_malformed_csv(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n0.5,0.5\n")
        code, _, err = run(capsys, "thresholds", str(bad))
        assert code == 2
        assert "not a number" in err

    def test_nonstochastic_matrix(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("0.5,0.6\n0.5,0.5\n")
        code, _, err = run(capsys, "thresholds", str(bad))
        assert code == 2
        assert "row" in err

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 1

    def test_missing_required_argument(self, capsys, matrix_file):
        code, _, _ = run(capsys, "mvf", matrix_file)  # no --gamma
        assert code == 1

    def test_no_arguments(self, capsys):
        code, _, _ = run(capsys)
        assert code == 1
