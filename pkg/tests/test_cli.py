import csv
import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

import volpoly.tropical as tropical_mod
from volpoly.cli import main
from volpoly.tropical import RETRY_CAP_ENV

DATA = Path(__file__).parent / "data"
FIXTURE_PAIR = {
    "P": {"vertices": [[0, 0], [0, 2], [4, 1], [4, 0]]},
    "Q": {"vertices": [[0, 0], [0, 2], [3, 0]]},
}


@pytest.fixture
def pair_file(tmp_path):
    path = tmp_path / "pair.json"
    path.write_text(json.dumps(FIXTURE_PAIR))
    return str(path)


class TestRealize:
    def test_human_output(self, capsys):
        assert main(["realize", "2", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "P = [(0, 1), (1, 0), (2, 0), (1, 1)]" in out
        assert "Q = [(0, 0), (1, 0), (1, 1), (0, 1)]" in out
        assert "case = Case1" in out
        assert "Vol2(P), V(P,Q), Vol2(Q) = 2, 3, 2" in out

    def test_json_output(self, capsys):
        assert main(["realize", "2", "3", "2", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["case"] == "Case1"
        assert doc["P"] == {"vertices": [[0, 1], [1, 0], [2, 0], [1, 1]]}
        assert doc["reduction"]["transform"] == {"columns": [[1, 1], [1, 0]], "det": -1}

    def test_definite_form_is_user_error(self, capsys):
        assert main(["realize", "2", "1", "2"]) == 1
        assert "definite form: AC > B^2" in capsys.readouterr().err

    def test_svg_matches_golden_snapshot(self, tmp_path, capsys):
        out = tmp_path / "pair.svg"
        assert main(["realize", "2", "3", "2", "--svg", str(out)]) == 0
        assert out.read_text() == (DATA / "realize_2_3_2.svg").read_text()

    def test_svg_render_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        assert main(["realize", "7", "4", "1", "--svg", str(a)]) == 0
        assert main(["realize", "7", "4", "1", "--svg", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestReduce:
    def test_human_output(self, capsys):
        assert main(["reduce", "2", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "reduced: 2*x^2 + 2*x*y - 2*y^2" in out
        assert "transform columns: (1,1), (1,0)" in out

    def test_json_round_trip_document(self, capsys):
        assert main(["reduce", "1", "10", "1", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["input"] == {"A": 1, "B": 10, "C": 1}
        assert doc["reduced"] == {"a": 1, "b": 9, "c": 18}

    def test_rejects_nonpositive(self, capsys):
        assert main(["reduce", "0", "3", "2"]) == 1
        assert "error:" in capsys.readouterr().err


class TestPairCommands:
    def test_mixedvol(self, pair_file, capsys):
        assert main(["mixedvol", pair_file]) == 0
        assert capsys.readouterr().out.strip() == "11"

    def test_mixedvol_json(self, pair_file, capsys):
        assert main(["mixedvol", pair_file, "--json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"mixed_volume": 11}

    def test_volpoly(self, pair_file, capsys):
        assert main(["volpoly", pair_file]) == 0
        assert "12*x^2 + 22*x*y + 6*y^2" in capsys.readouterr().out

    def test_volpoly_json(self, pair_file, capsys):
        assert main(["volpoly", pair_file, "--json"]) == 0
        assert json.loads(capsys.readouterr().out) == {"A": 12, "B": 11, "C": 6}

    def test_stdin(self, capsys, monkeypatch):
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(FIXTURE_PAIR)))
        assert main(["volpoly", "-"]) == 0
        assert "12*x^2" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert main(["mixedvol", "/no/such/file.json"]) == 1
        assert "error:" in capsys.readouterr().err

    def test_bad_json(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text("not json")
        assert main(["mixedvol", str(path)]) == 1

    def test_wrong_shape(self, tmp_path, capsys):
        path = tmp_path / "wrong.json"
        path.write_text(json.dumps({"P": FIXTURE_PAIR["P"]}))
        assert main(["mixedvol", str(path)]) == 1

    def test_render_writes_svg(self, pair_file, tmp_path, capsys):
        out = tmp_path / "out.svg"
        assert main(["render", pair_file, "--svg", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("<?xml")
        assert text.rstrip().endswith("</svg>")
        assert f"wrote {out}" in capsys.readouterr().out


class TestTropical:
    def test_human_output(self, capsys):
        assert main(["tropical", "2", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "(f.f), (f.g), (g.g) = 2, 3, 2" in out

    def test_json_metadata(self, capsys):
        assert main(["tropical", "0", "2", "3", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["intersection_number"] == 2
        assert doc["self_intersection"] == {"f": 0, "g": 3}
        assert doc["seed"] == 0
        assert doc["lift_sampler"] == {"denominator": 1000003, "numerator_bound": 1000000}
        from volpoly.tropical import curve_from_json
        assert curve_from_json(doc["curves"]["g"]) is not None

    def test_seed_changes_lifts_not_numbers(self, capsys):
        assert main(["tropical", "1", "2", "3", "--seed", "9"]) == 0
        assert "= 1, 2, 3" in capsys.readouterr().out

    def test_zero_triple_rejected(self, capsys):
        assert main(["tropical", "0", "0", "0"]) == 1

    def test_retry_exhaustion_is_internal_error(self, capsys, monkeypatch):
        monkeypatch.setenv(RETRY_CAP_ENV, "2")
        monkeypatch.setattr(tropical_mod, "_random_rational", lambda rng: Fraction(0))
        assert main(["tropical", "1", "1", "1"]) == 2
        assert "internal error:" in capsys.readouterr().err

    def test_bad_retry_cap_is_user_error(self, capsys, monkeypatch):
        monkeypatch.setenv(RETRY_CAP_ENV, "bogus")
        assert main(["tropical", "2", "3", "2"]) == 1
        assert "must be an integer" in capsys.readouterr().err

    def test_svg_output(self, tmp_path):
        out = tmp_path / "curves.svg"
        assert main(["tropical", "2", "3", "2", "--svg", str(out)]) == 0
        text = out.read_text()
        assert "curve0" in text and "curve1" in text


class TestToric:
    def test_human_output(self, capsys):
        assert main(["toric", "2", "3", "2"]) == 0
        out = capsys.readouterr().out
        assert "rays = [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]" in out
        assert "intersection matrix = [[2, 3], [3, 2]]" in out

    def test_json_document(self, capsys):
        assert main(["toric", "2", "3", "2", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc == {
            "rays": [[1, 0], [1, 1], [0, 1], [-1, 0], [-1, -1], [0, -1]],
            "divisors": {"D": [2, 2, 1, 0, -1, 0], "E": [1, 2, 1, 0, 0, 0]},
            "intersection_matrix": [[2, 3], [3, 2]],
            "smooth": True,
        }

    def test_smooth_flag(self, capsys):
        assert main(["toric", "5", "7", "3", "--json"]) == 0
        rough = json.loads(capsys.readouterr().out)
        assert rough["smooth"] is False
        assert main(["toric", "5", "7", "3", "--smooth", "--json"]) == 0
        smooth = json.loads(capsys.readouterr().out)
        assert smooth["smooth"] is True
        assert smooth["intersection_matrix"] == rough["intersection_matrix"] == [[5, 7], [7, 3]]


class TestSweep:
    def test_human_output(self, capsys):
        assert main(["sweep", "--bound", "5"]) == 0
        out = capsys.readouterr().out
        assert "checked 137 admissible triples with bound 5" in out
        assert "all realizations verified" in out

    def test_json_counts(self, capsys):
        assert main(["sweep", "--bound", "8", "--json"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["bound"] == 8
        assert doc["checked"] == 441
        assert doc["failures"] == []

    def test_bound_required(self, capsys):
        assert main(["sweep"]) == 1

    def test_report_dir(self, tmp_path, capsys):
        report = tmp_path / "report"
        assert main(["sweep", "--bound", "4", "--report-dir", str(report)]) == 0
        with open(report / "sweep.csv", newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["A", "B", "C", "case"]
        assert len(rows) == 84  # header + 83 admissible triples
        assert ["2", "3", "2", "Case1"] in rows
        assert (report / "diagram.png").stat().st_size > 0
        assert (report / "cases.png").stat().st_size > 0

    def test_parallel_matches_serial(self, tmp_path, capsys):
        serial = tmp_path / "serial"
        parallel = tmp_path / "parallel"
        assert main(["sweep", "--bound", "6", "--report-dir", str(serial)]) == 0
        assert main(["sweep", "--bound", "6", "--report-dir", str(parallel), "--parallel"]) == 0
        assert (serial / "sweep.csv").read_text() == (parallel / "sweep.csv").read_text()


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "volpoly", "realize", "1", "2", "3"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "Vol2(P), V(P,Q), Vol2(Q) = 1, 2, 3" in proc.stdout

    def test_no_arguments_prints_usage(self, capsys):
        assert main([]) == 1
        assert "usage" in capsys.readouterr().err.lower()

    def test_unknown_command(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_non_integer_triple(self, capsys):
        assert main(["realize", "2", "x", "2"]) == 1
