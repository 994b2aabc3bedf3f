import json
import subprocess
import sys

import pytest

from dirspec.cli import main
from dirspec.measure import SymbolicMeasure


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "dirspec.cli", *args],
                          capture_output=True, text=True)
    return proc


def run_json(*args):
    proc = run_cli(*args)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


class TestReports:
    def test_classify_fixture(self, fixtures_dir):
        rep = run_json("classify",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"),
                       "--directions", str(fixtures_dir / "axes_and_diagonal.json"))
        assert rep["tool"] == "dirspec" and rep["command"] == "classify"
        verdicts = rep["result"]["verdicts"]
        assert len(verdicts) == 3
        by_basis = {json.dumps(v["direction"]["basis"]): v for v in verdicts}
        diag = by_basis['[["1", "1"]]']
        assert diag["ergodic"] and diag["weak_mixing"] and diag["strong_mixing"]
        ax = by_basis['[["1", "0"]]']
        assert not ax["ergodic"] and ax["witnesses"]

    def test_directions_report(self, fixtures_dir):
        rep = run_json("directions",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"))
        ne = rep["result"]["nonergodic"]
        assert len(ne["subspaces"]) == 2
        assert ne["parametric_families"] == []

    def test_realize_round_trip(self, fixtures_dir, tmp_path):
        out = tmp_path / "realized.json"
        rep = run_json("realize",
                       "--directions", str(fixtures_dir / "two_subspaces_r3.json"),
                       "--measure-out", str(out))
        assert rep["result"]["verified"] is True
        doc = json.loads(out.read_text())
        measure = SymbolicMeasure.decode(doc)
        assert measure.encode() == doc

    def test_lint_warning(self, fixtures_dir):
        rep = run_json("lint", "--measure", str(fixtures_dir / "lonely_atom.json"))
        codes = [w["code"] for w in rep["result"]["warnings"]]
        assert codes == ["atom_closure"]

    def test_oracle_report(self, fixtures_dir):
        rep = run_json("oracle", "--model", str(fixtures_dir / "product_model.json"),
                       "--bound", "5")
        assert rep["result"]["crosscheck"]["passed"] is True

    def test_decompose_and_exp(self, fixtures_dir, tmp_path):
        rep = run_json("decompose",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"))
        parts = rep["result"]["parts"]
        assert len(parts) == 3  # dimensions 0, 1, 2
        assert parts[0]["zero"] is True

        # exp of a single diagonal line measure: delta_0 + the line
        line_doc = {"space": "euclidean", "dim": 2, "field_roots": [],
                    "components": [{"kind": "box", "basis": [["1", "1"]]}]}
        path = tmp_path / "line.json"
        path.write_text(json.dumps(line_doc))
        rep = run_json("exp", "--measure", str(path))
        assert len(rep["result"]["measure"]["components"]) == 2

    def test_restrict(self, fixtures_dir):
        rep = run_json("restrict",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"),
                       "--subgroup", "[[1, 1]]")
        assert rep["result"]["identification"] == [[1, 1]]
        out = rep["result"]["measure"]
        assert out["dim"] == 1

    def test_suspend_round_trip(self, fixtures_dir, tmp_path):
        rep = run_json("suspend",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"))
        assert rep["result"]["measure"]["periodized"] is True
        path = tmp_path / "suspended.json"
        path.write_text(json.dumps(rep["result"]["measure"]))
        back = run_json("suspend", "--measure", str(path))
        assert back["result"]["measure"]["periodized"] is False

    def test_fourier_check(self, fixtures_dir):
        rep = run_json("fourier-check",
                       "--samples", "2048",
                       "--measure", str(fixtures_dir / "product_bernoulli.json"),
                       "--directions", str(fixtures_dir / "axes_and_diagonal.json"))
        assert rep["result"]["passed"] is True
        for check in rep["result"]["wall_checks"]:
            assert check["ok"]
            assert check["decay"]["radii"]

    def test_text_mode(self, fixtures_dir):
        proc = run_cli("lint", "--text",
                       "--measure", str(fixtures_dir / "lonely_atom.json"))
        assert proc.returncode == 0
        assert proc.stdout.startswith("dirspec lint")

    def test_output_file(self, fixtures_dir, tmp_path):
        out = tmp_path / "report.json"
        proc = run_cli("lint", "--output", str(out),
                       "--measure", str(fixtures_dir / "lonely_atom.json"))
        assert proc.returncode == 0
        assert json.loads(out.read_text())["command"] == "lint"

    def test_config_env_var(self, fixtures_dir, tmp_path, monkeypatch):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"samples": 512, "seed": 99}))
        monkeypatch.setenv("DIRSPEC_CONFIG", str(cfg))
        code = main(["lint", "--measure", str(fixtures_dir / "chair.json")])
        assert code == 0

    def test_config_env_var_echoed(self, fixtures_dir, tmp_path):
        import os
        import subprocess
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"samples": 512, "seed": 99}))
        env = dict(os.environ, DIRSPEC_CONFIG=str(cfg))
        proc = subprocess.run(
            [sys.executable, "-m", "dirspec.cli", "lint",
             "--measure", str(fixtures_dir / "chair.json")],
            capture_output=True, text=True, env=env)
        rep = json.loads(proc.stdout)
        assert rep["config"]["samples"] == 512
        assert rep["config"]["seed"] == 99

    def test_report_deterministic(self, fixtures_dir):
        a = run_cli("classify",
                    "--measure", str(fixtures_dir / "product_bernoulli.json"),
                    "--directions", str(fixtures_dir / "axes_and_diagonal.json"))
        b = run_cli("classify",
                    "--measure", str(fixtures_dir / "product_bernoulli.json"),
                    "--directions", str(fixtures_dir / "axes_and_diagonal.json"))
        assert a.stdout == b.stdout


class TestExitCodes:
    def test_validation_error_is_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"space\": \"nowhere\"}")
        proc = run_cli("lint", "--measure", str(bad))
        assert proc.returncode == 2
        err = json.loads(proc.stderr)
        assert "error" in err

    def test_missing_file_is_2(self):
        proc = run_cli("lint", "--measure", "/nonexistent/m.json")
        assert proc.returncode == 2

    def test_unsupported_convolution_is_4(self, fixtures_dir, tmp_path):
        chair = fixtures_dir / "chair.json"
        box_doc = {"space": "torus", "dim": 2, "field_roots": [],
                   "components": [{"kind": "box", "basis": [["1", "0"]]}]}
        path = tmp_path / "box.json"
        path.write_text(json.dumps(box_doc))
        proc = run_cli("convolve", "--measure", str(chair), "--other", str(path))
        assert proc.returncode == 4

    def test_failed_realize_is_3(self, tmp_path):
        # the full plane cannot be realized
        doc = {"dim": 2, "field_roots": [],
               "directions": [{"basis": [["1", "0"], ["0", "1"]]}]}
        path = tmp_path / "full.json"
        path.write_text(json.dumps(doc))
        proc = run_cli("realize", "--directions", str(path))
        assert proc.returncode == 2  # rejected as invalid input

    def test_in_process_main(self, fixtures_dir, capsys):
        code = main(["lint", "--measure", str(fixtures_dir / "chair.json")])
        assert code == 0
        rep = json.loads(capsys.readouterr().out)
        assert rep["result"]["warnings"] == []


class TestGoldenReports:
    """Byte-stable reports for exact-arithmetic commands.

    Regenerate with the CLI after an intentional schema or version change:
    the goldens pin both.
    """

    CASES = [
        ("classify_product.json",
         ["classify", "--measure", "{fx}/product_bernoulli.json",
          "--directions", "{fx}/axes_and_diagonal.json"]),
        ("directions_bw8.json",
         ["directions", "--measure", "{fx}/bw8.json", "--enumeration-bound", "1"]),
        ("lint_broken_symmetry.json",
         ["lint", "--measure", "{fx}/broken_symmetry.json"]),
    ]

    @pytest.mark.parametrize("golden,argv", CASES,
                             ids=[c[0] for c in CASES])
    def test_matches_golden(self, fixtures_dir, golden, argv):
        import pathlib
        args = [a.format(fx=fixtures_dir) for a in argv]
        proc = run_cli(*args)
        assert proc.returncode == 0
        expected = (pathlib.Path(__file__).parent / "golden" / golden).read_text()
        assert proc.stdout == expected


class TestRoundTrip:
    def test_emitted_measures_reparse_canonically(self, fixtures_dir):
        for name in ("product_bernoulli.json", "chair.json", "bw8.json",
                     "lonely_atom.json", "broken_symmetry.json",
                     "ergodic_not_wm.json"):
            doc = json.loads((fixtures_dir / name).read_text())
            m = SymbolicMeasure.decode(doc)
            assert m.encode() == doc
