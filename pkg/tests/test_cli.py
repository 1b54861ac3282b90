"""Config-driven CLI: solve/verify/plotdata, exit codes, determinism."""

import json
from pathlib import Path

import numpy as np
import pytest

from bimon.cli import main


def write_config(path: Path, text: str) -> str:
    path.write_text(text)
    return str(path)


DISK_COS = """
domain = "disk"
method = "explicit"
quadrature_nodes = 256
verify = false

[boundary]
u1 = "cos(theta)"
u4 = "0"

[grid]
radii = [0.2, 0.5, 0.8]
nangles = 16

[output]
path = "{out}"
"""


class TestSolve:
    def test_disk_cos_constants(self, tmp_path):
        out = tmp_path / "field.csv"
        cfg = write_config(tmp_path / "run.toml",
                           DISK_COS.format(out=out.as_posix()))
        assert main(["solve", cfg]) == 0
        report = json.loads((tmp_path / "field.report.json").read_text())
        assert report["constants"]["b1"] == pytest.approx(-0.5, abs=1e-10)
        assert report["constants"]["b2"] == pytest.approx(0.0, abs=1e-10)
        assert report["constants"]["b"] == pytest.approx(0.0, abs=1e-10)
        lines = out.read_text().splitlines()
        assert lines[0] == "x,y,U1,U2,U3,U4"
        assert len(lines) == 1 + 3 * 16

    def test_verify_report_keys(self, tmp_path, halfplane_toml):
        assert main(["solve", halfplane_toml]) == 0
        report = json.loads(
            (tmp_path / "hp.report.json").read_text())
        for key in ("boundary_sup_U1", "boundary_sup_U4", "cr_max",
                    "biharmonic_max", "constants"):
            assert key in report
        assert set(report["constants"]) == {"a1", "a2", "b1", "b2", "b"}

    def test_both_methods_comparison(self, tmp_path):
        out = tmp_path / "field.csv"
        cfg = write_config(tmp_path / "run.toml", f"""
domain = "disk"
method = "both"
quadrature_nodes = 256
verify = false

[boundary]
u1 = "cos(theta)"
u4 = "0"

[grid]
radii = [0.3, 0.6]
nangles = 8

[output]
path = "{out.as_posix()}"
""")
        assert main(["solve", cfg]) == 0
        cmp = json.loads((tmp_path / "field.compare.json").read_text())
        assert cmp["max_dU1"] <= 1e-6
        assert cmp["max_dU4"] <= 1e-6
        assert cmp["spread_U2"] <= 1e-6
        assert cmp["spread_U3"] <= 1e-6

    def test_json_output(self, tmp_path):
        out = tmp_path / "field.json"
        cfg = write_config(tmp_path / "run.toml", f"""
domain = "disk"
quadrature_nodes = 256
verify = false

[boundary]
u1 = "1"
u4 = "0"

[grid]
radii = [0.5]
nangles = 8

[output]
path = "{out.as_posix()}"
format = "json"
""")
        assert main(["solve", cfg]) == 0
        payload = json.loads(out.read_text())
        assert payload["columns"] == ["x", "y", "U1", "U2", "U3", "U4"]
        assert len(payload["rows"]) == 8


@pytest.fixture
def halfplane_toml(tmp_path):
    out = tmp_path / "hp.csv"
    return write_config(tmp_path / "hp.toml", f"""
domain = "halfplane"
quadrature_nodes = 512

[boundary]
u1 = "3*t/(t^2+1)"
u4 = "2*t/(t^2+1)"

[grid]
x = [-2.0, 2.0]
nx = 9
y = [0.2, 2.0]
ny = 5

[output]
path = "{out.as_posix()}"
""")


class TestExitCodes:
    def test_no_finite_limit_is_3(self, tmp_path):
        cfg = write_config(tmp_path / "bad.toml", """
domain = "halfplane"

[boundary]
u1 = "atan(t)"
u4 = "0"
""")
        assert main(["solve", cfg]) == 3

    def test_bad_expression_is_2(self, tmp_path):
        cfg = write_config(tmp_path / "bad.toml", """
domain = "disk"

[boundary]
u1 = "cos(theta"
u4 = "0"
""")
        assert main(["solve", cfg]) == 2

    def test_wrong_variable_is_2(self, tmp_path):
        cfg = write_config(tmp_path / "bad.toml", """
domain = "disk"

[boundary]
u1 = "cos(t)"
u4 = "0"
""")
        assert main(["solve", cfg]) == 2

    def test_unknown_key_is_2(self, tmp_path):
        cfg = write_config(tmp_path / "bad.toml", """
domain = "disk"
frobnicate = 1

[boundary]
u1 = "1"
u4 = "0"
""")
        assert main(["solve", cfg]) == 2

    def test_missing_boundary_is_2(self, tmp_path):
        cfg = write_config(tmp_path / "bad.toml", 'domain = "disk"\n')
        assert main(["solve", cfg]) == 2

    def test_missing_file_is_2(self, tmp_path):
        assert main(["solve", str(tmp_path / "nope.toml")]) == 2

    def test_unwritable_output_is_4(self, tmp_path):
        cfg = write_config(tmp_path / "run.toml", """
domain = "disk"
quadrature_nodes = 256
verify = false

[boundary]
u1 = "1"
u4 = "0"

[grid]
radii = [0.5]
nangles = 8

[output]
path = "/nonexistent-dir/field.csv"
""")
        assert main(["solve", cfg]) == 4


class TestDeterminism:
    def test_repeated_runs_byte_identical(self, tmp_path, halfplane_toml):
        out = tmp_path / "hp.csv"
        assert main(["solve", halfplane_toml]) == 0
        first = out.read_bytes()
        first_report = (tmp_path / "hp.report.json").read_bytes()
        assert main(["solve", halfplane_toml]) == 0
        assert out.read_bytes() == first
        assert (tmp_path / "hp.report.json").read_bytes() == first_report

    def test_thread_counts_byte_identical(self, tmp_path):
        outputs = []
        for threads in (1, 4):
            out = tmp_path / f"t{threads}.csv"
            cfg = write_config(tmp_path / f"t{threads}.toml", f"""
domain = "disk"
quadrature_nodes = 256
threads = {threads}
verify = false

[boundary]
u1 = "cos(theta)+0.5*sin(2*theta)"
u4 = "0"

[grid]
radii = [0.2, 0.4, 0.6, 0.8]
nangles = 32

[output]
path = "{out.as_posix()}"
""")
            assert main(["solve", cfg]) == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]


class TestPlotdata:
    def test_one_file_per_component(self, tmp_path):
        out = tmp_path / "plot.csv"
        cfg = write_config(tmp_path / "run.toml",
                           DISK_COS.format(out=out.as_posix()))
        assert main(["plotdata", cfg]) == 0
        for name in ("U1", "U2", "U3", "U4"):
            path = tmp_path / f"plot_{name}.csv"
            lines = path.read_text().splitlines()
            assert lines[0] == f"x,y,{name}"
            assert len(lines) == 1 + 3 * 16

    def test_rerun_byte_identical(self, tmp_path):
        out = tmp_path / "plot.csv"
        cfg = write_config(tmp_path / "run.toml",
                           DISK_COS.format(out=out.as_posix()))
        assert main(["plotdata", cfg]) == 0
        first = (tmp_path / "plot_U1.csv").read_bytes()
        assert main(["plotdata", cfg]) == 0
        assert (tmp_path / "plot_U1.csv").read_bytes() == first


class TestVerify:
    def test_low_resolution_fails(self, tmp_path):
        cfg = write_config(tmp_path / "low.toml", """
domain = "disk"
quadrature_nodes = 32

[boundary]
u1 = "1"
u4 = "0"
""")
        assert main(["verify", cfg]) == 1

    def test_output_override(self, tmp_path):
        cfg = write_config(tmp_path / "run.toml",
                           DISK_COS.format(out=(tmp_path / "a.csv").as_posix()))
        target = tmp_path / "b.csv"
        assert main(["solve", cfg, "--output", str(target)]) == 0
        assert target.exists()
