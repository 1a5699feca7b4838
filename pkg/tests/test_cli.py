import json

import pytest

from magblock.cli import main
from magblock.csvio import SWEEP_HEADER
from magblock.presets import _slice_axis


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_reciprocal_solve_prints_equal_directions(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--set", "tau=0", "--set", "delta=-10",
            "--direction", "both",
        )
        assert code == 0
        records = json.loads(out)
        assert len(records) == 2
        assert records[0]["g2"] == records[1]["g2"]

    def test_single_direction_prints_one_record(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--set", "delta=-10.2", "--direction", "forward"
        )
        assert code == 0
        record = json.loads(out)
        assert record["theta"] == 0.0
        assert record["g2"] == pytest.approx(1.615, rel=0.05)

    def test_config_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--set", "gamma_in=-2")
        assert code == 2
        assert "gamma_in" in err

    def test_solver_failure_exit_code(self, capsys):
        # oversized three-mode space hits the dense dimension guard
        code, _, err = run_cli(
            capsys, "solve", "--set", "cavity.n_fock_c=8", "--direction", "forward"
        )
        assert code == 1
        assert "solver error" in err


class TestSpectra:
    def test_linewidths_at_gamma_five(self, capsys):
        code, out, _ = run_cli(
            capsys, "spectra", "--n", "1", "--gamma", "5", "--theta", "0"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "gamma_diss,theta,n,branch,re,im"
        ims = [float(line.split(",")[5]) for line in lines[1:]]
        assert ims == pytest.approx([-1.0, -11.0], abs=1e-9)


class TestFigurePresets:
    def test_full_slice_grid_arithmetic(self):
        # the standard slice preset is 241 detuning points x 2 directions
        axis = _slice_axis(fast=False)
        assert axis.count == 241
        assert axis.count * 2 == 482

    def test_fast_fig2c_runs_and_is_deterministic(self, capsys, tmp_path):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        code, stdout, _ = run_cli(
            capsys, "figure", "2c", "--fast", "--out-dir", str(out_a)
        )
        assert code == 0
        assert "fig2c.csv" in stdout
        code, _, _ = run_cli(capsys, "figure", "2c", "--fast", "--out-dir", str(out_b))
        assert code == 0
        assert (out_a / "fig2c.csv").read_bytes() == (out_b / "fig2c.csv").read_bytes()
        lines = (out_a / "fig2c.csv").read_text().splitlines()
        assert lines[1] == SWEEP_HEADER
        assert len(lines) == 2 + 61 * 2
        # the reference curve ships alongside, with the waveguide off
        ref = (out_a / "fig2c_reference.csv").read_text().splitlines()
        assert json.loads(ref[0][len("# meta: "):])["params"]["tau"] == 0.0

    def test_unknown_figure_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run_cli(capsys, "figure", "9z")
        assert exc.value.code == 2


class TestValidate:
    def test_validate_passes(self, capsys):
        code, out, _ = run_cli(capsys, "validate")
        assert code == 0
        assert "PASS" in out
        assert "FAIL" not in out
