"""
Tests for the command-line front end.

Run with: pytest tests/test_cli.py -v
"""

import csv
import json
import math
import pytest
from pathlib import Path
import sys

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic import ValidationError
from src import cli
from src.cli import main
from src.core.config import EnvDefaults, load_defaults
from src.core.kinematics import Velocity3
from src.core.types import AngleUnit, GridAxis
from src.modules.utils import format_float, parse_angle, parse_grid_axis


def read_csv(path: Path) -> list[list[str]]:
    with open(path, newline="") as f:
        return list(csv.reader(f))


class TestParsing:
    """Test angle and grid parsing helpers."""

    @pytest.mark.parametrize("text,unit,expected", [
        ("90deg", AngleUnit.RAD, math.pi / 2),
        ("1.5rad", AngleUnit.DEG, 1.5),
        ("45", AngleUnit.DEG, math.pi / 4),
        ("0.25", AngleUnit.RAD, 0.25),
        ("-30deg", AngleUnit.RAD, -math.pi / 6),
    ])
    def test_parse_angle(self, text, unit, expected):
        assert parse_angle(text, unit) == pytest.approx(expected)

    @pytest.mark.parametrize("text", ["ninety", "90 degrees", "", "1e400"])
    def test_parse_angle_rejects(self, text):
        with pytest.raises(ValueError, match="--theta"):
            parse_angle(text, AngleUnit.RAD, "--theta")

    def test_parse_grid_axis(self):
        name, axis = parse_grid_axis("phi=0:180deg:5", AngleUnit.RAD, ("theta", "phi", "eta"))
        assert name == "phi"
        assert axis.steps == 5
        assert axis.values()[-1] == pytest.approx(math.pi)

    def test_parse_grid_axis_speed(self):
        name, axis = parse_grid_axis("v1=0.1:0.9:3", AngleUnit.DEG, ("theta",))
        assert name == "v1"
        assert axis.values() == pytest.approx([0.1, 0.5, 0.9])

    @pytest.mark.parametrize("text", ["phi", "phi=0:1", "phi=0:1:x", "phi=1:0:3"])
    def test_parse_grid_axis_rejects(self, text):
        with pytest.raises(ValueError):
            parse_grid_axis(text, AngleUnit.RAD, ("phi",))

    def test_format_float_round_trips(self):
        x = 0.1 + 0.2
        assert float(format_float(x)) == x


class TestConfig:
    """Test environment defaults."""

    def test_defaults(self, monkeypatch):
        for name in ("SEED", "SAMPLES", "WORKERS", "UNITS", "LOG_LEVEL"):
            monkeypatch.delenv(f"BOOSTENT_{name}", raising=False)
        assert load_defaults() == EnvDefaults()

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("BOOSTENT_SEED", "7")
        monkeypatch.setenv("BOOSTENT_UNITS", "deg")
        monkeypatch.setenv("BOOSTENT_LOG_LEVEL", "info")
        defaults = load_defaults()
        assert defaults.seed == 7
        assert defaults.units is AngleUnit.DEG
        assert defaults.log_level == "INFO"

    def test_bad_environment_is_bad_input(self, monkeypatch, capsys):
        monkeypatch.setenv("BOOSTENT_WORKERS", "0")
        assert main(["wigner"]) == 2

    def test_units_default_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("BOOSTENT_UNITS", "deg")
        assert main(["wigner", "--theta", "90", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["geometry"]["theta"] == pytest.approx(math.pi / 2)


class TestWignerCommand:
    """Test `wigner`."""

    def test_right_angle(self, capsys):
        assert main(["wigner", "--v1", "0.5", "--v2", "0.5", "--theta", "90deg", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema_version"] == 1
        assert report["omega_plus"] == pytest.approx(math.atan(1 / report["d_factor"]), rel=1e-14)
        assert report["omega_plus"] == pytest.approx(0.071674, abs=5e-6)
        assert report["omega_minus"] == pytest.approx(report["omega_plus"], abs=1e-15)

    @pytest.mark.parametrize("beta", ["0.99999999", "0.9999999999"])
    @pytest.mark.parametrize("theta", ["10deg", "45deg", "90deg", "135deg"])
    def test_near_c_speeds_are_accepted(self, beta, theta, capsys):
        assert main(["wigner", "--v1", beta, "--v2", beta, "--theta", theta, "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        for key in ("v_plus", "v_minus"):
            assert Velocity3(components=report[key]).magnitude < 1.0

    def test_internal_errors_do_not_name_flags(self):
        with pytest.raises(ValidationError) as exc:
            Velocity3(components=(1.0, 1.0, 1.0))
        message = cli._flags_of(exc.value)
        assert "--components" not in message
        assert "Velocity3" in message

    @pytest.mark.parametrize("flags", [["--theta", "0"], ["--v1", "0"]])
    def test_no_rotation(self, flags, capsys):
        assert main(["wigner", "--format", "json", *flags]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["omega_plus"] == 0.0
        assert report["omega_minus"] == 0.0

    def test_zero_speed_has_no_d_factor(self, capsys):
        main(["wigner", "--v1", "0", "--format", "json"])
        assert json.loads(capsys.readouterr().out)["d_factor"] is None

    def test_text_report(self, capsys):
        assert main(["wigner", "--theta", "90deg"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("Wigner rotation")
        assert "omega+" in out

    @pytest.mark.parametrize("flags,flag_name", [
        (["--v1", "1.0"], "--v1"),
        (["--v2", "-0.2"], "--v2"),
        (["--theta", "ninety"], "--theta"),
    ])
    def test_bad_input_names_flag(self, flags, flag_name, capsys):
        assert main(["wigner", *flags]) == 2
        assert flag_name in capsys.readouterr().err

    def test_csv_format_not_available(self, capsys):
        assert main(["wigner", "--format", "csv"]) == 2

    def test_unknown_log_level(self, capsys):
        assert main(["wigner", "--log-level", "chatty"]) == 2

    def test_argparse_errors_exit_two(self):
        with pytest.raises(SystemExit) as exc:
            main(["wigner", "--v1", "fast"])
        assert exc.value.code == 2


class TestSingleCommand:
    """Test `single`."""

    def test_json_schema(self, capsys):
        assert main(["single", "--phi", "0", "--format", "json"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert {"schema_version", "geometry", "spin", "amps", "entropy_bits"} <= set(report)
        assert len(report["amps"]) == 4
        assert all(len(pair) == 2 for pair in report["amps"])
        assert report["entropy_bits"] == pytest.approx(0.0, abs=1e-12)

    def test_near_c_maximal(self, capsys):
        args = ["single", "--v1", "0.9999999", "--v2", "0.9999999", "--theta", "90deg", "--phi", "90deg", "--format", "json"]
        assert main(args) == 0
        assert json.loads(capsys.readouterr().out)["entropy_bits"] == pytest.approx(1.0, abs=1e-3)

    def test_degrees_via_units(self, capsys):
        main(["single", "--units", "deg", "--phi", "60", "--format", "json"])
        assert json.loads(capsys.readouterr().out)["spin"]["phi"] == pytest.approx(math.pi / 3)

    def test_text_report(self, capsys):
        assert main(["single"]) == 0
        assert "entanglement entropy" in capsys.readouterr().out


class TestEntropyCurve:
    """Test `entropy-curve`."""

    @pytest.fixture
    def rows(self, tmp_path):
        out = tmp_path / "curve.csv"
        assert main(["entropy-curve", "--output", str(out)]) == 0
        return read_csv(out)

    def test_header_and_length(self, rows):
        assert rows[0] == ["phi_rad", "entropy_bits"]
        assert len(rows) == 182

    def test_endpoints(self, rows):
        assert float(rows[1][1]) == 0.0
        assert float(rows[-1][1]) == pytest.approx(0.0, abs=1e-12)
        assert float(rows[91][1]) == 1.0

    def test_sixty_degrees(self, rows):
        assert float(rows[61][1]) == pytest.approx(0.811278, abs=1e-6)

    def test_monotone_to_right_angle(self, rows):
        values = [float(r[1]) for r in rows[1:92]]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_unwritable_output(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        assert main(["entropy-curve", "--output", str(blocker / "curve.csv")]) == 3

    def test_creates_parent_directories(self, tmp_path):
        out = tmp_path / "a" / "b" / "curve.csv"
        assert main(["entropy-curve", "--steps", "5", "--output", str(out)]) == 0
        assert len(read_csv(out)) == 6


class TestCooperCommand:
    """Test `cooper`."""

    def run(self, capsys, *flags) -> dict:
        assert main(["cooper", "--format", "json", *flags]) == 0
        return json.loads(capsys.readouterr().out)

    def test_collinear_keeps_singlet(self, capsys):
        report = self.run(capsys, "--kind", "S", "--theta", "0")
        assert report["singlet_weight"] == pytest.approx(1.0, abs=1e-12)

    def test_reference_geometry(self, capsys):
        report = self.run(capsys, "--kind", "S", "--v1", "0.8", "--v2", "0.8", "--theta", "90deg")
        assert report["singlet_weight"] == pytest.approx(0.77855, abs=1e-5)
        assert report["triplet_weight"] == pytest.approx(0.22145, abs=1e-5)
        assert report["comparison"]["pass"] is True
        assert report["gamma"] == pytest.approx(64 / 225)

    @pytest.mark.parametrize("phi", ["0", "1", "2.5"])
    def test_t_plus_never_singlet(self, phi, capsys):
        report = self.run(capsys, "--kind", "T+", "--v1", "0.9", "--v2", "0.7", "--theta", "1.2", "--phi", phi)
        assert report["singlet_weight"] == pytest.approx(0.0, abs=1e-20)
        assert set(report["weights"]) >= {"sym_S", "anti_Tplus", "anti_Tminus"}

    def test_text_report(self, capsys):
        assert main(["cooper", "--kind", "T-"]) == 0
        assert "Cooper pair T- after the boost" in capsys.readouterr().out


class TestSweepCommand:
    """Test `sweep`."""

    def test_single_point_matches_single(self, tmp_path, capsys):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--phi", "1.0", "--theta", "0.8", "--output", str(out)]) == 0
        rows = read_csv(out)
        assert len(rows) == 2
        main(["single", "--phi", "1.0", "--theta", "0.8", "--format", "json"])
        single = json.loads(capsys.readouterr().out)
        assert float(rows[1][-1]) == single["entropy_bits"]

    def test_lexicographic_order(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--grid", "phi=0:1:2", "--grid", "theta=0.5:1:3", "--output", str(out)]) == 0
        rows = read_csv(out)[1:]
        assert [(float(r[2]), float(r[3])) for r in rows] == [
            (0.5, 0.0), (0.5, 1.0), (0.75, 0.0), (0.75, 1.0), (1.0, 0.0), (1.0, 1.0),
        ]

    def test_eta_sweep_gives_constant_entropy(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--grid", "eta=0:360deg:8", "--phi", "1.1", "--output", str(out)]) == 0
        entropies = [float(r[-1]) for r in read_csv(out)[1:]]
        assert max(entropies) - min(entropies) < 1e-12

    def test_phi_grid_near_c_matches_curve(self, tmp_path):
        sweep_out, curve_out = tmp_path / "sweep.csv", tmp_path / "curve.csv"
        assert main([
            "sweep", "--v1", "0.99999999", "--v2", "0.99999999", "--theta", "90deg",
            "--grid", "phi=0:180deg:7", "--output", str(sweep_out),
        ]) == 0
        assert main(["entropy-curve", "--steps", "7", "--output", str(curve_out)]) == 0
        swept = [float(r[-1]) for r in read_csv(sweep_out)[1:]]
        curve = [float(r[1]) for r in read_csv(curve_out)[1:]]
        assert swept == pytest.approx(curve, abs=1e-6)

    def test_cooper_mode_columns(self, tmp_path):
        out = tmp_path / "sweep.csv"
        assert main(["sweep", "--mode", "cooper", "--kind", "T0", "--grid", "theta=0.2:1.2:3", "--output", str(out)]) == 0
        rows = read_csv(out)
        assert rows[0][-8:] == [
            "sym_S", "sym_T0", "sym_Tplus", "sym_Tminus",
            "anti_S", "anti_T0", "anti_Tplus", "anti_Tminus",
        ]
        for row in rows[1:]:
            assert sum(float(x) for x in row[-8:]) == pytest.approx(1.0, abs=1e-12)

    def test_deterministic_file(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        args = ["sweep", "--mode", "cooper", "--grid", "phi=0:3:4", "--grid", "v1=0.1:0.9:3"]
        assert main([*args, "--output", str(first)]) == 0
        assert main([*args, "--output", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_floats_use_seventeen_digits(self, tmp_path):
        out = tmp_path / "sweep.csv"
        main(["sweep", "--grid", "theta=0.1:0.3:3", "--output", str(out)])
        middle = GridAxis(start=0.1, stop=0.3, steps=3).values()[1]
        assert read_csv(out)[2][2] == format_float(middle)
        assert float(read_csv(out)[2][2]) == middle

    def test_grid_too_large(self, capsys):
        args = ["sweep", "--grid", "v1=0:0.9:1000", "--grid", "theta=0:3:1000", "--grid", "phi=0:3:11"]
        assert main(args) == 2
        assert "11000000" in capsys.readouterr().err

    def test_unknown_grid_parameter(self, capsys):
        assert main(["sweep", "--grid", "gamma=0:1:3"]) == 2
        assert "--grid" in capsys.readouterr().err

    def test_speed_axis_out_of_range(self, capsys):
        assert main(["sweep", "--grid", "v2=0.5:1.0:3"]) == 2


class TestVerifyCommand:
    """Test `verify` on a small sample count."""

    def test_passes_and_reports_seed(self, tmp_path):
        out = tmp_path / "verify.json"
        assert main(["verify", "--samples", "20", "--seed", "3", "--format", "json", "--output", str(out)]) == 0
        report = json.loads(out.read_text())
        assert report["seed"] == 3
        assert report["passed"] is True
        assert report["gamma_exponent"]["measured"]["slope"] == pytest.approx(2.0, abs=0.01)

    def test_injected_perturbation_fails(self, capsys):
        assert main(["verify", "--samples", "5", "--inject-perturbation", "1e-6"]) == 1
        assert "VERIFICATION FAILED" in capsys.readouterr().out

    def test_byte_identical_reruns(self, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--samples", "10", "--seed", "9", "--format", "json"]
        assert main([*args, "--output", str(first)]) == 0
        assert main([*args, "--output", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()

    def test_workers_flag_is_forwarded(self, monkeypatch, capsys):
        seen = {}

        def fake_run(samples, seed, workers, perturbation):
            seen.update(samples=samples, seed=seed, workers=workers)
            raise OSError("stop")

        monkeypatch.setattr(cli, "run_verification", fake_run)
        assert main(["verify", "--samples", "3", "--workers", "4"]) == 3
        assert seen == {"samples": 3, "seed": 20240917, "workers": 4}
