"""命令行与实验配置的测试."""

import csv
import os

import pytest

from commands import ConfigError, cmd_diagram, load_config_file, preset_config, resolve_config
from config import shared_state
from dynamics_service import QuadraticCoupling
from main import main
from transfer_service import prediction_intervals

CUSTOM_INI = """\
[quiet]
base = experiment1
epsilon = 0
x0 = 1.0
t_end = 20

[extra]
base = experiment1
x0_extra = 1.25, 0.55  ; 两个额外的点
secondary_lag = 150

[typo]
mu = 1.0
lambda1 = 0.5
lambda2 = 1.5
epsilon = 0.001
amplitude = 2.0
"""


@pytest.fixture
def ini_file(tmp_path):
    path = tmp_path / "experiments.ini"
    path.write_text(CUSTOM_INI, encoding="utf-8")
    return str(path)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


class TestConfig:
    def test_preset_grid(self):
        config = preset_config("experiment1")
        grid = config.x0_grid()
        assert len(grid) == 30
        assert grid[0] == 0.1 and grid[2] == 0.3 and grid[-1] == 3.0

    def test_extra_grid_points(self, ini_file):
        config = load_config_file(ini_file, "extra")
        grid = config.x0_grid()
        assert len(grid) == 32
        assert grid == sorted(grid)
        assert 0.55 in grid and 1.25 in grid
        assert config.secondary_lag == 150.0

    @pytest.mark.parametrize("name, scan", [("experiment2", 6.8), ("experiment3", 4.25)])
    def test_wide_intervals_reached_by_grid(self, name, scan):
        """预设网格在每个非窄激活区间内至少有两个点"""
        config = preset_config(name)
        grid = config.x0_grid()
        intervals = prediction_intervals(config.system(), QuadraticCoupling(), scan)
        wide = [iv for iv in intervals if not iv.narrow]
        assert wide
        for interval in wide:
            assert sum(interval.contains_x0(x0) for x0 in grid) >= 2, interval

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            preset_config("experiment9")

    def test_section_inherits_preset(self, ini_file):
        config = load_config_file(ini_file, "quiet")
        assert config.name == "quiet"
        assert config.epsilon == 0.0
        assert config.lambda2 == pytest.approx(preset_config("experiment1").lambda2)
        assert config.t_end == 20.0

    def test_unknown_key_rejected(self, ini_file):
        with pytest.raises(ConfigError, match="amplitude"):
            load_config_file(ini_file, "typo")

    def test_missing_section(self, ini_file):
        with pytest.raises(ConfigError):
            load_config_file(ini_file, "absent")

    def test_overrides_are_validated(self):
        assert resolve_config(preset="experiment1", overrides={"threshold": 5.0, "x0": None}).threshold == 5.0
        with pytest.raises(ConfigError):
            resolve_config(preset="experiment1", overrides={"threshold": 0.5})
        with pytest.raises(ConfigError):
            resolve_config(preset="experiment1", overrides={"secondary_lag": 0.0})

    def test_config_or_preset_required(self):
        with pytest.raises(ConfigError):
            resolve_config()


class TestCommands:
    def test_diagram_crossings_within_range(self, tmp_path):
        config = preset_config("experiment1")
        result = cmd_diagram(config, q_max=0.25, a_max=1.1, resolution=21, out_dir=str(tmp_path))
        assert set(result.summary["crossings"]) == {"A", "B"}
        rows = {row["label"]: row for row in read_rows(tmp_path / "crossings.csv")}
        assert float(rows["A"]["q"]) == pytest.approx(0.033, abs=0.01)
        assert float(rows["B"]["q"]) == pytest.approx(0.099, abs=0.01)
        assert rows["A"]["curve"] == "b1"

        grid = read_rows(tmp_path / "stability_grid.csv")
        assert len(grid) == 21 * 21
        assert {row["unstable"] for row in grid} == {"true", "false"}
        assert os.path.getsize(tmp_path / "diagram.svg") > 0

    def test_quartic_has_no_intervals(self):
        with pytest.raises(ConfigError):
            cmd_diagram(preset_config("quartic_unstable"))


class TestMain:
    def test_intervals(self, tmp_path, capsys):
        assert main(["intervals", "--preset", "experiment1", "--out", str(tmp_path)]) == 0
        rows = read_rows(tmp_path / "intervals.csv")
        assert [row["name"] for row in rows] == ["I_1^1", "I_1^2", "I_2^1", "I_2^2"]
        assert (tmp_path / "intervals.txt").exists()
        assert str(tmp_path / "intervals.csv") in capsys.readouterr().out

    def test_narrow_intervals_flagged(self, tmp_path):
        assert main(["intervals", "--preset", "experiment2", "--out", str(tmp_path)]) == 0
        assert "narrow" in (tmp_path / "intervals.txt").read_text(encoding="utf-8")

    def test_simulate_without_residual_excitation(self, ini_file, tmp_path, capsys):
        out = tmp_path / "run"
        assert main(["simulate", "--config", ini_file, "--preset", "quiet", "--out", str(out)]) == 0
        rows = read_rows(out / "trajectory.csv")
        assert float(rows[-1]["t"]) == pytest.approx(20.0)
        assert all(float(row["z1"]) == 0.0 and float(row["z2"]) == 0.0 for row in rows)
        assert "verdict: None" in capsys.readouterr().out

    def test_simulate_is_reproducible(self, tmp_path):
        for name in ("first", "second"):
            args = ["simulate", "--preset", "experiment1", "--x0", "0.4", "--t-end", "30", "--out", str(tmp_path / name)]
            assert main(args) == 0
        for filename in ("trajectory.csv", "residual_modes.svg"):
            assert (tmp_path / "first" / filename).read_bytes() == (tmp_path / "second" / filename).read_bytes()

    @pytest.mark.parametrize(
        "argv",
        [
            ["diagram", "--preset", "experiment1", "--q-max", "0"],
            ["intervals", "--preset", "experiment9"],
            ["intervals", "--preset", "quartic_unstable"],
            ["sweep", "--preset", "experiment1", "--threshold", "1"],
            ["sweep", "--preset", "experiment1", "--workers", "0"],
            ["sweep", "--preset", "experiment1", "--secondary-lag", "0"],
            ["simulate"],
        ],
    )
    def test_errors_exit_nonzero(self, argv, tmp_path, capsys):
        assert main(argv + ["--out", str(tmp_path)]) == 1
        assert "modal-capture: error:" in capsys.readouterr().err

    def test_workers_setting(self, monkeypatch, tmp_path):
        monkeypatch.setattr(shared_state, "MAX_WORKERS", 1)
        assert main(["intervals", "--preset", "experiment1", "--workers", "3", "--out", str(tmp_path)]) == 0
        assert shared_state.MAX_WORKERS == 3

    def test_report_for_degenerate_potential(self, tmp_path):
        assert main(["report", "--preset", "quartic_unstable", "--t-end", "5", "--out", str(tmp_path)]) == 0
        report = (tmp_path / "report.txt").read_text(encoding="utf-8")
        assert "constant coefficients" in report
        assert "Agreement:" in report
        assert len(read_rows(tmp_path / "sweep.csv")) == 10
