"""输出与任务调度工具的测试."""

import numpy as np
import pytest

from config import shared_state
from utils.file_utils import allowed_file, format_value, write_csv
from utils.plot_utils import plot_residual_modes
from utils.task_utils import run_tasks


def reciprocal(value):
    return 1.0 / value


class TestRunTasks:
    def test_order_and_failures(self):
        results = run_tasks(reciprocal, [1.0, 0.0, 4.0])
        assert [r.index for r in results] == [0, 1, 2]
        assert [r.success for r in results] == [True, False, True]
        assert results[2].value == 0.25
        assert results[1].error.startswith("ZeroDivisionError")

    def test_process_pool(self, monkeypatch):
        monkeypatch.setattr(shared_state, "MAX_WORKERS", 2)
        try:
            results = run_tasks(abs, [-1, -2, -3])
        finally:
            shared_state.shutdown_executor()
        assert [r.value for r in results] == [1, 2, 3]


class TestFiles:
    @pytest.mark.parametrize(
        "value, text",
        [
            (None, ""),
            (True, "true"),
            (np.bool_(False), "false"),
            (3, "3"),
            (0.1, "0.1"),
            (np.float64(1) / 3, "0.3333333333333333"),
            ("z2", "z2"),
        ],
    )
    def test_format_value(self, value, text):
        assert format_value(value) == text

    def test_write_csv(self, tmp_path):
        path = write_csv(str(tmp_path / "nested" / "table.csv"), ("a", "b"), [(1, 0.5), (None, True)])
        with open(path, "rb") as f:
            assert f.read() == b"a,b\n1,0.5\n,true\n"

    def test_allowed_file(self):
        assert allowed_file("experiments.ini")
        assert allowed_file("RUN.CFG")
        assert not allowed_file("experiments.json")
        assert not allowed_file("ini")

    def test_residual_plot(self, tmp_path):
        t = np.linspace(0.0, 1.0, 50)
        path = plot_residual_modes(t, np.sin(t), np.cos(t), str(tmp_path / "modes.svg"), title="test")
        with open(path, encoding="utf-8") as f:
            content = f.read()
        assert content.lstrip().startswith("<?xml")
        assert "<dc:date>" not in content
