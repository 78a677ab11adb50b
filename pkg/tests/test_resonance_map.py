"""参数直线、激活区间与临界能量的测试."""

import math

import pytest

from mathieu_service import (
    CharacteristicCurveId,
    CurveFamily,
    MathieuPoint,
    StabilityClass,
    characteristic_value,
    classify_by_curves,
)
from resonance_service import (
    InvalidSystemError,
    ModeSystem,
    activating_intervals,
    amplitude_of_energy,
    amplitude_of_q,
    crossings,
    diagram_points,
    energy_of_amplitude,
    energy_of_q,
    first_activation,
    first_stability_threshold,
    line_of,
    q_of_amplitude,
)


def x0_ranges(system, mode_index, x0_max):
    return [iv.x0_range for iv in activating_intervals(system, mode_index, x0_max)]


class TestConversions:
    def test_energy_and_q(self):
        assert energy_of_amplitude(1.0, 1.0) == pytest.approx(0.5)
        assert q_of_amplitude(1.0, 1.0) == pytest.approx(0.25)
        assert energy_of_q(1.0, 0.25) == pytest.approx(0.5)
        assert amplitude_of_q(1.0, 0.25) == pytest.approx(1.0)

    def test_inverse_pairs(self):
        mu = math.sqrt(2.0) / 2.0
        assert amplitude_of_energy(mu, energy_of_amplitude(mu, 2.3)) == pytest.approx(2.3)
        assert amplitude_of_q(mu, q_of_amplitude(mu, 2.3, 2.0), 2.0) == pytest.approx(2.3)

    def test_coupling_scales_q_but_not_energy(self):
        """γ = 2 时同一振幅的 q 加倍，而 E(x0) 不变"""
        assert q_of_amplitude(1.0, 1.0, coupling=2.0) == pytest.approx(0.5)
        assert energy_of_q(1.0, 0.5, coupling=2.0) == pytest.approx(energy_of_amplitude(1.0, 1.0))

    def test_negative_energy_rejected(self):
        with pytest.raises(InvalidSystemError):
            amplitude_of_energy(1.0, -0.1)

    def test_non_positive_mu_rejected(self):
        with pytest.raises(InvalidSystemError):
            energy_of_amplitude(0.0, 1.0)


class TestModeSystem:
    def test_invalid_frequencies(self):
        with pytest.raises(InvalidSystemError):
            ModeSystem(mu=0.0, lambda1=1.0, lambda2=1.0, epsilon=0.0, x0=1.0)
        with pytest.raises(InvalidSystemError):
            ModeSystem(mu=1.0, lambda1=1.0, lambda2=1.0, epsilon=-1e-3, x0=1.0)
        with pytest.raises(InvalidSystemError):
            ModeSystem(mu=1.0, lambda1=float("nan"), lambda2=1.0, epsilon=0.0, x0=1.0)

    def test_frequency_index(self, experiment1):
        assert experiment1.frequency(2) == pytest.approx(math.sqrt(0.9))
        with pytest.raises(InvalidSystemError):
            experiment1.frequency(3)

    def test_lines_and_points(self, experiment1):
        assert line_of(experiment1, 1).intercept == pytest.approx(0.1)
        assert line_of(experiment1, 2).intercept == pytest.approx(0.9)
        p1, p2 = diagram_points(experiment1, x0=1.0)
        assert (p1.q, p1.a) == (pytest.approx(0.25), pytest.approx(0.6))
        assert (p2.q, p2.a) == (pytest.approx(0.25), pytest.approx(1.4))


class TestExperiment1:
    def test_intervals(self, experiment1):
        mode1 = activating_intervals(experiment1, 1, 3.5)
        mode2 = activating_intervals(experiment1, 2, 3.5)
        expected1 = [(1.1, 1.8), (2.69, 3.44)]
        expected2 = [(0.36, 0.63), (2.42, 2.99)]
        assert [iv.region_order for iv in mode1] == [1, 2]
        assert [iv.region_order for iv in mode2] == [1, 2]
        for found, (lo, hi) in zip([iv.x0_range for iv in mode1], expected1):
            assert found == (pytest.approx(lo, abs=0.02), pytest.approx(hi, abs=0.02))
        for found, (lo, hi) in zip([iv.x0_range for iv in mode2], expected2):
            assert found == (pytest.approx(lo, abs=0.02), pytest.approx(hi, abs=0.02))

    def test_interval_coordinates_agree(self, experiment1):
        for iv in activating_intervals(experiment1, 2, 1.0):
            assert iv.energy_range[0] == pytest.approx(energy_of_amplitude(1.0, iv.x0_range[0]))
            assert iv.q_range[1] == pytest.approx(q_of_amplitude(1.0, iv.x0_range[1]))

    def test_truncated_interval_reports_full_range(self, experiment1):
        """x0_max = 3 截断 I_1^2，右端点仍按完整区间给出"""
        last = activating_intervals(experiment1, 1, 3.0)[-1]
        assert last.truncated
        assert last.x0_range[1] == pytest.approx(3.44, abs=0.02)

    def test_crossings(self, experiment1):
        found = crossings(experiment1, 3.0)
        expected = {"A": 0.033, "B": 0.099, "C": 0.3, "D": 0.81, "E": 1.46, "F": 1.81}
        by_label = {c.label: c for c in found}
        for label, q in expected.items():
            assert by_label[label].q == pytest.approx(q, abs=0.01)
        assert (by_label["A"].mode_index, by_label["A"].curve.family) == (2, CurveFamily.B)
        assert (by_label["B"].mode_index, by_label["B"].curve.family) == (2, CurveFamily.A)
        assert by_label["C"].mode_index == 1

    def test_critical_energy(self, experiment1):
        assert first_stability_threshold(experiment1) == pytest.approx(0.066, abs=0.004)

    def test_first_activation_of_each_mode(self, experiment1):
        assert first_activation(experiment1, 2).x0_range[0] == pytest.approx(0.36, abs=0.02)
        assert first_activation(experiment1, 1).x0_range[0] == pytest.approx(1.1, abs=0.02)

    def test_invalid_scan_limit(self, experiment1):
        with pytest.raises(InvalidSystemError):
            activating_intervals(experiment1, 1, 0.0)


class TestExperiment2:
    def test_intervals(self, experiment2):
        (i11, i12), (i21, i22) = x0_ranges(experiment2, 1, 6.8), x0_ranges(experiment2, 2, 6.8)
        assert i11 == (pytest.approx(3.22, abs=0.02), pytest.approx(3.42, abs=0.02))
        assert i12 == (pytest.approx(5.08, abs=0.02), pytest.approx(5.42, abs=0.02))
        assert i21 == (pytest.approx(4.349, abs=0.005), pytest.approx(4.357, abs=0.005))
        assert i22 == (pytest.approx(6.58, abs=0.01), pytest.approx(6.614, abs=0.01))

    def test_narrow_flag(self, experiment2):
        first = activating_intervals(experiment2, 2, 5.0)[0]
        assert first.narrow
        assert first.x0_width < 1e-2
        assert not activating_intervals(experiment2, 1, 5.0)[0].narrow


class TestExperiment3:
    def test_intervals(self, experiment3):
        (i11, i12), (i21, i22) = x0_ranges(experiment3, 1, 4.25), x0_ranges(experiment3, 2, 4.25)
        assert i11 == (pytest.approx(1.007, abs=0.002), pytest.approx(1.009, abs=0.002))
        assert i12 == (pytest.approx(2.915, abs=0.01), pytest.approx(2.969, abs=0.01))
        assert i21 == (pytest.approx(2.01467, abs=1e-4), pytest.approx(2.01468, abs=1e-4))
        assert i21[1] - i21[0] < 1e-3
        assert i22 == (pytest.approx(4.2233, abs=1e-3), pytest.approx(4.2239, abs=1e-3))

    def test_all_intervals_narrow_except_second_mode1(self, experiment3):
        intervals = activating_intervals(experiment3, 1, 4.25) + activating_intervals(experiment3, 2, 4.25)
        assert [iv.narrow for iv in intervals] == [True, False, True, True]


class TestWeightedCoupling:
    def test_thresholds_shift_with_coupling(self, experiment1):
        """γ = 2 使模态 1 的激活振幅缩小 √2 倍"""
        plain = activating_intervals(experiment1, 1, 2.0)[0]
        weighted = activating_intervals(experiment1, 1, 2.0, coupling=2.0)[0]
        assert weighted.q_range[0] == pytest.approx(plain.q_range[0], abs=1e-5)
        assert weighted.x0_range[0] == pytest.approx(plain.x0_range[0] / math.sqrt(2.0), rel=1e-4)


class TestIntervalStructure:
    @pytest.mark.parametrize("mode_index", [1, 2])
    def test_line_alternates_between_regions(self, experiment1, mode_index):
        """直线先处于稳定区，之后在稳定区与激活区间之间交替"""
        line = line_of(experiment1, mode_index)
        intervals = activating_intervals(experiment1, mode_index, 3.0)
        edges = [0.0] + [q for iv in intervals for q in iv.q_range]
        for lo, hi in zip(edges[0::2], edges[1::2]):
            q = 0.5 * (lo + hi)
            assert classify_by_curves(MathieuPoint(q=q, a=line.at(q)))[0] == StabilityClass.STABLE
        for iv in intervals:
            q = 0.5 * sum(iv.q_range)
            assert classify_by_curves(MathieuPoint(q=q, a=line.at(q))) == (StabilityClass.UNSTABLE, iv.region_order)

    @pytest.mark.parametrize("mode_index", [1, 2])
    def test_endpoints_lie_on_bounding_curves(self, experiment1, mode_index):
        """区间在 b_n 处进入 U_n，在 a_n 处离开"""
        line = line_of(experiment1, mode_index)
        for iv in activating_intervals(experiment1, mode_index, 3.0):
            (q_lo, q_hi), n = iv.q_range, iv.region_order
            entry = characteristic_value(CharacteristicCurveId(CurveFamily.B, n), q_lo)
            exit_ = characteristic_value(CharacteristicCurveId(CurveFamily.A, n), q_hi)
            assert line.at(q_lo) == pytest.approx(entry, abs=1e-5)
            assert line.at(q_hi) == pytest.approx(exit_, abs=1e-5)

    @pytest.mark.parametrize("mode_index", [1, 2])
    def test_frequency_scaling(self, experiment1, mode_index):
        """μ、λ_i 同乘 c: q 区间不变，x0 乘 c，能量乘 c⁴"""
        c = 2.0
        scaled = ModeSystem(
            mu=c * experiment1.mu,
            lambda1=c * experiment1.lambda1,
            lambda2=c * experiment1.lambda2,
            epsilon=experiment1.epsilon,
            x0=experiment1.x0,
        )
        base = activating_intervals(experiment1, mode_index, 3.0)
        other = activating_intervals(scaled, mode_index, 3.0 * c)
        assert len(other) == len(base)
        for b, s in zip(base, other):
            assert s.region_order == b.region_order
            assert s.q_range == pytest.approx(b.q_range, abs=1e-6)
            assert s.x0_range == pytest.approx(tuple(c * x0 for x0 in b.x0_range), rel=1e-6)
            assert s.energy_range == pytest.approx(tuple(c**4 * e for e in b.energy_range), rel=1e-6)

    @pytest.mark.parametrize("name, scan", [("experiment1", 3.5), ("experiment2", 6.8), ("experiment3", 4.25)])
    def test_orders_start_above_intercept(self, request, name, scan):
        """第一个激活区间的阶数为 ⌊λ_i/μ⌋ + 1，之后逐阶出现，不跳过任何不稳定区"""
        system = request.getfixturevalue(name)
        for mode_index in (1, 2):
            first = math.floor(system.frequency(mode_index) / system.mu) + 1
            orders = [iv.region_order for iv in activating_intervals(system, mode_index, scan)]
            assert orders
            assert orders == list(range(first, first + len(orders)))
