"""Tests for parameter sweeps, CSV output and separability thresholds."""
import math

import numpy as np
import pytest

from gaussian_core.entropy import f_entropy
from measures.correlations import SubsystemKind
from model.params import SystemParams
from systems.sweep_system import (
    CSV_HEADER,
    PRESETS,
    SweepRow,
    SweepSpec,
    compute_row,
    describe_preset,
    find_threshold,
    format_rows,
    preset_spec,
    run_sweep,
    separability_margin,
    write_csv,
)
from utils.errors import InvalidParameter, SweepError

FIG2 = SystemParams(coop=34.0, squeeze=1.5, nth=0.0, damping_ratio=0.05)


def small_spec(**overrides):
    values = dict(variable="nth", start=0.0, stop=10.0, points=11, fixed=FIG2)
    values.update(overrides)
    return SweepSpec(**values)


class TestSweepSpec:
    def test_abscissae(self):
        np.testing.assert_allclose(small_spec().abscissae(), np.arange(11.0))

    @pytest.mark.parametrize("overrides", [
        dict(variable="kappa"),
        dict(points=1),
        dict(points=2.5),
        dict(start=5.0, stop=5.0),
        dict(subsystems=frozenset()),
        dict(fixed={"coop": 1.0}),
    ])
    def test_invalid_specs(self, overrides):
        with pytest.raises(InvalidParameter):
            small_spec(**overrides)

    def test_invalid_bound_reports_the_abscissa(self):
        with pytest.raises(SweepError) as excinfo:
            small_spec(start=-1.0)
        assert excinfo.value.x == -1.0


class TestPresets:
    def test_all_presets_build(self):
        for name in PRESETS:
            spec = preset_spec(name)
            assert len(spec.subsystems) == 1

    def test_fig2_grid(self):
        spec = preset_spec("fig2b")
        assert (spec.variable, spec.start, spec.stop, spec.points) == ("nth", 0.0, 30.0, 121)
        assert spec.fixed == FIG2
        assert spec.subsystems == frozenset({SubsystemKind.MECHANICAL})

    def test_fig3_grid(self):
        spec = preset_spec("fig3d")
        assert (spec.variable, spec.stop, spec.points) == ("coop", 100.0, 101)
        assert spec.fixed.nth == 2.0
        assert spec.subsystems == frozenset({SubsystemKind.OPTICAL})

    def test_unknown_preset(self):
        with pytest.raises(InvalidParameter):
            preset_spec("fig9")

    def test_description(self):
        text = describe_preset("fig2b")
        assert text.startswith("fig2b: nth 0..30 (121 points)")
        assert "squeeze=1.5" in text and "mechanical panel" in text


class TestRows:
    def test_entanglement_switches_off_between_grid_rows(self):
        rows = run_sweep(preset_spec("fig2b"))
        assert len(rows) == 121
        at_five, at_six = rows[20], rows[24]
        assert (at_five.x, at_six.x) == (5.0, 6.0)
        assert at_five.eof_mech > 0
        assert at_six.eof_mech == 0.0
        assert at_six.gqd_mech > 0 and at_six.qc_mech > 0
        assert at_six.eof_opt > 0

    def test_first_cooperativity_row(self):
        row = compute_row(preset_spec("fig3a"), 0.0)
        assert (row.eof_mech, row.gqd_mech, row.qc_mech) == (0.0, 0.0, 0.0)
        assert row.qc_opt == pytest.approx(2 * f_entropy(math.cosh(3.0) / 2), abs=1e-9)
        assert row.eof_opt == pytest.approx(f_entropy(math.cosh(3.0) / 2), abs=1e-9)

    def test_failing_row_carries_its_abscissa(self):
        with pytest.raises(SweepError) as excinfo:
            compute_row(small_spec(), -2.0)
        assert excinfo.value.x == -2.0

    def test_worker_threads_do_not_change_results(self):
        spec = small_spec()
        assert run_sweep(spec, workers=1) == run_sweep(spec, workers=4)

    def test_rows_are_sorted(self):
        xs = [row.x for row in run_sweep(small_spec(variable="coop", start=0.0, stop=50.0))]
        assert xs == sorted(xs)

    def test_columns_fall_with_temperature(self):
        rows = run_sweep(preset_spec("fig2a"))
        for key in CSV_HEADER[1:]:
            values = np.array([getattr(row, key) for row in rows])
            assert np.all(np.diff(values) <= 1e-12), key

    def test_coherence_dominates(self):
        for name in ("fig2b", "fig3b"):
            for row in run_sweep(preset_spec(name)):
                assert row.qc_mech >= max(row.eof_mech, row.gqd_mech) - 1e-9
                assert row.qc_opt >= max(row.eof_opt, row.gqd_opt) - 1e-9

    def test_as_dict_restricted_to_a_subsystem(self):
        row = SweepRow(1.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6)
        assert row.as_dict({SubsystemKind.OPTICAL}) == {"x": 1.0, "eof_opt": 0.4, "gqd_opt": 0.5, "qc_opt": 0.6}
        assert list(row.as_dict()) == list(CSV_HEADER)


class TestCsv:
    ROWS = [SweepRow(0.0, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0), SweepRow(0.1, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0)]

    def test_format(self):
        text = format_rows(self.ROWS)
        lines = text.split("\n")
        assert lines[0] == "x,eof_mech,gqd_mech,qc_mech,eof_opt,gqd_opt,qc_opt"
        assert lines[1] == "0,0,0.25,0.5,1,1.5,2"
        assert lines[2].startswith("0.10000000000000001,")
        assert text.endswith("\n") and "\r" not in text

    def test_custom_float_format(self):
        assert format_rows(self.ROWS[:1], ".3f").split("\n")[1] == "0.000,0.000,0.250,0.500,1.000,1.500,2.000"

    def test_values_round_trip_exactly(self):
        rows = run_sweep(small_spec())
        body = format_rows(rows).strip().split("\n")[1:]
        parsed = [tuple(float(v) for v in line.split(",")) for line in body]
        assert parsed == [row.values() for row in rows]

    def test_write_csv(self, tmp_path):
        path = tmp_path / "sweep.csv"
        write_csv(self.ROWS, path)
        assert path.read_text(encoding="utf-8") == format_rows(self.ROWS)


class TestThresholds:
    @pytest.mark.parametrize("squeeze, kind, expected", [
        (1.5, SubsystemKind.MECHANICAL, 5.87404),
        (1.5, SubsystemKind.OPTICAL, 9.79558),
        (1.0, SubsystemKind.MECHANICAL, 5.34520),
        (1.0, SubsystemKind.OPTICAL, 8.91368),
    ])
    def test_thermal_thresholds(self, squeeze, kind, expected):
        x = find_threshold("nth", FIG2.with_value("squeeze", squeeze), kind)
        assert x == pytest.approx(expected, abs=1e-4)
        assert separability_margin(FIG2.with_value("squeeze", squeeze).with_value("nth", x), kind) == \
            pytest.approx(0.0, abs=1e-10)

    def test_mirrors_separate_first(self):
        mech = find_threshold("nth", FIG2, SubsystemKind.MECHANICAL)
        opt = find_threshold("nth", FIG2, SubsystemKind.OPTICAL)
        assert mech < opt

    def test_no_sign_change(self):
        fixed = SystemParams(coop=34.0, squeeze=0.0, nth=0.0, damping_ratio=0.05)
        with pytest.raises(SweepError):
            find_threshold("nth", fixed, SubsystemKind.MECHANICAL, bracket=(1.0, 10.0))

    def test_unknown_variable(self):
        with pytest.raises(InvalidParameter):
            find_threshold("squeeze", FIG2, SubsystemKind.MECHANICAL)
