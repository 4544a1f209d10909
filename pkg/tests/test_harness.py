import os
import struct

import numpy as np
import pytest

from dslab.core.exceptions import ConfigurationError, DataError, SnapshotFormatError
from dslab.enums.types import ExactSolution, StopReason
from dslab.models.field import ComplexField2D
from dslab.schemas.results import DiagnosticsRecord, RunReport
from dslab.services.harness import (
    ExperimentService,
    list_bundled_configs,
    load_run_config,
    parse_run_config,
    read_report,
    read_series,
    read_snapshot,
    write_report,
    write_series,
    write_snapshot,
)
from dslab.services.harness.engine import RunObserver, exact_sampler
from dslab.services.harness.storage import report_lines, snapshot_name
from dslab.services.initial_data import sample_ozawa
from dslab.services.spectral import make_grid

BUNDLED = [
    "lump_validation",
    "ozawa_large_gaussian",
    "ozawa_small_gaussian",
    "ozawa_validation",
    "perturbed_lump",
    "semiclassical_gaussian",
]


def tiny_config(tmp_path, **overrides):
    data = {
        "name": "tiny",
        "grid": {"D": 2.0, "N": 32},
        "initial_data": {"kind": "gaussian", "amplitude": 0.5},
        "schedule": [{"n_steps": 20, "dt": 1e-3}],
        "snapshot_times": [0.01],
        "analysis": {"fit": False, "trace": False, "profile": True},
        "output_dir": str(tmp_path / "run"),
    }
    data.update(overrides)
    return parse_run_config(data)


@pytest.fixture
def service(tmp_path):
    return ExperimentService(runs_dir=str(tmp_path / "runs"))


class TestStorage:
    def test_series(self, tmp_path):
        records = [
            DiagnosticsRecord(step=i, t=0.1 * i + 1e-17, linf=1.0 / 3.0 + i, l2=2.0 ** 0.5, energy=-np.pi, delta_e=1e-9 * i)
            for i in range(5)
        ]
        path = write_series(str(tmp_path / "series.csv"), records)
        with open(path) as f:
            assert f.readline().strip() == "step,t,linf,l2,energy,delta_e"
        assert read_series(path) == records

    def test_series_random_values_read_back_exactly(self, tmp_path):
        rng = np.random.default_rng(7)
        values = rng.standard_normal((200, 5)) * 10.0 ** rng.integers(-12, 6, size=(200, 5))
        records = [
            DiagnosticsRecord(step=i, t=row[0], linf=abs(row[1]), l2=abs(row[2]), energy=row[3], delta_e=row[4])
            for i, row in enumerate(values)
        ]
        path = write_series(str(tmp_path / "series.csv"), records)
        assert read_series(path) == records

    def test_series_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("step,t,linf\n0,0.0,1.0\n")
        with pytest.raises(DataError):
            read_series(str(path))

    def test_series_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            read_series(str(tmp_path / "nope.csv"))

    def test_snapshot(self, tmp_path, random_field):
        path = write_snapshot(str(tmp_path / snapshot_name(0)), random_field, 0.125, 0.1)
        assert os.path.basename(path) == "snap_000.f2d"
        assert os.path.getsize(path) == 36 + 16 * 64 * 64
        snap = read_snapshot(path)
        assert np.array_equal(snap.field.data, random_field.data)
        assert snap.field.grid.D == random_field.grid.D
        assert snap.t == 0.125
        assert snap.epsilon == 0.1

    def test_snapshot_header_layout(self, tmp_path, small_grid):
        path = write_snapshot(str(tmp_path / "s.f2d"), ComplexField2D(small_grid, np.zeros((64, 64))), 1.5)
        with open(path, "rb") as f:
            raw = f.read(36)
        assert struct.unpack("<4sIIddd", raw) == (b"DS2F", 1, 64, 2.0, 1.5, 1.0)

    @pytest.mark.parametrize(
        "offset,payload",
        [(0, b"XXXX"), (4, struct.pack("<I", 2)), (8, struct.pack("<I", 32))],
        ids=["magic", "version", "size"],
    )
    def test_corrupt_snapshot(self, tmp_path, random_field, offset, payload):
        path = write_snapshot(str(tmp_path / "s.f2d"), random_field, 0.0)
        with open(path, "r+b") as f:
            f.seek(offset)
            f.write(payload)
        with pytest.raises(SnapshotFormatError):
            read_snapshot(path)

    def test_truncated_snapshot(self, tmp_path, random_field):
        path = write_snapshot(str(tmp_path / "s.f2d"), random_field, 0.0)
        with open(path, "r+b") as f:
            f.truncate(100)
        with pytest.raises(SnapshotFormatError):
            read_snapshot(path)

    def test_report(self, tmp_path):
        report = RunReport(run_id="abc", name="demo", stop_reason=StopReason.ENERGY_GUARD, stop_step=12, stop_time=0.5)
        lines = report_lines(report)
        assert "stop_reason = energy_guard" in lines
        assert "stop_time = 0.5" in lines
        values = read_report(write_report(str(tmp_path / "report.txt"), report))
        assert values["name"] == "demo"
        assert values["stop_step"] == "12"


class TestConfigLoading:
    def test_bundled_names(self):
        assert set(BUNDLED) <= set(list_bundled_configs())

    @pytest.mark.parametrize("name", BUNDLED)
    def test_bundled_configs_validate(self, name):
        config = load_run_config(name)
        assert config.name == name
        assert config.t_final() != config.t0

    def test_lump_validation_schedule(self):
        config = load_run_config("lump_validation")
        (phase,) = config.resolved_phases()
        assert phase.dt == pytest.approx(0.01)
        assert config.t_final() == pytest.approx(1.0)
        assert config.exact == ExactSolution.LUMP

    def test_overrides(self):
        config = load_run_config("lump_validation", {"grid": {"D": 50, "N": 256}})
        assert config.grid.N == 256

    def test_unknown_name(self):
        with pytest.raises(ConfigurationError):
            load_run_config("no_such_config")

    def test_bad_yaml(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("grid: [unclosed\n")
        with pytest.raises(ConfigurationError):
            load_run_config(str(path))

    def test_not_a_mapping(self, tmp_path):
        path = tmp_path / "list.yaml"
        path.write_text("- 1\n- 2\n")
        with pytest.raises(ConfigurationError):
            load_run_config(str(path))

    def test_validation_errors_are_collected(self, tmp_path):
        with pytest.raises(ConfigurationError) as info:
            parse_run_config({"grid": {"D": -1, "N": 4}, "initial_data": {"kind": "gaussian"}, "schedule": []})
        assert len(info.value.details["errors"]) >= 3

    def test_phase_needs_one_step_size(self, tmp_path):
        with pytest.raises(ConfigurationError):
            tiny_config(tmp_path, schedule=[{"n_steps": 10, "dt": 1e-3, "t_end": 1.0}])

    def test_snapshot_outside_range(self, tmp_path):
        with pytest.raises(ConfigurationError):
            tiny_config(tmp_path, snapshot_times=[5.0])

    def test_phases_and_record_steps(self, tmp_path):
        config = tiny_config(
            tmp_path,
            t0=-1.0,
            schedule=[{"n_steps": 25, "t_end": 0.0, "record_every": 10}, {"n_steps": 3, "dt": 1e-4}],
            snapshot_times=[],
        )
        first, second = config.resolved_phases()
        assert first.dt == pytest.approx(0.04)
        assert second.dt == 1e-4
        assert config.t_final() == pytest.approx(0.0003)
        assert config.record_steps() == [0, 10, 20, 25, 26, 27, 28]


class TestExperimentService:
    def test_run(self, tmp_path, service):
        config = tiny_config(tmp_path)
        report = service.run_experiment(config)
        out = tmp_path / "run"

        assert report.stop_reason == StopReason.COMPLETED
        assert report.last_valid_step == 20
        assert report.last_valid_time == pytest.approx(0.02)
        assert report.l2_drift <= 1e-12
        assert [s.step for s in report.snapshots] == [10, 20]
        assert all(s.profile is not None for s in report.snapshots)
        assert report.fit is None

        assert len(read_series(str(out / "series.csv"))) == 21
        assert read_snapshot(str(out / "snap_000.f2d")).t == pytest.approx(0.01)
        assert read_snapshot(str(out / "snap_001.f2d")).t == pytest.approx(0.02)
        assert read_report(str(out / "report.txt"))["stop_reason"] == "completed"
        assert (out / "report.json").exists()
        assert service.get_run_result(report.run_id) is report
        assert service.get_run_results()[0]["name"] == "tiny"

    def test_default_output_dir(self, tmp_path, service):
        config = tiny_config(tmp_path, output_dir=None, snapshot_times=[])
        report = service.run_experiment(config)
        assert report.output_dir.startswith(service.runs_dir)
        assert os.path.exists(os.path.join(report.output_dir, "series.csv"))

    def test_guard_halt_truncates(self, tmp_path, service):
        config = tiny_config(
            tmp_path,
            grid={"D": 2.0, "N": 64},
            initial_data={"kind": "lump", "prefactor": 3.0, "lump": {"eta": -1.0}},
            schedule=[{"n_steps": 50, "dt": 0.05}],
            guard={"delta_e_threshold": 1e-12},
            snapshot_times=[0.0, 1.0],
        )
        report = service.run_experiment(config)
        assert report.stop_reason == StopReason.ENERGY_GUARD
        assert report.stop_step == report.last_valid_step + 1
        assert all(s.step <= report.last_valid_step for s in report.snapshots)
        assert len(read_series(os.path.join(report.output_dir, "series.csv"))) == report.last_valid_step + 1

    def test_fit_failure_is_reported(self, tmp_path, service):
        config = tiny_config(tmp_path, analysis={"fit": True, "trace": True, "profile": False})
        report = service.run_experiment(config)
        assert report.fit is not None or report.fit_error
        # 32 points per axis leave too few tail modes for the tracer
        assert any(e.startswith("trace:") for s in report.snapshots for e in s.errors)

    def test_exact_compare(self, tmp_path, service):
        config = tiny_config(
            tmp_path,
            grid={"D": 10.0, "N": 64},
            initial_data={"kind": "lump", "lump": {"eta": -1.0}},
            schedule=[{"n_steps": 10, "dt": 1e-3}],
            snapshot_times=[],
        )
        frame = service.exact_compare(config, ExactSolution.LUMP)
        assert list(frame.columns) == ["step", "t", "rel_error"]
        assert len(frame) == 11
        assert frame["rel_error"].iloc[0] <= 1e-15
        assert np.all(np.isfinite(frame["rel_error"]))
        assert (tmp_path / "run" / "exact_compare.csv").exists()

    def test_exact_needs_matching_data(self, tmp_path):
        with pytest.raises(ConfigurationError):
            exact_sampler(tiny_config(tmp_path), ExactSolution.OZAWA)
        scaled = tiny_config(tmp_path, initial_data={"kind": "lump", "prefactor": 1.1})
        with pytest.raises(ConfigurationError):
            exact_sampler(scaled, ExactSolution.LUMP)

    def test_exact_sample_at_blowup_time_is_reported(self, tmp_path):
        config = tiny_config(
            tmp_path,
            grid={"D": 4.0, "N": 32},
            initial_data={"kind": "ozawa"},
            schedule=[{"n_steps": 5, "t_end": 0.25}],
            snapshot_times=[],
            exact="ozawa",
        )
        grid = make_grid(4.0, 32)
        observer = RunObserver(config, grid, ExactSolution.OZAWA)
        field = sample_ozawa(grid, config.initial_data.ozawa, 0.2)

        assert observer(4, 0.2, field) is None
        assert observer(5, 0.25, field) is None
        assert [row[0] for row in observer.exact_rows] == [4]
        assert len(observer.errors) == 1
        assert observer.errors[0].startswith("exact:")

    def test_missing_run(self, service):
        with pytest.raises(DataError):
            service.get_run_result("nope")


@pytest.mark.extended
class TestBundledExperiments:
    def test_lump_validation(self, tmp_path, service):
        report = service.run_experiment(load_run_config("lump_validation", {"output_dir": str(tmp_path)}))
        assert report.stop_reason == StopReason.COMPLETED
        assert report.max_exact_error <= 1e-2
        assert report.l2_drift <= 1e-10
        assert report.max_abs_delta_e <= 1e-6

    def test_ozawa_validation(self, tmp_path, service):
        report = service.run_experiment(load_run_config("ozawa_validation", {"output_dir": str(tmp_path)}))
        assert report.fit is not None
        assert report.fit.gamma == pytest.approx(-1.0, abs=0.15)
        assert report.fit.t_star == pytest.approx(0.25, abs=0.02)

    def test_semiclassical_gaussian(self, tmp_path, service):
        report = service.run_experiment(load_run_config("semiclassical_gaussian", {"output_dir": str(tmp_path)}))
        assert report.stop_reason != StopReason.COMPLETED
        assert 0.27 <= report.last_valid_time <= 0.31
        assert 0.27 <= report.fit.t_star <= 0.33
        assert -1.15 <= report.fit.gamma <= -0.80
        assert report.snapshots[-1].profile.ratio <= 0.1

    def test_perturbed_lump(self, tmp_path, service):
        report = service.run_experiment(load_run_config("perturbed_lump", {"output_dir": str(tmp_path)}))
        assert report.fit is not None
        assert -1.15 <= report.fit.gamma <= -0.85
