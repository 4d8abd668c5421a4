"""Tests for experiment configs, runs, sweeps and plot data."""

import csv
import json
from pathlib import Path

import pytest

from src.dyncluster.experiments import (
    ConfigError,
    apply_overrides,
    emit_plotdata,
    load_config,
    package_versions,
    run_experiment,
    validate_config,
)
from src.dyncluster.experiments import runner as experiment_runner
from src.dyncluster.graph.edgelist import write_edge_list
from src.dyncluster.models.schemas import ALGORITHM_ORDER

REPO_ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture
def edges_config(temp_dir, small_graph, small_cloud) -> dict:
    """Raw config for a 3-time-point run on the 60-node graph."""
    edges = write_edge_list(small_graph, temp_dir / "edges.txt")
    points = small_cloud.to_csv(temp_dir / "points.csv")
    return {
        "name": "small",
        "dataset": {"kind": "edges", "edges": str(edges), "points": str(points)},
        "t": 3,
        "s": 2,
        "k": 4,
        "delta": 3.0,
        "oversampling": 1.5,
        "seeds": {"dataset": 0, "schedule": 1, "sampler": 2, "clustering": 3},
        "output_dir": str(temp_dir / "out"),
    }


def _read_rows(path):
    with path.open(newline="") as f:
        return list(csv.DictReader(f))


class TestConfigLoading:
    """Test JSON/YAML config loading and overrides."""

    def test_shipped_configs_validate(self, monkeypatch):
        """Test every bundled config parses."""
        monkeypatch.chdir(REPO_ROOT)
        for name in (
            "gaussians_baseline.json",
            "gaussians_sweep_s.json",
            "gaussians_sweep_t.json",
            "gaussians_deletions.json",
            "image_baseline.yaml",
        ):
            cfg = load_config(f"config/{name}")
            assert cfg.epsilon == 0.3

    def test_yaml_and_json_agree(self, temp_dir):
        """Test both formats produce the same config."""
        (temp_dir / "a.json").write_text(json.dumps({"t": 5, "s": 2, "algorithms": ["cntrl"]}))
        (temp_dir / "a.yaml").write_text("t: 5\ns: 2\nalgorithms: [cntrl]\n")

        assert load_config(temp_dir / "a.json") == load_config(temp_dir / "a.yaml")

    def test_missing_file(self, temp_dir):
        """Test a missing file raises ConfigError."""
        with pytest.raises(ConfigError):
            load_config(temp_dir / "nope.json")

    def test_unparsable(self, temp_dir):
        """Test broken JSON raises ConfigError."""
        path = temp_dir / "bad.json"
        path.write_text("{t: ")

        with pytest.raises(ConfigError):
            load_config(path)

    def test_top_level_list(self, temp_dir):
        """Test non-mapping documents are rejected."""
        path = temp_dir / "list.yaml"
        path.write_text("- 1\n- 2\n")

        with pytest.raises(ConfigError):
            load_config(path)

    @pytest.mark.parametrize(
        "data",
        [
            {"epsilon": 0.5},
            {"algorithms": []},
            {"algorithms": ["kmeans"]},
            {"t": 0},
            {"delete_frac": 1.0},
            {"unknown": 1},
            {"dataset": {"kind": "image"}},
        ],
    )
    def test_invalid_values(self, data):
        """Test out-of-range or unknown settings raise ConfigError."""
        with pytest.raises(ConfigError):
            validate_config(data)

    def test_algorithms_canonical_order(self):
        """Test algorithm lists are deduplicated into canonical order."""
        cfg = validate_config({"algorithms": ["stbl", "cntrl", "stbl"]})

        assert cfg.algorithms == ["cntrl", "stbl"]

    def test_overrides(self):
        """Test overrides apply, None is ignored and seed sets all seeds."""
        cfg = validate_config({"t": 10, "s": 30})

        updated = apply_overrides(cfg, t=4, s=None, seed=9)

        assert updated.t == 4
        assert updated.s == 30
        assert set(updated.seeds.model_dump().values()) == {9}

    def test_override_revalidated(self):
        """Test overrides that break the config are rejected."""
        with pytest.raises(ConfigError):
            apply_overrides(validate_config({}), k=0)


class TestRunExperiment:
    """Test report directories."""

    def test_baseline_outputs(self, edges_config):
        """Test one CSV per algorithm with t rows, a schedule and a summary."""
        cfg = validate_config(edges_config)

        report = run_experiment(cfg, threads=2)

        assert report.ok
        out = cfg.output_dir
        for name in ALGORITHM_ORDER:
            rows = _read_rows(out / f"{name}.csv")
            assert [int(r["tau"]) for r in rows] == [1, 2, 3]
        summary = json.loads((out / "summary.json").read_text())
        assert summary["seeds"] == {"dataset": 0, "schedule": 1, "sampler": 2, "clustering": 3}
        assert summary["dataset"]["n"] == 60
        assert [r["algorithm"] for r in summary["runs"]] == list(ALGORITHM_ORDER)
        assert summary["errors"] == []
        assert "numpy" in summary["versions"]
        assert (out / "schedule.csv").is_file()

    def test_cntrl_pays_every_edge(self, edges_config, small_graph):
        """Test the CNTRL column ends at the edge count."""
        cfg = validate_config(edges_config | {"algorithms": ["cntrl"]})
        run_experiment(cfg)

        rows = _read_rows(cfg.output_dir / "cntrl.csv")
        assert int(rows[-1]["comm_cumulative"]) == small_graph.m

    def test_deterministic(self, edges_config, temp_dir):
        """Test equal seeds give byte-identical run files."""
        first = validate_config(edges_config | {"output_dir": str(temp_dir / "a")})
        second = validate_config(edges_config | {"output_dir": str(temp_dir / "b")})
        run_experiment(first, threads=1)
        run_experiment(second, threads=3)

        for name in ALGORITHM_ORDER:
            a = (temp_dir / "a" / f"{name}.csv").read_text()
            b = (temp_dir / "b" / f"{name}.csv").read_text()
            assert a == b

    def test_sweep(self, edges_config):
        """Test each sweep point gets a directory and rows in the sweep CSV."""
        raw = edges_config | {
            "algorithms": ["d2camp", "d2cabl"],
            "sweep": {"parameter": "s", "values": [1, 3]},
        }
        cfg = validate_config(raw)

        report = run_experiment(cfg)

        out = cfg.output_dir
        assert (out / "s=1" / "d2camp.csv").is_file()
        assert (out / "s=3" / "d2cabl.csv").is_file()
        rows = _read_rows(out / "sweep_s.csv")
        assert len(rows) == 2 * 2 * 3
        assert {r["s"] for r in rows} == {"1", "3"}
        assert set(report.cells) == {"s=1", "s=3"}

    def test_failed_cell_recorded(self, edges_config, mocker):
        """Test one failing algorithm is reported while the others still write."""
        original = experiment_runner.run_algorithm

        def flaky(name, *args, **kwargs):
            if name == "stmp":
                raise FloatingPointError("eigensolver diverged")
            return original(name, *args, **kwargs)

        mocker.patch.object(experiment_runner, "run_algorithm", side_effect=flaky)
        cfg = validate_config(edges_config)

        report = run_experiment(cfg)

        assert not report.ok
        assert report.errors[0]["algorithm"] == "stmp"
        assert not (cfg.output_dir / "stmp.csv").exists()
        assert (cfg.output_dir / "stbl.csv").is_file()
        summary = json.loads((cfg.output_dir / "summary.json").read_text())
        assert "eigensolver diverged" in summary["errors"][0]["error"]

    def test_edge_list_too_large_for_points(self, edges_config, temp_dir, small_cloud):
        """Test an edge list referencing missing points is a config error."""
        (temp_dir / "edges.txt").write_text(f"0 {small_cloud.n + 5} 1.0\n")
        cfg = validate_config(edges_config)

        with pytest.raises(ConfigError):
            run_experiment(cfg)

    def test_package_versions(self):
        """Test the version map includes this package."""
        versions = package_versions()

        assert "dyncluster" in versions
        assert "scipy" in versions


class TestPlotData:
    """Test series,tau,value files."""

    def test_plot_files(self, edges_config, temp_dir):
        """Test one row per algorithm and time point in each metric file."""
        cfg = validate_config(edges_config)
        run_experiment(cfg)

        written = emit_plotdata(cfg.output_dir, temp_dir / "plots")

        assert [p.name for p in written] == ["plot_comm.csv", "plot_ncut.csv"]
        rows = _read_rows(temp_dir / "plots" / "plot_comm.csv")
        assert len(rows) == len(ALGORITHM_ORDER) * 3
        assert [r["series"] for r in rows[::3]] == list(ALGORITHM_ORDER)

    def test_empty_directory(self, temp_dir):
        """Test a directory without run files raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            emit_plotdata(temp_dir)

    def test_bad_header(self, temp_dir):
        """Test a run file with the wrong columns raises ValueError."""
        (temp_dir / "cntrl.csv").write_text("a,b\n1,2\n")

        with pytest.raises(ValueError):
            emit_plotdata(temp_dir)
