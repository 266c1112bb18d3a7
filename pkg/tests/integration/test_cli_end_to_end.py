import json

from epidemic_game.cli import EXIT_OK, main

SMALL_SIMULATION = ["simulate", "--M", "30", "--u", "0.03", "--u-star", "0.003", "--runs", "4", "--horizon", "100"]


def _names(directory):
    return sorted(path.name for path in directory.iterdir())


class TestSimulateCommand:
    """End-to-end runs of the simulate subcommand."""

    def test_writes_envelope(self, tmp_path):
        """Should write the envelope and manifest."""
        out = tmp_path / "run"
        assert main(SMALL_SIMULATION + ["--seed", "5", "--out", str(out)]) == EXIT_OK
        assert _names(out) == ["envelope.csv", "manifest.json"]
        lines = (out / "envelope.csv").read_text().splitlines()
        assert lines[0] == "day,mean,min,max"
        assert len(lines) == 102

    def test_same_seed_same_bytes(self, tmp_path):
        """Should produce byte-identical CSVs for identical configurations."""
        for name in ("a", "b"):
            assert main(SMALL_SIMULATION + ["--seed", "5", "--out", str(tmp_path / name)]) == EXIT_OK
        assert (tmp_path / "a" / "envelope.csv").read_bytes() == (tmp_path / "b" / "envelope.csv").read_bytes()

    def test_manifest_reproduces_run(self, tmp_path):
        """Should reproduce a run from its manifest alone."""
        first = tmp_path / "first"
        second = tmp_path / "second"
        assert main(SMALL_SIMULATION + ["--case", "lockdown", "--seed", "9", "--out", str(first)]) == EXIT_OK
        manifest = json.loads((first / "manifest.json").read_text())
        assert manifest["command"] == "simulate"
        assert manifest["case"] == "lockdown"

        argv = ["simulate", "--config", str(first / "manifest.json"), "--out", str(second)]
        assert main(argv) == EXIT_OK
        assert (first / "envelope.csv").read_bytes() == (second / "envelope.csv").read_bytes()

    def test_runs_and_raster(self, tmp_path):
        """Should add per-run trajectories and the infection raster on request."""
        argv = SMALL_SIMULATION + ["--keep-runs", "--raster-run", "1", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        assert _names(tmp_path) == ["envelope.csv", "manifest.json", "raster.csv", "runs.csv"]
        raster = (tmp_path / "raster.csv").read_text().splitlines()
        assert raster[0] == "agent,infection_day"
        assert len(raster) == 31


class TestOtherCommands:
    """End-to-end runs of nash, learn and si."""

    def test_nash_single_row(self, tmp_path):
        """Should write one equilibrium row."""
        assert main(["nash", "--m", "1", "--M", "4", "--out", str(tmp_path)]) == EXIT_OK
        lines = (tmp_path / "nash.csv").read_text().splitlines()
        assert len(lines) == 2

    def test_nash_sweep(self, tmp_path):
        """Should write one row per infected count from 0 to M."""
        assert main(["nash", "--M", "5", "--sweep", "--out", str(tmp_path)]) == EXIT_OK
        lines = (tmp_path / "nash.csv").read_text().splitlines()
        assert len(lines) == 1 + 6

    def test_learn(self, tmp_path):
        """Should write the table, trajectories and summary."""
        argv = ["learn", "--preset", "case3", "--M", "8", "--episodes", "5", "--horizon", "10"]
        assert main(argv + ["--out", str(tmp_path)]) == EXIT_OK
        assert _names(tmp_path) == ["manifest.json", "q_table.csv", "summary.csv", "trajectories.csv"]
        summary = (tmp_path / "summary.csv").read_text().splitlines()
        assert len(summary) == 1 + 5

    def test_si_several_coefficients(self, tmp_path):
        """Should write one file per infection coefficient, sampled at integer days."""
        argv = ["si", "--beta", "0.1", "0.3", "--s0", "0.01", "--days", "10", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        assert _names(tmp_path) == ["manifest.json", "si_beta_0.csv", "si_beta_1.csv"]
        lines = (tmp_path / "si_beta_0.csv").read_text().splitlines()
        assert len(lines) == 1 + 11
        assert lines[-1].startswith("10,")

    def test_si_dense(self, tmp_path):
        """Should keep every integration step with --dense."""
        argv = ["si", "--beta", "0.1", "--s0", "0.01", "--days", "10", "--dense", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        lines = (tmp_path / "si_beta_0.csv").read_text().splitlines()
        assert len(lines) == 1 + 1001

    def test_nash_objective_curves(self, tmp_path):
        """Should sample the healthy objective for each requested weight."""
        argv = ["nash", "--m", "1", "--M", "4", "--curve-alpha", "0.5", "1", "--out", str(tmp_path)]
        assert main(argv) == EXIT_OK
        assert _names(tmp_path) == ["manifest.json", "nash.csv", "objective_curve.csv"]
        lines = (tmp_path / "objective_curve.csv").read_text().splitlines()
        assert lines[0] == "alpha,m,u_infected,u,cost"
        assert len(lines) == 1 + 2 * 101
