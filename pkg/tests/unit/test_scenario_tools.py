import numpy as np
import pytest
from pydantic import ValidationError

from epidemic_game.schemas.population import AgentState
from epidemic_game.schemas.scenario import EnsembleResult, InterventionCase, ScenarioSpec
from epidemic_game.tools.scenario_tools import (
    NEVER_INFECTED,
    activity_levels,
    infection_days,
    monte_carlo,
    policy_activity,
    run_trajectory,
)


def _spec(case, **overrides):
    values = {"case": case, "M": 50, "m0": 1, "u": 0.02, "u_star": 0.002, "T": 2, "horizon": 60, "runs": 5}
    values.update(overrides)
    return ScenarioSpec(**values)


class TestPolicyActivity:
    """Tests for the per-agent activity rule of each intervention case."""

    def test_no_intervention(self):
        """Should keep the normal level for everyone."""
        spec = _spec(InterventionCase.NO_INTERVENTION)
        assert policy_activity(spec, AgentState.INFECTED, 5, 3) == spec.u
        assert policy_activity(spec, AgentState.HEALTHY, None, 3) == spec.u

    def test_immediate_isolation(self):
        """Should drop infected agents to u_star from their first infected day."""
        spec = _spec(InterventionCase.IMMEDIATE_ISOLATION)
        assert policy_activity(spec, AgentState.INFECTED, 0, 0) == spec.u_star
        assert policy_activity(spec, AgentState.HEALTHY, None, 0) == spec.u

    def test_delayed_isolation_boundary(self):
        """Should switch to u_star once the agent has been infected for T days."""
        spec = _spec(InterventionCase.DELAYED_ISOLATION, T=2)
        assert policy_activity(spec, AgentState.INFECTED, 1, 4) == spec.u
        assert policy_activity(spec, AgentState.INFECTED, 2, 4) == spec.u_star
        assert policy_activity(spec, AgentState.HEALTHY, None, 4) == spec.u

    def test_delayed_isolation_needs_age(self):
        """Should refuse an infected agent without an infection age."""
        spec = _spec(InterventionCase.DELAYED_ISOLATION)
        with pytest.raises(ValueError):
            policy_activity(spec, AgentState.INFECTED, None, 4)

    def test_lockdown(self):
        """Should put everyone at u_star."""
        spec = _spec(InterventionCase.LOCKDOWN)
        assert policy_activity(spec, AgentState.HEALTHY, None, 0) == spec.u_star
        assert policy_activity(spec, AgentState.INFECTED, 7, 9) == spec.u_star

    @pytest.mark.parametrize("case", list(InterventionCase))
    def test_vectorized_rule_agrees(self, case):
        """Should give the same levels as the per-agent rule."""
        spec = _spec(case, T=2)
        states = np.array([1, 1, 1, 0, 0], dtype=np.int8)
        days = np.array([0, 3, 4, NEVER_INFECTED, NEVER_INFECTED])
        k = 5
        levels = activity_levels(spec, states, days, k)
        for i in range(5):
            age = k - days[i] if states[i] else None
            assert levels[i] == policy_activity(spec, int(states[i]), age, k)


class TestScenarioSpec:
    """Tests for scenario validation."""

    def test_rejects_u_star_above_u(self):
        """Should reject a reduced level above the normal level."""
        with pytest.raises(ValidationError):
            ScenarioSpec(u=0.001, u_star=0.01)

    def test_rejects_m0_above_M(self):
        """Should reject more initially infected agents than agents."""
        with pytest.raises(ValidationError):
            ScenarioSpec(M=5, m0=6)


class TestRunTrajectory:
    """Tests for single Monte Carlo runs."""

    def test_lockdown_at_zero_is_constant(self):
        """Should never infect anyone when every level is zero."""
        spec = _spec(InterventionCase.LOCKDOWN, u_star=0.0, m0=3)
        assert run_trajectory(spec, 0) == [3] * 61

    def test_all_infected_is_constant(self):
        """Should stay at M when everyone starts infected."""
        spec = _spec(InterventionCase.NO_INTERVENTION, M=10, m0=10)
        assert run_trajectory(spec, 0) == [10] * 61

    def test_length_start_and_monotone(self, small_spec):
        """Should start at m0, last horizon + 1 days and never decrease."""
        trajectory = run_trajectory(small_spec, 4)
        assert len(trajectory) == small_spec.horizon + 1
        assert trajectory[0] == small_spec.m0
        assert all(b >= a for a, b in zip(trajectory, trajectory[1:]))

    def test_deterministic_per_index(self, small_spec):
        """Should depend only on the seed and the run index."""
        assert run_trajectory(small_spec, 2) == run_trajectory(small_spec, 2)
        reseeded = small_spec.model_copy(update={"seed": small_spec.seed + 1})
        assert run_trajectory(small_spec, 2) != run_trajectory(reseeded, 2)

    def test_run_index_range(self, small_spec):
        """Should reject a run index outside the ensemble."""
        with pytest.raises(ValueError):
            run_trajectory(small_spec, small_spec.runs)

    def test_infection_days_match_trajectory(self, small_spec):
        """Should give a raster consistent with the infected counts of the same run."""
        days = infection_days(small_spec, 1)
        trajectory = run_trajectory(small_spec, 1)
        assert days[: small_spec.m0] == [0] * small_spec.m0
        for k in (0, 5, 20, small_spec.horizon):
            assert sum(1 for d in days if d is not None and d <= k) == trajectory[k]


class TestMonteCarlo:
    """Tests for ensemble aggregation."""

    def test_single_run_envelopes_coincide(self, small_spec):
        """Should report mean = min = max for one run."""
        spec = small_spec.model_copy(update={"runs": 1})
        result = monte_carlo(spec, n_jobs=1)
        trajectory = run_trajectory(spec, 0)
        assert result.min_mk == trajectory
        assert result.max_mk == trajectory
        assert result.mean_mk == [float(m) for m in trajectory]

    def test_lockdown_at_zero(self):
        """Should give three constant envelopes at m0."""
        spec = _spec(InterventionCase.LOCKDOWN, u_star=0.0, m0=2, runs=4)
        result = monte_carlo(spec, n_jobs=1)
        assert result.mean_mk == [2.0] * 61
        assert result.min_mk == result.max_mk == [2] * 61

    def test_envelope_invariants(self, small_spec):
        """Should keep min <= mean <= max and nondecreasing envelopes."""
        result = monte_carlo(small_spec, keep_trajectories=True, n_jobs=1)
        for lo, mean, hi in zip(result.min_mk, result.mean_mk, result.max_mk):
            assert lo <= mean <= hi
        for envelope in (result.min_mk, result.mean_mk, result.max_mk):
            assert all(b >= a for a, b in zip(envelope, envelope[1:]))
        assert len(result.trajectories) == small_spec.runs
        assert result.horizon == small_spec.horizon

    def test_parallel_matches_serial(self, small_spec):
        """Should not depend on the worker count."""
        serial = monte_carlo(small_spec, keep_trajectories=True, n_jobs=1)
        parallel = monte_carlo(small_spec, keep_trajectories=True, n_jobs=2)
        assert serial == parallel


class TestEnsembleResult:
    """Tests for ensemble diagnostics."""

    def test_day_to_reach(self):
        """Should return the first day at or above the level, or None."""
        result = EnsembleResult(mean_mk=[1, 2.5, 4, 4], min_mk=[1, 2, 3, 4], max_mk=[1, 3, 5, 5], runs=2)
        assert result.day_to_reach(2.5) == 1
        assert result.day_to_reach(4) == 2
        assert result.day_to_reach(10) is None

    def test_peak_growth_day(self):
        """Should return the day of the largest one-day increase."""
        result = EnsembleResult(mean_mk=[1, 2, 6, 7, 7], min_mk=[1, 2, 6, 7, 7], max_mk=[1, 2, 6, 7, 7], runs=1)
        assert result.peak_growth_day() == 1

    def test_rejects_ragged_envelopes(self):
        """Should reject envelopes of different lengths."""
        with pytest.raises(ValidationError):
            EnsembleResult(mean_mk=[1, 2], min_mk=[1], max_mk=[1, 2], runs=1)
