import math

import numpy as np
import pytest
from pydantic import ValidationError

from epidemic_game.agents.q_learning_agent import (
    epsilon_schedule,
    greedy_rollout,
    new_table,
    run_episode,
    select_action,
    td_update,
    train,
)
from epidemic_game.agents.q_table import QTable
from epidemic_game.errors import ConfigError
from epidemic_game.plugins.cost_plugins import p_default
from epidemic_game.schemas.learning import EpisodeRecord, TrainConfig, default_action_levels


def _table(row):
    Q = QTable(M=2, action_levels=[0.0, 0.5, 1.0])
    Q.values[0, 1] = row
    return Q


class TestEpsilonSchedule:
    """Tests for the linearly decaying exploration rate."""

    def test_values(self):
        """Should decay from 0.5 to 0."""
        assert epsilon_schedule(0, 200) == 0.5
        assert epsilon_schedule(100, 200) == 0.25
        assert epsilon_schedule(200, 200) == 0.0

    def test_rejects_zero_episodes(self):
        """Should raise ConfigError when E_max is 0."""
        with pytest.raises(ConfigError):
            epsilon_schedule(0, 0)

    def test_rejects_episode_out_of_range(self):
        """Should raise ValueError past E_max."""
        with pytest.raises(ValueError):
            epsilon_schedule(201, 200)


class TestSelectAction:
    """Tests for epsilon-greedy selection."""

    def test_greedy_unique_minimum(self, rng):
        """Should pick the argmin when not exploring."""
        Q = _table([3.0, 1.0, 2.0])
        assert {select_action(Q, 0, 1, 0.0, rng) for _ in range(50)} == {1}

    def test_full_exploration_is_uniform(self, rng):
        """Should pick every action about equally often with eps = 1."""
        Q = _table([3.0, 1.0, 2.0])
        counts = np.bincount([select_action(Q, 0, 1, 1.0, rng) for _ in range(30_000)], minlength=3)
        assert np.all(np.abs(counts / 30_000 - 1 / 3) < 0.02)

    def test_ties_are_uniform(self, rng):
        """Should break greedy ties uniformly."""
        Q = _table([2.0, 2.0, 2.0])
        counts = np.bincount([select_action(Q, 0, 1, 0.0, rng) for _ in range(100_000)], minlength=3)
        assert np.all(np.abs(counts / 100_000 - 1 / 3) < 0.01)


class TestTDUpdate:
    """Tests for the temporal-difference update."""

    def test_myopic_full_step(self):
        """Should set the entry to the realized cost with gamma = 0, eta = 1."""
        Q = QTable(M=2, action_levels=[0.0, 1.0])
        td_update(Q, 0, 1, 1, 0.7, 1, 2, gamma=0.0, eta=1.0)
        assert Q.values[0, 1, 1] == 0.7
        assert Q.visits[0, 1, 1] == 1

    def test_discounted_target(self):
        """Should use cost + gamma * min of the next row."""
        Q = QTable(M=2, action_levels=[0.0, 1.0])
        Q.values[1, 2] = [2.0, 5.0]
        td_update(Q, 0, 1, 0, 1.0, 1, 2, gamma=0.5, eta=1.0)
        assert Q.values[0, 1, 0] == 2.0

    def test_partial_step(self):
        """Should move by eta times the TD error."""
        Q = QTable(M=1, action_levels=[0.0], q_init=4.0)
        td_update(Q, 0, 0, 0, 2.0, 0, 1, gamma=0.0, eta=0.25)
        assert Q.values[0, 0, 0] == pytest.approx(3.5)

    def test_zero_error_keeps_value(self):
        """Should leave the table unchanged when the TD error is 0."""
        Q = QTable(M=1, action_levels=[0.0], q_init=3.0)
        td_update(Q, 0, 0, 0, 3.0, 0, 1, gamma=0.0, eta=0.5)
        assert Q.values[0, 0, 0] == 3.0


class TestQTable:
    """Tests for the shared table."""

    def test_rejects_unsorted_levels(self):
        """Should require strictly increasing action levels."""
        with pytest.raises(ValueError):
            QTable(M=3, action_levels=[0.5, 0.1])

    def test_unvisited_entries_are_masked(self):
        """Should report None for entries never updated and -1 for unvisited rows."""
        Q = QTable(M=1, action_levels=[0.0, 1.0])
        td_update(Q, 1, 1, 1, 1.0, 1, 1, gamma=0.0, eta=1.0)
        rows = {(r["x"], r["m"], r["action_level"]): r for r in Q.records()}
        assert rows[(1, 1, 1.0)]["q_value"] == 1.0
        assert rows[(1, 1, 0.0)]["q_value"] is None
        assert len(rows) == 2 * 2 * 2
        policy = Q.greedy_policy()
        assert policy[1, 1] == 1
        assert policy[0, 0] == -1


class TestTrainConfig:
    """Tests for learning configuration."""

    def test_default_levels(self):
        """Should discretize to {0, 1/M, 10/M}."""
        assert TrainConfig(M=50).action_levels == [0.0, 0.02, 0.2]
        assert default_action_levels(5) == [0.0, 0.2, 1.0]

    def test_presets(self):
        """Should configure the three learning cases."""
        assert TrainConfig.preset("case1").gamma == 0.0
        case3 = TrainConfig.preset("case3", M=10)
        assert (case3.gamma, case3.shaped, case3.M) == (0.5, True, 10)
        with pytest.raises(ValueError):
            TrainConfig.preset("case4")

    def test_rejects_discount_of_one(self):
        """Should require gamma < 1."""
        with pytest.raises(ValidationError):
            TrainConfig(gamma=1.0)


class TestRunEpisode:
    """Tests for one learning episode."""

    def test_single_infected_agent(self):
        """Should set Q(1, 1, a) to 1 + alpha p(u) after a one-day episode."""
        cfg = TrainConfig(M=1, m0=1, action_levels=[0.5], horizon=1, max_episodes=1)
        Q = new_table(cfg)
        record = run_episode(Q, cfg, 0.0, np.random.Generator(np.random.Philox(0)))
        assert Q.values[1, 1, 0] == pytest.approx(1.0 + math.exp(-2.0), abs=1e-15)
        assert record.m_trajectory == [1, 1]

    @pytest.mark.parametrize("shaped", [False, True])
    def test_all_infected(self, shaped, rng):
        """Should charge 1 + alpha p(u) (+ u when shaped) and keep m at M."""
        cfg = TrainConfig(M=3, m0=3, horizon=5, shaped=shaped)
        record = run_episode(new_table(cfg), cfg, 0.5, rng)
        assert record.m_trajectory == [3, 3]
        for t in record.transitions:
            u = cfg.action_levels[t.action]
            expected = 1.0 + p_default(u) + (u if shaped else 0.0)
            assert t.cost == pytest.approx(expected, abs=1e-12)

    def test_greedy_zero_activity_holds_the_line(self):
        """Should keep m at 1 when healthy agents greedily stay at zero activity."""
        cfg = TrainConfig(M=20, m0=1, horizon=30)
        Q = new_table(cfg)
        Q.values[0, :, 0] = 0.0
        Q.values[1, :, 2] = 0.0
        record = run_episode(Q, cfg, 0.0, np.random.Generator(np.random.Philox(1)), learn=False)
        assert record.m_trajectory == [1] * 31
        assert np.all(Q.visits == 0)

    def test_transitions_in_agent_order(self, rng):
        """Should record one transition per agent per day, in ascending agent order."""
        cfg = TrainConfig(M=6, m0=1, horizon=4)
        record = run_episode(new_table(cfg), cfg, 0.3, rng)
        days = len(record.m_trajectory) - 1
        assert len(record.transitions) == 6 * days
        assert [t.agent for t in record.transitions[:6]] == list(range(6))
        assert all(t.m_next >= t.m for t in record.transitions)

    def test_rejects_decreasing_trajectory(self):
        """Should refuse an episode record whose infected count decreases."""
        with pytest.raises(ValidationError):
            EpisodeRecord(episode=1, epsilon=0.1, m_trajectory=[2, 1], cumulative_cost=0.0)


class TestTrain:
    """Tests for the training loop."""

    def test_deterministic(self):
        """Should reproduce the table and trajectories for one seed."""
        cfg = TrainConfig(M=10, max_episodes=15, horizon=15, eval_every=5, seed=4)
        Q1, records1 = train(cfg)
        Q2, records2 = train(cfg)
        assert np.array_equal(Q1.values, Q2.values)
        assert [r.m_trajectory for r in records1] == [r.m_trajectory for r in records2]

    def test_one_shared_table(self):
        """Should update one table once per agent per simulated day."""
        cfg = TrainConfig(M=8, max_episodes=6, horizon=10, eval_every=3, seed=2)
        Q, records = train(cfg)
        agent_days = sum(cfg.M * (len(r.m_trajectory) - 1) for r in records)
        assert int(Q.visits.sum()) == agent_days
        assert [r.episode for r in records] == list(range(1, 7))
        assert records[-1].epsilon == 0.0
        assert [r.greedy_trajectory is not None for r in records] == [False, False, True, False, False, True]

    def test_greedy_rollout_does_not_learn(self):
        """Should leave the table untouched."""
        cfg = TrainConfig(M=5, horizon=5)
        Q = new_table(cfg)
        trajectory = greedy_rollout(Q, cfg, np.random.Generator(np.random.Philox(3)))
        assert trajectory[0] == 1
        assert np.all(Q.values == cfg.q_init)
