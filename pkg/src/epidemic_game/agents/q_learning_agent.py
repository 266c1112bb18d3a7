"""Multi-agent Q-learning with one shared table.

Each day every agent picks an action from the shared table with epsilon-greedy
exploration, the population steps once, and then every agent's TD update is
applied to the same table in ascending agent order.

Stream discipline per day: for each agent in ascending order, one uniform for the
explore/exploit coin, followed by one integer draw if the agent explores or has
to break a tie between greedy actions; then one uniform per healthy agent for
the transition.
"""
from __future__ import annotations

import logging

import numpy as np

from ..errors import ConfigError
from ..schemas.learning import EpisodeRecord, TrainConfig, Transition
from ..tools.dynamics_tools import step_array
from ..utils.rng import indexed_stream, master_stream
from .q_table import QTable

logger = logging.getLogger(__name__)


def epsilon_schedule(E: int, E_max: int) -> float:
    """Exploration rate 0.5 (1 - E / E_max)."""
    if E_max <= 0:
        raise ConfigError(f"E_max must be positive, got {E_max}")
    if not 0 <= E <= E_max:
        raise ValueError(f"episode index must lie in [0, {E_max}], got {E}")
    return 0.5 * (1.0 - E / E_max)


def select_action(Q: QTable, x: int, m: int, eps: float, rng: np.random.Generator) -> int:
    """Epsilon-greedy action index; greedy ties are broken uniformly."""
    if rng.random() < eps:
        return int(rng.integers(Q.n_actions))
    best = Q.minimizers(x, m)
    if best.size == 1:
        return int(best[0])
    return int(best[rng.integers(best.size)])


def td_update(
    Q: QTable,
    x: int,
    m: int,
    a: int,
    cost: float,
    x_next: int,
    m_next: int,
    gamma: float,
    eta: float,
) -> QTable:
    """Move Q(x, m, a) toward cost + gamma * min_a' Q(x_next, m_next, a')."""
    target = cost + gamma * Q.min_value(x_next, m_next)
    if eta == 1.0:
        Q.values[x, m, a] = target
    else:
        Q.values[x, m, a] += eta * (target - Q.values[x, m, a])
    Q.visits[x, m, a] += 1
    return Q


def new_table(cfg: TrainConfig) -> QTable:
    return QTable(cfg.M, cfg.action_levels, cfg.q_init)


def run_episode(
    Q: QTable,
    cfg: TrainConfig,
    eps: float,
    rng: np.random.Generator,
    episode: int = 0,
    learn: bool = True,
    keep_transitions: bool = True,
) -> EpisodeRecord:
    """Play one episode against the shared table.

    Agents 0..m0-1 start infected. The episode ends after ``cfg.horizon`` days or
    after the first day that ends with every agent infected.

    Args:
        Q: Shared table, updated in place when ``learn`` is set.
        cfg: Training configuration.
        eps: Exploration rate for this episode.
        rng: Random stream.
        episode: Index stored in the record.
        learn: Apply TD updates.
        keep_transitions: Retain every per-agent transition in the record.

    Returns:
        The infected-count trajectory and the summed realized cost.
    """
    costs = cfg.cost_params()
    p = costs.p()
    q = costs.q()
    levels = np.asarray(Q.action_levels, dtype=np.float64)

    states = np.zeros(cfg.M, dtype=np.int8)
    states[: cfg.m0] = 1
    m = cfg.m0
    trajectory = [m]
    transitions: list[Transition] = []
    cumulative_cost = 0.0

    for _ in range(cfg.horizon):
        actions = np.fromiter(
            (select_action(Q, int(states[i]), m, eps, rng) for i in range(cfg.M)),
            dtype=np.int64,
            count=cfg.M,
        )
        chosen = levels[actions]
        next_states = step_array(states, chosen, rng)
        m_next = int(next_states.sum())

        day_costs = next_states + cfg.alpha * np.asarray(p(chosen))
        if q is not None:
            day_costs = day_costs + states * np.asarray(q(chosen, m))
        cumulative_cost += float(day_costs.sum())

        for i in range(cfg.M):
            x, x_next, a, cost = int(states[i]), int(next_states[i]), int(actions[i]), float(day_costs[i])
            if learn:
                td_update(Q, x, m, a, cost, x_next, m_next, cfg.gamma, cfg.eta)
            if keep_transitions:
                transitions.append(
                    Transition(agent=i, x=x, m=m, action=a, cost=cost, x_next=x_next, m_next=m_next)
                )

        states, m = next_states, m_next
        trajectory.append(m)
        if m == cfg.M:
            break

    return EpisodeRecord(
        episode=episode,
        epsilon=eps,
        m_trajectory=trajectory,
        cumulative_cost=cumulative_cost,
        transitions=transitions if keep_transitions else None,
    )


def greedy_rollout(Q: QTable, cfg: TrainConfig, rng: np.random.Generator) -> list[int]:
    """Infected-count trajectory under the greedy policy, without learning."""
    return run_episode(Q, cfg, 0.0, rng, learn=False, keep_transitions=False).m_trajectory


def train(cfg: TrainConfig, keep_transitions: bool = False) -> tuple[QTable, list[EpisodeRecord]]:
    """Train the shared table for ``cfg.max_episodes`` episodes.

    Episode E = 1..E_max explores with epsilon_schedule(E, E_max), so the last
    episode is greedy. Every ``cfg.eval_every`` episodes the greedy policy is
    rolled out on its own stream and stored in the record.

    Returns:
        The final table and one record per episode.
    """
    Q = new_table(cfg)
    rng = master_stream(cfg.seed)
    records = []
    logger.info(
        f"Training shared Q-table: M={cfg.M}, gamma={cfg.gamma}, eta={cfg.eta}, "
        f"shaped={cfg.shaped}, episodes={cfg.max_episodes}"
    )

    for E in range(1, cfg.max_episodes + 1):
        eps = epsilon_schedule(E, cfg.max_episodes)
        record = run_episode(Q, cfg, eps, rng, episode=E, keep_transitions=keep_transitions)
        if cfg.eval_every and E % cfg.eval_every == 0:
            greedy = greedy_rollout(Q, cfg, indexed_stream(cfg.seed, E))
            record = record.model_copy(update={"greedy_trajectory": greedy})
            logger.info(f"Episode {E}: eps={eps:.3f}, final m={record.final_m}, greedy final m={greedy[-1]}")
        records.append(record)

    return Q, records
