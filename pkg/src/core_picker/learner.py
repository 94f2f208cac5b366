"""Common-points picking: learn a core point from bandit feedback.

Each epoch queries the n arrival-prefix coalitions of n permutations (n^2
queries), telescopes the rewards into one marginal-vector sample per
permutation, and keeps running means.  The run stops once every estimated
vertex can be separated from the others by a hyperplane inside the efficiency
plane with clearance large relative to the confidence radius; the returned
allocation is the average of the estimates.

Epochs are advanced in batches between stopping checks (the oracle sums whole
batches of rewards at once), with check epochs spaced geometrically.  This
leaves the sampling distribution untouched and makes runs needing billions of
samples take milliseconds; the reported epoch is the first checked epoch at
which the stopping condition held, at most ``check_growth`` times the exact
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .games import (
    Permutation,
    adjacent_permutations,
    cyclic_permutations,
    prefix_coalitions,
)
from .geometry import ConfidenceBox, box_hyperplane_clearance, fit_separating_hyperplane, mean_point
from .oracle import RewardOracle

DEFAULT_MAX_EPOCHS = 10**12


def confidence_bonus(ep: int, n: int, delta: float) -> float:
    """Per-coordinate confidence radius sqrt(2 log(n ep / delta) / ep)."""
    if ep < 1:
        raise ValueError("epoch must be at least 1")
    return math.sqrt(2.0 * math.log(n * ep / delta) / ep)


def resolve_permutations(choice, n: int) -> list[Permutation]:
    """Expand a permutation choice into n distinct arrival orders.

    "adjacent" is the identity plus its n-1 adjacent-transposition
    neighbours; "cyclic" the n rotations; anything else must be an explicit
    sequence of n distinct Permutations.
    """
    if choice == "adjacent":
        perms = adjacent_permutations(Permutation.identity(n))
    elif choice == "cyclic":
        perms = cyclic_permutations(n)
    else:
        perms = list(choice)
    if len(perms) != n:
        raise ValueError(f"need exactly {n} permutations, got {len(perms)}")
    if len({p.ranks for p in perms}) != n:
        raise ValueError("permutations must be distinct")
    for p in perms:
        if p.n != n:
            raise ValueError("permutation size does not match the game")
    return perms


@dataclass(frozen=True)
class LearnerConfig:
    delta: float
    perm_choice: object = "adjacent"  # "adjacent" | "cyclic" | sequence of Permutation
    max_epochs: int = DEFAULT_MAX_EPOCHS
    project_to_hn: bool = True
    check_dense_until: int = 64   # check the stopping rule every epoch up to here
    check_growth: float = 1.05    # then space checks geometrically

    def __post_init__(self):
        if not 0.0 < self.delta < 1.0:
            raise ValueError("delta must lie strictly between 0 and 1")
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be positive")
        if self.check_growth <= 1.0:
            raise ValueError("check_growth must exceed 1")


@dataclass
class EpochState:
    """Running sufficient statistics after ``epoch`` epochs.

    ``prefix_totals[p, k]`` is the summed reward of the k-th arrival prefix of
    permutation p over all epochs so far; estimates are the telescoped means
    per player, shifted onto the efficiency hyperplane when projecting.
    """

    epoch: int
    prefix_totals: np.ndarray
    estimates: list = field(default_factory=list)
    bonus: float = float("inf")

    @classmethod
    def fresh(cls, n: int) -> "EpochState":
        return cls(epoch=0, prefix_totals=np.zeros((n, n)))

    def marginal_sums(self, perms) -> list[np.ndarray]:
        """Per-permutation sums of marginal-vector samples, player-indexed."""
        out = []
        for p, w in enumerate(perms):
            by_rank = np.diff(self.prefix_totals[p], prepend=0.0)
            out.append(by_rank[list(w.ranks)])
        return out


def run_epochs(
    state: EpochState,
    oracle: RewardOracle,
    perms,
    k: int,
    delta: float,
    project_to_hn: bool = True,
) -> EpochState:
    """Advance k epochs: n^2 prefix queries per epoch, then refresh estimates."""
    n = len(perms)
    chains = [prefix_coalitions(w) for w in perms]
    for p in range(n):
        for idx, coalition in enumerate(chains[p]):
            state.prefix_totals[p, idx] += oracle.query_sum(coalition, k)
    state.epoch += k
    mu_grand = oracle.game.mu_grand
    estimates = []
    for p, w in enumerate(perms):
        by_rank = np.diff(state.prefix_totals[p], prepend=0.0) / state.epoch
        est = by_rank[list(w.ranks)]
        if project_to_hn:
            est = est + (mu_grand - est.sum()) / n
        estimates.append(est)
    state.estimates = estimates
    state.bonus = confidence_bonus(state.epoch, n, delta)
    return state


def run_epoch(state, oracle, perms, delta, project_to_hn=True) -> EpochState:
    """A single epoch: every prefix of every permutation queried once."""
    return run_epochs(state, oracle, perms, 1, delta, project_to_hn)


def stopping_condition(estimates, bonus: float) -> bool:
    """True when every estimated vertex clears its separating hyperplane.

    With margin eps = 2 sqrt(n) * bonus, each point must admit a hyperplane
    separating it from the others (degenerate fits fail the check) whose
    clearance against the point's confidence box is at least n * eps.
    """
    if len(estimates) == 0:
        return False
    n = len(estimates)
    eps = 2.0 * math.sqrt(n) * bonus
    for p in range(n):
        plane = fit_separating_hyperplane(estimates, p, eps)
        if plane is None:
            return False
        clearance = box_hyperplane_clearance(plane, ConfidenceBox(estimates[p], bonus))
        if clearance < n * eps:
            return False
    return True


@dataclass(frozen=True)
class RunReport:
    allocation: np.ndarray
    epochs: int
    samples: int
    stopped_naturally: bool
    estimates: tuple = ()   # final per-permutation vertex estimates
    bonus: float = float("nan")  # confidence radius at the final epoch


def common_points_picking(oracle: RewardOracle, config: LearnerConfig) -> RunReport:
    """Run the learner to its stopping condition or the epoch cap.

    Returns the averaged estimate either way; ``stopped_naturally`` is False
    when the cap was hit first (the expected outcome on games whose core has
    an empty interior).
    """
    n = oracle.game.n
    perms = resolve_permutations(config.perm_choice, n)
    state = EpochState.fresh(n)
    next_check = 1
    while state.epoch < config.max_epochs:
        target = min(next_check, config.max_epochs)
        run_epochs(state, oracle, perms, target - state.epoch, config.delta,
                   config.project_to_hn)
        if stopping_condition(state.estimates, state.bonus):
            return _report(state, n, stopped=True)
        if state.epoch < config.check_dense_until:
            next_check = state.epoch + 1
        else:
            next_check = max(state.epoch + 1, int(state.epoch * config.check_growth))
    return _report(state, n, stopped=False)


def _report(state: EpochState, n: int, stopped: bool) -> RunReport:
    return RunReport(
        allocation=mean_point(state.estimates),
        epochs=state.epoch,
        samples=state.epoch * n * n,
        stopped_naturally=stopped,
        estimates=tuple(state.estimates),
        bonus=state.bonus,
    )
