"""Ground-truth oracles for small games: exhaustive scans and enumerations.

These deliberately avoid the geometry used by the learner so the two sides
can check each other: membership is a scan over all 2^n coalition
constraints, vertices come from enumerating all n! permutations.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import GameSpec, all_permutations, marginal_vector

VERTEX_DEDUP_TOL = 1e-10
MAX_ENUM_PLAYERS = 8  # n! enumeration cap


def allocation_sums(x, n: int) -> np.ndarray:
    """x(S) for every coalition mask, built by doubling over players."""
    sums = np.zeros(1)
    for p in range(n):
        sums = np.concatenate([sums, sums + x[p]])
    return sums


@dataclass(frozen=True)
class MembershipReport:
    is_member: bool
    max_violation: float
    worst_coalition: int
    efficiency_gap: float


def core_membership(game: GameSpec, x, tol: float = 0.0) -> MembershipReport:
    """Exhaustive stability check of an allocation against every coalition.

    max_violation is the largest mu(S) - x(S) over proper nonempty S (positive
    means some coalition prefers to deviate); the efficiency gap is
    |x(N) - mu(N)|.  Membership requires both within tol.
    """
    x = np.asarray(x, dtype=np.float64)
    sums = allocation_sums(x, game.n)
    slack = game.mu - sums
    slack[0] = -np.inf
    slack[-1] = -np.inf  # the grand coalition is judged by the efficiency gap
    worst = int(np.argmax(slack))
    max_violation = float(slack[worst])
    efficiency_gap = abs(float(sums[-1]) - game.mu_grand)
    return MembershipReport(
        is_member=(max_violation <= tol and efficiency_gap <= tol),
        max_violation=max_violation,
        worst_coalition=worst,
        efficiency_gap=efficiency_gap,
    )


def core_vertices(game: GameSpec) -> np.ndarray:
    """All distinct marginal vectors, one row each, over the n! permutations.

    In a convex game these are exactly the vertices of the core; strictly
    convex games yield n! distinct rows, degenerate ones collapse.
    """
    if game.n > MAX_ENUM_PLAYERS:
        raise ValueError(f"vertex enumeration capped at n={MAX_ENUM_PLAYERS}")
    rows = np.array([marginal_vector(game, w) for w in all_permutations(game.n)])
    keys = np.round(rows / VERTEX_DEDUP_TOL)  # group near-equal rows, keep originals
    _, first = np.unique(keys, axis=0, return_index=True)
    return rows[np.sort(first)]


def shapley_value(game: GameSpec) -> np.ndarray:
    """Average of all n! marginal vectors."""
    if game.n > MAX_ENUM_PLAYERS:
        raise ValueError(f"Shapley enumeration capped at n={MAX_ENUM_PLAYERS}")
    total = np.zeros(game.n)
    count = 0
    for w in all_permutations(game.n):
        total += marginal_vector(game, w)
        count += 1
    return total / count
