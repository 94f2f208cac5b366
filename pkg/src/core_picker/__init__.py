"""Learning a point in the expected core of a convex stochastic game."""

from .games import (
    GameSpec,
    Permutation,
    adjacent_permutations,
    adjacent_transpose,
    coalition_of,
    cyclic_permutations,
    expected_reward,
    gen_convex_boundary,
    gen_permutahedron,
    gen_strictly_convex,
    gen_unit_game,
    load_game,
    marginal_increments,
    marginal_vector,
    members_of,
    prefix_coalitions,
    save_game,
    strict_convexity_margin,
)
from .geometry import (
    ConfidenceBox,
    DegenerateSimplexError,
    Hyperplane,
    box_hyperplane_clearance,
    coordinate_matrix,
    fit_separating_hyperplane,
    in_simplex,
    mean_point,
    simplex_width,
)
from .learner import (
    EpochState,
    LearnerConfig,
    RunReport,
    common_points_picking,
    confidence_bonus,
    run_epoch,
    run_epochs,
    stopping_condition,
)
from .oracle import NoiseModel, RewardOracle
from .verify import MembershipReport, core_membership, core_vertices, shapley_value

__all__ = [
    "GameSpec",
    "Permutation",
    "adjacent_permutations",
    "adjacent_transpose",
    "coalition_of",
    "cyclic_permutations",
    "expected_reward",
    "gen_convex_boundary",
    "gen_permutahedron",
    "gen_strictly_convex",
    "gen_unit_game",
    "load_game",
    "marginal_increments",
    "marginal_vector",
    "members_of",
    "prefix_coalitions",
    "save_game",
    "strict_convexity_margin",
    "ConfidenceBox",
    "DegenerateSimplexError",
    "Hyperplane",
    "box_hyperplane_clearance",
    "coordinate_matrix",
    "fit_separating_hyperplane",
    "in_simplex",
    "mean_point",
    "simplex_width",
    "EpochState",
    "LearnerConfig",
    "RunReport",
    "common_points_picking",
    "confidence_bonus",
    "run_epoch",
    "run_epochs",
    "stopping_condition",
    "NoiseModel",
    "RewardOracle",
    "MembershipReport",
    "core_membership",
    "core_vertices",
    "shapley_value",
]
