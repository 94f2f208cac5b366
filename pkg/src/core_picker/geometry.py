"""Convex-geometry primitives for the stopping rule and its verification.

Everything lives in R^n but the interesting objects sit inside the efficiency
hyperplane (coordinates summing to a common value), so separating hyperplanes
are constrained to have sum-zero normals.

Tolerances are centralized here: RANK_TOL for rank decisions on singular
values, MEMBERSHIP_TOL as slack for barycentric coordinates, UNIT_TOL for
unit-norm checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

RANK_TOL = 1e-10
MEMBERSHIP_TOL = 1e-9
UNIT_TOL = 1e-12


class DegenerateSimplexError(ValueError):
    """The vertex set is affinely degenerate where a proper simplex is required."""


@dataclass(frozen=True)
class Hyperplane:
    """Hyperplane {x : <normal, x> = offset} with a unit, sum-zero normal."""

    normal: np.ndarray
    offset: float

    def __post_init__(self):
        v = np.array(self.normal, dtype=np.float64)  # own copy, frozen below
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            raise ValueError("hyperplane normal must be a unit vector")
        if abs(v.sum()) > 1e-10:
            raise ValueError("hyperplane normal must sum to zero")
        v.flags.writeable = False
        object.__setattr__(self, "normal", v)


@dataclass(frozen=True)
class ConfidenceBox:
    """L-infinity ball of the given radius around an estimated vertex."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("box radius must be nonnegative")
        c = np.array(self.center, dtype=np.float64)  # own copy, frozen below
        c.flags.writeable = False
        object.__setattr__(self, "center", c)

    @property
    def euclidean_diameter(self) -> float:
        """Diameter of the full L-infinity ball, 2 r sqrt(n); an upper bound
        for the slice inside the efficiency hyperplane."""
        return 2.0 * self.radius * np.sqrt(len(self.center))


def coordinate_matrix(points, i: int) -> np.ndarray:
    """Differences (x^j - x^i) as columns, j in original order with i omitted."""
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if not 0 <= i < n:
        raise ValueError(f"reference index {i} out of range for {n} points")
    cols = [pts[j] - pts[i] for j in range(n) if j != i]
    return np.stack(cols, axis=1)


def simplex_width(points) -> float:
    """min over reference vertices of the smallest relevant singular value.

    Zero exactly when the points are affinely degenerate; invariant under
    translation and under permuting the points.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    return min(
        float(np.linalg.svd(coordinate_matrix(pts, i), compute_uv=False)[-1])
        for i in range(n)
    )


def fit_separating_hyperplane(points, p: int, eps: float) -> Hyperplane | None:
    """Hyperplane through the points other than x^p, shifted by eps toward x^p.

    The normal v spans the null space of the (n-1) x n system made of the
    pairwise differences of the other points plus the all-ones row, so v is a
    unit sum-zero vector with <v, x^q> at a common level L for all q != p.
    The sign is chosen so <v, x^p> < L and the offset is L - eps.

    Returns None (degenerate) when the null space is not one-dimensional
    within RANK_TOL or when x^p sits at the common level, i.e. no separation
    exists.
    """
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if not 0 <= p < n:
        raise ValueError(f"index {p} out of range for {n} points")
    others = np.array([pts[q] for q in range(n) if q != p])
    rows = [others[j] - others[0] for j in range(1, n - 1)]
    rows.append(np.ones(pts.shape[1]))
    system = np.stack(rows)
    _, sv, vh = np.linalg.svd(system)
    if sv[-1] < RANK_TOL:
        return None  # rank deficient: null space has dimension > 1
    v = vh[-1]
    level = float(np.mean(others @ v))
    at_p = float(pts[p] @ v)
    if at_p == level:
        return None
    if at_p > level:
        v = -v
        level, at_p = -level, -at_p
    return Hyperplane(normal=v, offset=level - eps)


def box_hyperplane_clearance(h: Hyperplane, box: ConfidenceBox) -> float:
    """min of offset - <normal, x> over the L-infinity ball around the center.

    The closed form offset - <v, c> - r ||v||_1 is exact over the whole ball
    and a conservative lower bound over the ball restricted to the efficiency
    hyperplane.  Positive means the box lies strictly on the near side.
    """
    reach = box.radius * float(np.abs(h.normal).sum())
    return h.offset - float(h.normal @ box.center) - reach


def mean_point(points) -> np.ndarray:
    """Arithmetic mean of the points; stays on any shared hyperplane."""
    return np.mean(np.asarray(points, dtype=np.float64), axis=0)


def in_simplex(x, vertices, slack: float = MEMBERSHIP_TOL) -> bool:
    """Whether x lies in the simplex spanned by n affinely independent vertices.

    Solves for affine weights summing to one and accepts iff every weight is
    at least -slack.  Points off the affine hull of the vertices are outside.
    Raises DegenerateSimplexError when the vertices fail the width test.
    """
    verts = np.asarray(vertices, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if simplex_width(verts) <= RANK_TOL:
        raise DegenerateSimplexError("vertices are affinely degenerate")
    n = verts.shape[0]
    system = np.vstack([verts.T, np.ones(n)])
    rhs = np.concatenate([x, [1.0]])
    weights, *_ = np.linalg.lstsq(system, rhs, rcond=None)
    residual = np.abs(system @ weights - rhs).max()
    scale = 1.0 + np.abs(rhs).max()
    if residual > 1e-8 * scale:
        return False  # x is off the affine hull of the vertices
    return bool(np.all(weights >= -slack))
