"""Shared helpers for the test suite: independent geometric oracles and
random configurations used by both the unit tests and the acceptance suite.

Everything here is deliberately written against first principles (least
squares, direct enumeration) rather than through the package's own geometry
paths, so the two sides can validate each other.
"""

import numpy as np

from core_picker.geometry import (
    ConfidenceBox,
    box_hyperplane_clearance,
    fit_separating_hyperplane,
)


def simplex_altitudes(points) -> np.ndarray:
    """Distance from each vertex to the affine hull of the other vertices."""
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    out = []
    for i in range(n):
        others = np.array([pts[j] for j in range(n) if j != i])
        span = (others[1:] - others[0]).T
        gap = pts[i] - others[0]
        if span.size:
            coef, *_ = np.linalg.lstsq(span, gap, rcond=None)
            out.append(float(np.linalg.norm(gap - span @ coef)))
        else:
            out.append(float(np.linalg.norm(gap)))
    return np.array(out)


def sum_zero(v: np.ndarray) -> np.ndarray:
    return v - v.mean()


def random_box_point(rng, box: ConfidenceBox) -> np.ndarray:
    """Uniform-ish point of the L-infinity ball intersected with the sum plane."""
    shift = sum_zero(rng.uniform(-box.radius, box.radius, size=len(box.center)))
    peak = np.abs(shift).max()
    if peak > box.radius:
        shift *= box.radius / peak
    return box.center + shift


def random_box_corner(rng, box: ConfidenceBox) -> np.ndarray:
    """Near-extreme point of the box inside the sum plane (sign-vector corner,
    recentred and rescaled to stay inside)."""
    shift = sum_zero(box.radius * rng.choice([-1.0, 1.0], size=len(box.center)))
    peak = np.abs(shift).max()
    if peak > box.radius:
        shift *= box.radius / peak
    return box.center + shift


def cyclic_center_config(rng, n, jitter=0.05, radius_factor=None):
    """n well-separated box centers in a common sum plane, plus equal radii.

    Centers are the cyclic rotations of (1..n) with a small sum-zero jitter;
    the radius is a fraction of the smallest altitude, small enough that the
    separating-hyperplane clearance condition holds comfortably.
    """
    base = np.arange(1.0, n + 1.0)
    centers = np.array([np.roll(base, k) for k in range(n)])
    alt = simplex_altitudes(centers).min()
    centers = centers + np.array([sum_zero(rng.normal(size=n)) * jitter * alt
                                  for _ in range(n)])
    if radius_factor is None:
        radius_factor = 1.0 / (10.0 * n ** 1.5)
    radius = simplex_altitudes(centers).min() * radius_factor
    return centers, [ConfidenceBox(c, radius) for c in centers]


def meets_clearance_condition(centers, boxes) -> bool:
    """The sufficient common-point condition: every separating hyperplane,
    offset by the largest other-box diameter, clears its box by more than
    2n times that diameter."""
    n = len(boxes)
    for p in range(n):
        others_diam = max(boxes[q].euclidean_diameter for q in range(n) if q != p)
        plane = fit_separating_hyperplane(centers, p, others_diam)
        if plane is None:
            return False
        if box_hyperplane_clearance(plane, boxes[p]) <= 2 * n * others_diam:
            return False
    return True


def hyperplane_misses_some_box(normal, offset, boxes) -> bool:
    """Whether the sum-plane hyperplane <normal, x> = offset avoids at least
    one box, using the conservative interval test over the full cube."""
    reach = float(np.abs(normal).sum())
    for box in boxes:
        if abs(float(normal @ box.center) - offset) > box.radius * reach:
            return True
    return False


def loglog_exponent(xs, ys) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx, ly = np.log(np.asarray(xs, float)), np.log(np.asarray(ys, float))
    slope, _ = np.polyfit(lx, ly, 1)
    return float(slope)
