"""Discrete dimension profiles for 1-separated sets.

A profile is the sequence of ratios log(count at scale s) / log(scale) along
a ladder of scales, plus a scalar estimate read off the tail.  Ratios with
count <= 1 are reported as 0 (a single point carries no growth information).
The tail is the log-upper third of the ladder: scales s with
ln s >= (2/3) ln s_max.  Tying the window to log-extent rather than to the
number of entries keeps estimates unchanged when coarse scales are prepended
to the ladder.

Two estimate methods:

* ``ratio_max_tail`` (default): max ratio over the tail, a finite-scale
  stand-in for the limsup that upper counting quantities are defined by.
* ``regression_tail``: least-squares slope of log count against log scale
  over the tail, a smoother read when counts are polynomially regular.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import BoxSpec, PointSet, Tube, slice_tube

__all__ = [
    "DimensionProfile",
    "LevelProfile",
    "LevelSearchConfig",
    "annulus_profile",
    "counting_dim_profile",
    "dim_1d_profile",
    "dyadic_scales",
    "ff_dim",
    "find_levels",
    "mass_dim_profile",
    "profile_from_counts",
]

TAIL_LOG_FRACTION = 2.0 / 3.0


@dataclass(frozen=True)
class DimensionProfile:
    """Counts and log-ratios along a ladder of scales.

    ``ratio_scales`` holds the denominators actually used (side length for
    first-quadrant boxes, full width 2l for centered boxes), ``estimate``
    the tail summary, ``tail_start`` the first ladder index inside the tail.
    """

    scales: np.ndarray
    counts: np.ndarray
    ratio_scales: np.ndarray
    ratios: np.ndarray
    estimate: float
    method: str
    tail_start: int

    def __len__(self) -> int:
        return len(self.scales)


def dyadic_scales(max_scale: float, min_scale: int = 2) -> np.ndarray:
    """Powers of two from min_scale up to at least max_scale."""
    if max_scale < min_scale:
        return np.array([float(min_scale)])
    top = math.ceil(math.log2(max_scale))
    lo = int(math.log2(min_scale))
    return 2.0 ** np.arange(lo, top + 1)


def _tail_start(ratio_scales: np.ndarray) -> int:
    cutoff = TAIL_LOG_FRACTION * math.log(ratio_scales[-1]) - 1e-9
    return int(np.searchsorted(np.log(ratio_scales), cutoff))


def profile_from_counts(scales, counts, method: str = "ratio_max_tail",
                        ratio_scales=None) -> DimensionProfile:
    scales = np.asarray(scales, dtype=float)
    counts = np.asarray(counts, dtype=np.int64)
    if scales.ndim != 1 or scales.size == 0:
        raise ValueError("scales must be a nonempty 1-d array")
    if counts.shape != scales.shape:
        raise ValueError("counts must match scales")
    if np.any(scales <= 1.0) or np.any(np.diff(scales) <= 0):
        raise ValueError("scales must be increasing and > 1")
    rs = scales if ratio_scales is None else np.asarray(ratio_scales, dtype=float)
    ratios = np.zeros_like(scales)
    informative = counts > 1
    ratios[informative] = np.log(counts[informative]) / np.log(rs[informative])
    t0 = _tail_start(rs)
    if method == "ratio_max_tail":
        estimate = float(ratios[t0:].max()) if t0 < len(ratios) else 0.0
    elif method == "regression_tail":
        mask = counts[t0:] >= 1
        xs = np.log(rs[t0:][mask])
        ys = np.log(counts[t0:][mask])
        estimate = float(np.polyfit(xs, ys, 1)[0]) if xs.size >= 2 else 0.0
    else:
        raise ValueError(f"unknown method {method!r}")
    return DimensionProfile(scales, counts, rs, ratios, estimate, method, t0)


def _default_scales(ps: PointSet, kind: str) -> np.ndarray:
    if ps.bbox is None:
        return np.array([2.0])
    x0, y0, x1, y1 = ps.bbox
    if kind == "centered":
        extent = max(abs(x0), abs(x1), abs(y0), abs(y1))
    else:
        extent = max(x1, y1)
    return dyadic_scales(max(extent, 2.0))


def mass_dim_profile(obj, scales=None, kind: str = "first_quadrant",
                     u: float | None = None,
                     method: str = "ratio_max_tail") -> DimensionProfile:
    """Mass dimension profile of a point set or implicit set.

    ``kind`` picks the box family: boxes [0,l]^2, centered boxes [-l,l]^2
    (log denominator 2l), or slanted tube-aligned boxes for slope parameter
    ``u`` (materialized sets only).  Implicit sets need explicit ``scales``.
    """
    if scales is None:
        if not isinstance(obj, PointSet):
            raise ValueError("implicit sets need explicit scales")
        scales = _default_scales(obj, kind)
    scales = np.asarray(scales, dtype=float)
    boxes = [BoxSpec(kind, float(s), u) for s in scales]
    counts = [obj.box_count(b) for b in boxes]
    rs = np.array([b.ratio_scale() for b in boxes])
    return profile_from_counts(scales, counts, method, ratio_scales=rs)


def counting_dim_profile(ps: PointSet, window_sizes=None,
                         placement_strategy: str = "sliding",
                         method: str = "ratio_max_tail") -> DimensionProfile:
    """Counting dimension profile: max count over searched square windows.

    Windows of side s are axis-aligned half-open squares on a regular grid:
    stride s/2 for the "sliding" strategy (every unit cell of the set then
    meets exactly four windows per size, so no better placement is missed by
    more than the half-stride), stride s for "aligned" (a partition).  The
    search is not exhaustive over all real placements, so the profile is a
    lower bound on the counting dimension at each scale.  Sizes must be
    even; the default ladder is dyadic up to the set's extent.
    """
    if not isinstance(ps, PointSet):
        raise ValueError("counting profiles need a materialized PointSet")
    if placement_strategy not in ("sliding", "aligned"):
        raise ValueError(f"unknown placement strategy {placement_strategy!r}")
    if window_sizes is None:
        if ps.bbox is None:
            window_sizes = np.array([2.0])
        else:
            x0, y0, x1, y1 = ps.bbox
            window_sizes = dyadic_scales(max(x1 - x0, y1 - y0, 2.0))
    sizes = np.asarray(window_sizes, dtype=float)
    if np.any(sizes != np.floor(sizes)) or np.any(sizes.astype(np.int64) % 2):
        raise ValueError("window sizes must be even integers")
    cx, cy, weight = ps.cell_arrays()
    counts = []
    for s in sizes.astype(np.int64):
        if cx.size == 0:
            counts.append(0)
            continue
        h = s // 2 if placement_strategy == "sliding" else s
        offsets = (0, -1) if placement_strategy == "sliding" else (0,)
        qx, qy = cx // h, cy // h
        wins = np.concatenate([
            np.stack([qx + a, qy + b], axis=1)
            for a in offsets for b in offsets])
        w = np.tile(weight, len(offsets) ** 2)
        _, inv = np.unique(wins, axis=0, return_inverse=True)
        counts.append(int(np.bincount(inv, weights=w).max()))
    return profile_from_counts(sizes, counts, method)


def dim_1d_profile(values, scales=None,
                   method: str = "ratio_max_tail") -> DimensionProfile:
    """Dimension profile of a set of positive integers via counts in [1, N]."""
    vals = np.unique(np.asarray(values, dtype=np.int64))
    if vals.size and vals[0] < 1:
        raise ValueError("values must be positive integers")
    if scales is None:
        scales = dyadic_scales(float(vals[-1]) if vals.size else 2.0)
    scales = np.asarray(scales, dtype=float)
    counts = np.searchsorted(vals, scales, side="right")
    return profile_from_counts(scales, counts, method)


def ff_dim(fset, p: int | None = None) -> float:
    """log |B| / log p, the dimension of a subset of the finite plane.

    Accepts a finite-field set object (carrying .cardinality and .p) or a
    plain size with explicit p.  Empty sets report 0.
    """
    if p is None:
        size, p = fset.cardinality, fset.p
    else:
        size = int(fset)
    if p < 2:
        raise ValueError("p must be >= 2")
    if size <= 0:
        return 0.0
    return math.log(size) / math.log(p)


# ---------------------------------------------------------------------------
# Annulus counts along a tube and level search
# ---------------------------------------------------------------------------

def _axial_sorted(ps: PointSet, tube: Tube) -> np.ndarray:
    inside = slice_tube(ps, tube)
    if len(inside) == 0:
        return np.empty(0)
    return np.sort(tube.axial_coord(inside.points[:, 0], inside.points[:, 1]))


def _annulus_counts(svals: np.ndarray, levels: np.ndarray) -> np.ndarray:
    hi = np.searchsorted(svals, levels, side="right")
    lo = np.searchsorted(svals, levels / 2.0, side="right")
    return (hi - lo).astype(np.int64)


def annulus_profile(ps: PointSet, u: float,
                    height_levels=None) -> tuple[np.ndarray, np.ndarray]:
    """Counts of points of the tube through the origin at slope parameter u
    whose axial coordinate lies in (m/2, m], per level m.

    The annuli are the gaps between nested tube-aligned boxes of sizes m
    and m/2 sitting inside t_{u,0}, so together with a base count they
    telescope to slanted box counts.  Defaults to every integer level up to
    the axial extent of the slice.
    """
    svals = _axial_sorted(ps, Tube(u, 0.0))
    levels = height_levels
    if levels is None:
        top = int(math.floor(svals[-1])) if svals.size else 1
        levels = np.arange(1, min(top, 1_000_000) + 1, dtype=np.int64)
    else:
        levels = np.asarray(levels, dtype=np.int64)
        if np.any(levels < 1):
            raise ValueError("levels must be positive integers")
    return levels, _annulus_counts(svals, levels.astype(float))


@dataclass(frozen=True)
class LevelSearchConfig:
    """Threshold family for level search: keep m with count > (m/2)^(alpha + psi/2)."""

    alpha: float
    psi: float
    search_bound: int

    def __post_init__(self):
        if self.alpha < 0 or self.psi <= 0:
            raise ValueError("need alpha >= 0 and psi > 0")
        if self.search_bound < 1:
            raise ValueError("search_bound must be >= 1")

    def threshold(self, levels) -> np.ndarray:
        m = np.asarray(levels, dtype=float)
        return (m / 2.0) ** (self.alpha + self.psi / 2.0)


@dataclass(frozen=True)
class LevelProfile:
    """Levels along the tube at slope parameter u where the annulus count
    beats the threshold, with the counts and thresholds that decided it."""

    u: float
    levels: np.ndarray
    counts: np.ndarray
    thresholds: np.ndarray

    def __len__(self) -> int:
        return len(self.levels)


def find_levels(ps: PointSet, u: float, config: LevelSearchConfig) -> LevelProfile:
    """Scan integer levels m <= search_bound along the tube through the
    origin at slope parameter u, keeping those whose annulus count exceeds
    (m/2)^(alpha + psi/2).

    The kept levels vary only through annulus counts, which are locally
    constant in u away from coincidences, so nearby slopes yield identical
    profiles; an empty profile certifies that no scale shows the prescribed
    growth.
    """
    svals = _axial_sorted(ps, Tube(u, 0.0))
    levels = np.arange(1, config.search_bound + 1, dtype=np.int64)
    counts = _annulus_counts(svals, levels.astype(float))
    thr = config.threshold(levels)
    keep = counts > thr
    return LevelProfile(u, levels[keep], counts[keep], thr[keep])
