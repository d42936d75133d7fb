"""Constructions of 1-separated planar sets with prescribed dimension pairs.

Materialized generators return :class:`~latslice.geometry.PointSet`.  The
cone-based families blow up doubly exponentially, so they also come in an
implicit flavor: an object carrying an exact membership predicate and exact
rectangle counts by row summation, usable by the dimension profilers without
ever enumerating points.  Implicit and materialized modes agree exactly
wherever both are defined; all generators are deterministic functions of
their parameters (plus an explicit seed for the random family).

Angular conventions for the cone families: the cone axis is vertical and
"angle" is measured as horizontal slope offset x/y (exact to first order for
the small openings used here).  Within a row the integer x range is derived
from exact rational slope bounds, so row counts are reproducible integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .geometry import BoxSpec, PointSet, Tube

__all__ = [
    "ConeAnnuli",
    "ConeFixedWidth",
    "ConeStaircase",
    "ParabolicStaircase",
    "ZigzagTrace",
    "gen_cartesian",
    "gen_cone_annuli",
    "gen_cone_fixed_width",
    "gen_cone_staircase",
    "gen_parabolic_staircase",
    "gen_random_dimension",
    "gen_random_dimension_1d",
    "gen_unit_line",
    "gen_zigzag",
    "zigzag_tube_counts",
]

MAX_MATERIALIZE_POINTS = 20_000_000
MAX_ROW_SWEEP = 10_000_000
EXACT_INT_LIMIT = 2 ** 53


class MaterializeError(ValueError):
    """Raised when a materialization request is too large to honor."""


# ---------------------------------------------------------------------------
# Straight line with unit spacing
# ---------------------------------------------------------------------------

def gen_unit_line(m: float, count: int) -> PointSet:
    """``count`` points spaced 1 apart along y = m x from the origin.

    Rounding the arc-length parametrization to floats can pull neighbors a
    few ulps closer than 1, which would break the 1-separation guarantee, so
    the spacing is inflated by the smallest power-of-two factor that keeps
    every consecutive gap >= 1 (about count * 2.5e-16, far inside the
    1e-12 the spacing contract allows).
    """
    if not (math.isfinite(m) and m > 0):
        raise ValueError("slope m must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    r = math.sqrt(1.0 + m * m)
    k = np.arange(count, dtype=float)
    pad = count * 2.5e-16
    while True:
        s = (1.0 + pad) / r
        xs, ys = k * s, k * (m * s)
        if count == 1 or np.min(np.hypot(np.diff(xs), np.diff(ys))) >= 1.0:
            return PointSet(np.column_stack([xs, ys]), _separated=True)
        pad *= 2.0


# ---------------------------------------------------------------------------
# Parabolic staircase: m points in the column at x = m^2
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicStaircase:
    """Implicit set {(m^2, n) : 1 <= m <= m_max, 0 <= n <= m-1}."""

    m_max: int

    def contains(self, x, y) -> bool:
        if x != int(x) or y != int(y):
            return False
        xi, yi = int(x), int(y)
        if xi < 1 or yi < 0:
            return False
        m = math.isqrt(xi)
        return m * m == xi and m <= self.m_max and yi <= m - 1

    def rect_count(self, x0, x1, y0, y1) -> int:
        """Exact count inside the closed rectangle [x0,x1] x [y0,y1]."""
        if x1 < 1 or y1 < 0 or x1 < x0 or y1 < y0:
            return 0
        m_lo = 1
        if x0 > 1:
            m_lo = math.isqrt(math.ceil(x0) - 1) + 1
        m_hi = self.m_max if x1 >= self.m_max ** 2 \
            else min(self.m_max, math.isqrt(math.floor(x1)))
        lo_y = _col_ceil(y0, 0)
        total = 0
        for m in range(m_lo, m_hi + 1):
            hi_y = m - 1 if y1 >= m - 1 else math.floor(y1)
            if hi_y >= lo_y:
                total += hi_y - lo_y + 1
        return total

    def box_count(self, box: BoxSpec) -> int:
        return _axis_box_count(self, box)

    def size_estimate(self) -> float:
        return self.m_max * (self.m_max + 1) / 2.0

    def materialize(self) -> PointSet:
        total = self.m_max * (self.m_max + 1) // 2
        if total > MAX_MATERIALIZE_POINTS:
            raise MaterializeError(
                f"parabolic staircase with m_max={self.m_max} holds {total} points")
        cols = [np.column_stack([np.full(m, float(m * m)), np.arange(m, dtype=float)])
                for m in range(1, self.m_max + 1)]
        pts = np.concatenate(cols) if cols else np.empty((0, 2))
        return PointSet(pts, _separated=True)


def gen_parabolic_staircase(m_max: int, mode: str = "materialize"):
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    stair = ParabolicStaircase(m_max)
    if mode == "materialize":
        return stair.materialize()
    if mode == "implicit":
        return stair
    raise ValueError(f"unknown mode {mode!r}")


def _axis_box_count(implicit, box: BoxSpec) -> int:
    if box.kind == "first_quadrant":
        return implicit.rect_count(0.0, box.size, 0.0, box.size)
    if box.kind == "centered":
        return implicit.rect_count(-box.size, box.size, -box.size, box.size)
    raise NotImplementedError("slanted boxes need a materialized set")


# ---------------------------------------------------------------------------
# Zigzag between y = x and y = x tan(pi/4 + delta)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZigzagTrace:
    """Corner bookkeeping for the zigzag construction.

    ``corners`` are the real-arithmetic corner iterates on the line y = x:
    each next corner is the transfer matrix [[1+AB, A], [B, 1]] applied to
    the previous one, with A = 1 - cot(pi/4 + delta), B = tan(pi/4 + delta) - 1.
    Since A(1+B) = B, the diagonal direction is the leading eigenvector and
    lambda1 = 1 + (sqrt(AB(AB+4)) + AB)/2 equals tan(pi/4 + delta) exactly.
    ``lattice_corners`` are the integer corner abscissas actually used to
    emit lattice points (next = ceil(previous * tan(pi/4 + delta))).
    """

    delta: float
    A: float
    B: float
    lambda1: float
    lambda2: float
    corners: np.ndarray
    lattice_corners: list[int] = field(repr=False)
    truncated: bool = False

    def corner_ratios(self) -> np.ndarray:
        c = np.array(self.lattice_corners, dtype=float)
        return c[1:] / c[:-1]


def _zigzag_coeffs(delta: float) -> tuple[float, float, float, float, float]:
    if not (0.0 < delta < math.pi / 4):
        raise ValueError("delta must lie in (0, pi/4)")
    t = math.tan(math.pi / 4 + delta)
    a = 1.0 - 1.0 / t
    b = t - 1.0
    disc = math.sqrt(a * b * (a * b + 4.0))
    lam1 = 1.0 + (disc + a * b) / 2.0
    lam2 = 1.0 - (disc - a * b) / 2.0
    return t, a, b, lam1, lam2


def _zigzag_lattice_corners(delta: float, n_levels: int,
                            limit: int | None = None) -> tuple[list[int], bool]:
    t_exact = Fraction(math.tan(math.pi / 4 + delta))
    corners = [1]
    truncated = False
    for _ in range(n_levels):
        nxt = math.ceil(corners[-1] * t_exact)
        if limit is not None and nxt > limit:
            truncated = True
            break
        corners.append(nxt)
    return corners, truncated


def gen_zigzag(delta: float, n_levels: int) -> tuple[PointSet, ZigzagTrace]:
    """Lattice zigzag climbing the cone between y = x and y = x tan(pi/4+delta).

    Starting from (1, 1), each level walks the integer points of a vertical
    segment up to (just past) the left cone edge and then a horizontal
    segment back to y = x.  Corners grow geometrically with ratio tending to
    the leading eigenvalue of the corner transfer matrix, so a width-1 tube
    through the origin inside the cone meets only O(level) = O(log height)
    points.  Stops early (trace.truncated) if integer corners would leave the
    exactly-representable float range.
    """
    if n_levels < 1:
        raise ValueError("n_levels must be >= 1")
    t, a, b, lam1, lam2 = _zigzag_coeffs(delta)
    mat = np.array([[1.0 + a * b, a], [b, 1.0]])
    real = [np.array([1.0, 1.0])]
    for _ in range(n_levels):
        real.append(mat @ real[-1])
    lattice, truncated = _zigzag_lattice_corners(delta, n_levels,
                                                 limit=EXACT_INT_LIMIT)
    est = 2 * (lattice[-1] - lattice[0]) + 1
    if est > MAX_MATERIALIZE_POINTS:
        raise MaterializeError(
            f"zigzag to level {n_levels} holds about {est} points; "
            "use zigzag_tube_counts for tube statistics at this depth")
    chunks = [np.array([[1.0, 1.0]])]
    for k in range(len(lattice) - 1):
        c0, c1 = lattice[k], lattice[k + 1]
        ys = np.arange(c0 + 1, c1 + 1, dtype=float)
        chunks.append(np.column_stack([np.full(ys.size, float(c0)), ys]))
        xs = np.arange(c0 + 1, c1 + 1, dtype=float)
        chunks.append(np.column_stack([xs, np.full(xs.size, float(c1))]))
    trace = ZigzagTrace(delta, a, b, lam1, lam2,
                        corners=np.array(real), lattice_corners=lattice,
                        truncated=truncated)
    return PointSet(np.concatenate(chunks), _separated=True), trace


def zigzag_tube_counts(delta: float, n_levels: int, tube: Tube,
                       dps: int = 80) -> tuple[list[int], np.ndarray]:
    """Cumulative tube slice counts of the zigzag, level by level, without
    materializing any points.

    Counts lattice points on each vertical/horizontal zigzag segment inside
    ``tube`` by exact interval arithmetic at ``dps`` decimal digits, which
    keeps integer boundaries sharp far beyond float range (corners up to
    ~10^(dps-20) are safe).  Returns (lattice corners, cumulative counts
    after each level); entry k covers everything up to corner k+1.

    Matches slice_tube on the materialized set wherever that set fits in
    memory; intended for the deep levels where it does not.
    """
    if tube.orientation != "standard" or tube.u >= 0:
        raise ValueError("zigzag tubes have positive edge slope, which means u < 0")
    lattice, _ = _zigzag_lattice_corners(delta, n_levels)
    with mpmath.workdps(dps):
        u = mpmath.mpf(tube.u)
        v = mpmath.mpf(tube.v)
        slope = -1 / u
        w = mpmath.sqrt(1 + 1 / (u * u))
        b_lo = v * w
        b_up = (v + 1) * w

        seed_in = int(bool(slope + b_lo < 1 and 1 <= slope + b_up))
        counts = []
        total = seed_in
        for k in range(len(lattice) - 1):
            c0, c1 = lattice[k], lattice[k + 1]
            # vertical x = c0: integer y with c0 < y <= c1 and
            # slope*c0 + b_lo < y <= slope*c0 + b_up
            lo_y = slope * c0 + b_lo
            up_y = slope * c0 + b_up
            start = max(c0 + 1, int(mpmath.floor(lo_y)) + 1)
            stop = min(c1, int(mpmath.floor(up_y)))
            total += max(0, stop - start + 1)
            # horizontal y = c1: integer x with c0 < x <= c1 and
            # (c1 - b_up)/slope <= x < (c1 - b_lo)/slope
            lo_x = (c1 - b_up) / slope
            hi_x = (c1 - b_lo) / slope
            start = max(c0 + 1, int(mpmath.ceil(lo_x)))
            stop = min(c1, int(mpmath.ceil(hi_x)) - 1)
            total += max(0, stop - start + 1)
            counts.append(total)
        return lattice, np.array(counts, dtype=np.int64)


# ---------------------------------------------------------------------------
# Vertical cone families with doubly exponential row bands
# ---------------------------------------------------------------------------
#
# All three families place lattice points in sparse horizontal bands whose
# heights grow like 2^(2^k), inside a narrow vertical cone.  Band rows hold
# consecutive integer x in ranges cut out by exact rational slope bounds, so
# implicit counts and materialized points agree bit for bit.

def _band_rows(k: int) -> tuple[int, int]:
    """Row range [lo, hi) of band k: lo = 2^(2^(k+1)), height 2^(2^k)."""
    if k > 20:
        raise ValueError("band index too large to represent")
    lo = 1 << (1 << (k + 1))
    return lo, lo + (1 << (1 << k))


def _band_index_for_row(y: int) -> int | None:
    """Band whose rows could contain integer y, or None."""
    if y < 4:
        return None
    e = y.bit_length() - 1          # band base has bit length 2^(k+1) + 1
    if e & (e - 1) or e < 2:
        return None
    k = e.bit_length() - 2
    lo, hi = _band_rows(k)
    return k if lo <= y < hi else None


def _as_int(value) -> int | None:
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return None


def _row_floor(value, limit_hint: float) -> int:
    """floor() for the float rectangle bounds used against integer rows."""
    if value >= limit_hint:
        return int(limit_hint)
    return math.floor(value)


def _col_ceil(value, limit_hint: int) -> int:
    """ceil() clamped from below, safe for -inf rectangle bounds."""
    if value <= limit_hint:
        return int(limit_hint)
    return math.ceil(value)


@dataclass(frozen=True)
class ConeAnnuli:
    """Full cone annuli: band-k rows filled across |x| <= y tan(theta/2).

    Every band is a solid slab of the cone, so mass dimension along the full
    dyadic ladder oscillates: ratios approach 2 at scales just past a band
    and sag between bands.
    """

    theta: float
    k_min: int
    k_max: int
    half: Fraction = field(repr=False, default=None)

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi / 2):
            raise ValueError("theta must lie in (0, pi/2)")
        if not (0 <= self.k_min <= self.k_max):
            raise ValueError("need 0 <= k_min <= k_max")
        object.__setattr__(self, "half", Fraction(math.tan(self.theta / 2)))

    def _row_span(self, y: int) -> tuple[int, int]:
        hw = math.floor(y * self.half)
        return -hw, hw

    def contains(self, x, y) -> bool:
        xi, yi = _as_int(x), _as_int(y)
        if xi is None or yi is None:
            return False
        k = _band_index_for_row(yi)
        if k is None or not (self.k_min <= k <= self.k_max):
            return False
        lo, hi = self._row_span(yi)
        return lo <= xi <= hi

    def rect_count(self, x0, x1, y0, y1) -> int:
        total = 0
        for k in range(self.k_min, self.k_max + 1):
            b_lo, b_hi = _band_rows(k)
            if y1 < b_lo:
                break
            r_lo = _col_ceil(y0, b_lo)
            r_hi = min(b_hi - 1, _row_floor(y1, b_hi - 1))
            if r_hi - r_lo >= MAX_ROW_SWEEP:
                raise ValueError("rectangle spans too many rows to sweep")
            for y in range(r_lo, r_hi + 1):
                lo, hi = self._row_span(y)
                c_lo = _col_ceil(x0, lo)
                c_hi = min(hi, _row_floor(x1, hi))
                if c_hi >= c_lo:
                    total += c_hi - c_lo + 1
        return total

    def box_count(self, box: BoxSpec) -> int:
        return _axis_box_count(self, box)

    def size_estimate(self) -> float:
        """Approximate point total (exact enough for refuse messages)."""
        est = 0.0
        for k in range(self.k_min, self.k_max + 1):
            try:
                est += self.theta * 2.0 ** (3 * (1 << k))
            except OverflowError:
                return math.inf
        return est

    def materialize(self) -> PointSet:
        if self.k_max > 3:
            raise MaterializeError(
                f"cone annuli with k_max={self.k_max} hold about "
                f"{self.size_estimate():.3g} points; cap is k_max <= 3 "
                "(use the implicit set for counts)")
        rows = []
        for k in range(self.k_min, self.k_max + 1):
            b_lo, b_hi = _band_rows(k)
            for y in range(b_lo, b_hi):
                lo, hi = self._row_span(y)
                xs = np.arange(lo, hi + 1, dtype=float)
                rows.append(np.column_stack([xs, np.full(xs.size, float(y))]))
        pts = np.concatenate(rows) if rows else np.empty((0, 2))
        if len(pts) > MAX_MATERIALIZE_POINTS:
            raise MaterializeError(f"materialization holds {len(pts)} points")
        return PointSet(pts, _separated=True)


def gen_cone_annuli(theta: float, k_min: int, k_max: int,
                    mode: str = "implicit"):
    cone = ConeAnnuli(theta, k_min, k_max)
    if mode == "implicit":
        return cone
    if mode == "materialize":
        return cone.materialize()
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ConeStaircase:
    """Band-k rows filled over the slope interval [sigma_k, sigma_k + theta/2^(2^k)).

    The slope offsets sigma_k = theta * sum_(j<k) 2^-(2^j) stack the chunks
    side by side, so chunk k sees an x-extent of about theta * 2^(2^k) per
    row: wide enough to keep counting dimension 3/2 on band-width windows,
    while the total opening stays below theta.
    """

    theta: float
    k_max: int
    _w: tuple = field(repr=False, default=None)
    _sigma: tuple = field(repr=False, default=None)

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise ValueError("theta must lie in (0, 1)")
        if self.k_max < 0:
            raise ValueError("k_max must be >= 0")
        th = Fraction(self.theta)
        w, sigma, acc = [], [], Fraction(0)
        for k in range(self.k_max + 1):
            w.append(th / (1 << (1 << k)))
            sigma.append(acc)
            acc += w[-1]
        object.__setattr__(self, "_w", tuple(w))
        object.__setattr__(self, "_sigma", tuple(sigma))

    def slope_interval(self, k: int) -> tuple[Fraction, Fraction]:
        return self._sigma[k], self._sigma[k] + self._w[k]

    def total_slope(self) -> float:
        """Angular opening actually used: theta * sum 2^-(2^k) ~ 0.816 theta."""
        return float(sum(self._w))

    def _row_span(self, y: int, k: int) -> tuple[int, int]:
        lo_s, hi_s = self.slope_interval(k)
        return math.ceil(y * lo_s), math.ceil(y * hi_s) - 1

    def contains(self, x, y) -> bool:
        xi, yi = _as_int(x), _as_int(y)
        if xi is None or yi is None:
            return False
        k = _band_index_for_row(yi)
        if k is None or k > self.k_max:
            return False
        lo, hi = self._row_span(yi, k)
        return lo <= xi <= hi

    def rect_count(self, x0, x1, y0, y1) -> int:
        total = 0
        for k in range(self.k_max + 1):
            b_lo, b_hi = _band_rows(k)
            if y1 < b_lo:
                break
            r_lo = _col_ceil(y0, b_lo)
            r_hi = min(b_hi - 1, _row_floor(y1, b_hi - 1))
            if r_hi - r_lo >= MAX_ROW_SWEEP:
                raise ValueError("rectangle spans too many rows to sweep")
            for y in range(r_lo, r_hi + 1):
                lo, hi = self._row_span(y, k)
                c_lo = _col_ceil(x0, lo)
                c_hi = min(hi, _row_floor(x1, hi))
                if c_hi >= c_lo:
                    total += c_hi - c_lo + 1
        return total

    def box_count(self, box: BoxSpec) -> int:
        return _axis_box_count(self, box)

    def size_estimate(self) -> float:
        """Rough total count: each band-k row holds about theta 2^(2^k) points."""
        return sum(self.theta * 2.0 ** min(2 * (1 << k), 1030)
                   for k in range(self.k_max + 1))

    def materialize(self) -> PointSet:
        if self.k_max > 3:
            est = sum(self.theta * 2.0 ** (1 << k) * (1 << (1 << k))
                      for k in range(self.k_max + 1) if (1 << k) < 900)
            raise MaterializeError(
                f"cone staircase with k_max={self.k_max} holds about "
                f"{est:.3g} points; cap is k_max <= 3")
        rows = []
        for k in range(self.k_max + 1):
            b_lo, b_hi = _band_rows(k)
            for y in range(b_lo, b_hi):
                lo, hi = self._row_span(y, k)
                if hi >= lo:
                    xs = np.arange(lo, hi + 1, dtype=float)
                    rows.append(np.column_stack([xs, np.full(xs.size, float(y))]))
        pts = np.concatenate(rows) if rows else np.empty((0, 2))
        return PointSet(pts, _separated=True)


def gen_cone_staircase(theta: float, k_max: int, mode: str = "implicit"):
    cone = ConeStaircase(theta, k_max)
    if mode == "implicit":
        return cone
    if mode == "materialize":
        return cone.materialize()
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class ConeFixedWidth:
    """Fixed slope width theta/2^(2^k0), walked across the cone level by level.

    Level j >= 1 sits at height h_j = 2^(2^(k0+j)) with vertical extent
    h_(j-1) and slope interval [(j-1) w, j w), w = theta/2^(2^k0).  The full
    walk (n_levels = 2^(2^k0)) exhausts the opening theta exactly.
    """

    theta: float
    k0: int
    n_levels: int | None = None
    _w: Fraction = field(repr=False, default=None)

    def __post_init__(self):
        if not (0.0 < self.theta < 1.0):
            raise ValueError("theta must lie in (0, 1)")
        if self.k0 < 0:
            raise ValueError("k0 must be >= 0")
        full = 1 << (1 << self.k0)
        n = self.n_levels if self.n_levels is not None else full
        if not (1 <= n <= full):
            raise ValueError(f"n_levels must lie in [1, {full}]")
        object.__setattr__(self, "n_levels", n)
        object.__setattr__(self, "_w", Fraction(self.theta) / (1 << (1 << self.k0)))

    def level_rows(self, j: int) -> tuple[int, int]:
        """Row range [h_j, h_j + h_(j-1)) of level j >= 1."""
        if self.k0 + j > 24:
            raise ValueError("level height too large to represent")
        h_j = 1 << (1 << (self.k0 + j))
        h_prev = 1 << (1 << (self.k0 + j - 1))
        return h_j, h_j + h_prev

    def _row_span(self, y: int, j: int) -> tuple[int, int]:
        lo_s = (j - 1) * self._w
        hi_s = j * self._w
        return math.ceil(y * lo_s), math.ceil(y * hi_s) - 1

    def _level_for_row(self, y: int) -> int | None:
        if y < 2:
            return None
        e = y.bit_length() - 1      # level base has bit length 2^(k0+j) + 1
        if e & (e - 1):
            return None
        j = e.bit_length() - 1 - self.k0
        if not (1 <= j <= self.n_levels):
            return None
        lo, hi = self.level_rows(j)
        return j if lo <= y < hi else None

    def contains(self, x, y) -> bool:
        xi, yi = _as_int(x), _as_int(y)
        if xi is None or yi is None:
            return False
        j = self._level_for_row(yi)
        if j is None:
            return False
        lo, hi = self._row_span(yi, j)
        return lo <= xi <= hi

    def rect_count(self, x0, x1, y0, y1) -> int:
        total = 0
        for j in range(1, self.n_levels + 1):
            b_lo, b_hi = self.level_rows(j)
            if y1 < b_lo:
                break
            r_lo = _col_ceil(y0, b_lo)
            r_hi = min(b_hi - 1, _row_floor(y1, b_hi - 1))
            if r_hi - r_lo >= MAX_ROW_SWEEP:
                raise ValueError("rectangle spans too many rows to sweep")
            for y in range(r_lo, r_hi + 1):
                lo, hi = self._row_span(y, j)
                c_lo = _col_ceil(x0, lo)
                c_hi = min(hi, _row_floor(x1, hi))
                if c_hi >= c_lo:
                    total += c_hi - c_lo + 1
        return total

    def box_count(self, box: BoxSpec) -> int:
        return _axis_box_count(self, box)

    def level_count(self, j: int) -> int:
        """Exact point count of level j (row sweep)."""
        b_lo, b_hi = self.level_rows(j)
        return self.rect_count(-math.inf, math.inf, b_lo, b_hi - 1)

    def size_estimate(self) -> float:
        est = 0.0
        for j in range(1, self.n_levels + 1):
            exp = ((1 << j) + (1 << (j - 1)) - 1) * (1 << self.k0)
            est += self.theta * 2.0 ** min(exp, 1030)
        return est

    def materialize(self) -> PointSet:
        est = 0.0
        for j in range(1, self.n_levels + 1):
            exp = ((1 << j) + (1 << (j - 1)) - 1) * (1 << self.k0)
            est += self.theta * 2.0 ** min(exp, 1030)
        if est > MAX_MATERIALIZE_POINTS:
            raise MaterializeError(
                f"fixed-width cone with k0={self.k0}, n_levels={self.n_levels} "
                f"holds about {est:.3g} points; materialize fewer levels")
        rows = []
        for j in range(1, self.n_levels + 1):
            b_lo, b_hi = self.level_rows(j)
            for y in range(b_lo, b_hi):
                lo, hi = self._row_span(y, j)
                if hi >= lo:
                    xs = np.arange(lo, hi + 1, dtype=float)
                    rows.append(np.column_stack([xs, np.full(xs.size, float(y))]))
        pts = np.concatenate(rows) if rows else np.empty((0, 2))
        return PointSet(pts, _separated=True)


def gen_cone_fixed_width(theta: float, k0: int, n_levels: int | None = None,
                         mode: str = "implicit"):
    cone = ConeFixedWidth(theta, k0, n_levels)
    if mode == "implicit":
        return cone
    if mode == "materialize":
        return cone.materialize()
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Cartesian products and random sets of prescribed dimension
# ---------------------------------------------------------------------------

def gen_cartesian(a_values, b_values) -> PointSet:
    """Product set A x B of finite sets of nonnegative integers."""
    a = np.unique(np.asarray(a_values, dtype=float).ravel())
    b = np.unique(np.asarray(b_values, dtype=float).ravel())
    for name, vals in (("A", a), ("B", b)):
        if vals.size and (vals[0] < 0 or np.any(vals != np.floor(vals))):
            raise ValueError(f"{name} must contain nonnegative integers")
    if a.size * b.size > MAX_MATERIALIZE_POINTS:
        raise MaterializeError(f"product holds {a.size * b.size} points")
    pts = np.column_stack([np.repeat(a, b.size), np.tile(b, a.size)])
    return PointSet(pts, _separated=bool(a.size and b.size))


def _distinct_uniform(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """k distinct uniform draws from range(n)."""
    if k == 0:
        return np.empty(0, dtype=np.int64)
    if k >= n:
        return np.arange(n, dtype=np.int64)
    if n <= max(4 * k, 1 << 20):
        return rng.permutation(n)[:k].astype(np.int64)
    draws = rng.integers(0, n, size=k + (k >> 4) + 32)
    uniq = np.unique(draws)
    while uniq.size < k:
        extra = rng.integers(0, n, size=k - uniq.size + 32)
        uniq = np.unique(np.concatenate([uniq, extra]))
    return rng.choice(uniq, size=k, replace=False)


def gen_random_dimension(alpha: float, l_max: int, seed: int) -> PointSet:
    """Random lattice subset whose mass and counting dimensions are alpha.

    Dyadic annulus j (sup-norm radii in [2^j, 2^(j+1))) keeps each of its
    3*4^j lattice points independently with probability 2^(j(alpha-2)), so
    the expected count up to radius l is comparable to l^alpha at every
    scale simultaneously.  The origin is always included.  Deterministic in
    (alpha, l_max, seed).
    """
    if not (0.0 <= alpha <= 2.0):
        raise ValueError("alpha must lie in [0, 2]")
    if l_max < 2 or l_max & (l_max - 1):
        raise ValueError("l_max must be a power of two >= 2")
    n_annuli = l_max.bit_length() - 1
    expected = 1.0 + sum(3.0 * 4.0 ** j * min(1.0, 2.0 ** (j * (alpha - 2.0)))
                         for j in range(n_annuli))
    if expected > MAX_MATERIALIZE_POINTS:
        raise MaterializeError(
            f"expected about {expected:.3g} points; lower alpha or l_max")
    rng = np.random.default_rng(seed)
    chunks = [np.zeros((1, 2))]
    for j in range(n_annuli):
        h = 1 << j
        n = 3 * h * h
        p = min(1.0, 2.0 ** (j * (alpha - 2.0)))
        k = n if p >= 1.0 else int(rng.binomial(n, p))
        idx = _distinct_uniform(rng, n, k)
        right = idx < h * h
        xs = np.empty(idx.size, dtype=np.int64)
        ys = np.empty(idx.size, dtype=np.int64)
        xs[right] = h + idx[right] // h
        ys[right] = idx[right] % h
        top = idx[~right] - h * h
        xs[~right] = top % (2 * h)
        ys[~right] = h + top // (2 * h)
        chunks.append(np.column_stack([xs, ys]).astype(float))
    return PointSet(np.concatenate(chunks), _separated=True)


def gen_random_dimension_1d(alpha: float, n_max: int, seed: int) -> np.ndarray:
    """Random A subset of {1..n_max} with |A n [1, N]| comparable to N^alpha.

    Same annulus scheme as the planar version, one dimension down: integer
    n in [2^j, 2^(j+1)) survives with probability 2^(j(alpha-1)).  Returns
    the sorted surviving integers.
    """
    if not (0.0 <= alpha <= 1.0):
        raise ValueError("alpha must lie in [0, 1]")
    if n_max < 2 or n_max & (n_max - 1):
        raise ValueError("n_max must be a power of two >= 2")
    rng = np.random.default_rng(seed)
    parts = []
    for j in range(n_max.bit_length() - 1):
        n = 1 << j
        p = min(1.0, 2.0 ** (j * (alpha - 1.0)))
        k = n if p >= 1.0 else int(rng.binomial(n, p))
        idx = _distinct_uniform(rng, n, k)
        parts.append(np.sort(idx) + n)
    return np.concatenate(parts).astype(np.int64)
