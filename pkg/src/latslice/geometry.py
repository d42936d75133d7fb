"""Exact planar primitives for 1-separated point sets.

Conventions used throughout the package:

* Points are (x, y) pairs.  ``PointSet`` stores them as an (n, 2) float64
  array plus a unit-cell spatial index keyed by ``(floor(x), floor(y))``.
  Coordinates may be negative (the cone constructions are built symmetric
  about the y axis); generators that model first-quadrant sets emit
  nonnegative coordinates.

* A tube of perpendicular slope ``u`` (``u != 0``, either sign) is the strip

      -(1/u) x + v sqrt(1 + 1/u^2)  <  y  <=  -(1/u) x + (v+1) sqrt(1 + 1/u^2)

  open along its lower edge and closed along its upper edge.  Its edges have
  slope ``-1/u``, its perpendicular width is exactly 1, and ``v`` is the
  displacement of the strip measured along the perpendicular direction in
  width units.  ``orientation="horizontal"`` is the degenerate slope-0 strip
  ``v < y <= v + 1``.

* A floor line is the broken line ``y = floor(u x + v)`` with ``u > 0``.
  Slicing a set by it collects the distinct integer heights realised by set
  points sitting exactly on the broken line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "BoxSpec",
    "FloorLine",
    "PointSet",
    "SeparationReport",
    "Tube",
    "box_count",
    "read_points",
    "slice_floor_line",
    "slice_tube",
    "tube_contains",
    "tube_edge_distance",
    "validate_separation",
    "write_points",
]


# ---------------------------------------------------------------------------
# Tube
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tube:
    """Width-1 strip, open below and closed above.

    ``u`` is the slope of the perpendicular direction, so the strip's edges
    have slope ``-1/u``.  Any finite nonzero ``u`` is accepted: tubes hugging
    a line of positive slope ``m`` correspond to ``u = -1/m``.  For the
    horizontal orientation ``u`` is ignored and the strip is ``v < y <= v+1``.
    """

    u: float
    v: float
    orientation: str = "standard"

    def __post_init__(self) -> None:
        if self.orientation not in ("standard", "horizontal"):
            raise ValueError(f"unknown tube orientation {self.orientation!r}")
        if self.orientation == "standard":
            if not math.isfinite(self.u) or self.u == 0.0:
                raise ValueError("standard tube requires finite nonzero u")
        if not math.isfinite(self.v):
            raise ValueError("tube displacement v must be finite")

    @classmethod
    def horizontal(cls, v: float) -> "Tube":
        return cls(u=math.inf, v=v, orientation="horizontal")

    # -- edge geometry ------------------------------------------------------

    def edge_slope(self) -> float:
        """Slope of the two edge lines (0 for horizontal orientation)."""
        if self.orientation == "horizontal":
            return 0.0
        return -1.0 / self.u

    def edge_intercepts(self) -> tuple[float, float]:
        """(lower, upper) y-intercepts of the edge lines y = a x + b."""
        if self.orientation == "horizontal":
            return self.v, self.v + 1.0
        w = math.sqrt(1.0 + self.u ** -2)
        return self.v * w, (self.v + 1.0) * w

    def contains(self, x, y):
        """Strict-below / inclusive-above strip membership, vectorized."""
        if self.orientation == "horizontal":
            return (self.v < y) & (y <= self.v + 1.0)
        a = self.edge_slope()
        lo, up = self.edge_intercepts()
        base = a * np.asarray(x, dtype=float)
        return (base + lo < y) & (y <= base + up)

    # -- tube-aligned coordinates -------------------------------------------

    def axial_coord(self, x, y):
        """Signed distance along the tube direction from the line y = u x.

        The axial unit vector is (-u, 1)/sqrt(1+u^2): it points "up" the tube
        (positive y component), and axial >= 0 on or above the perpendicular
        line through the origin.  For the horizontal orientation it is x.
        """
        if self.orientation == "horizontal":
            return np.asarray(x, dtype=float) + 0.0
        r = math.sqrt(1.0 + self.u ** 2)
        return (np.asarray(y, dtype=float) - self.u * np.asarray(x, dtype=float)) / r

    def perp_coord(self, x, y):
        """Displacement along the perpendicular, in the same units as v.

        A point lies in tube t_{u,v} iff v < perp_coord <= v + 1; this is the
        strip inequality rewritten in width units.
        """
        if self.orientation == "horizontal":
            return np.asarray(y, dtype=float) + 0.0
        r = math.copysign(math.sqrt(1.0 + self.u ** 2), self.u)
        return (np.asarray(x, dtype=float) + self.u * np.asarray(y, dtype=float)) / r

    def shifted(self, k: float) -> "Tube":
        """The tube displaced k width units along the perpendicular."""
        return Tube(self.u, self.v + k, self.orientation)


def tube_contains(tube: Tube, point) -> bool:
    x, y = point
    return bool(tube.contains(float(x), float(y)))


def tube_edge_distance(tube: Tube) -> float:
    """Perpendicular distance between the two edge lines, computed honestly.

    Evaluates |b_up - b_lo| / sqrt(1 + a^2) from the edge lines y = a x + b
    rather than returning the constant 1, so it doubles as a consistency
    check of the parametrization.
    """
    a = tube.edge_slope()
    lo, up = tube.edge_intercepts()
    return (up - lo) / math.hypot(1.0, a)


# ---------------------------------------------------------------------------
# Floor line
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FloorLine:
    """Broken line y = floor(u x + v) with u > 0, v >= 0."""

    u: float
    v: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.u) and self.u > 0.0):
            raise ValueError("floor line requires finite u > 0")
        if not (math.isfinite(self.v) and self.v >= 0.0):
            raise ValueError("floor line requires finite v >= 0")

    def y_at(self, x):
        return np.floor(self.u * np.asarray(x, dtype=float) + self.v)

    def enclosing_tube(self) -> Tube:
        """A width-1 tube containing the whole broken line.

        The broken line lies in the slab u x + v - 1 < y <= u x + v, whose
        vertical extent is 1 and perpendicular width 1/sqrt(1+u^2) < 1.  The
        returned tube has edge slope u and its closed upper edge on
        y = u x + v, so the slab (hence the broken line) sits inside it.
        """
        w = math.sqrt(1.0 + self.u ** 2)
        return Tube(u=-1.0 / self.u, v=self.v / w - 1.0)


# ---------------------------------------------------------------------------
# Boxes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxSpec:
    """Counting window.

    kind="first_quadrant": closed square [0, size]^2.
    kind="centered":       closed square [-size, size]^2.
    kind="slanted":        square of side ``size`` with one side parallel to
        the tube t_{u,0}: axial coordinate in [0, size] (above and to the
        right of the line y = u x) and perpendicular coordinate within
        size/2 of the tube's center offset 1/2.
    """

    kind: str
    size: float
    u: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("first_quadrant", "centered", "slanted"):
            raise ValueError(f"unknown box kind {self.kind!r}")
        if not (math.isfinite(self.size) and self.size >= 0.0):
            raise ValueError("box size must be finite and nonnegative")
        if self.kind == "slanted":
            if self.u is None or not math.isfinite(self.u) or self.u == 0.0:
                raise ValueError("slanted box requires finite nonzero u")

    def contains(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s = self.size
        if self.kind == "first_quadrant":
            return (0.0 <= x) & (x <= s) & (0.0 <= y) & (y <= s)
        if self.kind == "centered":
            return (-s <= x) & (x <= s) & (-s <= y) & (y <= s)
        tube = Tube(self.u, 0.0)
        ax = tube.axial_coord(x, y)
        pp = tube.perp_coord(x, y)
        return (0.0 <= ax) & (ax <= s) & (np.abs(pp - 0.5) <= s / 2.0)

    def ratio_scale(self) -> float:
        """Denominator scale for log-count/log-scale ratios.

        Centered boxes [-l, l]^2 have side 2l, so their dimension ratios are
        taken against log(2l); the other kinds use log(size).
        """
        return 2.0 * self.size if self.kind == "centered" else self.size


# ---------------------------------------------------------------------------
# PointSet
# ---------------------------------------------------------------------------

class PointSet:
    """Immutable planar point collection with a unit-cell index.

    The index maps integer cells (floor(x), floor(y)) to point row indices;
    slicing operations walk only the cells a tube or floor line can touch.
    """

    def __init__(self, points, *, _separated: bool = False):
        arr = np.asarray(points, dtype=float)
        if arr.size == 0:
            arr = np.empty((0, 2), dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError("points must be an (n, 2) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        self.points = arr
        self.separation_checked = bool(_separated)
        self._build_index()

    def _build_index(self) -> None:
        pts = self.points
        n = len(pts)
        self._cells: dict[tuple[int, int], np.ndarray] = {}
        self._cols: dict[int, np.ndarray] = {}
        if n == 0:
            self._col_keys = np.empty(0, dtype=np.int64)
            return
        cells = np.floor(pts).astype(np.int64)
        order = np.lexsort((cells[:, 1], cells[:, 0]))
        sc = cells[order]
        breaks = np.flatnonzero((sc[1:, 0] != sc[:-1, 0]) | (sc[1:, 1] != sc[:-1, 1]))
        starts = np.concatenate(([0], breaks + 1))
        ends = np.concatenate((breaks + 1, [n]))
        for a, b in zip(starts, ends):
            key = (int(sc[a, 0]), int(sc[a, 1]))
            self._cells[key] = order[a:b]
        col_rows: dict[int, list[int]] = {}
        for (cx, cy) in self._cells:
            col_rows.setdefault(cx, []).append(cy)
        self._cols = {cx: np.array(sorted(rows), dtype=np.int64)
                      for cx, rows in col_rows.items()}
        self._col_keys = np.array(sorted(self._cols), dtype=np.int64)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def bbox(self) -> tuple[float, float, float, float] | None:
        """(xmin, ymin, xmax, ymax), or None for the empty set."""
        if len(self) == 0:
            return None
        pts = self.points
        return (float(pts[:, 0].min()), float(pts[:, 1].min()),
                float(pts[:, 0].max()), float(pts[:, 1].max()))

    def contains(self, x: float, y: float) -> bool:
        """Exact membership of the coordinate pair."""
        key = (int(math.floor(x)), int(math.floor(y)))
        idx = self._cells.get(key)
        if idx is None:
            return False
        pts = self.points[idx]
        return bool(np.any((pts[:, 0] == x) & (pts[:, 1] == y)))

    def max_cell_population(self) -> int:
        if not self._cells:
            return 0
        return max(len(v) for v in self._cells.values())

    def cell_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Occupied unit cells and their populations, sorted by cell."""
        if not self._cells:
            empty = np.empty(0, dtype=np.int64)
            return empty, empty.copy(), empty.copy()
        keys = sorted(self._cells)
        cx = np.array([k[0] for k in keys], dtype=np.int64)
        cy = np.array([k[1] for k in keys], dtype=np.int64)
        pop = np.array([len(self._cells[k]) for k in keys], dtype=np.int64)
        return cx, cy, pop

    def box_count(self, box: BoxSpec) -> int:
        return int(np.count_nonzero(box.contains(self.points[:, 0],
                                                 self.points[:, 1])))

    def restrict(self, x0: float, x1: float, y0: float, y1: float) -> "PointSet":
        """Subset with x0 <= x <= x1 and y0 <= y <= y1."""
        pts = self.points
        mask = (pts[:, 0] >= x0) & (pts[:, 0] <= x1) \
            & (pts[:, 1] >= y0) & (pts[:, 1] <= y1)
        return self._subset(mask)

    def _subset(self, mask_or_indices) -> "PointSet":
        sub = self.points[mask_or_indices]
        return PointSet(sub, _separated=self.separation_checked)


# ---------------------------------------------------------------------------
# Separation validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeparationReport:
    min_distance: float
    closest_pair: tuple[int, int] | None
    valid: bool


def validate_separation(ps: PointSet) -> SeparationReport:
    """Exact minimum pairwise distance and the 1-separation verdict.

    Uses a k-d tree nearest-neighbor query, which is exact for any point
    distribution (a fixed-radius neighbor-cell sweep is not: the closest pair
    of a sparse set need not share adjacent unit cells).  Marks the set's
    ``separation_checked`` flag on success.
    """
    n = len(ps)
    if n == 0:
        raise ValueError("validate_separation requires a non-empty set")
    if n == 1:
        ps.separation_checked = True
        return SeparationReport(math.inf, None, True)
    tree = cKDTree(ps.points)
    dist, nbr = tree.query(ps.points, k=2)
    d = dist[:, 1]
    i = int(np.argmin(d))
    j = int(nbr[i, 1])
    mind = float(d[i])
    valid = bool(mind >= 1.0)
    ps.separation_checked = valid
    return SeparationReport(mind, (min(i, j), max(i, j)), valid)


# ---------------------------------------------------------------------------
# Counting and slicing operations
# ---------------------------------------------------------------------------

def box_count(obj, box: BoxSpec) -> int:
    """Exact number of points of ``obj`` inside ``box``.

    ``obj`` may be a PointSet or any implicit set exposing ``box_count``.
    """
    return int(obj.box_count(box))


def _solve_linear_le(a: float, b: float) -> tuple[float, float]:
    """Solution interval of a*c <= b over the reals (a != 0)."""
    if a > 0:
        return (-math.inf, b / a)
    return (b / a, math.inf)


def slice_tube(ps: PointSet, tube: Tube) -> PointSet:
    """Subset of ``ps`` inside ``tube``, gathered by walking index cells.

    Only cells whose column the tube crosses are examined; membership of the
    gathered candidates is then decided by the exact strip inequality.
    """
    if len(ps) == 0:
        return ps._subset(np.empty(0, dtype=np.int64))
    xmin, ymin, xmax, ymax = ps.bbox
    hits: list[np.ndarray] = []

    if tube.orientation == "horizontal":
        r0 = int(math.floor(tube.v))
        rows = (r0, r0 + 1)
        for cx in ps._col_keys:
            cells = ps._cells
            for r in rows:
                idx = cells.get((int(cx), r))
                if idx is not None:
                    hits.append(idx)
    else:
        a = tube.edge_slope()
        lo_b, up_b = tube.edge_intercepts()
        # Column c is worth visiting iff the tube's y-range over [c, c+1]
        # meets [ymin, ymax]:  a*c + lo_b + min(a,0) <= ymax  and
        #                      a*c + up_b + max(a,0) >= ymin.
        c_lo, c_hi = -math.inf, math.inf
        i1 = _solve_linear_le(a, ymax - lo_b - min(a, 0.0))
        i2 = _solve_linear_le(-a, -(ymin - up_b - max(a, 0.0)))
        c_lo = max(i1[0], i2[0])
        c_hi = min(i1[1], i2[1])
        c_start = max(int(math.floor(xmin)), int(math.floor(c_lo)) - 1)
        c_end = min(int(math.floor(xmax)), int(math.ceil(c_hi)) + 1)
        cols = ps._cols
        for cx in range(c_start, c_end + 1):
            rows = cols.get(cx)
            if rows is None:
                continue
            y_lo = a * cx + lo_b + min(a, 0.0)
            y_hi = a * cx + up_b + max(a, 0.0)
            r_lo = int(math.floor(y_lo)) - 1
            r_hi = int(math.floor(y_hi)) + 1
            k0 = int(np.searchsorted(rows, r_lo, side="left"))
            k1 = int(np.searchsorted(rows, r_hi, side="right"))
            for r in rows[k0:k1]:
                hits.append(ps._cells[(cx, int(r))])

    if not hits:
        return ps._subset(np.empty(0, dtype=np.int64))
    cand = np.concatenate(hits)
    pts = ps.points[cand]
    keep = tube.contains(pts[:, 0], pts[:, 1])
    return ps._subset(np.sort(cand[keep]))


def slice_floor_line(ps: PointSet, line: FloorLine, x_max: float = math.inf) -> np.ndarray:
    """Distinct integer heights y with some set point (x, y), x <= x_max,
    sitting exactly on the broken line y = floor(u x + v).

    Returns the sorted array of distinct y values.  Only points with integer
    y can qualify, and any qualifying point lies within one cell row of the
    broken line, so the walk visits a bounded strip of index cells.
    """
    if not (x_max > 0.0):
        raise ValueError("x_max must be positive")
    if len(ps) == 0:
        return np.empty(0, dtype=np.int64)
    xmin, _, xmax, _ = ps.bbox
    hi = min(xmax, x_max)
    if hi < xmin:
        return np.empty(0, dtype=np.int64)
    u, v = line.u, line.v
    found: set[int] = set()
    c_start = int(math.floor(xmin))
    c_end = int(math.floor(hi))
    cols = ps._cols
    for cx in range(c_start, c_end + 1):
        rows = cols.get(cx)
        if rows is None:
            continue
        r_lo = int(math.floor(u * cx + v)) - 1
        r_hi = int(math.floor(u * (cx + 1) + v)) + 1
        k0 = int(np.searchsorted(rows, r_lo, side="left"))
        k1 = int(np.searchsorted(rows, r_hi, side="right"))
        for r in rows[k0:k1]:
            idx = ps._cells[(cx, int(r))]
            pts = ps.points[idx]
            ok = (pts[:, 0] <= x_max) \
                & (pts[:, 1] == np.floor(u * pts[:, 0] + v))
            for y in pts[ok, 1]:
                found.add(int(y))
    return np.array(sorted(found), dtype=np.int64)


# ---------------------------------------------------------------------------
# Point file format
# ---------------------------------------------------------------------------

def write_points(ps: PointSet, path) -> None:
    """One point per line, two whitespace-separated decimal fields.

    Integer coordinates are written without a decimal part; all values
    round-trip exactly through ``read_points``.
    """
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# x y\n")
        for x, y in ps.points:
            fh.write(f"{_fmt(x)} {_fmt(y)}\n")


def _fmt(value: float) -> str:
    if value == int(value) and abs(value) < 2 ** 53:
        return str(int(value))
    return repr(float(value))


def read_points(path) -> PointSet:
    """Parse the two-field point format; '#' lines are comments."""
    xs: list[float] = []
    ys: list[float] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected two fields, got {len(parts)}")
            xs.append(float(parts[0]))
            ys.append(float(parts[1]))
    if not xs:
        return PointSet(np.empty((0, 2)))
    return PointSet(np.column_stack([xs, ys]))
