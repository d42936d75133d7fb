"""
Surveying floor-line slices over a parameter rectangle
======================================================

How many points does a typical rounded line y = floor(u x + v) pick up
from a set?  Averaged over slopes and offsets the answer is controlled by
|E_N| / M, and the survey measures how close typical lines come to it.
"""

import numpy as np

from latslice import SurveyConfig, gen_cartesian, gen_random_dimension, \
    survey_floor_lines, exception_ray_scan

# Full grid first: every line hits about one point per unit of slope range.
full = gen_cartesian(np.arange(65), np.arange(65))
cfg = SurveyConfig(n_side=64, m_range=64.0, grid_u=256, grid_v=256)
rep = survey_floor_lines(full, cfg)
print("full 64-grid:")
print("  points surveyed:", rep.point_count)
print("  mean slice count:", round(rep.mean, 4))
print("  exact-in-v mean: ", round(rep.mean_exact_v, 4))
print("  upper bound |E|/M:", round(rep.bound, 2))
print("  threshold k|E|/M:", round(rep.threshold, 2),
      " exceptions:", rep.exception_fraction)

# The resolution term is the honest gap between the grid quadrature and
# the exact-in-v integral; refining the grid shrinks it.
for g in (32, 128, 512):
    r = survey_floor_lines(full, SurveyConfig(n_side=64, m_range=64.0,
                                              grid_u=g, grid_v=g))
    print(f"  grid {g:3d}x{g:<3d} resolution term {r.resolution_term:.6f}")

# Monte Carlo mode trades exactness for speed and reports a standard error.
mc = survey_floor_lines(full, SurveyConfig(n_side=64, m_range=64.0,
                                           mode="mc", mc_samples=20_000,
                                           seed=1))
print("  mc mean:", round(mc.mean, 4), "+/-", round(mc.mc_std_error, 4))

# A sparse random set: the mean drops with the point count but the bound
# scales the same way, so the good fraction stays high.
sparse = gen_random_dimension(1.2, 128, seed=5)
rep = survey_floor_lines(sparse, SurveyConfig(n_side=128, m_range=16.0,
                                              grid_u=256, grid_v=256))
print("sparse set: mean", round(rep.mean, 4), "bound", round(rep.bound, 3),
      "good fraction", rep.good_fraction)

# Scanning tube directions instead: the fraction of slopes whose slice
# looks at least threshold-dimensional.  On a grid every direction does.
frac = exception_ray_scan(full, 0.3, (-2.0, -0.5), 32, 0.5,
                          scales=2.0 ** np.arange(1, 7))
print("fraction of directions with slice dim > 0.5:", frac)
