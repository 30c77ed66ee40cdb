"""Threshold crossing of logical-error curves.

Mirrors the harness convention: for each adjacent pair of distances, the
log P_L difference is linearly interpolated between the grid points where it
changes sign from <= 0 to > 0; the reported crossing is the mean over pairs.
Zero-failure rows carry no rate and are skipped.
"""

from __future__ import annotations

import math


def pair_crossings(grid, delta):
    out = []
    for i in range(len(grid) - 1):
        lo, hi = delta[i], delta[i + 1]
        if lo <= 0.0 < hi:
            if hi == lo:
                out.append(grid[i])
            else:
                out.append(grid[i] + (grid[i + 1] - grid[i]) * (0.0 - lo) / (hi - lo))
    return out


def crossing_abscissa(rows) -> float | None:
    """Mean crossing over adjacent-distance pairs, or None without one."""
    by_d: dict[int, dict[float, float]] = {}
    for row in rows:
        if row.failures > 0:
            by_d.setdefault(row.d, {})[row.p] = row.p_l
    distances = sorted(by_d)
    estimates = []
    for d1, d2 in zip(distances, distances[1:]):
        common = sorted(set(by_d[d1]) & set(by_d[d2]))
        if len(common) < 2:
            continue
        delta = [math.log(by_d[d2][p]) - math.log(by_d[d1][p]) for p in common]
        found = pair_crossings(common, delta)
        if found:
            estimates.append(sum(found) / len(found))
    if not estimates:
        return None
    return sum(estimates) / len(estimates)
