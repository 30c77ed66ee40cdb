"""Scratch calibration for acceptance grids (not part of the package)."""
import sys
import time

from surfdec.code import build_code
from surfdec.montecarlo import StopRule, estimate_threshold, run_point
from surfdec.noise import NoiseModel


def scan(decoder, distances, grid, eta, target, seed, jobs=2, params=()):
    points = []
    for d in distances:
        code = build_code(d)
        for i, p in enumerate(grid):
            model = NoiseModel.biased(p, eta, code.n)
            t0 = time.perf_counter()
            pt = run_point(
                code, model, (decoder, dict(params)), p=p, eta=eta,
                stop=StopRule(target, 1_000_000),
                master_seed=seed + 7919 * i + 104729 * d, jobs=jobs,
            )
            points.append(pt)
            print(f"  {decoder} d={d} p={p:.3f}: P_L={pt.p_l:.4f} "
                  f"trials={pt.trials} ({time.perf_counter()-t0:.1f}s)", flush=True)
    est = estimate_threshold(points)
    print(f"== {decoder} eta={eta}: p_th={est.p_th} pairs={est.pairs}", flush=True)
    return est


grid9 = [round(0.10 + 0.01 * k, 3) for k in range(9)]
t0 = time.perf_counter()
scan("mwpm", (5, 7), grid9, 0.5, 50, 11)
print("mwpm depo took", time.perf_counter() - t0, flush=True)

t0 = time.perf_counter()
grid_b = [round(0.07 + 0.01 * k, 3) for k in range(7)]
scan("mwpm", (5, 7), grid_b, 100.0, 50, 12)
print("mwpm eta100 took", time.perf_counter() - t0, flush=True)

t0 = time.perf_counter()
grid_uf = [round(0.09 + 0.01 * k, 3) for k in range(9)]
scan("uf", (5, 7), grid_uf, 0.5, 50, 13)
print("uf depo took", time.perf_counter() - t0, flush=True)

t0 = time.perf_counter()
scan("bposd0", (5, 7), grid9, 0.5, 50, 14)
print("bposd0 depo took", time.perf_counter() - t0, flush=True)

t0 = time.perf_counter()
grid_tn = [round(0.15 + 0.01 * k, 3) for k in range(7)]
scan("tn", (3, 5), grid_tn, 0.5, 50, 15, params=(("chi", 16),))
print("tn depo took", time.perf_counter() - t0, flush=True)
