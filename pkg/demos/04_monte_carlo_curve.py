"""A small logical-error-rate sweep with threshold estimation and CSV export.

Run with:  python3 demos/04_monte_carlo_curve.py   (about a minute)
"""

import tempfile
from pathlib import Path

from surfdec import NoiseModel, build_code
from surfdec.montecarlo import StopRule, estimate_threshold, export_results, read_results, run_point

# Union-find at moderate statistics: 30 failures per point keeps this quick.
# Scale target_failures to 100 to reproduce the reference protocol.
points = []
grid = [0.10, 0.12, 0.14, 0.16]
for d in (3, 5):
    code = build_code(d)
    for i, p in enumerate(grid):
        model = NoiseModel.depolarizing(p, code.n)
        point = run_point(
            code, model, "uf", p=p, eta=0.5,
            stop=StopRule(target_failures=30, max_trials=100_000),
            master_seed=1000 + i, jobs=2,
        )
        points.append(point)
        print(f"d={d} p={p:.2f}: P_L={point.p_l:.4f} "
              f"[{point.ci_low:.4f}, {point.ci_high:.4f}] over {point.trials} trials")

estimate = estimate_threshold(points)
print(f"\ncrossing estimate: p_th = {estimate.p_th:.4f} +- {estimate.uncertainty:.4f} "
      f"(pairs: {estimate.pairs})")

out = Path(tempfile.mkdtemp()) / "uf_curve.csv"
export_results(points, out)
print(f"\nwrote {out} ({len(read_results(out))} rows); plot it with:")
print(f"  plot --in {out} --decoder uf --eta 0.5 --logy --out uf_curve.png")
