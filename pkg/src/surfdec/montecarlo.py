"""Monte Carlo harness: trials, stopping rule, curves and threshold crossing.

A trial samples an error, decodes its syndrome, and classifies the residual.
Each trial's randomness is fixed by (master seed, trial index), so results
are reproducible and independent of worker count.  A curve point runs trials
in index order until the failure target is reached (the run-until-100-failures
realization of the N = 100 / P_L rule of thumb) or a hard cap; its confidence
interval columns are the (0.8 P_L, 1.25 P_L) convention for 100 failures.
"""

from __future__ import annotations

import csv
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from collections import deque
from dataclasses import dataclass

from .code import LogicalClass, RotatedPlanarCode, build_code, logical_class, syndrome
from .errors import InvalidParameterError
from .noise import NoiseModel, sample_error, trial_rng
from .pauli import PauliOperator, multiply
from . import registry

CSV_HEADER = "decoder,d,eta,p,trials,failures,p_l,ci_low,ci_high,seed,wall_time_s"

CI_LOW_FACTOR = 0.8
CI_HIGH_FACTOR = 1.25


@dataclass(frozen=True)
class TrialOutcome:
    success: bool
    syndrome_matched: bool
    residual_class: LogicalClass | None
    decode_time: float

    def __post_init__(self):
        expected = self.syndrome_matched and self.residual_class is LogicalClass.I
        if self.success != expected:
            raise InvalidParameterError("success must equal matched-and-trivial-class")


@dataclass(frozen=True)
class StopRule:
    target_failures: int = 100
    max_trials: int = 1_000_000


@dataclass(frozen=True)
class CurvePoint:
    decoder: str
    d: int
    eta: float
    p: float
    trials: int
    failures: int
    p_l: float
    ci_low: float
    ci_high: float
    seed: int
    wall_time_s: float

    @classmethod
    def from_counts(cls, decoder, d, eta, p, trials, failures, seed, wall_time_s):
        p_l = failures / trials if trials else 0.0
        return cls(
            decoder=decoder,
            d=d,
            eta=eta,
            p=p,
            trials=trials,
            failures=failures,
            p_l=p_l,
            ci_low=CI_LOW_FACTOR * p_l,
            ci_high=CI_HIGH_FACTOR * p_l,
            seed=seed,
            wall_time_s=wall_time_s,
        )

    @property
    def is_upper_bound(self) -> bool:
        """No failures observed: p_l is only bounded from above."""
        return self.failures == 0

    @property
    def p_l_bound(self) -> float:
        """The reported rate, or 1/trials for a zero-failure point."""
        if self.is_upper_bound:
            return 1.0 / self.trials if self.trials else 1.0
        return self.p_l

    def key(self):
        """All fields except the timing column (the determinism contract)."""
        return (
            self.decoder, self.d, self.eta, self.p, self.trials,
            self.failures, self.p_l, self.ci_low, self.ci_high, self.seed,
        )


@dataclass(frozen=True)
class ThresholdEstimate:
    p_th: float | None
    method: str
    pairs: tuple  # (d_small, d_large, crossing p or None) per adjacent pair
    uncertainty: float | None

    @property
    def found(self) -> bool:
        return self.p_th is not None


def run_trial(
    code: RotatedPlanarCode,
    model: NoiseModel,
    decoder,
    master_seed: int,
    index: int,
) -> TrialOutcome:
    """One sample-decode-classify round, fully determined by (seed, index)."""
    draw = sample_error(model, trial_rng(master_seed, index))
    syn = syndrome(code, draw.pauli)
    start = time.perf_counter()
    estimate = decoder(code, syn, draw.erased)
    decode_time = time.perf_counter() - start
    residual = multiply(draw.pauli, estimate)
    matched = syndrome(code, residual).is_trivial()
    cls = logical_class(code, residual) if matched else None
    return TrialOutcome(
        success=matched and cls is LogicalClass.I,
        syndrome_matched=matched,
        residual_class=cls,
        decode_time=decode_time,
    )


# Worker-side state for parallel execution (one setup per process).
_WORKER: dict = {}


def _init_worker(d, model, decoder_name, decoder_params, master_seed):
    _WORKER["code"] = build_code(d)
    _WORKER["model"] = model
    _WORKER["decoder"] = registry.make_decoder(decoder_name, model, **decoder_params)
    _WORKER["seed"] = master_seed


def _worker_chunk(start: int, count: int) -> bytes:
    code, model = _WORKER["code"], _WORKER["model"]
    decoder, seed = _WORKER["decoder"], _WORKER["seed"]
    flags = bytearray(count)
    for offset in range(count):
        outcome = run_trial(code, model, decoder, seed, start + offset)
        flags[offset] = not outcome.success
    return bytes(flags)


def _resolve_decoder(decoder):
    if callable(decoder):
        return decoder, getattr(decoder, "__name__", "custom"), None
    if isinstance(decoder, str):
        return None, decoder, {}
    name, params = decoder
    return None, name, dict(params)


def run_point(
    code: RotatedPlanarCode,
    model: NoiseModel,
    decoder,
    *,
    p: float,
    eta: float,
    stop: StopRule | None = None,
    master_seed: int = 0,
    jobs: int = 1,
    decoder_label: str | None = None,
) -> CurvePoint:
    """Estimate one logical error rate point.

    ``decoder`` is a registry id, an (id, params) pair, or a raw callable
    (callables force serial execution).  Trials run in index order until the
    failure target or the trial cap is hit; the result is identical for any
    worker count.
    """
    stop = stop or StopRule()
    decode_fn, name, params = _resolve_decoder(decoder)
    label = decoder_label or name
    start_time = time.perf_counter()
    trials = failures = 0

    if decode_fn is None and jobs > 1:
        chunk = 256
        next_start = 0
        pending: deque = deque()
        pool = ProcessPoolExecutor(
            max_workers=jobs,
            initializer=_init_worker,
            initargs=(code.d, model, name, params, master_seed),
        )
        try:
            def submit():
                nonlocal next_start
                if next_start < stop.max_trials:
                    n = min(chunk, stop.max_trials - next_start)
                    pending.append(pool.submit(_worker_chunk, next_start, n))
                    next_start += n

            for _ in range(2 * jobs):
                submit()
            while pending and failures < stop.target_failures:
                flags = pending.popleft().result()
                submit()
                for flag in flags:
                    trials += 1
                    failures += flag
                    if failures >= stop.target_failures:
                        break
        finally:
            pool.shutdown(wait=True, cancel_futures=True)
    else:
        if decode_fn is None:
            decode_fn = registry.make_decoder(name, model, **params)
        for index in range(stop.max_trials):
            outcome = run_trial(code, model, decode_fn, master_seed, index)
            trials += 1
            failures += not outcome.success
            if failures >= stop.target_failures:
                break

    return CurvePoint.from_counts(
        decoder=label,
        d=code.d,
        eta=eta,
        p=p,
        trials=trials,
        failures=failures,
        seed=master_seed,
        wall_time_s=time.perf_counter() - start_time,
    )


def _pair_crossings(grid, delta):
    """Interpolated zeros of delta(p) where it moves from <= 0 to > 0."""
    crossings = []
    for i in range(len(grid) - 1):
        lo, hi = delta[i], delta[i + 1]
        if lo <= 0.0 < hi:
            if hi == lo:
                crossings.append(grid[i])
            else:
                crossings.append(grid[i] + (grid[i + 1] - grid[i]) * (0.0 - lo) / (hi - lo))
    return crossings


def estimate_threshold(points) -> ThresholdEstimate:
    """Pairwise crossing of log P_L curves, linearly interpolated on the grid.

    Requires at least two distances with overlapping p grids.  Zero-failure
    points carry no usable rate and are skipped.  Returns a no-threshold
    estimate (p_th None) when no adjacent pair of curves crosses.
    """
    by_d: dict[int, dict[float, CurvePoint]] = {}
    for point in points:
        by_d.setdefault(point.d, {})[point.p] = point
    distances = sorted(by_d)
    if len(distances) < 2:
        raise InvalidParameterError("threshold estimation needs at least two distances")

    pair_results = []
    all_crossings = []
    grid_step = 0.0
    for d1, d2 in zip(distances, distances[1:]):
        common = sorted(
            p
            for p in set(by_d[d1]) & set(by_d[d2])
            if by_d[d1][p].failures > 0 and by_d[d2][p].failures > 0
        )
        if len(common) < 2:
            pair_results.append((d1, d2, None))
            continue
        grid_step = max(grid_step, max(b - a for a, b in zip(common, common[1:])))
        delta = [
            math.log(by_d[d2][p].p_l) - math.log(by_d[d1][p].p_l) for p in common
        ]
        crossings = _pair_crossings(common, delta)
        if crossings:
            estimate = sum(crossings) / len(crossings)
            pair_results.append((d1, d2, estimate))
            all_crossings.extend(crossings)
        else:
            pair_results.append((d1, d2, None))

    found = [p for _, _, p in pair_results if p is not None]
    if not found:
        return ThresholdEstimate(
            p_th=None, method="pairwise-crossing", pairs=tuple(pair_results), uncertainty=None
        )
    spread = (max(all_crossings) - min(all_crossings)) / 2.0
    return ThresholdEstimate(
        p_th=sum(found) / len(found),
        method="pairwise-crossing",
        pairs=tuple(pair_results),
        uncertainty=max(spread, grid_step),
    )


def export_results(points, path) -> None:
    """Append curve points as CSV rows; the header is written exactly once."""
    new_file = not os.path.exists(path) or os.path.getsize(path) == 0
    try:
        with open(path, "a", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            if new_file:
                writer.writerow(CSV_HEADER.split(","))
            for point in points:
                writer.writerow([
                    point.decoder, point.d, point.eta, point.p, point.trials,
                    point.failures, point.p_l, point.ci_low, point.ci_high,
                    point.seed, point.wall_time_s,
                ])
            fh.flush()
    except OSError as exc:
        raise OSError(f"cannot write results to {path!r}: {exc}") from exc


def read_results(path) -> list[CurvePoint]:
    """Parse a results CSV back into curve points."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header != CSV_HEADER.split(","):
                raise InvalidParameterError(
                    f"unexpected results header {header!r} in {path!r}"
                )
            points = []
            for row in reader:
                points.append(CurvePoint(
                    decoder=row[0],
                    d=int(row[1]),
                    eta=float(row[2]),
                    p=float(row[3]),
                    trials=int(row[4]),
                    failures=int(row[5]),
                    p_l=float(row[6]),
                    ci_low=float(row[7]),
                    ci_high=float(row[8]),
                    seed=int(row[9]),
                    wall_time_s=float(row[10]),
                ))
            return points
    except OSError as exc:
        raise OSError(f"cannot read results from {path!r}: {exc}") from exc
