"""Command-line front end for Monte Carlo decoding experiments.

One subcommand, ``run``, sweeps a physical-error-rate grid over a list of
code distances for one decoder and streams one CSV row per completed point.
Settings come from flags, optionally seeded by a JSON config file (flags
always win); the default master seed can also come from the SURFDEC_SEED
environment variable.  Exit codes: 0 ok, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import asdict, dataclass

from . import registry
from .code import build_code
from .errors import InvalidParameterError
from .montecarlo import StopRule, export_results, run_point
from .noise import NoiseModel, PauliChannelParams, bias_split, twirl_pta

ENV_SEED = "SURFDEC_SEED"

_DEFAULTS = {
    "decoder": "mwpm",
    "distances": (3, 5, 7),
    "eta": 0.5,
    "p_grid": (),
    "gamma": None,
    "lam": None,
    "erasure_rate": 0.0,
    "chi": 16,
    "osd_order": 4,
    "bp_iters": 30,
    "target_failures": 100,
    "max_trials": 1_000_000,
    "seed": None,  # resolved against the environment, then 0
    "jobs": None,  # resolved to the available cores
    "out": "results.csv",
}


class UsageError(ValueError):
    """Bad flag combination or value; maps to exit code 2."""


@dataclass(frozen=True)
class ExperimentConfig:
    decoder: str
    distances: tuple
    eta: float
    p_grid: tuple
    gamma: float | None
    lam: float | None
    erasure_rate: float
    chi: int
    osd_order: int
    bp_iters: int
    target_failures: int
    max_trials: int
    seed: int
    jobs: int
    out: str

    def to_dict(self) -> dict:
        return asdict(self)


def parse_distances(text) -> tuple:
    if isinstance(text, (list, tuple)):
        values = [int(v) for v in text]
    else:
        values = [int(tok) for tok in str(text).split(",") if tok.strip()]
    for d in values:
        if d < 3 or d % 2 == 0:
            raise UsageError(f"distances must be odd and >= 3, got {d}")
    if not values:
        raise UsageError("at least one distance is required")
    return tuple(values)


def parse_grid(text) -> tuple:
    """A grid is 'start:stop:step' (inclusive ends) or a comma list."""
    if isinstance(text, (list, tuple)):
        values = [float(v) for v in text]
    else:
        text = str(text).strip()
        if not text:
            return ()
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid must be start:stop:step, got {text!r}")
            start, stop, step = (float(x) for x in parts)
            if step <= 0:
                raise UsageError("grid step must be positive")
            values = []
            k = 0
            while start + k * step <= stop + 1e-12:
                values.append(round(start + k * step, 12))
                k += 1
        else:
            values = [float(tok) for tok in text.split(",") if tok.strip()]
    for p in values:
        if not (0.0 < p < 1.0):
            raise UsageError(f"grid value {p} outside (0, 1)")
    return tuple(values)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surfdec",
        description="Monte Carlo benchmarks for rotated planar code decoders.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="sweep a p-grid over code distances")
    run.add_argument("--config", help="JSON config file; flags override its values")
    run.add_argument(
        "--decoder",
        choices=registry.DECODER_IDS,
        help="decoder id: "
        + "; ".join(f"{k}={v}" for k, v in registry.DECODER_HELP.items())
        + f" (default {_DEFAULTS['decoder']})",
    )
    run.add_argument("--distance", help="comma list of odd distances (default 3,5,7)")
    run.add_argument("--eta", type=float, help="Z bias p_z/(p_x+p_y) (default 0.5)")
    run.add_argument("--p", help="total error rate grid: start:stop:step or comma list")
    run.add_argument("--gamma", type=float, help="damping parameter for a twirled channel")
    run.add_argument(
        "--lambda", dest="lam", type=float,
        help="scattering parameter for a twirled channel",
    )
    run.add_argument("--erasure-rate", type=float, help="per-qubit erasure rate (default 0)")
    run.add_argument("--chi", type=int, help="tensor-network bond dimension (default 16)")
    run.add_argument("--osd-order", type=int, help="OSD sweep order for bposdw (default 4)")
    run.add_argument("--bp-iters", type=int, help="BP iteration cap (default 30)")
    run.add_argument("--target-failures", type=int, help="failures per point (default 100)")
    run.add_argument("--max-trials", type=int, help="hard trial cap per point (default 1e6)")
    run.add_argument("--seed", type=int, help=f"master seed (default ${ENV_SEED} or 0)")
    run.add_argument("--jobs", type=int, help="worker processes (default: available cores)")
    run.add_argument("--out", help="output CSV path (default results.csv)")
    return parser


_FLAG_KEYS = (
    "decoder", "eta", "gamma", "lam", "erasure_rate", "chi", "osd_order",
    "bp_iters", "target_failures", "max_trials", "seed", "jobs", "out",
)


def parse_config(argv, env=None) -> ExperimentConfig:
    """Merge flags over an optional config file over defaults, then validate."""
    env = os.environ if env is None else env
    namespace = _build_parser().parse_args(argv)
    if namespace.command != "run":  # pragma: no cover - argparse enforces this
        raise UsageError(f"unknown command {namespace.command!r}")

    file_values = {}
    if namespace.config:
        try:
            with open(namespace.config, encoding="utf-8") as fh:
                file_values = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot load config file {namespace.config!r}: {exc}")
        unknown = set(file_values) - set(_DEFAULTS) - {"distances", "p_grid"}
        if unknown:
            raise UsageError(f"unknown config file keys: {sorted(unknown)}")

    merged = dict(_DEFAULTS)
    merged.update(file_values)
    for key in _FLAG_KEYS:
        value = getattr(namespace, key)
        if value is not None:
            merged[key] = value
    if namespace.distance is not None:
        merged["distances"] = namespace.distance
    if namespace.p is not None:
        merged["p_grid"] = namespace.p

    merged["distances"] = parse_distances(merged["distances"])
    merged["p_grid"] = parse_grid(merged["p_grid"])
    if merged["seed"] is None:
        merged["seed"] = int(env.get(ENV_SEED, "0"))
    if merged["jobs"] is None:
        merged["jobs"] = os.cpu_count() or 1
    config = ExperimentConfig(**merged)
    _validate(config)
    return config


def _validate(config: ExperimentConfig) -> None:
    if config.decoder not in registry.DECODER_IDS:
        raise UsageError(f"unknown decoder {config.decoder!r}")
    if config.decoder == "exact" and any(d != 3 for d in config.distances):
        raise UsageError("--decoder exact supports distance 3 only")
    if (config.gamma is None) != (config.lam is None):
        raise UsageError("--gamma and --lambda must be given together")
    if config.gamma is not None and config.p_grid:
        raise UsageError("--p and --gamma/--lambda are mutually exclusive")
    if not (0.0 <= config.erasure_rate < 1.0):
        raise UsageError("--erasure-rate must lie in [0, 1)")
    if config.eta < 0:
        raise UsageError("--eta must be nonnegative")
    for name, minimum in (
        ("chi", 1), ("osd_order", 0), ("bp_iters", 1),
        ("target_failures", 1), ("max_trials", 1), ("jobs", 1),
    ):
        if getattr(config, name) < minimum:
            raise UsageError(f"--{name.replace('_', '-')} must be >= {minimum}")


def _channel_points(config: ExperimentConfig):
    """Yield (p_total, eta, channel params) for every grid entry."""
    if config.gamma is not None:
        px, py, pz = twirl_pta(config.gamma, config.lam)
        total = px + py + pz
        eta = pz / (px + py) if px + py > 0 else math.inf
        yield total, eta, PauliChannelParams(
            px, py, pz, config.erasure_rate, gamma=config.gamma, lam=config.lam
        )
        return
    for p in config.p_grid:
        px, py, pz = bias_split(p, config.eta)
        yield p, config.eta, PauliChannelParams(px, py, pz, config.erasure_rate)


def run_experiment(config: ExperimentConfig) -> int:
    """Execute the sweep, appending one CSV row per completed point."""
    export_results([], config.out)  # header, even for an empty grid
    stop = StopRule(config.target_failures, config.max_trials)
    params = {
        "chi": config.chi,
        "osd_order": config.osd_order,
        "bp_iters": config.bp_iters,
    }
    point_index = 0
    for d in config.distances:
        code = build_code(d)
        for p, eta, channel in _channel_points(config):
            model = NoiseModel.iid(channel, code.n)
            seed = config.seed + 1_000_003 * point_index
            started = time.perf_counter()
            point = run_point(
                code,
                model,
                (config.decoder, params),
                p=p,
                eta=eta,
                stop=stop,
                master_seed=seed,
                jobs=config.jobs,
                decoder_label=config.decoder,
            )
            export_results([point], config.out)
            print(
                f"[{config.decoder} d={d} p={p:.6g}] trials={point.trials} "
                f"failures={point.failures} P_L={point.p_l:.5g} "
                f"({time.perf_counter() - started:.1f} s)",
                file=sys.stderr,
                flush=True,
            )
            point_index += 1
    return 0


def main(argv=None) -> int:
    try:
        config = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    try:
        return run_experiment(config)
    except (InvalidParameterError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
