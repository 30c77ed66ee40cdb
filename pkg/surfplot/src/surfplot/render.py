"""Curve rendering: one line per code distance, CI bars, crossing marker."""

from __future__ import annotations

from dataclasses import dataclass, field

from matplotlib.backends.backend_agg import FigureCanvasAgg
from matplotlib.figure import Figure

from .crossing import crossing_abscissa
from .reader import UsageError, filter_rows, read_rows


@dataclass(frozen=True)
class PlotSpec:
    """What to draw: input files, filters, scales and the output path."""

    inputs: tuple
    out: str
    decoder: str | None = None
    eta: float | None = None
    logy: bool = False
    zoom: tuple | None = None  # (p_lo, p_hi)


@dataclass(frozen=True)
class RenderReport:
    """Programmatic summary of a rendered figure."""

    path: str
    curves: int
    points_per_curve: dict
    upper_bound_points: int
    crossing: float | None


def render_curves(spec: PlotSpec) -> RenderReport:
    """Render the filtered curves to ``spec.out`` and report what was drawn.

    Each distance becomes one errorbar line using the CSV's confidence
    columns; zero-failure rows appear as downward arrows at their upper
    bound.  When adjacent-distance curves cross, a dashed vertical marker is
    placed at the interpolated crossing.  Output bytes are deterministic for
    fixed input (no embedded timestamps).
    """
    rows = []
    for path in spec.inputs:
        rows.extend(read_rows(path))
    rows = filter_rows(rows, decoder=spec.decoder, eta=spec.eta)

    by_d: dict[int, list] = {}
    for row in rows:
        by_d.setdefault(row.d, []).append(row)

    figure = Figure(figsize=(6.4, 4.8), dpi=130)
    FigureCanvasAgg(figure)
    axes = figure.add_subplot()

    points_per_curve = {}
    upper_bound_points = 0
    for d in sorted(by_d):
        curve = sorted(by_d[d], key=lambda r: r.p)
        points_per_curve[d] = len(curve)
        solid = [r for r in curve if not r.is_upper_bound]
        bounds = [r for r in curve if r.is_upper_bound]
        if solid:
            axes.errorbar(
                [r.p for r in solid],
                [r.p_l for r in solid],
                yerr=[
                    [r.p_l - r.ci_low for r in solid],
                    [r.ci_high - r.p_l for r in solid],
                ],
                marker="o",
                markersize=4,
                capsize=2,
                label=f"d = {d}",
            )
        if bounds:
            upper_bound_points += len(bounds)
            axes.scatter(
                [r.p for r in bounds],
                [r.p_l_bound for r in bounds],
                marker="v",
                s=28,
                label=f"d = {d} (upper bound)" if not solid else None,
            )

    crossing = crossing_abscissa(rows)
    if crossing is not None:
        axes.axvline(crossing, linestyle="--", linewidth=1.0, color="0.4")
        axes.annotate(
            f"crossing p = {crossing:.4f}",
            xy=(crossing, 0.98),
            xycoords=("data", "axes fraction"),
            fontsize=8,
            rotation=90,
            va="top",
            ha="right",
        )

    if spec.logy:
        axes.set_yscale("log")
    if spec.zoom is not None:
        axes.set_xlim(spec.zoom)
    axes.set_xlabel("physical error rate p")
    axes.set_ylabel("logical error rate P_L")
    title = spec.decoder or "all decoders"
    if spec.eta is not None:
        title += f", eta = {spec.eta:g}"
    axes.set_title(title)
    axes.legend(loc="best", fontsize=8)
    figure.tight_layout()
    figure.savefig(spec.out, metadata=_stripped_metadata(spec.out))

    return RenderReport(
        path=str(spec.out),
        curves=len(by_d),
        points_per_curve=points_per_curve,
        upper_bound_points=upper_bound_points,
        crossing=crossing,
    )


def _stripped_metadata(path) -> dict:
    # keep output byte-identical across runs: no writer version, no dates
    name = str(path).lower()
    if name.endswith(".png"):
        return {"Software": None}
    if name.endswith((".svg", ".pdf")):
        return {"Date": None}
    return {}
