"""Plotting companion for the surface-code benchmark CSV output."""

from .crossing import crossing_abscissa
from .reader import CurveRow, SchemaError, UsageError, filter_rows, read_rows
from .render import PlotSpec, RenderReport, render_curves

__all__ = [
    "CurveRow",
    "PlotSpec",
    "RenderReport",
    "SchemaError",
    "UsageError",
    "crossing_abscissa",
    "filter_rows",
    "read_rows",
    "render_curves",
]

__version__ = "0.1.0"
