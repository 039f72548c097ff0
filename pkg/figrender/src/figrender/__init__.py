"""Figures from slpsim run directories: heatmaps, line cuts, 6-panel views."""

__version__ = "0.1.0"

from .errors import FigrenderError, InputError, SchemaError
from .io import QUANTITIES, RunData, load_run
from .render import PanelSpec, render_heatmap, render_linecuts, render_sixpanel

__all__ = [
    "__version__", "FigrenderError", "InputError", "SchemaError",
    "QUANTITIES", "RunData", "load_run", "PanelSpec",
    "render_heatmap", "render_linecuts", "render_sixpanel",
]
