"""Figure rendering for sparse-PCA benchmark CSV outputs."""

from .figures import FIGURES, FigureSpec, Panel, Series, build_panels, render
from .io import PlotDataError, load_csv

__version__ = "0.1.0"

__all__ = [
    "FIGURES",
    "FigureSpec",
    "Panel",
    "PlotDataError",
    "Series",
    "build_panels",
    "load_csv",
    "render",
]
