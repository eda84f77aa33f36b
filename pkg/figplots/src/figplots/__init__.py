"""Plotting companion for tricoh sweep CSVs.

Reads the delimited sweep output and renders line plots (one free axis) or
surface plots (two free axes).  The package never computes physics: every
plotted value comes from a CSV row.
"""

__version__ = "0.1.0"

from .reader import CsvFormatError, Row, read_rows
from .plotting import FigureSpec, SelectionError, plot_sweep

__all__ = [
    "__version__",
    "CsvFormatError",
    "Row",
    "read_rows",
    "FigureSpec",
    "SelectionError",
    "plot_sweep",
]
