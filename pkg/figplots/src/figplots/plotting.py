"""Line and surface rendering of sweep rows.

A figure is a pure function of the CSV: the selected rows fully determine
the plotted series.  One free axis gives a line plot (one line per distinct
combination of the remaining varying parameters); two free axes give a
surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .reader import Row, read_rows  # noqa: E402

#: Plottable axes; `r` and `p` read the B-mode column (sweeps set rb = rc
#: and pb = pc, which is asserted on selection).
AXIS_COLUMNS = {"r": "r_b", "p": "p_b", "alpha": "alpha"}

AXIS_LABELS = {
    "r": "acceleration parameter r (radians)",
    "p": "decay probability P",
    "alpha": "state parameter alpha",
}

AXIS_LIMITS = {"r": (0.0, np.pi / 4), "p": (0.0, 1.0), "alpha": (0.0, 1.0)}


class SelectionError(ValueError):
    """The filters selected no rows (or an unusable row set)."""


@dataclass(frozen=True)
class FigureSpec:
    """What to plot: input CSV, panel filters, axes, output path."""

    csv_path: str
    out_path: str
    subsystem: Optional[str] = None
    channel: Optional[str] = None
    policy: Optional[str] = None
    method: str = "paper"
    x: str = "r"
    y: Optional[str] = None
    value: str = "concurrence"
    fixed: dict = field(default_factory=dict)  # axis name -> required value

    def __post_init__(self):
        if self.x not in AXIS_COLUMNS:
            raise ValueError(f"unknown x axis {self.x!r}")
        if self.y is not None and self.y not in AXIS_COLUMNS:
            raise ValueError(f"unknown y axis {self.y!r}")
        if self.y == self.x:
            raise ValueError("x and y axes must differ")
        if self.value not in ("concurrence", "l1"):
            raise ValueError(f"unknown value column {self.value!r}")
        for name in self.fixed:
            if name not in AXIS_COLUMNS:
                raise ValueError(f"unknown filter axis {name!r}")


def _axis_value(row: Row, axis: str) -> float:
    return getattr(row, AXIS_COLUMNS[axis])


def select_rows(rows: list[Row], spec: FigureSpec) -> list[Row]:
    out = []
    for row in rows:
        if spec.subsystem is not None and row.subsystem != spec.subsystem:
            continue
        if spec.channel is not None and row.channel != spec.channel:
            continue
        if spec.policy is not None and row.policy != spec.policy:
            continue
        if row.method != spec.method:
            continue
        if any(_axis_value(row, k) != v for k, v in spec.fixed.items()):
            continue
        out.append(row)
    if not out:
        raise SelectionError(
            f"no rows selected from {spec.csv_path} "
            f"(subsystem={spec.subsystem}, channel={spec.channel}, "
            f"method={spec.method}, fixed={spec.fixed})"
        )
    return out


def _series_key(row: Row, spec: FigureSpec) -> tuple:
    """Grouping key: every non-axis parameter that identifies a series."""
    axes = {spec.x} | ({spec.y} if spec.y else set())
    key = [("subsystem", row.subsystem), ("channel", row.channel), ("policy", row.policy)]
    for axis in ("alpha", "r", "p"):
        if axis not in axes:
            key.append((axis, _axis_value(row, axis)))
    return tuple(key)


def _line_series(rows: list[Row], spec: FigureSpec) -> dict[tuple, list[Row]]:
    groups: dict[tuple, list[Row]] = {}
    for row in rows:
        groups.setdefault(_series_key(row, spec), []).append(row)
    for key, members in groups.items():
        members.sort(key=lambda r: _axis_value(r, spec.x))
        xs = [_axis_value(r, spec.x) for r in members]
        if len(set(xs)) != len(xs):
            raise SelectionError(
                f"ambiguous selection: repeated {spec.x} values in series {key}; "
                "add filters"
            )
    return groups


def _surface_grid(rows: list[Row], spec: FigureSpec):
    keys = {_series_key(r, spec) for r in rows}
    if len(keys) != 1:
        raise SelectionError(
            f"surface needs a single panel; filters leave {len(keys)} "
            "parameter combinations"
        )
    xs = sorted({_axis_value(r, spec.x) for r in rows})
    ys = sorted({_axis_value(r, spec.y) for r in rows})
    z = np.full((len(ys), len(xs)), np.nan)
    xi = {v: i for i, v in enumerate(xs)}
    yi = {v: i for i, v in enumerate(ys)}
    for r in rows:
        i, j = yi[_axis_value(r, spec.y)], xi[_axis_value(r, spec.x)]
        if not np.isnan(z[i, j]):
            raise SelectionError("ambiguous selection: duplicate grid point")
        z[i, j] = getattr(r, spec.value)
    if np.isnan(z).any():
        raise SelectionError(
            f"incomplete {spec.x} x {spec.y} grid: "
            f"{int(np.isnan(z).sum())} missing points"
        )
    return np.array(xs), np.array(ys), z


def _label(key: tuple) -> str:
    return ", ".join(f"{name}={value}" for name, value in key)


def build_figure(spec: FigureSpec):
    """Build the matplotlib figure and return it with the plotted data.

    Returns (figure, payload): for line plots the payload maps series key ->
    (x, values); for surfaces it is (x, y, z).
    """
    rows = select_rows(read_rows(spec.csv_path), spec)
    for row in rows:
        # sweeps drive both observers symmetrically; a mismatch means the
        # CSV was not produced by an rb = rc (pb = pc) sweep
        if row.r_b != row.r_c or row.p_b != row.p_c:
            raise SelectionError(
                "rows are not symmetric sweeps (r_b != r_c or p_b != p_c)"
            )
    if spec.y is None:
        groups = _line_series(rows, spec)
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        payload = {}
        for key in sorted(groups):
            members = groups[key]
            xs = [_axis_value(r, spec.x) for r in members]
            vs = [getattr(r, spec.value) for r in members]
            style = {"marker": "o"} if len(xs) == 1 else {}
            ax.plot(xs, vs, label=_label(key), **style)
            payload[key] = (xs, vs)
        ax.set_xlim(*AXIS_LIMITS[spec.x])
        ax.set_xlabel(AXIS_LABELS[spec.x])
        ax.set_ylabel("coherence concurrence")
        if len(payload) > 1:
            ax.legend(fontsize=7)
        fig.tight_layout()
        return fig, payload
    xs, ys, z = _surface_grid(rows, spec)
    fig = plt.figure(figsize=(6.0, 4.5))
    ax = fig.add_subplot(projection="3d")
    mx, my = np.meshgrid(xs, ys)
    ax.plot_surface(mx, my, z, cmap="viridis", linewidth=0)
    ax.set_xlim(*AXIS_LIMITS[spec.x])
    ax.set_ylim(*AXIS_LIMITS[spec.y])
    ax.set_xlabel(AXIS_LABELS[spec.x])
    ax.set_ylabel(AXIS_LABELS[spec.y])
    ax.set_zlabel("coherence concurrence")
    fig.tight_layout()
    return fig, (xs, ys, z)


def save_figure(fig, path: str) -> None:
    try:
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)


def plot_sweep(spec: FigureSpec) -> str:
    """Render the figure to `spec.out_path` (PNG) and return the path."""
    fig, _ = build_figure(spec)
    save_figure(fig, spec.out_path)
    return spec.out_path
