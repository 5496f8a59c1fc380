"""Figure construction: curve data first, pixels second.

Every figure is built in two stages: ``build_panels`` reduces the CSV
to per-panel arrays (x grid, one mean/std series per curve), and
``render`` draws those arrays. The split keeps the plotted numbers
testable without image diffing: ``--dump-data`` serializes exactly
what was drawn.

Bands are mean +- one sample standard deviation over trials
(ddof = 1; a single trial gets a zero-width band).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from .io import STUDY_COLUMNS, TRIAL_COLUMNS, PlotDataError, load_csv

FIGURES = ("error-vs-m", "recall-vs-m", "s-profiles", "refine-trajectory")

_METRIC_FOR = {"error-vs-m": "sin_error", "recall-vs-m": "recall"}


@dataclass(frozen=True)
class FigureSpec:
    input_csv: str
    figure: str
    out_image: str
    group_by: tuple[str, ...] | None = None
    dump_data: str | None = None
    format: str | None = None
    logy: bool = False

    def __post_init__(self):
        if self.figure not in FIGURES:
            raise ValueError(f"figure must be one of {FIGURES}, got {self.figure!r}")
        if self.format not in (None, "png", "pdf"):
            raise ValueError(f"format must be png or pdf, got {self.format!r}")


@dataclass(frozen=True)
class Series:
    label: str
    mean: list[float]
    std: list[float] | None = None


@dataclass(frozen=True)
class Panel:
    figure: str
    key: dict
    x_label: str
    x: list[float]
    series: list[Series] = field(default_factory=list)

    def suffix(self) -> str:
        return "".join(f"_{v}" for v in self.key.values())


def _std(values: np.ndarray) -> float:
    if values.size <= 1:
        return 0.0
    return float(np.std(values, ddof=1))


def _grouped_panels(frame: pd.DataFrame, spec: FigureSpec, metric: str,
                    x_col: str, curve_col: str) -> list[Panel]:
    group_by = list(spec.group_by) if spec.group_by else ["profile", "stage"]
    for col in group_by:
        if col not in frame.columns:
            raise PlotDataError(f"group-by column {col!r} not in CSV header")
    ok = frame[frame["status"] == "ok"].copy()
    ok = ok[np.isfinite(ok[metric])]
    if ok.empty:
        raise PlotDataError("no data rows with status=ok and a finite metric")
    panels = []
    for key_vals, group in ok.groupby(group_by, sort=False):
        if not isinstance(key_vals, tuple):
            key_vals = (key_vals,)
        xs = sorted(group[x_col].unique())
        series = []
        for label in sorted(group[curve_col].unique()):
            sub = group[group[curve_col] == label]
            means, stds = [], []
            for x in xs:
                vals = sub.loc[sub[x_col] == x, metric].to_numpy()
                if vals.size == 0:
                    raise PlotDataError(
                        f"empty group after filtering: {dict(zip(group_by, key_vals))}, "
                        f"{curve_col}={label!r}, {x_col}={x}")
                means.append(float(np.mean(vals)))
                stds.append(_std(vals))
            series.append(Series(label=str(label), mean=means, std=stds))
        panels.append(Panel(
            figure=spec.figure,
            key=dict(zip(group_by, (str(v) for v in key_vals))),
            x_label=x_col,
            x=[float(x) for x in xs],
            series=series,
        ))
    return panels


def _profile_table_panels(spec: FigureSpec) -> list[Panel]:
    frame = load_csv(spec.input_csv, ["p"])
    curves = [c for c in frame.columns if c != "p"]
    if not curves:
        raise PlotDataError("profile table has no profile columns")
    xs = [float(p) for p in frame["p"]]
    series = [Series(label=c, mean=[float(v) for v in frame[c]]) for c in curves]
    return [Panel(figure=spec.figure, key={}, x_label="p", x=xs, series=series)]


def build_panels(spec: FigureSpec) -> list[Panel]:
    """Reduce the input CSV to the arrays behind each output image."""
    if spec.figure in ("error-vs-m", "recall-vs-m"):
        frame = load_csv(spec.input_csv, TRIAL_COLUMNS)
        return _grouped_panels(frame, spec, _METRIC_FOR[spec.figure],
                               x_col="m", curve_col="algorithm")
    if spec.figure == "refine-trajectory":
        frame = load_csv(spec.input_csv, STUDY_COLUMNS)
        grouped = spec if spec.group_by else FigureSpec(
            input_csv=spec.input_csv, figure=spec.figure, out_image=spec.out_image,
            group_by=("profile",), dump_data=spec.dump_data, format=spec.format,
            logy=spec.logy)
        return _grouped_panels(frame, grouped, "sin_error",
                               x_col="t", curve_col="operator")
    return _profile_table_panels(spec)


_Y_LABEL = {
    "error-vs-m": "direction error",
    "recall-vs-m": "support recall",
    "s-profiles": "s(p)",
    "refine-trajectory": "direction error",
}


def _out_path(spec: FigureSpec, panel: Panel) -> str:
    fmt = spec.format
    base = spec.out_image
    stem, dot, ext = base.rpartition(".")
    if not dot:
        stem, ext = base, (fmt or "png")
    if fmt is None:
        fmt = ext if ext in ("png", "pdf") else "png"
    suffix = panel.suffix()
    return f"{stem}{suffix}.{fmt}", fmt


def render(spec: FigureSpec) -> list[str]:
    """Render one image per panel; returns the written paths.

    With ``dump_data`` set, the exact plotted arrays are also written
    as JSON (one entry per panel).
    """
    panels = build_panels(spec)
    written = []
    for panel in panels:
        path, fmt = _out_path(spec, panel)
        fig, ax = plt.subplots(figsize=(6.0, 4.2))
        for series in panel.series:
            x = np.asarray(panel.x)
            mean = np.asarray(series.mean)
            ax.plot(x, mean, label=series.label, linewidth=1.8)
            if series.std is not None:
                std = np.asarray(series.std)
                ax.fill_between(x, mean - std, mean + std, alpha=0.2)
        ax.set_xlabel(panel.x_label)
        ax.set_ylabel(_Y_LABEL[panel.figure])
        if spec.logy and panel.figure in ("error-vs-m", "refine-trajectory"):
            ax.set_yscale("log")
        title = ", ".join(f"{k}={v}" for k, v in panel.key.items())
        ax.set_title(title or panel.figure)
        ax.legend()
        fig.tight_layout()
        metadata = {"CreationDate": None} if fmt == "pdf" else None
        fig.savefig(path, dpi=150, metadata=metadata)
        plt.close(fig)
        written.append(path)
    if spec.dump_data:
        payload = [
            {
                "figure": p.figure,
                "key": p.key,
                "x_label": p.x_label,
                "x": p.x,
                "series": [
                    {"label": s.label, "mean": s.mean,
                     **({"std": s.std} if s.std is not None else {})}
                    for s in p.series
                ],
            }
            for p in panels
        ]
        with open(spec.dump_data, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1, sort_keys=True)
    return written
