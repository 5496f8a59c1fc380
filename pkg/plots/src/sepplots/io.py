"""CSV loading and validation for the benchmark output schemas."""

from __future__ import annotations

import pandas as pd

TRIAL_COLUMNS = [
    "profile", "algorithm", "n", "k", "m", "theta", "trial", "seed",
    "stage", "sin_error", "recall", "refine_T", "operator", "wall_ms", "status",
]

STUDY_COLUMNS = [
    "profile", "initializer", "n", "k", "m", "theta", "trial", "seed",
    "operator", "t", "sin_error", "status",
]


class PlotDataError(ValueError):
    """Input CSV cannot back the requested figure."""


def load_csv(path: str, required: list[str]) -> pd.DataFrame:
    """Read a CSV and check the columns a figure needs are present."""
    try:
        frame = pd.read_csv(path)
    except FileNotFoundError as exc:
        raise PlotDataError(f"cannot read {path!r}: {exc}") from exc
    except pd.errors.EmptyDataError as exc:
        raise PlotDataError(f"{path!r} has no header row") from exc
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise PlotDataError(
            f"{path!r} is missing required columns {missing}; found {list(frame.columns)}")
    if frame.empty:
        raise PlotDataError(f"{path!r} has no data rows")
    return frame
