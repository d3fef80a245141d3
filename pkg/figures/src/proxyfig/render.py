"""Render the four standard panels from a simulation records CSV.

The expected input is the per-trial CSV produced by ``proxyrd simulate``:
header ``trial,rd_true,rd_obs,rd_crude,interval_length,rel_distance,youden``,
one row per trial, with ``rel_distance`` left empty when the surrounding
interval collapses.  The four panels:

1. distribution of the interval length between the crude and true contrasts,
2. distribution of the relative distance of the surrogate-adjusted contrast,
3. the same interval-length distribution zoomed to its lowest decile,
4. relative distance against surrogate accuracy, with a least-squares trend.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = ["trial", "rd_true", "rd_obs", "rd_crude", "interval_length", "rel_distance", "youden"]

PANEL_FILES = (
    "interval_length_hist.png",
    "rel_distance_hist.png",
    "interval_length_zoom.png",
    "rel_distance_vs_youden.png",
)


@dataclass(frozen=True)
class RecordTable:
    """Column view of one records file; rel_distance is NaN where absent."""

    trial: np.ndarray
    rd_true: np.ndarray
    rd_obs: np.ndarray
    rd_crude: np.ndarray
    interval_length: np.ndarray
    rel_distance: np.ndarray
    youden: np.ndarray

    @property
    def n(self) -> int:
        return int(self.trial.shape[0])


@dataclass(frozen=True)
class RenderResult:
    paths: tuple[Path, ...]
    n_rows: int
    n_rel_defined: int
    trend_slope: float
    trend_intercept: float


def load_records(path: str | Path) -> RecordTable:
    with open(path, "r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != EXPECTED_HEADER:
            raise ValueError(f"unexpected header {header!r}; need {','.join(EXPECTED_HEADER)}")
        columns: list[list[float]] = [[] for _ in EXPECTED_HEADER]
        for row in reader:
            if not row:
                continue
            if len(row) != len(EXPECTED_HEADER):
                raise ValueError(f"row {reader.line_num}: expected {len(EXPECTED_HEADER)} columns")
            for i, cell in enumerate(row):
                if i == 5 and cell == "":
                    columns[i].append(math.nan)
                else:
                    columns[i].append(float(cell))
    if not columns[0]:
        raise ValueError("no data rows")
    arrays = [np.asarray(col, dtype=np.float64) for col in columns]
    return RecordTable(*arrays)


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def _panel_interval_hist(table: RecordTable, path: Path, bins: int) -> None:
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.hist(table.interval_length, bins=bins, color="#4878a8", edgecolor="white")
    ax.set_xlabel("interval length |crude - true|")
    ax.set_ylabel("trials")
    ax.set_title(f"Interval length across {table.n} trials")
    _save(fig, path)


def _panel_rel_hist(table: RecordTable, path: Path, bins: int) -> None:
    defined = table.rel_distance[np.isfinite(table.rel_distance)]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.hist(defined, bins=bins, range=(0.0, 1.0), color="#6a9a58", edgecolor="white")
    ax.axvline(float(np.median(defined)), color="#333333", linestyle="--", linewidth=1.2,
               label=f"median {np.median(defined):.3f}")
    ax.set_xlabel("relative distance of adjusted contrast")
    ax.set_ylabel("trials")
    ax.set_title("Where the adjusted contrast falls inside its interval")
    ax.legend()
    _save(fig, path)


def _panel_interval_zoom(table: RecordTable, path: Path, bins: int) -> None:
    cut = float(np.quantile(table.interval_length, 0.1))
    low = table.interval_length[table.interval_length <= cut]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.hist(low, bins=bins, color="#4878a8", edgecolor="white")
    ax.set_xlabel("interval length |crude - true|")
    ax.set_ylabel("trials")
    ax.set_title(f"Lowest decile: {low.size} trials at or below {cut:.4g}")
    _save(fig, path)


def _panel_rel_vs_youden(table: RecordTable, path: Path) -> tuple[float, float]:
    mask = np.isfinite(table.rel_distance)
    x = table.youden[mask]
    y = table.rel_distance[mask]
    slope, intercept = np.polyfit(x, y, 1)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(x, y, ".", markersize=2.0, alpha=0.25, color="#80504f")
    grid = np.linspace(float(x.min()), float(x.max()), 50)
    ax.plot(grid, slope * grid + intercept, color="#222222", linewidth=1.6,
            label=f"trend slope {slope:.3f}")
    ax.set_xlabel("surrogate accuracy (youden)")
    ax.set_ylabel("relative distance")
    ax.set_title("Better surrogates pull the adjusted contrast toward the truth")
    ax.legend()
    _save(fig, path)
    return float(slope), float(intercept)


def render_figures(input_path: str | Path, outdir: str | Path, bins: int = 50) -> RenderResult:
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    table = load_records(input_path)
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    paths = tuple(out / name for name in PANEL_FILES)

    _panel_interval_hist(table, paths[0], bins)
    _panel_rel_hist(table, paths[1], bins)
    _panel_interval_zoom(table, paths[2], bins)
    slope, intercept = _panel_rel_vs_youden(table, paths[3])

    return RenderResult(
        paths=paths,
        n_rows=table.n,
        n_rel_defined=int(np.isfinite(table.rel_distance).sum()),
        trend_slope=slope,
        trend_intercept=intercept,
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="proxyrd-figures",
        description="Render the four standard panels from a simulation records CSV.",
    )
    parser.add_argument("--input", required=True, help="records CSV produced by 'proxyrd simulate'")
    parser.add_argument("--outdir", required=True, help="directory for the PNG panels")
    parser.add_argument("--bins", type=int, default=50)
    args = parser.parse_args(argv)
    try:
        result = render_figures(args.input, args.outdir, bins=args.bins)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(
        json.dumps(
            {
                "files": [str(p) for p in result.paths],
                "n_rows": result.n_rows,
                "n_rel_defined": result.n_rel_defined,
                "trend_slope": result.trend_slope,
                "trend_intercept": result.trend_intercept,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
