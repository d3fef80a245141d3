"""Constrained random models and the simulation experiment harness.

Determinism contract
--------------------

Every trial owns an independent RNG substream derived from the pair
``(seed, index)``: a Philox counter-based generator keyed by the seed with
its 256-bit counter preset to ``index * 2**64``.  Each trial consumes far
fewer than 2**64 counter blocks, so substreams never overlap, results do
not depend on the order trials are executed in, and running an experiment
with one thread or many yields bit-identical records.

A draw from a constraint set consumes the set's ``dim`` uniforms in one
block.  Sets with by-construction transforms accept the first block;
sign-constrained sets redraw whole blocks until the membership check
passes, all inside the trial's own substream.

Per-trial statistics
--------------------

``interval_length`` is |rd_crude - rd_true|.  ``rel_distance`` is
|rd_obs - rd_true| / interval_length, reported only when the interval is
wider than 1e-12; it measures where the surrogate-adjusted contrast sits
inside the crude-to-true interval (1 = at the crude end).
"""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import OutOfRangeError, UnsatisfiableConstraintsError
from .exact import _risk_differences
from .model import CONSTRAINT_SETS, ConstraintSet, DiscreteModel, validate

#: Below this interval width the relative distance is reported as absent.
MIN_INTERVAL = 1e-12

_MAX_REJECTION_ATTEMPTS = 100_000

CSV_HEADER = ("trial", "rd_true", "rd_obs", "rd_crude", "interval_length", "rel_distance", "youden")


def substream(seed: int, index: int) -> np.random.Generator:
    """The RNG substream owned by one (seed, index) pair."""
    if seed < 0:
        raise OutOfRangeError("seed", seed, 0, float("inf"))
    if index < 0:
        raise OutOfRangeError("index", index, 0, float("inf"))
    return np.random.Generator(np.random.Philox(key=seed, counter=index << 64))


def _resolve(constraints: ConstraintSet | str) -> ConstraintSet:
    if isinstance(constraints, str):
        try:
            return CONSTRAINT_SETS[constraints]
        except KeyError:
            raise UnsatisfiableConstraintsError(
                constraints, f"unknown constraint set (known: {', '.join(CONSTRAINT_SETS)})"
            ) from None
    return constraints


def _draw(cs: ConstraintSet, gen: np.random.Generator) -> DiscreteModel:
    if not cs.rejects:
        return cs.build(gen.random(cs.dim).tolist())
    for _ in range(_MAX_REJECTION_ATTEMPTS):
        m = cs.build(gen.random(cs.dim).tolist())
        if not cs.failing(m):
            return m
    raise UnsatisfiableConstraintsError(
        cs.name, f"no accepted draw in {_MAX_REJECTION_ATTEMPTS} attempts"
    )


def sample_model(constraints: ConstraintSet | str, seed: int = 0, index: int = 0) -> DiscreteModel:
    """Draw the model owned by (seed, index) from a constraint set."""
    cs = _resolve(constraints)
    return validate(_draw(cs, substream(seed, index)))


@dataclass(frozen=True, slots=True)
class TrialRecord:
    index: int
    model: DiscreteModel
    rd_true: float
    rd_obs: float
    rd_crude: float
    interval_length: float
    rel_distance: float | None
    youden: float


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    constraint_set: str = "t2"
    trials: int = 10_000
    seed: int = 0
    bins: int = 50
    threads: int = 1


@dataclass(frozen=True, slots=True)
class QuartileStat:
    """Relative-distance statistics within one Youden-index quartile."""

    youden_lo: float
    youden_hi: float
    count: int
    mean_rel_distance: float | None
    median_rel_distance: float | None


@dataclass(frozen=True, slots=True)
class ExperimentSummary:
    config: ExperimentConfig
    records: tuple[TrialRecord, ...]
    histogram_edges: tuple[float, ...]
    histogram_counts: tuple[int, ...]
    rel_distance_mean: float | None
    rel_distance_median: float | None
    youden_quartiles: tuple[QuartileStat, ...]

    @property
    def n_defined(self) -> int:
        return sum(1 for r in self.records if r.rel_distance is not None)


def _trial(cs: ConstraintSet, seed: int, index: int) -> TrialRecord:
    m = _draw(cs, substream(seed, index))
    rd = _risk_differences(m)
    interval = abs(rd.rd_crude - rd.rd_true)
    rel = abs(rd.rd_obs - rd.rd_true) / interval if interval >= MIN_INTERVAL else None
    return TrialRecord(
        index, m, rd.rd_true, rd.rd_obs, rd.rd_crude, interval, rel, rd.youden
    )


def _trial_chunk(args: tuple[str, int, int, int]) -> list[TrialRecord]:
    cs_name, seed, start, stop = args
    cs = CONSTRAINT_SETS[cs_name]
    return [_trial(cs, seed, i) for i in range(start, stop)]


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    """Run all trials of the configured experiment and summarize them."""
    if config.trials < 1:
        raise OutOfRangeError("trials", config.trials, 1, float("inf"))
    if config.bins < 1:
        raise OutOfRangeError("bins", config.bins, 1, float("inf"))
    cs = _resolve(config.constraint_set)

    if config.threads > 1:
        step = -(-config.trials // config.threads)
        chunks = [
            (cs.name, config.seed, lo, min(lo + step, config.trials))
            for lo in range(0, config.trials, step)
        ]
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            parts = list(pool.map(_trial_chunk, chunks))
        records = tuple(r for part in parts for r in part)
    else:
        records = tuple(_trial(cs, config.seed, i) for i in range(config.trials))

    return summarize(config, records)


def summarize(config: ExperimentConfig, records: tuple[TrialRecord, ...]) -> ExperimentSummary:
    lengths = np.array([r.interval_length for r in records])
    counts, edges = np.histogram(lengths, bins=config.bins)

    defined = [r.rel_distance for r in records if r.rel_distance is not None]
    rel_mean = float(np.mean(defined)) if defined else None
    rel_median = float(np.median(defined)) if defined else None

    youdens = np.array([r.youden for r in records])
    qs = np.quantile(youdens, [0.25, 0.5, 0.75])
    bounds = [float(youdens.min()), *map(float, qs), float(youdens.max())]
    groups: list[list[float]] = [[], [], [], []]
    sizes = [0, 0, 0, 0]
    for r in records:
        g = int(sum(r.youden > q for q in qs))
        sizes[g] += 1
        if r.rel_distance is not None:
            groups[g].append(r.rel_distance)
    quartiles = tuple(
        QuartileStat(
            youden_lo=bounds[g],
            youden_hi=bounds[g + 1],
            count=sizes[g],
            mean_rel_distance=float(np.mean(vals)) if vals else None,
            median_rel_distance=float(np.median(vals)) if vals else None,
        )
        for g, vals in enumerate(groups)
    )

    return ExperimentSummary(
        config=config,
        records=records,
        histogram_edges=tuple(float(e) for e in edges),
        histogram_counts=tuple(int(c) for c in counts),
        rel_distance_mean=rel_mean,
        rel_distance_median=rel_median,
        youden_quartiles=quartiles,
    )


def write_records(records: tuple[TrialRecord, ...], out: io.TextIOBase) -> None:
    """Write per-trial records as CSV with the documented fixed header.

    Floats are rendered by ``repr`` (shortest round-trip form), so output
    bytes are identical across runs with the same configuration.
    """
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow(
            [
                r.index,
                repr(r.rd_true),
                repr(r.rd_obs),
                repr(r.rd_crude),
                repr(r.interval_length),
                "" if r.rel_distance is None else repr(r.rel_distance),
                repr(r.youden),
            ]
        )


def records_csv(records: tuple[TrialRecord, ...]) -> str:
    buf = io.StringIO()
    write_records(records, buf)
    return buf.getvalue()


def summary_to_dict(summary: ExperimentSummary) -> dict:
    return {
        "config": {
            "constraint_set": summary.config.constraint_set,
            "trials": summary.config.trials,
            "seed": summary.config.seed,
            "bins": summary.config.bins,
        },
        "n_trials": len(summary.records),
        "n_rel_distance_defined": summary.n_defined,
        "interval_length_histogram": {
            "edges": list(summary.histogram_edges),
            "counts": list(summary.histogram_counts),
        },
        "rel_distance": {
            "mean": summary.rel_distance_mean,
            "median": summary.rel_distance_median,
        },
        "youden_quartiles": [
            {
                "youden_lo": q.youden_lo,
                "youden_hi": q.youden_hi,
                "count": q.count,
                "mean_rel_distance": q.mean_rel_distance,
                "median_rel_distance": q.median_rel_distance,
            }
            for q in summary.youden_quartiles
        ],
    }
