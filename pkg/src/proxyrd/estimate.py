"""Plug-in estimation from observed (A, D, Y) rows.

The latent cause never appears in data, so the estimable contrasts are the
crude difference and the surrogate-adjusted difference.  Input is CSV text
with the exact header ``a,d,y``: exposure and surrogate are 0/1, the outcome
is any finite number.  Estimators are straight empirical means over the four
(A, D) cells, so they converge to the closed-form quantities computed by
:mod:`proxyrd.exact` as rows accumulate.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .conditions import Monotonicity, _classify_pair
from .errors import (
    DegenerateCellError,
    EmptyInputError,
    OutOfRangeError,
    ParseError,
)
from .model import DiscreteModel, validate
from .sampler import substream

_HEADER = ("a", "d", "y")


@dataclass(frozen=True, slots=True, eq=False)
class SampleDataset:
    """Columns of one observed dataset."""

    a: np.ndarray
    d: np.ndarray
    y: np.ndarray

    @property
    def n(self) -> int:
        return int(self.y.shape[0])


@dataclass(frozen=True, slots=True)
class PluginEstimates:
    n: int
    rd_obs: float
    rd_crude: float
    p_d: float
    eyad: tuple[tuple[float, float], tuple[float, float]]
    monotone_in_d: Monotonicity
    cor6_condition: bool
    cor7_condition: bool


def ingest(source: Iterable[str]) -> SampleDataset:
    """Parse CSV lines into a dataset, reporting 1-based line numbers."""
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        raise EmptyInputError()
    if header != list(_HEADER):
        raise ParseError(1, f"expected header 'a,d,y', got {','.join(header)!r}")

    a_col: list[int] = []
    d_col: list[int] = []
    y_col: list[float] = []
    for row in reader:
        if not row:
            continue
        line = reader.line_num
        if len(row) != 3:
            raise ParseError(line, f"expected 3 columns, got {len(row)}")
        for name, raw, out in (("a", row[0], a_col), ("d", row[1], d_col)):
            token = raw.strip()
            if token not in ("0", "1"):
                raise ParseError(line, f"column {name} must be 0 or 1, got {raw!r}")
            out.append(int(token))
        try:
            value = float(row[2])
        except ValueError:
            raise ParseError(line, f"column y must be a number, got {row[2]!r}") from None
        if not math.isfinite(value):
            raise ParseError(line, f"column y must be finite, got {row[2]!r}")
        y_col.append(value)

    if not y_col:
        raise EmptyInputError()
    return SampleDataset(
        a=np.asarray(a_col, dtype=np.int8),
        d=np.asarray(d_col, dtype=np.int8),
        y=np.asarray(y_col, dtype=np.float64),
    )


def plugin_estimates(dataset: SampleDataset) -> PluginEstimates:
    """Empirical analogues of the crude and surrogate-adjusted contrasts."""
    a = dataset.a
    d = dataset.d
    y = dataset.y

    means = [[0.0, 0.0], [0.0, 0.0]]
    for a_val in (0, 1):
        for d_val in (0, 1):
            mask = (a == a_val) & (d == d_val)
            if not mask.any():
                raise DegenerateCellError(a_val, d_val)
            means[a_val][d_val] = float(y[mask].mean())

    p_d = float(d.mean())
    rd_obs = (means[1][1] - means[0][1]) * p_d + (means[1][0] - means[0][0]) * (1.0 - p_d)
    rd_crude = float(y[a == 1].mean()) - float(y[a == 0].mean())

    dd1 = means[1][1] - means[1][0]
    dd0_rev = means[0][1] - means[0][0]
    dd0 = -dd0_rev
    return PluginEstimates(
        n=dataset.n,
        rd_obs=rd_obs,
        rd_crude=rd_crude,
        p_d=p_d,
        eyad=((means[0][0], means[0][1]), (means[1][0], means[1][1])),
        monotone_in_d=_classify_pair(dd1, dd0_rev),
        cor6_condition=dd1 >= dd0 >= 0.0,
        cor7_condition=dd1 <= dd0 <= 0.0,
    )


def draw_observations(model: DiscreteModel, n: int, seed: int = 0) -> SampleDataset:
    """Vectorized draw of ``n`` rows; the latent cause is discarded.

    Only models with a binary outcome can be sampled, since general outcome
    means do not pin down a distribution.
    """
    validate(model)
    if model.outcome_kind != "binary":
        raise ValueError("draw_observations requires a binary outcome model")
    if n < 1:
        raise OutOfRangeError("n", n, 1, float("inf"))

    gen = substream(seed, 0)
    c = gen.random(n) < model.p_c
    a = gen.random(n) < np.where(c, model.p_a_given_c, model.p_a_given_nc)
    d = gen.random(n) < np.where(c, model.p_d_given_c, model.p_d_given_nc)
    mean = np.where(
        a,
        np.where(c, model.ey_ac, model.ey_anc),
        np.where(c, model.ey_nac, model.ey_nanc),
    )
    y = gen.random(n) < mean
    return SampleDataset(
        a=a.astype(np.int8), d=d.astype(np.int8), y=y.astype(np.float64)
    )


def estimates_to_dict(est: PluginEstimates) -> dict:
    return {
        "n": est.n,
        "rd_obs": est.rd_obs,
        "rd_crude": est.rd_crude,
        "p_d": est.p_d,
        "eyad": [list(row) for row in est.eyad],
        "monotone_in_d": est.monotone_in_d.value,
        "cor6_condition": est.cor6_condition,
        "cor7_condition": est.cor7_condition,
    }
