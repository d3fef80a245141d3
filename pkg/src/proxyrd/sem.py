"""Linear path-diagram analogue of the discrete model.

All four variables are standardized to mean zero and unit variance.  A latent
cause C drives the exposure A, the surrogate D, and the outcome Y:

    A = b_ca * C + noise        D = b_cd * C + noise
    Y = b_ay * A + b_cy * C + noise

Adjusting for C recovers the direct coefficient ``b_ay`` exactly; adjusting
for the surrogate D lands somewhere between that and the unadjusted slope.
The three regression slopes have closed forms, so predicted orderings can be
checked algebraically and then confirmed against simulated least squares.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .conditions import CONCLUSION_TOL
from .errors import (
    InvalidVarianceError,
    OutOfRangeError,
    ParseError,
    SingularDenominatorError,
)
from .sampler import substream

_FIELDS = ("b_ay", "b_ca", "b_cy", "b_cd")


@dataclass(frozen=True, slots=True)
class PathModel:
    """Standardized linear coefficients: edges A->Y, C->A, C->Y, C->D."""

    b_ay: float
    b_ca: float
    b_cy: float
    b_cd: float

    def validate(self) -> "PathModel":
        for name in _FIELDS:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise OutOfRangeError(name, value, -math.inf, math.inf)
        for name in ("b_ca", "b_cd"):
            value = getattr(self, name)
            if not -1.0 <= value <= 1.0:
                raise OutOfRangeError(name, value, -1.0, 1.0)
        return self

    @property
    def residual_variance_y(self) -> float:
        """Noise variance needed to standardize Y; negative means infeasible."""
        return 1.0 - self.b_ay**2 - self.b_cy**2 - 2.0 * self.b_ay * self.b_ca * self.b_cy


@dataclass(frozen=True, slots=True)
class PathSlopes:
    """Regression slopes of Y on A under the three adjustment choices."""

    slope_true: float
    slope_obs: float
    slope_crude: float


@dataclass(frozen=True, slots=True)
class OrderingCheck:
    slopes: PathSlopes
    statement: str
    margins: tuple[float, float]
    passed: bool


def slopes(model: PathModel) -> PathSlopes:
    """Closed-form slopes; the surrogate adjustment shrinks the bias term."""
    model.validate()
    denom = 1.0 - model.b_ca**2 * model.b_cd**2
    if denom == 0.0:
        raise SingularDenominatorError(
            f"b_ca * b_cd = {model.b_ca * model.b_cd!r} makes the surrogate adjustment singular"
        )
    bias = model.b_cy * model.b_ca
    return PathSlopes(
        slope_true=model.b_ay,
        slope_obs=model.b_ay + bias * (1.0 - model.b_cd**2) / denom,
        slope_crude=model.b_ay + bias,
    )


def check_ordering(model: PathModel) -> OrderingCheck:
    """Verify the predicted chain between the three slopes.

    When the two paths into the confounded back door carry the same sign the
    chain runs upward from the adjusted slope; opposite signs reverse it, and
    a zero coefficient collapses everything to equality.
    """
    s = slopes(model)
    if model.b_ca * model.b_cy >= 0.0:
        statement = "slope_true <= slope_obs <= slope_crude"
        margins = (s.slope_obs - s.slope_true, s.slope_crude - s.slope_obs)
    else:
        statement = "slope_true >= slope_obs >= slope_crude"
        margins = (s.slope_true - s.slope_obs, s.slope_obs - s.slope_crude)
    passed = all(m >= -CONCLUSION_TOL for m in margins)
    return OrderingCheck(slopes=s, statement=statement, margins=margins, passed=passed)


def _fit_slope(y: np.ndarray, columns: list[np.ndarray]) -> float:
    """Least-squares coefficient on the first column, with an intercept."""
    design = np.column_stack([np.ones_like(y)] + columns)
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    return float(coef[1])


def simulate_and_estimate(model: PathModel, n: int, seed: int = 0) -> PathSlopes:
    """Draw ``n`` standardized observations and refit the three slopes."""
    model.validate()
    if n < 10:
        raise OutOfRangeError("n", n, 10, float("inf"))
    var_y = model.residual_variance_y
    if var_y < 0.0:
        raise InvalidVarianceError("y", var_y)

    gen = substream(seed, 0)
    c = gen.standard_normal(n)
    a = model.b_ca * c + math.sqrt(1.0 - model.b_ca**2) * gen.standard_normal(n)
    d = model.b_cd * c + math.sqrt(1.0 - model.b_cd**2) * gen.standard_normal(n)
    y = model.b_ay * a + model.b_cy * c + math.sqrt(var_y) * gen.standard_normal(n)

    return PathSlopes(
        slope_true=_fit_slope(y, [a, c]),
        slope_obs=_fit_slope(y, [a, d]),
        slope_crude=_fit_slope(y, [a]),
    )


def sample_path_model(seed: int = 0, index: int = 0) -> PathModel:
    """Deterministic draw of a feasible model (nonnegative noise variance)."""
    gen = substream(seed, index)
    b_ca, b_cd = (2.0 * v - 1.0 for v in gen.random(2).tolist())
    while True:
        b_ay, b_cy = (2.0 * v - 1.0 for v in gen.random(2).tolist())
        model = PathModel(b_ay=b_ay, b_ca=b_ca, b_cy=b_cy, b_cd=b_cd)
        if model.residual_variance_y >= 0.0:
            return model


def path_model_to_dict(model: PathModel) -> dict:
    return {name: getattr(model, name) for name in _FIELDS}


def path_model_from_dict(data: dict) -> PathModel:
    if not isinstance(data, dict):
        raise ParseError(1, f"expected a JSON object, got {type(data).__name__}")
    missing = [k for k in _FIELDS if k not in data]
    if missing:
        raise ParseError(1, f"missing fields: {', '.join(missing)}")
    unknown = [k for k in data if k not in _FIELDS]
    if unknown:
        raise ParseError(1, f"unknown fields: {', '.join(sorted(unknown))}")
    values = {}
    for name in _FIELDS:
        value = data[name]
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ParseError(1, f"field {name} must be a number, got {value!r}")
        values[name] = float(value)
    return PathModel(**values).validate()


def path_model_from_json(text: str) -> PathModel:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    return path_model_from_dict(data)


def ordering_to_dict(check: OrderingCheck) -> dict:
    return {
        "slopes": {
            "slope_true": check.slopes.slope_true,
            "slope_obs": check.slopes.slope_obs,
            "slope_crude": check.slopes.slope_crude,
        },
        "statement": check.statement,
        "margins": list(check.margins),
        "passed": check.passed,
    }
