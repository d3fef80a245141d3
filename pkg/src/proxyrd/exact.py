"""Exact contrasts and posteriors for the discrete model.

Three average causal contrasts are computed in closed form from a
:class:`~proxyrd.model.DiscreteModel`:

``rd_true``
    sum_c (E[Y|a,c] - E[Y|~a,c]) p(c), the effect after adjusting for the
    latent cause C itself.
``rd_obs``
    sum_d (E[Y|a,d] - E[Y|~a,d]) p(d), the effect after adjusting for the
    surrogate D instead.
``rd_crude``
    E[Y|a] - E[Y|~a], no adjustment at all.

Under the symmetric-channel premise sets (``t2`` and ``t3``) the three
contrasts are tied together by two slack decompositions:

    rd_obs   = rd_true + alpha * (ey_ac - ey_anc + ey_nac - ey_nanc)
    rd_crude = rd_obs  + beta  * (E[Y|a,d] - E[Y|a,~d] + E[Y|~a,d] - E[Y|~a,~d])

where ``alpha = p(c|a,d) p(d) + p(c|a,~d) p(~d) - 1/2`` and
``beta = p(d|a) - 1/2``.  :func:`risk_differences` reports the slacks
whenever one of those premise sets holds and leaves them absent
otherwise; :func:`decompose` insists on them.

Posterior odds of the latent cause follow the logistic form

    p(c | a, d) = sigmoid(delta(a, d)),
    delta(a, d) = ln[ p(a|c) p(d|c) p(c) ] - ln[ p(a|~c) p(d|~c) p(~c) ]

which :func:`log_odds` exposes directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConstraintsNotMetError, DegenerateConditioningError
from .model import CONSTRAINT_SETS, DiscreteModel, satisfies, validate


def sigmoid(x: float) -> float:
    """Numerically stable logistic function, total on [-inf, inf]."""
    if x >= 0:
        return 1.0 / (1.0 + math.exp(-x))
    z = math.exp(x)
    return z / (1.0 + z)


def _field_probs(m: DiscreteModel, a: int, c: int, d: int) -> float:
    """p(a, c, d) straight from the factorization."""
    pc = m.p_c if c else 1.0 - m.p_c
    pa = m.p_a_given_c if c else m.p_a_given_nc
    pd = m.p_d_given_c if c else m.p_d_given_nc
    return pc * (pa if a else 1.0 - pa) * (pd if d else 1.0 - pd)


def _mean_y(m: DiscreteModel, a: int, c: int) -> float:
    if a:
        return m.ey_ac if c else m.ey_anc
    return m.ey_nac if c else m.ey_nanc


@dataclass(frozen=True, slots=True)
class JointTable:
    """The eight-cell joint p(a, c, d) with the conditional-mean table."""

    cells: tuple[float, ...]  # indexed 4a + 2c + d
    means: tuple[float, ...]  # E[Y | a, c], indexed 2a + c

    def cell(self, a: int, c: int, d: int) -> float:
        return self.cells[4 * a + 2 * c + d]

    def mean(self, a: int, c: int) -> float:
        return self.means[2 * a + c]

    def p_a(self, a: int) -> float:
        return sum(self.cells[4 * a : 4 * a + 4])

    def p_d(self, d: int) -> float:
        return sum(self.cells[d::2])

    def p_ad(self, a: int, d: int) -> float:
        return self.cell(a, 0, d) + self.cell(a, 1, d)

    def total(self) -> float:
        return sum(self.cells)


def joint(model: DiscreteModel) -> JointTable:
    """Materialize the joint table of a validated model."""
    validate(model)
    cells = tuple(
        _field_probs(model, a, c, d)
        for a in (0, 1)
        for c in (0, 1)
        for d in (0, 1)
    )
    means = tuple(_mean_y(model, a, c) for a in (0, 1) for c in (0, 1))
    return JointTable(cells, means)


def posterior_c(model: DiscreteModel, a_val: int, d_val: int) -> float:
    """p(C=1 | A=a_val, D=d_val) by Bayes on the joint."""
    validate(model)
    return _posterior(model, a_val, d_val)


def _posterior(m: DiscreteModel, a: int, d: int) -> float:
    num = _field_probs(m, a, 1, d)
    den = num + _field_probs(m, a, 0, d)
    if den == 0.0:
        raise DegenerateConditioningError(f"A={a}, D={d}")
    return num / den


def mean_y_given_ad(model: DiscreteModel, a_val: int, d_val: int) -> float:
    """E[Y | A=a_val, D=d_val], marginalizing the latent cause."""
    validate(model)
    return _mean_ad(model, a_val, d_val)


def _mean_ad(m: DiscreteModel, a: int, d: int) -> float:
    pc = _posterior(m, a, d)
    return _mean_y(m, a, 1) * pc + _mean_y(m, a, 0) * (1.0 - pc)


@dataclass(frozen=True, slots=True)
class LogOdds:
    """Posterior log odds of the latent cause at one (a, d) cell."""

    a_val: int
    d_val: int
    delta: float

    @property
    def posterior(self) -> float:
        return sigmoid(self.delta)


def log_odds(model: DiscreteModel, a_val: int, d_val: int) -> LogOdds:
    """delta(a, d) such that p(c | a, d) = sigmoid(delta).

    Cells where only one of the two latent states has mass give an
    infinite delta; a cell with no mass at all is degenerate.
    """
    validate(model)
    num = _field_probs(model, a_val, 1, d_val)
    den = _field_probs(model, a_val, 0, d_val)
    if num == 0.0 and den == 0.0:
        raise DegenerateConditioningError(f"A={a_val}, D={d_val}")
    if num == 0.0:
        return LogOdds(a_val, d_val, -math.inf)
    if den == 0.0:
        return LogOdds(a_val, d_val, math.inf)
    return LogOdds(a_val, d_val, math.log(num) - math.log(den))


@dataclass(frozen=True, slots=True)
class RiskDifferences:
    """The three contrasts plus premise-dependent extras.

    ``alpha_slack`` and ``beta_slack`` are populated only when the model
    satisfies the ``t2`` or ``t3`` premise set; ``youden`` is
    p(d|c) - p(d|~c), the surrogate's informativeness, always present.
    """

    rd_true: float
    rd_obs: float
    rd_crude: float
    youden: float
    alpha_slack: float | None = None
    beta_slack: float | None = None


def risk_differences(model: DiscreteModel) -> RiskDifferences:
    """Compute all three contrasts of a validated model.

    Raises :class:`DegenerateConditioningError` when a required
    conditioning event (each exposure arm, and each (a, d) cell for the
    surrogate-adjusted contrast) has probability zero.
    """
    validate(model)
    return _risk_differences(model)


def _risk_differences(m: DiscreteModel) -> RiskDifferences:
    pc = m.p_c
    rd_true = (m.ey_ac - m.ey_nac) * pc + (m.ey_anc - m.ey_nanc) * (1.0 - pc)

    p_a = pc * m.p_a_given_c + (1.0 - pc) * m.p_a_given_nc
    if p_a == 0.0:
        raise DegenerateConditioningError("A=1")
    if p_a == 1.0:
        raise DegenerateConditioningError("A=0")
    mean_a = (pc * m.p_a_given_c * m.ey_ac + (1.0 - pc) * m.p_a_given_nc * m.ey_anc) / p_a
    mean_na = (
        pc * (1.0 - m.p_a_given_c) * m.ey_nac
        + (1.0 - pc) * (1.0 - m.p_a_given_nc) * m.ey_nanc
    ) / (1.0 - p_a)
    rd_crude = mean_a - mean_na

    p_d1 = pc * m.p_d_given_c + (1.0 - pc) * m.p_d_given_nc
    rd_obs = 0.0
    for d in (0, 1):
        p_d = p_d1 if d else 1.0 - p_d1
        rd_obs += (_mean_ad(m, 1, d) - _mean_ad(m, 0, d)) * p_d

    youden = m.p_d_given_c - m.p_d_given_nc

    alpha = beta = None
    if satisfies(m, CONSTRAINT_SETS["t2"]) or satisfies(m, CONSTRAINT_SETS["t3"]):
        alpha = _posterior(m, 1, 1) * p_d1 + _posterior(m, 1, 0) * (1.0 - p_d1) - 0.5
        beta = (pc * m.p_a_given_c * m.p_d_given_c
                + (1.0 - pc) * m.p_a_given_nc * m.p_d_given_nc) / p_a - 0.5

    return RiskDifferences(rd_true, rd_obs, rd_crude, youden, alpha, beta)


@dataclass(frozen=True, slots=True)
class Decomposition:
    """Slack decomposition of the contrast gaps under t2/t3 premises.

    Satisfies ``rd_obs - rd_true == alpha_slack * mean_gap_c`` and
    ``rd_crude - rd_obs == beta_slack * mean_gap_d`` up to the package
    equality tolerance.
    """

    alpha_slack: float
    beta_slack: float
    mean_gap_c: float  # ey_ac - ey_anc + ey_nac - ey_nanc
    mean_gap_d: float  # E[Y|a,d] - E[Y|a,~d] + E[Y|~a,d] - E[Y|~a,~d]


def decompose(model: DiscreteModel) -> Decomposition:
    """Slacks and mean gaps; the model must satisfy ``t2`` or ``t3``."""
    rd = risk_differences(model)
    if rd.alpha_slack is None or rd.beta_slack is None:
        raise ConstraintsNotMetError(
            "t2|t3", CONSTRAINT_SETS["t2"].failing(model)
        )
    gap_c = model.ey_ac - model.ey_anc + model.ey_nac - model.ey_nanc
    gap_d = (
        _mean_ad(model, 1, 1)
        - _mean_ad(model, 1, 0)
        + _mean_ad(model, 0, 1)
        - _mean_ad(model, 0, 0)
    )
    return Decomposition(rd.alpha_slack, rd.beta_slack, gap_c, gap_d)
