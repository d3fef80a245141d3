"""Premise classification and ordering verification.

Twelve named sufficient conditions tie the three contrasts together.
Writing ``g1 = ey_ac - ey_anc`` and ``g0 = ey_nanc - ey_nac`` for the two
mean gaps, the sign cases are ``pos`` (g1 >= g0 >= 0) and ``neg``
(g1 <= g0 <= 0), and the conditions are:

=======  ============================================  =========================================
name     premises                                      conclusion
=======  ============================================  =========================================
t2       balanced cause, A and D symmetric upward      rd_obs between rd_true and rd_crude
t3       same, both symmetric downward                 rd_obs between rd_true and rd_crude
t1       t2 with equal channel accuracies, sign case   full chain (direction set by the case)
c4       t2 premises, sign case                        pos: rd_crude >= rd_obs >= rd_true
c5       t3 premises, sign case                        pos: rd_crude <= rd_obs <= rd_true
c6       t2 premises                                   sign case transfers to the D side, same
                                                       direction, and back
c7       t3 premises                                   transfers with direction flipped
t8       balanced, A ordered, D symmetric, sign case   pos: rd_crude >= rd_true, rd_obs >= rd_true
t9       balanced, A and D ordered, sign case          same as t8
t10      balanced, A and D ordered downward, sign      pos: rd_crude <= rd_true, rd_obs <= rd_true
t11      p_c <= 0.5, A ordered, sign case              pos: rd_crude >= rd_true
t12      p_c >= 0.5, A ordered downward, sign case     pos: rd_crude <= rd_true
=======  ============================================  =========================================

``neg`` cases mirror every inequality.  :func:`classify` reports, for one
model, which conditions apply and what they predict; :func:`verify` then
checks each prediction against the exactly computed contrasts, with a
slack of :data:`CONCLUSION_TOL` on ordering conclusions.

Monotonicity in the surrogate is evaluated through the factored identity

    E[Y|a,d] - E[Y|a,~d]   = g_a  * (p(c|a,d)  - p(c|a,~d))
    E[Y|~a,d] - E[Y|~a,~d] = g_~a * (p(c|~a,d) - p(c|~a,~d))

(g_x the within-row mean gap in C), which keeps the sign relation between
the C side and the D side exact in floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegenerateConditioningError
from .exact import risk_differences
from .model import (
    A_ORD,
    A_ORD_LOW,
    A_SYM,
    A_SYM_LOW,
    BALANCED,
    D_ORD,
    D_ORD_LOW,
    D_SYM,
    D_SYM_LOW,
    Constraint,
    DiscreteModel,
    validate,
)

#: Slack allowed when checking a predicted ordering of computed contrasts.
CONCLUSION_TOL = 1e-9


class Monotonicity(enum.Enum):
    NON_DECREASING = "non-decreasing"
    NON_INCREASING = "non-increasing"
    CONSTANT = "constant"
    NONE = "none"


def _classify_pair(d1: float, d0: float) -> Monotonicity:
    if d1 == 0.0 and d0 == 0.0:
        return Monotonicity.CONSTANT
    if d1 >= 0.0 and d0 >= 0.0:
        return Monotonicity.NON_DECREASING
    if d1 <= 0.0 and d0 <= 0.0:
        return Monotonicity.NON_INCREASING
    return Monotonicity.NONE


def monotone_in_c(model: DiscreteModel) -> Monotonicity:
    """Direction of E[Y | A, C] in C, jointly over both exposure rows."""
    validate(model)
    return _classify_pair(model.ey_ac - model.ey_anc, model.ey_nac - model.ey_nanc)


def _d_side_gaps(m: DiscreteModel) -> tuple[float, float]:
    """(E[Y|a,d]-E[Y|a,~d], E[Y|~a,d]-E[Y|~a,~d]) in factored form.

    The posterior difference within exposure row a is p(a,c) p(a,~c)
    (p(d|c) - p(d|~c)) / (p(a,d) p(a,~d)), so the surrogate's
    informativeness enters exactly once: a zero Youden index yields an
    exactly zero gap, and the gap's sign is exact in floating point.
    """
    pc = m.p_c
    x_a = pc * m.p_a_given_c
    y_a = (1.0 - pc) * m.p_a_given_nc
    x_n = pc * (1.0 - m.p_a_given_c)
    y_n = (1.0 - pc) * (1.0 - m.p_a_given_nc)
    v, w = m.p_d_given_c, m.p_d_given_nc
    cells = {
        (1, 1): x_a * v + y_a * w,
        (1, 0): x_a * (1.0 - v) + y_a * (1.0 - w),
        (0, 1): x_n * v + y_n * w,
        (0, 0): x_n * (1.0 - v) + y_n * (1.0 - w),
    }
    for (a, d), p in cells.items():
        if p == 0.0:
            raise DegenerateConditioningError(f"A={a}, D={d}")
    youden = v - w
    kappa_a = x_a * y_a * youden / (cells[(1, 1)] * cells[(1, 0)])
    kappa_na = x_n * y_n * youden / (cells[(0, 1)] * cells[(0, 0)])
    return (m.ey_ac - m.ey_anc) * kappa_a, (m.ey_nac - m.ey_nanc) * kappa_na


def monotone_in_d(model: DiscreteModel) -> Monotonicity:
    """Direction of E[Y | A, D] in D; all four (a, d) cells must have mass."""
    validate(model)
    return _classify_pair(*_d_side_gaps(model))


# --------------------------------------------------------------------------
# Classification
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class Prediction:
    """One machine-checkable conclusion of an applicable condition.

    ``kind`` is ``"ge"`` (contrast ``lhs`` >= contrast ``rhs``),
    ``"betweenness"`` (rd_obs inside the closed true/crude interval), or
    ``"iff"`` (sign-case transfer between the C and D sides, ``variant``
    either ``"same"`` or ``"opposite"``).
    """

    kind: str
    lhs: str | None = None
    rhs: str | None = None
    variant: str | None = None

    def describe(self) -> str:
        if self.kind == "ge":
            return f"{self.lhs} >= {self.rhs}"
        if self.kind == "betweenness":
            return "rd_obs between rd_true and rd_crude"
        return f"sign case transfers to the D side ({self.variant} direction)"


def _ge(lhs: str, rhs: str) -> Prediction:
    return Prediction("ge", lhs=lhs, rhs=rhs)


_BETWEEN = (Prediction("betweenness"),)
_CHAIN_DOWN = (_ge("rd_crude", "rd_obs"), _ge("rd_obs", "rd_true"))
_CHAIN_UP = (_ge("rd_obs", "rd_crude"), _ge("rd_true", "rd_obs"))
_BOUNDS_LOW = (_ge("rd_crude", "rd_true"), _ge("rd_obs", "rd_true"))
_BOUNDS_HIGH = (_ge("rd_true", "rd_crude"), _ge("rd_true", "rd_obs"))
_CRUDE_LOW = (_ge("rd_crude", "rd_true"),)
_CRUDE_HIGH = (_ge("rd_true", "rd_crude"),)

_EQUAL_ACCURACY = Constraint(
    "p_a_given_c == p_d_given_c",
    "eq",
    lambda m: m.p_a_given_c,
    lambda m: m.p_d_given_c,
)

# name -> (premise constraints, needs sign case, predictions for pos, for neg).
# Case-free conditions put their single prediction tuple in the pos slot.
_RESULTS: dict[str, tuple[tuple[Constraint, ...], bool, tuple, tuple]] = {
    "t1": ((BALANCED, *A_SYM, *D_SYM, _EQUAL_ACCURACY), True, _CHAIN_DOWN, _CHAIN_UP),
    "t2": ((BALANCED, *A_SYM, *D_SYM), False, _BETWEEN, ()),
    "t3": ((BALANCED, *A_SYM_LOW, *D_SYM_LOW), False, _BETWEEN, ()),
    "c4": ((BALANCED, *A_SYM, *D_SYM), True, _CHAIN_DOWN, _CHAIN_UP),
    "c5": ((BALANCED, *A_SYM_LOW, *D_SYM_LOW), True, _CHAIN_UP, _CHAIN_DOWN),
    "c6": ((BALANCED, *A_SYM, *D_SYM), False, (Prediction("iff", variant="same"),), ()),
    "c7": (
        (BALANCED, *A_SYM_LOW, *D_SYM_LOW),
        False,
        (Prediction("iff", variant="opposite"),),
        (),
    ),
    "t8": ((BALANCED, *A_ORD, *D_SYM), True, _BOUNDS_LOW, _BOUNDS_HIGH),
    "t9": ((BALANCED, *A_ORD, *D_ORD), True, _BOUNDS_LOW, _BOUNDS_HIGH),
    "t10": ((BALANCED, *A_ORD_LOW, *D_ORD_LOW), True, _BOUNDS_HIGH, _BOUNDS_LOW),
    "t11": ((Constraint("p_c <= 0.5", "le", lambda m: m.p_c, lambda m: 0.5), *A_ORD),
            True, _CRUDE_LOW, _CRUDE_HIGH),
    "t12": ((Constraint("p_c >= 0.5", "ge", lambda m: m.p_c, lambda m: 0.5), *A_ORD_LOW),
            True, _CRUDE_HIGH, _CRUDE_LOW),
}

RESULT_NAMES = tuple(_RESULTS)


def _sign_case(m: DiscreteModel) -> str | None:
    g1 = m.ey_ac - m.ey_anc
    g0 = m.ey_nanc - m.ey_nac
    if g1 >= g0 >= 0.0:
        return "pos"
    if g1 <= g0 <= 0.0:
        return "neg"
    return None


@dataclass(frozen=True, slots=True)
class ResultStatus:
    name: str
    applicable: bool
    case: str | None
    predictions: tuple[Prediction, ...]
    failed_premises: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class ConditionReport:
    monotone_c: Monotonicity
    monotone_d: Monotonicity
    sign_case: str | None
    results: tuple[ResultStatus, ...]

    def result(self, name: str) -> ResultStatus:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)

    def applicable(self) -> tuple[str, ...]:
        return tuple(r.name for r in self.results if r.applicable)


def classify(model: DiscreteModel) -> ConditionReport:
    """Evaluate every named condition's premises against one model.

    Premise inequalities are checked exactly; premise equalities within
    the package equality tolerance.  A condition with a sign case is
    applicable only when its case actually obtains.
    """
    validate(model)
    case = _sign_case(model)
    statuses = []
    for name, (premises, needs_case, pos_preds, neg_preds) in _RESULTS.items():
        failed = tuple(c.label for c in premises if not c.holds(model))
        if needs_case:
            if failed or case is None:
                missing = failed if failed else ("mean gaps match neither sign case",)
                statuses.append(ResultStatus(name, False, case, (), missing))
                continue
            preds = pos_preds if case == "pos" else neg_preds
            statuses.append(ResultStatus(name, True, case, preds, ()))
        else:
            if failed:
                statuses.append(ResultStatus(name, False, None, (), failed))
            else:
                statuses.append(ResultStatus(name, True, None, pos_preds, ()))
    return ConditionReport(
        monotone_c=monotone_in_c(model),
        monotone_d=monotone_in_d(model),
        sign_case=case,
        results=tuple(statuses),
    )


# --------------------------------------------------------------------------
# Verification
# --------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class VerificationEntry:
    result: str
    prediction: str
    passed: bool
    margin: float


@dataclass(frozen=True, slots=True)
class VerificationResult:
    entries: tuple[VerificationEntry, ...]

    @property
    def all_passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> tuple[VerificationEntry, ...]:
        return tuple(e for e in self.entries if not e.passed)


def _transfer_holds(m: DiscreteModel, variant: str) -> bool:
    g1 = m.ey_ac - m.ey_anc
    g0 = m.ey_nanc - m.ey_nac
    dd1, dd0_rev = _d_side_gaps(m)
    # D-side analogue of g0 reverses the untreated row, like g0 itself.
    dd0 = -dd0_rev
    c_pos = g1 >= g0 >= 0.0
    c_neg = g1 <= g0 <= 0.0
    d_pos = dd1 >= dd0 >= 0.0
    d_neg = dd1 <= dd0 <= 0.0
    if variant == "same":
        return (c_pos == d_pos) and (c_neg == d_neg)
    return (c_pos == d_neg) and (c_neg == d_pos)


def verify(model: DiscreteModel, report: ConditionReport) -> VerificationResult:
    """Check every prediction of every applicable condition in the report.

    Ordering margins are signed (negative means violated); a prediction
    passes when its margin is at least ``-CONCLUSION_TOL``.  Sign-transfer
    equivalences are boolean and get margin 0.0 or -1.0.  Non-applicable
    conditions contribute no entries.
    """
    if not any(r.applicable for r in report.results):
        return VerificationResult(())
    rd = risk_differences(model)
    values = {"rd_true": rd.rd_true, "rd_obs": rd.rd_obs, "rd_crude": rd.rd_crude}
    entries = []
    for status in report.results:
        if not status.applicable:
            continue
        for pred in status.predictions:
            if pred.kind == "ge":
                margin = values[pred.lhs] - values[pred.rhs]
                passed = margin >= -CONCLUSION_TOL
            elif pred.kind == "betweenness":
                lo = min(rd.rd_true, rd.rd_crude)
                hi = max(rd.rd_true, rd.rd_crude)
                margin = min(rd.rd_obs - lo, hi - rd.rd_obs)
                passed = margin >= -CONCLUSION_TOL
            else:
                passed = _transfer_holds(model, pred.variant)
                margin = 0.0 if passed else -1.0
            entries.append(
                VerificationEntry(status.name, pred.describe(), passed, margin)
            )
    return VerificationResult(tuple(entries))


# --------------------------------------------------------------------------
# JSON views
# --------------------------------------------------------------------------


def report_to_dict(report: ConditionReport) -> dict:
    return {
        "monotone_in_c": report.monotone_c.value,
        "monotone_in_d": report.monotone_d.value,
        "sign_case": report.sign_case,
        "results": [
            {
                "name": r.name,
                "applicable": r.applicable,
                "case": r.case if r.applicable else None,
                "predictions": [p.describe() for p in r.predictions],
                "failed_premises": list(r.failed_premises),
            }
            for r in report.results
        ],
    }


def verification_to_dict(vr: VerificationResult) -> dict:
    return {
        "all_passed": vr.all_passed,
        "entries": [
            {
                "result": e.result,
                "prediction": e.prediction,
                "passed": e.passed,
                "margin": e.margin,
            }
            for e in vr.entries
        ],
    }
