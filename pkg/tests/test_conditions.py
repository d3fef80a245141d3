from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from oracles import enum_mean_given
from proxyrd.conditions import (
    Monotonicity,
    Prediction,
    ResultStatus,
    ConditionReport,
    classify,
    monotone_in_c,
    monotone_in_d,
    verify,
)
from proxyrd.errors import DegenerateConditioningError
from proxyrd.model import CONSTRAINT_SETS, DiscreteModel


def model_with_means(ey_ac, ey_anc, ey_nac, ey_nanc, **probs):
    base = dict(p_c=0.5, p_a_given_c=0.7, p_a_given_nc=0.3, p_d_given_c=0.8, p_d_given_nc=0.2)
    base.update(probs)
    return DiscreteModel(**base, ey_ac=ey_ac, ey_anc=ey_anc, ey_nac=ey_nac, ey_nanc=ey_nanc)


# ------------------------------------------------------------ monotonicity


@pytest.mark.parametrize(
    "means,expected",
    [
        ((0.9, 0.3, 0.5, 0.2), Monotonicity.NON_DECREASING),
        ((0.3, 0.9, 0.2, 0.5), Monotonicity.NON_INCREASING),
        ((0.4, 0.4, 0.7, 0.7), Monotonicity.CONSTANT),
        ((0.9, 0.3, 0.2, 0.5), Monotonicity.NONE),
        ((0.4, 0.4, 0.7, 0.2), Monotonicity.NON_DECREASING),  # one row flat
    ],
)
def test_monotone_in_c(means, expected):
    assert monotone_in_c(model_with_means(*means)) is expected


def test_monotone_in_d_constant_when_surrogate_uninformative():
    m = model_with_means(0.9, 0.1, 0.6, 0.2, p_d_given_c=0.4, p_d_given_nc=0.4)
    assert monotone_in_d(m) is Monotonicity.CONSTANT


def test_monotone_in_d_mixed_rows_stay_mixed(m1):
    assert monotone_in_c(m1) is Monotonicity.NON_DECREASING
    mixed = model_with_means(0.9, 0.3, 0.2, 0.5)
    assert monotone_in_c(mixed) is Monotonicity.NONE
    assert monotone_in_d(mixed) is Monotonicity.NONE


def test_monotone_transfer_positive_youden(rng):
    for _ in range(3000):
        m = DiscreteModel(*rng.random(9))
        if m.p_d_given_c <= m.p_d_given_nc:
            continue
        try:
            md = monotone_in_d(m)
        except DegenerateConditioningError:
            continue
        assert md is monotone_in_c(m)


def test_monotone_transfer_flips_with_negative_youden(rng):
    flip = {
        Monotonicity.NON_DECREASING: Monotonicity.NON_INCREASING,
        Monotonicity.NON_INCREASING: Monotonicity.NON_DECREASING,
        Monotonicity.CONSTANT: Monotonicity.CONSTANT,
        Monotonicity.NONE: Monotonicity.NONE,
    }
    for _ in range(1000):
        m = DiscreteModel(*rng.random(9))
        if m.p_d_given_c >= m.p_d_given_nc:
            continue
        try:
            md = monotone_in_d(m)
        except DegenerateConditioningError:
            continue
        assert md is flip[monotone_in_c(m)]


def test_d_side_gaps_match_enumeration(rng):
    from proxyrd.conditions import _d_side_gaps

    for _ in range(300):
        m = DiscreteModel(*rng.random(9))
        try:
            g_a, g_na = _d_side_gaps(m)
        except DegenerateConditioningError:
            continue
        ref_a = float(enum_mean_given(m, a=1, d=1) - enum_mean_given(m, a=1, d=0))
        ref_na = float(enum_mean_given(m, a=0, d=1) - enum_mean_given(m, a=0, d=0))
        assert abs(g_a - ref_a) <= 1e-12
        assert abs(g_na - ref_na) <= 1e-12


def test_monotone_in_d_degenerate_cell_refused():
    m = DiscreteModel(1.0, 0.7, 0.3, 1.0, 0.2, 0.5, 0.5, 0.5, 0.5)
    with pytest.raises(DegenerateConditioningError):
        monotone_in_d(m)


# ------------------------------------------------------------- classify


def test_classify_symmetric_model_without_sign_case(m1):
    report = classify(m1)
    assert report.sign_case is None
    assert report.result("t2").applicable
    assert report.result("c6").applicable
    assert not report.result("c4").applicable
    assert not report.result("t3").applicable
    assert "c4" not in report.applicable()


def test_classify_ordered_means_ladder(m1_pos):
    report = classify(m1_pos)
    assert report.sign_case == "pos"
    c4 = report.result("c4")
    assert c4.applicable and c4.case == "pos"
    assert [p.describe() for p in c4.predictions] == [
        "rd_crude >= rd_obs",
        "rd_obs >= rd_true",
    ]
    # equal-accuracy refinement does not hold at accuracies 0.7 vs 0.8
    assert not report.result("t1").applicable
    # ordered-channel premises hold with equality, so the bounds apply too
    assert report.result("t8").applicable
    assert report.result("t9").applicable
    assert not report.result("t10").applicable


def test_classify_equal_accuracy_refinement():
    m = model_with_means(1.0, 0.0, 0.2, 0.5, p_d_given_c=0.7, p_d_given_nc=0.3)
    report = classify(m)
    assert report.result("t1").applicable
    assert report.result("c4").applicable
    wider = model_with_means(1.0, 0.0, 0.2, 0.5)
    assert not classify(wider).result("t1").applicable
    assert classify(wider).result("c4").applicable


def test_classify_negative_sign_case():
    m = model_with_means(0.0, 1.0, 0.5, 0.2)
    report = classify(m)
    assert report.sign_case == "neg"
    c4 = report.result("c4")
    assert c4.applicable and c4.case == "neg"
    assert [p.describe() for p in c4.predictions] == [
        "rd_obs >= rd_crude",
        "rd_true >= rd_obs",
    ]


def test_classify_minority_cause_crude_bound_only():
    m = DiscreteModel(0.4, 0.6, 0.2, 0.55, 0.3, 1.0, 0.0, 0.2, 0.5)
    report = classify(m)
    t11 = report.result("t11")
    assert t11.applicable and t11.case == "pos"
    assert [p.describe() for p in t11.predictions] == ["rd_crude >= rd_true"]
    for name in ("t1", "t2", "t3", "c4", "c5", "c6", "c7", "t8", "t9", "t10", "t12"):
        assert not report.result(name).applicable, name
    assert "p_c == 0.5" in report.result("t2").failed_premises


def test_classify_majority_cause_mirror():
    m = DiscreteModel(0.6, 0.2, 0.6, 0.55, 0.3, 1.0, 0.0, 0.2, 0.5)
    report = classify(m)
    t12 = report.result("t12")
    assert t12.applicable and t12.case == "pos"
    assert [p.describe() for p in t12.predictions] == ["rd_true >= rd_crude"]
    assert not report.result("t11").applicable


def test_classify_records_missing_sign_case(m1):
    c4 = classify(m1).result("c4")
    assert c4.failed_premises == ("mean gaps match neither sign case",)


def test_report_lists_all_twelve_results(m1):
    report = classify(m1)
    assert len(report.results) == 12
    names = {r.name for r in report.results}
    assert names == {"t1", "t2", "t3", "c4", "c5", "c6", "c7", "t8", "t9", "t10", "t11", "t12"}


# --------------------------------------------------------------- verify


def test_verify_ordered_means_all_pass(m1_pos):
    report = classify(m1_pos)
    vr = verify(m1_pos, report)
    assert vr.all_passed
    expected = sum(len(r.predictions) for r in report.results if r.applicable)
    assert len(vr.entries) == expected
    for e in vr.entries:
        if e.prediction.startswith("rd_") or "between" in e.prediction:
            assert e.margin > 0.0


def test_verify_skips_non_applicable_results():
    m = DiscreteModel(0.37, 0.81, 0.64, 0.25, 0.66, 0.9, 0.1, 0.4, 0.3)
    report = classify(m)
    assert report.applicable() == ()
    assert verify(m, report).entries == ()


def test_verify_flags_false_prediction(m1):
    # rd_true = 0.15 < rd_crude = 0.41, so this handcrafted claim must fail
    # with a margin well below the tolerance.
    fake = ConditionReport(
        monotone_c=Monotonicity.NONE,
        monotone_d=Monotonicity.NONE,
        sign_case=None,
        results=(
            ResultStatus(
                name="t12",
                applicable=True,
                case="pos",
                predictions=(Prediction("ge", lhs="rd_true", rhs="rd_crude"),),
                failed_premises=(),
            ),
        ),
    )
    vr = verify(m1, fake)
    assert not vr.all_passed
    (entry,) = vr.failures()
    assert entry.margin < -1e-9
    assert abs(entry.margin - (0.15 - 0.41)) < 1e-12


def test_verify_zero_failures_across_shipped_sets(rng):
    for name in ("t2", "t3", "c4_pos", "c4_neg", "c5_pos", "c5_neg", "t9", "t10", "t11", "t12"):
        cs = CONSTRAINT_SETS[name]
        count = 0
        while count < 300:
            m = cs.build(rng.random(cs.dim))
            if cs.rejects and cs.failing(m):
                continue
            count += 1
            vr = verify(m, classify(m))
            assert vr.all_passed, (name, m, vr.failures())


def test_transfer_equivalence_exercised_on_constrained_draws(rng):
    # Under the symmetric premises the C-side sign case and its D-side
    # counterpart must agree; the constrained sets force the C side on.
    for name in ("c4_pos", "c4_neg", "c5_pos", "c5_neg", "t2", "t3"):
        cs = CONSTRAINT_SETS[name]
        count = 0
        while count < 300:
            m = cs.build(rng.random(cs.dim))
            if cs.rejects and cs.failing(m):
                continue
            count += 1
            report = classify(m)
            vr = verify(m, report)
            iffs = [e for e in vr.entries if "transfers" in e.prediction]
            assert iffs, name
            assert all(e.passed for e in iffs), (name, m)


def test_constant_means_apply_both_sign_cases_somewhere():
    # All-equal means sit on the boundary: the pos case holds with
    # equalities, and every predicted ordering collapses to equality.
    m = model_with_means(0.4, 0.4, 0.4, 0.4)
    report = classify(m)
    assert report.sign_case == "pos"
    vr = verify(m, report)
    assert vr.all_passed
    for e in vr.entries:
        if "transfers" not in e.prediction:
            assert abs(e.margin) <= 1e-12
