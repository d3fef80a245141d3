"""Acceptance criteria for the whole package.

Each test covers one numbered criterion and prints a single pass/fail line;
tolerances are stated inline and are not negotiable downward.  Criteria that
draw models use pinned seeds, so every run sees the same models.
"""

import json
import pathlib
import time

import numpy as np

from proxyrd.conditions import classify, monotone_in_c, monotone_in_d, verify
from proxyrd.conditions import Monotonicity
from proxyrd.estimate import draw_observations, plugin_estimates
from proxyrd.exact import decompose, mean_y_given_ad, risk_differences
from proxyrd.model import CONSTRAINT_SETS, DiscreteModel, model_from_dict, satisfies
from proxyrd.sampler import ExperimentConfig, run_experiment, sample_model, substream
from proxyrd.search import PROPOSITIONS, find_violation
from proxyrd.sem import check_ordering, sample_path_model, simulate_and_estimate, slopes

TOL = 1e-9
FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def _report(num, desc, body):
    try:
        body()
    except BaseException:
        print(f"criterion {num:2d}: FAIL  {desc}")
        raise
    print(f"criterion {num:2d}: PASS  {desc}")


def _betweenness_holds(summary):
    for rec in summary.records:
        lo = min(rec.rd_true, rec.rd_crude)
        hi = max(rec.rd_true, rec.rd_crude)
        assert lo - TOL <= rec.rd_obs <= hi + TOL, f"trial {rec.index}"


def test_criterion_01_betweenness_balanced_high():
    def body():
        t0 = time.perf_counter()
        summary = run_experiment(ExperimentConfig(constraint_set="t2", trials=10_000, seed=101))
        _betweenness_holds(summary)
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"took {elapsed:.2f}s"

    _report(1, "betweenness on 10000 balanced symmetric-high draws in under 5s", body)


def test_criterion_02_betweenness_balanced_low():
    def body():
        t0 = time.perf_counter()
        summary = run_experiment(ExperimentConfig(constraint_set="t3", trials=10_000, seed=102))
        _betweenness_holds(summary)
        elapsed = time.perf_counter() - t0
        assert elapsed < 5.0, f"took {elapsed:.2f}s"

    _report(2, "betweenness on 10000 balanced symmetric-low draws in under 5s", body)


def test_criterion_03_signed_chains():
    chains = {
        "c4_pos": lambda r: r.rd_crude >= r.rd_obs - TOL and r.rd_obs >= r.rd_true - TOL,
        "c4_neg": lambda r: r.rd_crude <= r.rd_obs + TOL and r.rd_obs <= r.rd_true + TOL,
        "c5_pos": lambda r: r.rd_crude <= r.rd_obs + TOL and r.rd_obs <= r.rd_true + TOL,
        "c5_neg": lambda r: r.rd_crude >= r.rd_obs - TOL and r.rd_obs >= r.rd_true - TOL,
    }

    def body():
        for name, holds in chains.items():
            summary = run_experiment(ExperimentConfig(constraint_set=name, trials=10_000, seed=103))
            for rec in summary.records:
                assert holds(rec), f"{name} trial {rec.index}"

    _report(3, "full three-term chains on 10000 draws from each signed family", body)


def test_criterion_04_one_sided_bounds():
    bounds = {
        "t9": lambda r: r.rd_crude >= r.rd_true - TOL and r.rd_obs >= r.rd_true - TOL,
        "t10": lambda r: r.rd_crude <= r.rd_true + TOL and r.rd_obs <= r.rd_true + TOL,
        "t11": lambda r: r.rd_crude >= r.rd_true - TOL,
        "t12": lambda r: r.rd_crude <= r.rd_true + TOL,
    }

    def body():
        for name, holds in bounds.items():
            summary = run_experiment(ExperimentConfig(constraint_set=name, trials=10_000, seed=104))
            for rec in summary.records:
                assert holds(rec), f"{name} trial {rec.index}"

    _report(4, "one-sided bounds on 10000 draws from each ordered family", body)


def test_criterion_05_transfer_equivalences():
    def body():
        for cs_name, result_name in (("t2", "c6"), ("t3", "c7")):
            for i in range(10_000):
                m = sample_model(cs_name, seed=105, index=i)
                report = classify(m)
                assert report.result(result_name).applicable
                vr = verify(m, report)
                for entry in vr.entries:
                    if entry.result == result_name:
                        assert entry.passed, f"{result_name} at index {i}"

    _report(5, "sign-case transfer equivalences hold on 10000 draws each way", body)


def test_criterion_06_monotone_transfer():
    def body():
        found = 0
        index = 0
        while found < 10_000:
            u = substream(106, index).random(9).tolist()
            index += 1
            m = DiscreteModel(*u)
            rd_youden = m.p_d_given_c - m.p_d_given_nc
            if rd_youden <= 0.0:
                continue
            direction = monotone_in_c(m)
            if direction is Monotonicity.NONE:
                continue
            found += 1
            transferred = monotone_in_d(m)
            assert transferred in (direction, Monotonicity.CONSTANT), f"index {index - 1}"

    _report(6, "positive-accuracy surrogate preserves monotone direction, 10000 models", body)


def test_criterion_07_key_inequality_sweep():
    def body():
        t0 = time.perf_counter()
        hit = find_violation("t9_key_inequality", 1_000_000, seed=20260822)
        elapsed = time.perf_counter() - t0
        assert hit is None, f"unexpected violation: {hit}"
        assert elapsed < 60.0, f"took {elapsed:.2f}s"

    _report(7, "posterior-weight inequality survives 1000000 draws in under 60s", body)


def test_criterion_08_relaxed_premise_counterexamples():
    def body():
        for name in ("t2_relaxed_a_betweenness", "t2_relaxed_d_betweenness"):
            data = json.loads((FIXTURES / f"{name}.json").read_text())
            prop = PROPOSITIONS[name]
            model = model_from_dict(data["model"])
            assert satisfies(model, CONSTRAINT_SETS[prop.constraint_set])
            margin = prop.margin(model)
            assert margin == data["margin"]
            assert margin < -1e-6, f"{name} margin {margin}"

    _report(8, "pinned relaxed-premise counterexamples re-verify below -1e-6", body)


def test_criterion_09_pinned_study_shape():
    def body():
        summary = run_experiment(ExperimentConfig(constraint_set="t2", trials=10_000, seed=42))
        assert summary.rel_distance_median is not None
        assert summary.rel_distance_median > 0.5
        quartiles = summary.youden_quartiles
        assert quartiles[0].mean_rel_distance is not None
        assert quartiles[-1].mean_rel_distance is not None
        assert quartiles[-1].mean_rel_distance < quartiles[0].mean_rel_distance
        assert sum(summary.histogram_counts) == 10_000

    _report(9, "pinned study: median relative distance above 0.5, top accuracy quartile below bottom", body)


def test_criterion_10_decomposition_identities():
    def body():
        for cs_name in ("t2", "t3"):
            for i in range(10_000):
                m = sample_model(cs_name, seed=110, index=i)
                rd = risk_differences(m)
                dec = decompose(m)
                first = rd.rd_obs - rd.rd_true - dec.alpha_slack * dec.mean_gap_c
                second = rd.rd_crude - rd.rd_obs - dec.beta_slack * dec.mean_gap_d
                assert abs(first) <= 1e-12, f"{cs_name} index {i}: {first}"
                assert abs(second) <= 1e-12, f"{cs_name} index {i}: {second}"

    _report(10, "slack decompositions exact to 1e-12 on 10000 draws per family", body)


def test_criterion_11_path_diagram():
    def body():
        for i in range(1_000):
            assert check_ordering(sample_path_model(seed=3, index=i)).passed, f"index {i}"
        worst = 0.0
        for i in range(20):
            m = sample_path_model(seed=7, index=i)
            exact = slopes(m)
            est = simulate_and_estimate(m, 100_000, seed=1000 + i)
            for field in ("slope_true", "slope_obs", "slope_crude"):
                worst = max(worst, abs(getattr(est, field) - getattr(exact, field)))
        assert worst < 0.02, f"worst simulation error {worst}"

    _report(11, "path-diagram chain on 1000 models; 20 pinned fits within 0.02", body)


def test_criterion_12_plugin_recovery():
    def body():
        model = DiscreteModel(0.5, 0.7, 0.3, 0.8, 0.2, 1.0, 0.0, 0.5, 0.2)
        rd = risk_differences(model)
        est = plugin_estimates(draw_observations(model, 1_000_000, seed=12))
        assert abs(est.rd_obs - rd.rd_obs) < 0.01
        assert abs(est.rd_crude - rd.rd_crude) < 0.01
        for a in (0, 1):
            for d in (0, 1):
                assert abs(est.eyad[a][d] - mean_y_given_ad(model, a, d)) < 0.01

    _report(12, "plug-in estimates within 0.01 of closed forms at one million rows", body)
