"""Randomized search for violations of predicted orderings.

Each proposition pairs a constraint set with a margin function: the margin is
nonnegative exactly when the predicted ordering holds for a model drawn from
that set.  ``find_violation`` scans deterministic substreams in index order,
so the first counterexample is reproducible regardless of budget or thread
count.  Margins that land just on the wrong side of zero are re-examined on a
small grid around the original draw before being reported, which separates
genuine violations from floating-point shear.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable

from .conditions import CONCLUSION_TOL
from .errors import OutOfRangeError, UnsatisfiableConstraintsError
from .exact import posterior_c, risk_differences
from .model import CONSTRAINT_SETS, ConstraintSet, DiscreteModel
from .sampler import substream

# Margins in [-CONCLUSION_TOL, NEAR_BAND) are treated as suspicious rather
# than conclusive: the grid refinement below must find a clearly negative
# neighbour before the draw counts as a counterexample.
NEAR_BAND = 1e-6

_REFINE_OFFSETS = (-0.05, -0.025, 0.025, 0.05)


@dataclass(frozen=True, slots=True)
class Proposition:
    """A claimed ordering over models from one constraint set."""

    name: str
    constraint_set: str
    statement: str
    margin: Callable[[DiscreteModel], float]


@dataclass(frozen=True, slots=True)
class Counterexample:
    proposition: str
    seed: int
    index: int
    margin: float
    model: DiscreteModel
    refined: bool


def _margin_t9_key(m: DiscreteModel) -> float:
    pd1 = m.p_c * m.p_d_given_c + (1.0 - m.p_c) * m.p_d_given_nc
    lhs = posterior_c(m, 1, 1) * pd1 + posterior_c(m, 1, 0) * (1.0 - pd1)
    rhs = (1.0 - posterior_c(m, 0, 1)) * pd1 + (1.0 - posterior_c(m, 0, 0)) * (1.0 - pd1)
    return lhs - rhs


def _margin_betweenness(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    lo = min(rd.rd_true, rd.rd_crude)
    hi = max(rd.rd_true, rd.rd_crude)
    return min(rd.rd_obs - lo, hi - rd.rd_obs)


def _margin_chain_down(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return min(rd.rd_crude - rd.rd_obs, rd.rd_obs - rd.rd_true)


def _margin_chain_up(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return min(rd.rd_obs - rd.rd_crude, rd.rd_true - rd.rd_obs)


def _margin_bounds_low(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return min(rd.rd_crude - rd.rd_true, rd.rd_obs - rd.rd_true)


def _margin_bounds_high(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return min(rd.rd_true - rd.rd_crude, rd.rd_true - rd.rd_obs)


def _margin_crude_low(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return rd.rd_crude - rd.rd_true


def _margin_crude_high(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return rd.rd_true - rd.rd_crude


def _margin_obs_low(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return rd.rd_obs - rd.rd_true


def _margin_obs_high(m: DiscreteModel) -> float:
    rd = risk_differences(m)
    return rd.rd_true - rd.rd_obs


PROPOSITIONS: dict[str, Proposition] = {
    p.name: p
    for p in (
        Proposition(
            "t9_key_inequality",
            "t9_prob",
            "p(c|a,d)p(d) + p(c|a,~d)p(~d) >= p(~c|~a,d)p(d) + p(~c|~a,~d)p(~d)",
            _margin_t9_key,
        ),
        Proposition(
            "t2_betweenness",
            "t2",
            "rd_obs lies between rd_true and rd_crude",
            _margin_betweenness,
        ),
        Proposition(
            "t3_betweenness",
            "t3",
            "rd_obs lies between rd_true and rd_crude",
            _margin_betweenness,
        ),
        Proposition(
            "c4_pos_chain", "c4_pos", "rd_crude >= rd_obs >= rd_true", _margin_chain_down
        ),
        Proposition(
            "c4_neg_chain", "c4_neg", "rd_crude <= rd_obs <= rd_true", _margin_chain_up
        ),
        Proposition(
            "c5_pos_chain", "c5_pos", "rd_crude <= rd_obs <= rd_true", _margin_chain_up
        ),
        Proposition(
            "c5_neg_chain", "c5_neg", "rd_crude >= rd_obs >= rd_true", _margin_chain_down
        ),
        Proposition(
            "t9_bounds", "t9", "rd_crude >= rd_true and rd_obs >= rd_true", _margin_bounds_low
        ),
        Proposition(
            "t10_bounds", "t10", "rd_crude <= rd_true and rd_obs <= rd_true", _margin_bounds_high
        ),
        Proposition("t11_crude_bound", "t11", "rd_crude >= rd_true", _margin_crude_low),
        Proposition("t12_crude_bound", "t12", "rd_crude <= rd_true", _margin_crude_high),
        Proposition(
            "t2_relaxed_a_betweenness",
            "t2_relaxed_a",
            "rd_obs lies between rd_true and rd_crude",
            _margin_betweenness,
        ),
        Proposition(
            "t2_relaxed_d_betweenness",
            "t2_relaxed_d",
            "rd_obs lies between rd_true and rd_crude",
            _margin_betweenness,
        ),
        Proposition("t11_obs_bound", "t11", "rd_obs >= rd_true", _margin_obs_low),
        Proposition("t12_obs_bound", "t12", "rd_obs <= rd_true", _margin_obs_high),
    )
}


def _resolve(proposition: Proposition | str) -> Proposition:
    if isinstance(proposition, Proposition):
        return proposition
    try:
        return PROPOSITIONS[proposition]
    except KeyError:
        raise UnsatisfiableConstraintsError(
            proposition, f"unknown proposition; known: {', '.join(sorted(PROPOSITIONS))}"
        ) from None


def _accept(cs: ConstraintSet, gen) -> tuple[list[float], DiscreteModel]:
    """Draw until the constraint set is satisfied, keeping the unit cube point."""
    while True:
        u = gen.random(cs.dim).tolist()
        m = cs.build(u)
        if not cs.rejects or not cs.failing(m):
            return u, m


def _refine(prop: Proposition, cs: ConstraintSet, u: list[float]) -> tuple[float, DiscreteModel] | None:
    """Probe a grid around ``u`` for a clearly negative margin."""
    best: tuple[float, DiscreteModel] | None = None
    for axis in range(cs.dim):
        for off in _REFINE_OFFSETS:
            v = list(u)
            v[axis] = min(1.0, max(0.0, v[axis] + off))
            candidate = cs.build(v)
            if cs.failing(candidate):
                continue
            margin = prop.margin(candidate)
            if margin < -CONCLUSION_TOL and (best is None or margin < best[0]):
                best = (margin, candidate)
    return best


def _scan(prop: Proposition, seed: int, start: int, stop: int) -> Counterexample | None:
    cs = CONSTRAINT_SETS[prop.constraint_set]
    for index in range(start, stop):
        u, m = _accept(cs, substream(seed, index))
        margin = prop.margin(m)
        if margin < -CONCLUSION_TOL:
            return Counterexample(prop.name, seed, index, margin, m, refined=False)
        if margin < NEAR_BAND:
            hit = _refine(prop, cs, u)
            if hit is not None:
                return Counterexample(prop.name, seed, index, hit[0], hit[1], refined=True)
    return None


def _scan_args(args: tuple[Proposition, int, int, int]) -> Counterexample | None:
    return _scan(*args)


def find_violation(
    proposition: Proposition | str,
    budget: int,
    seed: int = 0,
    threads: int = 1,
) -> Counterexample | None:
    """Scan ``budget`` indexed draws for a violation of the proposition.

    Returns the violation with the smallest index, or None when the whole
    budget passes.  Thread count changes the wall time only, never the
    answer.
    """
    prop = _resolve(proposition)
    if prop.constraint_set not in CONSTRAINT_SETS:
        raise UnsatisfiableConstraintsError(prop.constraint_set, "unknown constraint set")
    if budget < 1:
        raise OutOfRangeError("budget", budget, 1, float("inf"))
    if threads <= 1 or budget < 1000:
        return _scan(prop, seed, 0, budget)

    chunk = 20_000
    spans = [(prop, seed, lo, min(lo + chunk, budget)) for lo in range(0, budget, chunk)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        for hit in pool.map(_scan_args, spans):
            if hit is not None:
                pool.shutdown(wait=False, cancel_futures=True)
                return hit
    return None


def counterexample_to_dict(ce: Counterexample) -> dict:
    from .model import model_to_dict

    return {
        "proposition": ce.proposition,
        "seed": ce.seed,
        "index": ce.index,
        "margin": ce.margin,
        "refined": ce.refined,
        "model": model_to_dict(ce.model),
    }
