"""Model parameterization, validation, and named premise sets.

The distribution being studied factorizes as

    p(A, C, D, Y) = p(C) p(D | C) p(A | C) p(Y | A, C)

with A (exposure), C (latent binary cause), and D (binary surrogate of C)
all binary, and Y an outcome whose conditional means are free parameters.
D is conditionally independent of everything but C, and Y does not depend
on D given A and C; those two independence statements are what the whole
package exploits, and they are built into the parameterization rather than
checked at runtime.

A :class:`DiscreteModel` is nine numbers plus an outcome-kind flag.  The
five probability fields live in [0, 1]; the four conditional means live in
[0, 1] when ``outcome_kind`` is ``"binary"`` and may be any finite reals
when it is ``"general"``.

Premises of the package's ordering results are shipped as named
:class:`ConstraintSet` values in :data:`CONSTRAINT_SETS`.  The sampler and
the counterexample search consume these sets verbatim, so a premise is
written in exactly one place.  Each set carries a ``build`` transform that
maps a vector of independent uniforms to a model satisfying the set (used
for constrained sampling) and a stored witness model, checked at
construction time, so an unsatisfiable set cannot be created.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Literal, Sequence

from .errors import OutOfRangeError, ParseError, UnsatisfiableConstraintsError

#: Absolute tolerance for every equality constraint in the package.
EQUALITY_TOL = 1e-12

OutcomeKind = Literal["binary", "general"]

_NUMERIC_FIELDS = (
    "p_c",
    "p_a_given_c",
    "p_a_given_nc",
    "p_d_given_c",
    "p_d_given_nc",
    "ey_ac",
    "ey_anc",
    "ey_nac",
    "ey_nanc",
)
_PROB_FIELDS = _NUMERIC_FIELDS[:5]
_MEAN_FIELDS = _NUMERIC_FIELDS[5:]


@dataclass(frozen=True, slots=True)
class DiscreteModel:
    """One full parameterization of the discrete model.

    Field naming: ``nc`` means the complement event of C, so
    ``p_a_given_nc`` is P(A=1 | C=0) and ``ey_nanc`` is E[Y | A=0, C=0].
    """

    p_c: float
    p_a_given_c: float
    p_a_given_nc: float
    p_d_given_c: float
    p_d_given_nc: float
    ey_ac: float
    ey_anc: float
    ey_nac: float
    ey_nanc: float
    outcome_kind: OutcomeKind = "binary"


def validate(model: DiscreteModel) -> DiscreteModel:
    """Check all field ranges and return the model unchanged.

    Idempotent by construction.  Raises :class:`OutOfRangeError` naming the
    first offending field; a non-finite value in a ``general`` mean field
    is also out of range.
    """
    if model.outcome_kind not in ("binary", "general"):
        raise ValueError(
            f"outcome_kind must be 'binary' or 'general', got {model.outcome_kind!r}"
        )
    for name in _PROB_FIELDS:
        v = getattr(model, name)
        if not (0.0 <= v <= 1.0):
            raise OutOfRangeError(name, v, 0.0, 1.0)
    for name in _MEAN_FIELDS:
        v = getattr(model, name)
        if model.outcome_kind == "binary":
            if not (0.0 <= v <= 1.0):
                raise OutOfRangeError(name, v, 0.0, 1.0)
        elif not math.isfinite(v):
            raise OutOfRangeError(name, v, -math.inf, math.inf)
    return model


def model_to_dict(model: DiscreteModel) -> dict:
    d = {name: getattr(model, name) for name in _NUMERIC_FIELDS}
    d["outcome_kind"] = model.outcome_kind
    return d


def model_from_dict(obj: object) -> DiscreteModel:
    """Build a validated model from a flat mapping.

    The mapping must hold exactly the nine numeric fields plus
    ``outcome_kind``; anything missing, unknown, or non-numeric raises
    :class:`ParseError` (reported at line 1, since mappings carry no
    position information).
    """
    if not isinstance(obj, dict):
        raise ParseError(1, f"expected a JSON object, got {type(obj).__name__}")
    expected = set(_NUMERIC_FIELDS) | {"outcome_kind"}
    missing = expected - obj.keys()
    if missing:
        raise ParseError(1, f"missing fields: {', '.join(sorted(missing))}")
    unknown = obj.keys() - expected
    if unknown:
        raise ParseError(1, f"unknown fields: {', '.join(sorted(unknown))}")
    kind = obj["outcome_kind"]
    if kind not in ("binary", "general"):
        raise ParseError(1, f"outcome_kind must be 'binary' or 'general', got {kind!r}")
    values = {}
    for name in _NUMERIC_FIELDS:
        v = obj[name]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(1, f"field {name} must be a number, got {v!r}")
        values[name] = float(v)
    return DiscreteModel(outcome_kind=kind, **values)


def model_from_json(text: str) -> DiscreteModel:
    """Parse and range-check a model from its JSON file format."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from exc
    return validate(model_from_dict(obj))


def model_to_json(model: DiscreteModel) -> str:
    return json.dumps(model_to_dict(model), sort_keys=True, indent=2) + "\n"


# --------------------------------------------------------------------------
# Constraint sets
# --------------------------------------------------------------------------

_Extractor = Callable[[DiscreteModel], float]


@dataclass(frozen=True, slots=True)
class Constraint:
    """A single named (in)equality between two model functionals.

    ``kind`` is ``"eq"`` (holds within :data:`EQUALITY_TOL`), ``"ge"``, or
    ``"le"`` (weak inequalities, checked exactly with no slack).
    """

    label: str
    kind: Literal["eq", "ge", "le"]
    lhs: _Extractor
    rhs: _Extractor

    def holds(self, model: DiscreteModel) -> bool:
        a = self.lhs(model)
        b = self.rhs(model)
        if self.kind == "eq":
            return abs(a - b) <= EQUALITY_TOL
        if self.kind == "ge":
            return a >= b
        return a <= b


def _const(v: float) -> _Extractor:
    return lambda m: v


def _eq(label: str, lhs: _Extractor, rhs: _Extractor | float) -> Constraint:
    return Constraint(label, "eq", lhs, rhs if callable(rhs) else _const(rhs))


def _ge(label: str, lhs: _Extractor, rhs: _Extractor | float) -> Constraint:
    return Constraint(label, "ge", lhs, rhs if callable(rhs) else _const(rhs))


def _le(label: str, lhs: _Extractor, rhs: _Extractor | float) -> Constraint:
    return Constraint(label, "le", lhs, rhs if callable(rhs) else _const(rhs))


@dataclass(frozen=True)
class ConstraintSet:
    """A named, satisfiable premise region in model space.

    ``build`` maps ``dim`` independent U[0,1) draws to a model.  When
    ``rejects`` is false the transform lands inside the set by
    construction; when true (sign-ordered mean premises, where a transform
    would distort uniformity) the sampler must rejection-loop, re-checking
    membership after each build.

    Constructing a set whose stored ``witness`` fails its own constraints
    raises :class:`UnsatisfiableConstraintsError`, so every set in the
    registry is satisfiable by fiat.
    """

    name: str
    description: str
    constraints: tuple[Constraint, ...]
    dim: int
    build: Callable[[Sequence[float]], DiscreteModel]
    witness: DiscreteModel
    rejects: bool = False

    def __post_init__(self) -> None:
        bad = self.failing(self.witness)
        if bad:
            raise UnsatisfiableConstraintsError(
                self.name, f"witness violates: {', '.join(bad)}"
            )

    def failing(self, model: DiscreteModel) -> tuple[str, ...]:
        """Labels of every constraint the model violates."""
        return tuple(c.label for c in self.constraints if not c.holds(model))


def satisfies(model: DiscreteModel, constraints: ConstraintSet) -> bool:
    """True iff the model meets every constraint in the set.

    Equalities are checked within :data:`EQUALITY_TOL`; weak inequalities
    are checked exactly on the raw field values.
    """
    return all(c.holds(model) for c in constraints.constraints)


# Field extractors, named once so constraint labels stay readable.
_pc: _Extractor = lambda m: m.p_c
_pac: _Extractor = lambda m: m.p_a_given_c
_pnanc: _Extractor = lambda m: 1.0 - m.p_a_given_nc  # P(A=0 | C=0)
_pdc: _Extractor = lambda m: m.p_d_given_c
_pndnc: _Extractor = lambda m: 1.0 - m.p_d_given_nc  # P(D=0 | C=0)
_gap_a: _Extractor = lambda m: m.ey_ac - m.ey_anc
_gap_na: _Extractor = lambda m: m.ey_nanc - m.ey_nac

BALANCED = _eq("p_c == 0.5", _pc, 0.5)

# Symmetric-noise premises: the channel C -> A (or C -> D) flips both
# states with the same probability.
A_SYM = (
    _eq("p_a_given_c == 1 - p_a_given_nc", _pac, _pnanc),
    _ge("p_a_given_c >= 0.5", _pac, 0.5),
)
A_SYM_LOW = (
    _eq("p_a_given_c == 1 - p_a_given_nc", _pac, _pnanc),
    _le("p_a_given_c <= 0.5", _pac, 0.5),
)
D_SYM = (
    _eq("p_d_given_c == 1 - p_d_given_nc", _pdc, _pndnc),
    _ge("p_d_given_c >= 0.5", _pdc, 0.5),
)
D_SYM_LOW = (
    _eq("p_d_given_c == 1 - p_d_given_nc", _pdc, _pndnc),
    _le("p_d_given_c <= 0.5", _pdc, 0.5),
)

# Ordered (asymmetric) premises: recovery of the negative state is at
# least as reliable as recovery of the positive one.
A_ORD = (
    _ge("1 - p_a_given_nc >= p_a_given_c", _pnanc, _pac),
    _ge("p_a_given_c >= 0.5", _pac, 0.5),
)
A_ORD_LOW = (
    _le("p_a_given_c <= 1 - p_a_given_nc", _pac, _pnanc),
    _le("1 - p_a_given_nc <= 0.5", _pnanc, 0.5),
)
D_ORD = (
    _ge("1 - p_d_given_nc >= p_d_given_c", _pndnc, _pdc),
    _ge("p_d_given_c >= 0.5", _pdc, 0.5),
)
D_ORD_LOW = (
    _le("p_d_given_c <= 1 - p_d_given_nc", _pdc, _pndnc),
    _le("1 - p_d_given_nc <= 0.5", _pndnc, 0.5),
)

# Sign cases on the conditional-mean gaps.  "pos": the treated-row gap
# dominates the untreated-row gap, both nonnegative; "neg" mirrors.
EY_POS = (
    _ge("ey_ac - ey_anc >= ey_nanc - ey_nac", _gap_a, _gap_na),
    _ge("ey_nanc - ey_nac >= 0", _gap_na, 0.0),
)
EY_NEG = (
    _le("ey_ac - ey_anc <= ey_nanc - ey_nac", _gap_a, _gap_na),
    _le("ey_nanc - ey_nac <= 0", _gap_na, 0.0),
)


def _sym_hi(u: float) -> float:
    return 0.5 + 0.5 * u


def _build_t2(u: Sequence[float]) -> DiscreteModel:
    pac = _sym_hi(u[0])
    pdc = _sym_hi(u[1])
    return DiscreteModel(0.5, pac, 1.0 - pac, pdc, 1.0 - pdc, u[2], u[3], u[4], u[5])


def _build_t3(u: Sequence[float]) -> DiscreteModel:
    pac = 0.5 * u[0]
    pdc = 0.5 * u[1]
    return DiscreteModel(0.5, pac, 1.0 - pac, pdc, 1.0 - pdc, u[2], u[3], u[4], u[5])


def _build_ordered(u: Sequence[float]) -> DiscreteModel:
    # A and D both reliability-ordered upward; conditional ranges keep
    # every free parameter uniform given the ones drawn before it.
    pac = _sym_hi(u[0])
    panc = u[1] * (1.0 - pac)
    pdc = _sym_hi(u[2])
    pdnc = u[3] * (1.0 - pdc)
    return DiscreteModel(0.5, pac, panc, pdc, pdnc, u[4], u[5], u[6], u[7])


def _build_ordered_low(u: Sequence[float]) -> DiscreteModel:
    panc = _sym_hi(u[0])
    pac = u[1] * (1.0 - panc)
    pdnc = _sym_hi(u[2])
    pdc = u[3] * (1.0 - pdnc)
    return DiscreteModel(0.5, pac, panc, pdc, pdnc, u[4], u[5], u[6], u[7])


def _build_t11(u: Sequence[float]) -> DiscreteModel:
    pc = 0.5 * u[0]
    pac = _sym_hi(u[1])
    panc = u[2] * (1.0 - pac)
    return DiscreteModel(pc, pac, panc, u[3], u[4], u[5], u[6], u[7], u[8])


def _build_t12(u: Sequence[float]) -> DiscreteModel:
    pc = _sym_hi(u[0])
    panc = _sym_hi(u[1])
    pac = u[2] * (1.0 - panc)
    return DiscreteModel(pc, pac, panc, u[3], u[4], u[5], u[6], u[7], u[8])


def _build_relaxed_a(u: Sequence[float]) -> DiscreteModel:
    pac = _sym_hi(u[0])
    panc = u[1] * (1.0 - pac)
    pdc = _sym_hi(u[2])
    return DiscreteModel(0.5, pac, panc, pdc, 1.0 - pdc, u[3], u[4], u[5], u[6])


def _build_relaxed_d(u: Sequence[float]) -> DiscreteModel:
    pac = _sym_hi(u[0])
    pdc = _sym_hi(u[1])
    pdnc = u[2] * (1.0 - pdc)
    return DiscreteModel(0.5, pac, 1.0 - pac, pdc, pdnc, u[3], u[4], u[5], u[6])


_WITNESS_EY = (1.0, 0.0, 0.2, 0.5)  # gaps 1.0 >= 0.3 >= 0


def _witness(pc, pac, panc, pdc, pdnc, ey=(0.9, 0.3, 0.5, 0.2)) -> DiscreteModel:
    return DiscreteModel(pc, pac, panc, pdc, pdnc, *ey)


def _register(sets: Sequence[ConstraintSet]) -> dict[str, ConstraintSet]:
    return {cs.name: cs for cs in sets}


CONSTRAINT_SETS: dict[str, ConstraintSet] = _register(
    [
        ConstraintSet(
            name="t2",
            description="balanced cause, symmetric channels, both aligned upward",
            constraints=(BALANCED, *A_SYM, *D_SYM),
            dim=6,
            build=_build_t2,
            witness=_witness(0.5, 0.7, 0.3, 0.8, 0.2),
        ),
        ConstraintSet(
            name="t3",
            description="balanced cause, symmetric channels, both aligned downward",
            constraints=(BALANCED, *A_SYM_LOW, *D_SYM_LOW),
            dim=6,
            build=_build_t3,
            witness=_witness(0.5, 0.3, 0.7, 0.2, 0.8),
        ),
        ConstraintSet(
            name="c4_pos",
            description="t2 plus nonnegative ordered mean gaps",
            constraints=(BALANCED, *A_SYM, *D_SYM, *EY_POS),
            dim=6,
            build=_build_t2,
            witness=_witness(0.5, 0.7, 0.3, 0.8, 0.2, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="c4_neg",
            description="t2 plus nonpositive ordered mean gaps",
            constraints=(BALANCED, *A_SYM, *D_SYM, *EY_NEG),
            dim=6,
            build=_build_t2,
            witness=_witness(0.5, 0.7, 0.3, 0.8, 0.2, (0.0, 1.0, 0.5, 0.2)),
            rejects=True,
        ),
        ConstraintSet(
            name="c5_pos",
            description="t3 plus nonnegative ordered mean gaps",
            constraints=(BALANCED, *A_SYM_LOW, *D_SYM_LOW, *EY_POS),
            dim=6,
            build=_build_t3,
            witness=_witness(0.5, 0.3, 0.7, 0.2, 0.8, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="c5_neg",
            description="t3 plus nonpositive ordered mean gaps",
            constraints=(BALANCED, *A_SYM_LOW, *D_SYM_LOW, *EY_NEG),
            dim=6,
            build=_build_t3,
            witness=_witness(0.5, 0.3, 0.7, 0.2, 0.8, (0.0, 1.0, 0.5, 0.2)),
            rejects=True,
        ),
        ConstraintSet(
            name="t9",
            description="balanced cause, both channels reliability-ordered upward, "
            "nonnegative ordered mean gaps",
            constraints=(BALANCED, *A_ORD, *D_ORD, *EY_POS),
            dim=8,
            build=_build_ordered,
            witness=_witness(0.5, 0.6, 0.3, 0.7, 0.2, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="t9_prob",
            description="t9 without the mean-gap case (free outcome means)",
            constraints=(BALANCED, *A_ORD, *D_ORD),
            dim=8,
            build=_build_ordered,
            witness=_witness(0.5, 0.6, 0.3, 0.7, 0.2),
        ),
        ConstraintSet(
            name="t10",
            description="balanced cause, both channels reliability-ordered downward, "
            "nonnegative ordered mean gaps",
            constraints=(BALANCED, *A_ORD_LOW, *D_ORD_LOW, *EY_POS),
            dim=8,
            build=_build_ordered_low,
            witness=_witness(0.5, 0.2, 0.6, 0.1, 0.7, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="t11",
            description="minority cause, A-channel reliability-ordered upward, "
            "free surrogate, nonnegative ordered mean gaps",
            constraints=(
                _le("p_c <= 0.5", _pc, 0.5),
                *A_ORD,
                *EY_POS,
            ),
            dim=9,
            build=_build_t11,
            witness=_witness(0.4, 0.6, 0.2, 0.5, 0.5, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="t12",
            description="majority cause, A-channel reliability-ordered downward, "
            "free surrogate, nonnegative ordered mean gaps",
            constraints=(
                _ge("p_c >= 0.5", _pc, 0.5),
                *A_ORD_LOW,
                *EY_POS,
            ),
            dim=9,
            build=_build_t12,
            witness=_witness(0.6, 0.2, 0.6, 0.5, 0.5, _WITNESS_EY),
            rejects=True,
        ),
        ConstraintSet(
            name="t2_relaxed_a",
            description="t2 with the A-channel equality weakened to the ordering",
            constraints=(BALANCED, *A_ORD, *D_SYM),
            dim=7,
            build=_build_relaxed_a,
            witness=_witness(0.5, 0.6, 0.2, 0.8, 0.2),
        ),
        ConstraintSet(
            name="t2_relaxed_d",
            description="t2 with the D-channel equality weakened to the ordering",
            constraints=(BALANCED, *A_SYM, *D_ORD),
            dim=7,
            build=_build_relaxed_d,
            witness=_witness(0.5, 0.7, 0.3, 0.6, 0.1),
        ),
    ]
)
