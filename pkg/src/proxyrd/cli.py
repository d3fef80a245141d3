"""Command line front end.

Five subcommands cover the library surface: ``check`` classifies one discrete
model and verifies its predicted orderings, ``simulate`` runs a batch of
constrained draws, ``search`` hunts for ordering violations, ``sem`` handles
the linear path-diagram case, and ``estimate`` fits plug-in contrasts to
observed rows.  Exit status 0 means success, 1 a domain error raised by the
library, and 2 a usage or input-syntax problem.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .conditions import classify, report_to_dict, verification_to_dict, verify
from .errors import (
    ConstraintsNotMetError,
    DegenerateCellError,
    DegenerateConditioningError,
    EmptyInputError,
    InvalidVarianceError,
    OutOfRangeError,
    ParseError,
    SingularDenominatorError,
    UnsatisfiableConstraintsError,
)
from .estimate import estimates_to_dict, ingest, plugin_estimates
from .exact import RiskDifferences, risk_differences
from .model import CONSTRAINT_SETS, model_from_json, model_to_dict, satisfies
from .sampler import ExperimentConfig, run_experiment, summary_to_dict, write_records
from .search import PROPOSITIONS, counterexample_to_dict, find_violation
from .sem import (
    check_ordering,
    ordering_to_dict,
    path_model_from_json,
    path_model_to_dict,
    simulate_and_estimate,
)

_DOMAIN_ERRORS = (
    OutOfRangeError,
    DegenerateConditioningError,
    ConstraintsNotMetError,
    UnsatisfiableConstraintsError,
    SingularDenominatorError,
    InvalidVarianceError,
    DegenerateCellError,
)

_USAGE_ERRORS = (ParseError, EmptyInputError)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)


def _emit_json(obj, out: str | None) -> None:
    _emit(json.dumps(obj, indent=2, sort_keys=True) + "\n", out)


def _rd_dict(rd: RiskDifferences) -> dict:
    data = {
        "rd_true": rd.rd_true,
        "rd_obs": rd.rd_obs,
        "rd_crude": rd.rd_crude,
        "youden": rd.youden,
    }
    if rd.alpha_slack is not None:
        data["alpha_slack"] = rd.alpha_slack
    if rd.beta_slack is not None:
        data["beta_slack"] = rd.beta_slack
    return data


def _cmd_check(args: argparse.Namespace) -> int:
    model = model_from_json(_read_text(args.model))
    report = classify(model)
    result = verify(model, report)
    _emit_json(
        {
            "model": model_to_dict(model),
            "risk_differences": _rd_dict(risk_differences(model)),
            "satisfies": sorted(
                name for name, cs in CONSTRAINT_SETS.items() if satisfies(model, cs)
            ),
            "report": report_to_dict(report),
            "verification": verification_to_dict(result),
        },
        args.out,
    )
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = ExperimentConfig(
        constraint_set=args.constraint_set,
        trials=args.trials,
        seed=args.seed,
        bins=args.bins,
        threads=args.threads,
    )
    summary = run_experiment(config)
    if args.format == "json":
        _emit_json(summary_to_dict(summary), args.out)
    elif args.out is None:
        write_records(summary.records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as handle:
            write_records(summary.records, handle)
    return 0


def _cmd_search(args: argparse.Namespace) -> int:
    hit = find_violation(args.proposition, args.budget, seed=args.seed, threads=args.threads)
    _emit_json(
        {
            "proposition": args.proposition,
            "budget": args.budget,
            "seed": args.seed,
            "violation": None if hit is None else counterexample_to_dict(hit),
        },
        args.out,
    )
    return 0


def _cmd_sem(args: argparse.Namespace) -> int:
    model = path_model_from_json(_read_text(args.model))
    check = check_ordering(model)
    data = {
        "model": path_model_to_dict(model),
        "residual_variance_y": model.residual_variance_y,
        "check": ordering_to_dict(check),
    }
    if args.simulate is not None:
        est = simulate_and_estimate(model, args.simulate, seed=args.seed)
        data["estimates"] = {
            "n": args.simulate,
            "slope_true": est.slope_true,
            "slope_obs": est.slope_obs,
            "slope_crude": est.slope_crude,
        }
    _emit_json(data, args.out)
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    dataset = ingest(_read_text(args.data).splitlines())
    _emit_json(estimates_to_dict(plugin_estimates(dataset)), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxyrd",
        description="Exact contrasts, predicted orderings, and plug-in "
        "estimation for a binary cause measured through a noisy surrogate.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="classify one model and verify its orderings")
    p.add_argument("--model", required=True, help="path to a model JSON file, or - for stdin")
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("simulate", help="run constrained draws and report contrasts")
    p.add_argument(
        "--constraint-set",
        default="t2",
        choices=sorted(CONSTRAINT_SETS),
        help="premise family to draw from",
    )
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bins", type=int, default=50)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="csv streams one record per trial; json prints the summary")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("search", help="look for a violation of a predicted ordering")
    p.add_argument("--proposition", required=True, choices=sorted(PROPOSITIONS))
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("sem", help="check the linear path-diagram slope chain")
    p.add_argument("--model", required=True, help="path to a path-model JSON file, or - for stdin")
    p.add_argument("--simulate", type=int, default=None, metavar="N",
                   help="also draw N observations and refit the slopes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_sem)

    p = sub.add_parser("estimate", help="plug-in contrasts from observed a,d,y rows")
    p.add_argument("--data", required=True, help="path to a CSV file, or - for stdin")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_estimate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except _DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
