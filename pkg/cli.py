"""
AxiReg Lab command line.

    python cli.py validate-params --set criterion.eps=0.05 --set criterion.delta0=0.2
    python cli.py simulate --name swirl --config config/example_run.ini
    python cli.py verify --seed 7
    python cli.py oracle-quadrature
    python cli.py report --name swirl

Exit codes: 0 success, 1 an explicit-constant inequality failed (verify),
2 a laboratory error.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

from config.run_config import load_run_config, load_sections, section_model
from config.settings import settings
from domains.core.errors import LabError
from domains.core.log_setup import configure_logging
from domains.exponents.ledger import build_report
from domains.exponents.schemas import SerrinCondition
from domains.monitor.monitor import criterion_params_from, run, verdict
from domains.monitor.persistence import load_run, stored_constant
from domains.monitor.schemas import CriterionConfig, RunConfig
from domains.verifier.chains import verify_ensemble
from domains.verifier.oracle import quadrature_oracle

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _print_json(payload: Any) -> None:
    print(json.dumps(payload, indent=2, default=str))


def _criterion_and_serrin(args):
    sections = load_sections(args.config, args.set)
    defaults = RunConfig.model_fields
    criterion = section_model(sections, "criterion", CriterionConfig, defaults["criterion"].default)
    cond = section_model(sections, "serrin", SerrinCondition, defaults["serrin"].default)
    return criterion, cond


def cmd_validate_params(args) -> int:
    criterion, cond = _criterion_and_serrin(args)
    report = build_report(criterion.eps, criterion.delta0, cond)
    _print_json(report)
    return EXIT_OK


def cmd_simulate(args) -> int:
    cfg = load_run_config(args.config, args.set, args.seed)
    result = run(cfg, args.name)
    _print_json({"name": result.name, "directory": result.directory,
                 "n_records": len(result.records), "verdict": result.verdict.model_dump()})
    return EXIT_OK


def cmd_verify(args) -> int:
    criterion, cond = _criterion_and_serrin(args)
    params = criterion_params_from(criterion)
    reports = verify_ensemble(params, cond, args.ensemble_size, args.seed,
                              args.eps1, args.eps2, args.eps3, args.eps4, args.eps5)
    _print_json([r.model_dump() for r in reports])
    explicit_failures = [r for r in reports if r.explicit_only and not r.passed and not r.inconclusive]
    if explicit_failures:
        logger.error(f"{len(explicit_failures)} explicit-constant inequalities failed")
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_oracle_quadrature(args) -> int:
    criterion, cond = _criterion_and_serrin(args)
    params = criterion_params_from(criterion)
    _print_json(quadrature_oracle(params, cond, args.size, args.seed, args.factor))
    return EXIT_OK


def cmd_report(args) -> int:
    meta, records = load_run(args.name, args.runs_dir)
    config = meta["config"]
    params = criterion_params_from(CriterionConfig(**config["criterion"]))
    result = verdict(records, params, SerrinCondition(**config["serrin"]), stored_constant(meta))
    _print_json({"name": args.name, "status": meta.get("status"), "n_records": len(records),
                 "constant": meta.get("constant"), "verdict": result.model_dump()})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="run configuration file (INI sections)")
    common.add_argument("--set", action="append", default=[], metavar="SECTION.KEY=VALUE",
                        help="override one configuration key; repeatable")
    common.add_argument("--seed", type=int, default=None, help=f"random seed (default {settings.default_seed})")
    common.add_argument("--log-level", default=None, help="logging level (default from LOG_LEVEL)")

    parser = argparse.ArgumentParser(description="Axisymmetric Navier-Stokes regularity-criterion laboratory")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-params", parents=[common], help="report every exponent window")
    p.set_defaults(handler=cmd_validate_params)

    p = sub.add_parser("simulate", parents=[common], help="run the monitored simulation")
    p.add_argument("--name", required=True, help="run folder name under the runs directory")
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="check the estimate chains on an ensemble")
    p.add_argument("--ensemble-size", type=int, default=20)
    for k in range(1, 6):
        p.add_argument(f"--eps{k}", type=float, default=0.1)
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle-quadrature", parents=[common], help="check functionals against a reference quadrature")
    p.add_argument("--size", type=int, default=20, help="number of ensemble states")
    p.add_argument("--factor", type=int, default=4, help="cell refinement of the reference rule")
    p.set_defaults(handler=cmd_oracle_quadrature)

    p = sub.add_parser("report", parents=[common], help="verdict of a stored run")
    p.add_argument("--name", required=True)
    p.add_argument("--runs-dir", default=None, help=f"parent of run folders (default {settings.runs_dir})")
    p.set_defaults(handler=cmd_report)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return args.handler(args)
    except LabError as e:
        logger.error(f"{e.__class__.__name__}: {e.message}")
        _print_json(e.to_dict())
        return EXIT_ERROR
    except FileNotFoundError as e:
        logger.error(str(e))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
