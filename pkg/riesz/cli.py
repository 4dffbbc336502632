from __future__ import annotations

import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence

from riesz.config import RawValue, build_config, merge, read_config_file
from riesz.errors import ConfigError, DomainError
from riesz.harness import CHECKS, CheckRecord, Status, SweepConfig, run_all_checks
from riesz.report import emit_report, render_csv, render_json


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2
EXIT_IO = 3

# Flags whose values are passed to the config layer as raw text.
VALUE_FLAGS = (
    "d",
    "alpha",
    "p-grid",
    "rs-grid",
    "alpha-grid",
    "radii",
    "dims",
    "rel-tol",
    "format",
    "out",
    "beta",
    "q",
    "form",
    "grid-size",
    "seed",
)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file; flags override it")
    for flag in VALUE_FLAGS:
        common.add_argument(f"--{flag}")
    common.add_argument(
        "--free-const",
        action="append",
        metavar="NAME=VALUE",
        help="c1d, thm4_c, stein_S or stein_C1 (repeatable)",
    )
    common.add_argument(
        "--profile",
        action="append",
        help="f0, g0, h, ball, zero, bump[:lambda] or a power descriptor",
    )
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="riesz", description="Numerical checks of Riesz potential bounds."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in (*CHECKS, "all-checks"):
        sub.add_parser(name, parents=[common])
    return parser


def config_from_args(args: argparse.Namespace) -> SweepConfig:
    file_values: Dict[str, RawValue] = {}
    if args.config:
        file_values = read_config_file(args.config)
    flags: Dict[str, Optional[RawValue]] = {
        flag: getattr(args, flag.replace("-", "_")) for flag in VALUE_FLAGS
    }
    flags["free-const"] = args.free_const
    flags["profile"] = args.profile
    return build_config(merge(file_values, flags))


def run(command: str, cfg: SweepConfig) -> List[CheckRecord]:
    if command == "all-checks":
        return run_all_checks(cfg)
    return CHECKS[command](cfg)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        cfg = config_from_args(args)
        records = run(args.command, cfg)
        if not records:
            raise ConfigError(f"{args.command} produced no records")
        if cfg.output_path:
            emit_report(records, cfg.fmt, cfg.output_path, cfg)
        elif cfg.fmt == "json":
            sys.stdout.write(render_json(records, cfg))
        else:
            sys.stdout.write(render_csv(records))
    except (ConfigError, DomainError) as e:
        logger.error("%s", e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error("%s", e)
        return EXIT_IO
    if any(r.status == Status.FAIL for r in records):
        return EXIT_FAILED
    return EXIT_OK
