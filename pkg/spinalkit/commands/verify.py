"""``verify``: run verification suites and print their reports."""

import argparse
import logging
import sys

from pydantic import ValidationError

from spinalkit.commands.common import add_format_argument, add_group_arguments, group_from_args, is_machine
from spinalkit.config import settings
from spinalkit.errors import CHECK_FAILURE, ConfigInvalid
from spinalkit.models import SuiteName
from spinalkit.schemas import Caps
from spinalkit.services.report import render
from spinalkit.services.suites import run_suites

logger = logging.getLogger(__name__)

SAMPLE_CAPS = ("theta_samples", "section_samples", "oracle_samples", "word_samples", "normalize_samples")


def caps_from_args(args: argparse.Namespace) -> Caps:
    overrides = {"bfs_step_cap": args.cap}
    if args.samples is not None:
        overrides.update({name: args.samples for name in SAMPLE_CAPS})
    try:
        return Caps.from_settings(settings, **overrides)
    except ValidationError as exc:
        fields = ", ".join(str(err["loc"][0]) for err in exc.errors())
        raise ConfigInvalid(f"invalid caps: {fields}") from None


def verify(args: argparse.Namespace) -> int:
    config = group_from_args(args)
    names = args.suite or [s.value for s in SuiteName]
    if "all" in names:
        names = [s.value for s in SuiteName]
    seed = settings.DEFAULT_SEED if args.seed is None else args.seed
    reports = run_suites(names, config, seed, caps_from_args(args))
    sys.stdout.write(render(reports, machine=is_machine(args), timings=args.timings))
    failed = [r.suite.value for r in reports if not r.passed]
    if failed:
        logger.info("failing suites: %s", ", ".join(failed))
        return CHECK_FAILURE
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="run verification suites against a group")
    add_group_arguments(parser)
    add_format_argument(parser)
    parser.add_argument(
        "--suite",
        action="append",
        metavar="NAME",
        help=f"suite to run; repeat for several or use 'all' ({', '.join(s.value for s in SuiteName)})",
    )
    parser.add_argument("--seed", type=int, help="random seed (default DEFAULT_SEED)")
    parser.add_argument("--cap", type=int, help="total theta steps allowed per reduction")
    parser.add_argument("--samples", type=int, help="override every per-suite sample count")
    parser.add_argument("--timings", action="store_true", help="include wall time in the report")
    parser.set_defaults(handler=verify)
