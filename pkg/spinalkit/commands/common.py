"""Arguments and output helpers shared by the command modules."""

import argparse
import json
import sys

from spinalkit.catalog import resolve_group
from spinalkit.models import OutputFormat
from spinalkit.schemas import GroupConfig
from spinalkit.services.parsing import parse_word
from spinalkit.services.spinal import SpinalGroup
from spinalkit.services.words import ReducedWord


def add_group_arguments(parser: argparse.ArgumentParser, positional: bool = True) -> None:
    if positional:
        parser.add_argument("group", nargs="?", help="catalog label or JSON file with p, rows, label")
    parser.add_argument("--p", type=int, help="prime for an inline group")
    parser.add_argument("--row", action="append", metavar="E1,E2,...", help="defining vector; repeat per row")
    parser.add_argument("--label", help="label for an inline group")


def add_format_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.text.value,
        help="human-readable text or machine-readable JSON",
    )


def group_from_args(args: argparse.Namespace) -> GroupConfig:
    return resolve_group(args.group, p=args.p, rows=args.row, label=args.label)


def spinal_from_args(args: argparse.Namespace) -> tuple[GroupConfig, SpinalGroup]:
    config = group_from_args(args)
    return config, SpinalGroup(config.defining_tuple())


def word_from_args(G: SpinalGroup, text: str) -> ReducedWord:
    return parse_word(text, G.p, G.r)


def is_machine(args: argparse.Namespace) -> bool:
    return args.format == OutputFormat.machine.value


def emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if is_machine(args):
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")
