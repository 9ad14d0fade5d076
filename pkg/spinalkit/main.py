import logging

from spinalkit.config import settings

logging.basicConfig(level=settings.LOG_LEVEL, format="%(levelname)s:%(name)s: %(message)s")
import argparse
import sys

from spinalkit.commands import elements, groups, quotients, verify
from spinalkit.errors import SpinalError

logger = logging.getLogger(__name__)

COMMANDS = [groups, elements, quotients, verify]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinalkit",
        description="Words, sections, theta maps and congruence quotients of multi-edge spinal groups.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except SpinalError as exc:
        logger.debug("%s: %s", type(exc).__name__, exc.detail)
        sys.stderr.write(f"error: {exc.detail}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
