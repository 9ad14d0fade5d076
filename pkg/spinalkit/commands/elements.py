"""Commands acting on a single word: ``eval``, ``sections``, ``theta``, ``reduce``."""

import argparse

from spinalkit.commands.common import (
    add_format_argument,
    add_group_arguments,
    emit,
    spinal_from_args,
    word_from_args,
)
from spinalkit.config import settings
from spinalkit.errors import ConfigInvalid
from spinalkit.models import ThetaMap
from spinalkit.services import spinal, tree
from spinalkit.services.parsing import format_word


def _group_and_word(args: argparse.Namespace):
    if len(args.target) == 2:
        args.group, text = args.target
    elif len(args.target) == 1:
        args.group, text = None, args.target[0]
    else:
        raise ConfigInvalid("expected [GROUP] WORD")
    config, G = spinal_from_args(args)
    return config, G, word_from_args(G, text)


def eval_command(args: argparse.Namespace) -> int:
    config, G, w = _group_and_word(args)
    portrait = tree.eval_word(G, w, args.depth)
    order = tree.order(portrait)
    payload = {
        "group": config.name,
        "word": format_word(w),
        "depth": args.depth,
        "portrait": tree.dump(portrait),
        "order": order,
    }
    emit(args, payload, f"{tree.dump(portrait)}\norder: {order}")
    return 0


def sections_command(args: argparse.Namespace) -> int:
    config, G, w = _group_and_word(args)
    secs = spinal.sections(G, w)
    formatted = [format_word(g) for g in secs]
    payload = {"group": config.name, "word": format_word(w), "length": w.length, "sections": formatted}
    text = "\n".join(f"{j}: {g}" for j, g in enumerate(formatted, start=1))
    emit(args, payload, text)
    return 0


def theta_command(args: argparse.Namespace) -> int:
    config, G, z = _group_and_word(args)
    which = ThetaMap(args.map)
    image = spinal.apply_theta(G, z, which)
    payload = {
        "group": config.name,
        "word": format_word(z),
        "map": which.value,
        "result": format_word(image),
        "length": z.length,
        "result_length": image.length,
    }
    emit(args, payload, f"{format_word(image)}  (length {z.length} -> {image.length})")
    return 0


def reduce_command(args: argparse.Namespace) -> int:
    config, G, z = _group_and_word(args)
    cap = args.cap if args.cap is not None else settings.BFS_STEP_CAP
    if cap < 0:
        raise ConfigInvalid(f"--cap must be >= 0, got {cap}")
    result, trace = spinal.reduce_commutator_length(G, z, cap)
    payload = {
        "group": config.name,
        "word": format_word(z),
        "cap": cap,
        "trace": [m.value for m in trace],
        "result": format_word(result),
        "result_length": result.length,
    }
    steps = " ".join(f"theta{m.value}" for m in trace) or "(none)"
    emit(args, payload, f"trace: {steps}\nresult: {format_word(result)}  (length {result.length})")
    return 0


def _element_parser(subparsers, name: str, help_text: str) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(name, help=help_text)
    parser.add_argument("target", nargs="+", metavar="[GROUP] WORD", help="group (unless given inline) and a word such as a^-1*b1^-1*a*b1")
    add_group_arguments(parser, positional=False)
    add_format_argument(parser)
    return parser


def register(subparsers) -> None:
    parser = _element_parser(subparsers, "eval", "portrait of a word on the first levels of the tree")
    parser.add_argument("--depth", type=int, default=2)
    parser.set_defaults(handler=eval_command)

    parser = _element_parser(subparsers, "sections", "first-level sections of a level-1 stabilizer word")
    parser.set_defaults(handler=sections_command)

    parser = _element_parser(subparsers, "theta", "apply one theta map to a derived-subgroup word")
    parser.add_argument("--map", choices=[m.value for m in ThetaMap], default=ThetaMap.theta1.value)
    parser.set_defaults(handler=theta_command)

    parser = _element_parser(subparsers, "reduce", "chain theta maps down to length 0 or 2")
    parser.add_argument("--cap", type=int, help="total number of theta applications allowed")
    parser.set_defaults(handler=reduce_command)
