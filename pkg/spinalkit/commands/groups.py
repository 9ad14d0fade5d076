"""``catalog``, ``info`` and ``normalize``: facts about defining tuples."""

import argparse

from spinalkit.catalog import DEFAULT_GROUPS
from spinalkit.commands.common import add_format_argument, add_group_arguments, emit, spinal_from_args
from spinalkit.errors import CHECK_FAILURE
from spinalkit.services import spinal
from spinalkit.services.zmodp import normalize_defining_tuple


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def info(args: argparse.Namespace) -> int:
    config, G = spinal_from_args(args)
    E = G.E
    facts = {
        "group": config.name,
        "p": G.p,
        "r": G.r,
        "rows": E.as_lists(),
        "n_star": G.n_star,
        "normalized": G.normalized,
        "torsion": spinal.is_torsion(E),
        "family_E": spinal.in_family_E(E),
        "exceptional": spinal.is_exceptional_G(E),
        "infinite_order_row": spinal.witness_row_for_infinite_order(E),
    }
    text = "\n".join(
        [
            f"group: {config.name}",
            f"p = {G.p}, r = {G.r}, rows = {E.as_lists()}",
            f"n_star: {G.n_star}",
            f"normalized (e_11 = 1): {_yes(G.normalized)}",
            f"torsion (infinite p-group): {_yes(facts['torsion'])}",
            f"in the excluded family: {_yes(facts['family_E'])}",
            f"exceptional group: {_yes(facts['exceptional'])}",
        ]
    )
    if facts["infinite_order_row"] is not None:
        text += f"\na*b{facts['infinite_order_row']} has infinite order"
    emit(args, facts, text)
    return 0


def normalize(args: argparse.Namespace) -> int:
    config, G = spinal_from_args(args)
    normalized, witness = normalize_defining_tuple(G.E)
    certified = spinal.check_normalization(G.E, args.depth)
    payload = {
        "group": config.name,
        "rows": G.E.as_lists(),
        "normalized": normalized.as_lists(),
        "power": witness.power,
        "k": witness.k,
        "l": witness.l,
        "root_permutation": [x + 1 for x in witness.root_permutation],
        "generator_matrix": [list(row) for row in witness.generator_matrix],
        "certified_depth": args.depth,
        "certified": certified,
    }
    text = "\n".join(
        [
            f"{G.E.as_lists()} -> {normalized.as_lists()}",
            f"b1 replaced by b1^{witness.power}; conjugating by x -> {witness.l}x (k = {witness.k})",
            f"generator matrix: {payload['generator_matrix']}",
            f"certified by portraits at depth {args.depth}: {_yes(certified)}",
        ]
    )
    emit(args, payload, text)
    return 0 if certified else CHECK_FAILURE


def catalog(args: argparse.Namespace) -> int:
    text = "\n".join(f"{g['label']:<20} p={g['p']} rows={g['rows']}" for g in DEFAULT_GROUPS)
    emit(args, {"groups": DEFAULT_GROUPS}, text)
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("catalog", help="list the named groups")
    add_format_argument(parser)
    parser.set_defaults(handler=catalog)

    parser = subparsers.add_parser("info", help="torsion, family and normal-form facts about a group")
    add_group_arguments(parser)
    add_format_argument(parser)
    parser.set_defaults(handler=info)

    parser = subparsers.add_parser("normalize", help="bring a defining tuple into normal form")
    add_group_arguments(parser)
    add_format_argument(parser)
    parser.add_argument("--depth", type=int, default=spinal.CERTIFY_DEPTH, help="portrait depth for the certificate")
    parser.set_defaults(handler=normalize)
