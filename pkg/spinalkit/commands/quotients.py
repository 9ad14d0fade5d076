"""``quotient``: reports on the congruence quotients G/stab_G(k), k = 1..depth."""

import argparse

from spinalkit.commands.common import add_format_argument, add_group_arguments, emit, spinal_from_args
from spinalkit.models import QuotientReport
from spinalkit.services import permgrp


def _orders(quotients: dict[int, permgrp.QuotientGroup]) -> list[dict]:
    return [{"depth": depth, **permgrp.lower_central_quotients(Q)} for depth, Q in quotients.items()]


def _abelianization(quotients: dict[int, permgrp.QuotientGroup]) -> list[dict]:
    return [
        {"depth": depth, "index": permgrp.index(Q, permgrp.derived_subgroup(Q))}
        for depth, Q in quotients.items()
    ]


def _gamma3(quotients: dict[int, permgrp.QuotientGroup]) -> list[dict]:
    rows = []
    for depth, Q in quotients.items():
        derived, g3 = permgrp.derived_subgroup(Q), permgrp.gamma3(Q)
        rows.append(
            {
                "depth": depth,
                "gamma3": permgrp.order(g3),
                "derived_over_gamma3": permgrp.order(derived) // permgrp.order(g3),
            }
        )
    return rows


def _rigid(quotients: dict[int, permgrp.QuotientGroup]) -> list[dict]:
    depth = max(quotients)
    Q = quotients[depth]
    return [
        {"depth": depth, "level": level, "index": permgrp.index(Q, permgrp.rigid_level_stabilizer(Q, level))}
        for level in range(1, depth)
    ]


REPORTS = {
    QuotientReport.orders: _orders,
    QuotientReport.abelianization: _abelianization,
    QuotientReport.gamma3: _gamma3,
    QuotientReport.rigid: _rigid,
}


def quotient(args: argparse.Namespace) -> int:
    config, G = spinal_from_args(args)
    # fail on the degree cap before building anything
    permgrp.check_degree(G.p, args.depth, args.cap)
    quotients = {depth: permgrp.quotient(G, depth, args.cap) for depth in range(1, args.depth + 1)}
    report = QuotientReport(args.report)
    rows = REPORTS[report](quotients)
    payload = {"group": config.name, "report": report.value, "rows": rows}
    lines = [f"{report.value} for {config.name}"]
    for row in rows:
        lines.append("  " + ", ".join(f"{key} {value}" for key, value in row.items()))
    if len(lines) == 1:
        lines.append("  (nothing to report at this depth)")
    emit(args, payload, "\n".join(lines))
    return 0


def register(subparsers) -> None:
    parser = subparsers.add_parser("quotient", help="orders and subgroup indices of congruence quotients")
    add_group_arguments(parser)
    add_format_argument(parser)
    parser.add_argument("--depth", type=int, default=2)
    parser.add_argument(
        "--report",
        choices=[r.value for r in QuotientReport],
        default=QuotientReport.orders.value,
    )
    parser.add_argument("--cap", type=int, help="largest p^depth allowed (default DEGREE_CAP)")
    parser.set_defaults(handler=quotient)
