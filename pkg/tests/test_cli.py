import json

import pytest

from spinalkit.errors import CHECK_FAILURE, USAGE_ERROR
from spinalkit.main import build_parser, main

COMMUTATOR = "a^-1*b1^-1*a*b1"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv",
    [
        ["catalog"],
        ["info", "gupta-sidki-3"],
        ["normalize", "gupta-sidki-3"],
        ["eval", "gupta-sidki-3", "b1"],
        ["sections", "gupta-sidki-3", "b1"],
        ["theta", "gupta-sidki-3", "b1"],
        ["reduce", "gupta-sidki-3", "b1"],
        ["quotient", "gupta-sidki-3"],
        ["verify", "gupta-sidki-3"],
    ],
)
def test_parser_knows_every_command(argv):
    args = build_parser().parse_args(argv)
    assert args.command == argv[0]
    assert callable(args.handler)


def test_unknown_command_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "--format", "machine")
    assert code == 0
    labels = [g["label"] for g in json.loads(out)["groups"]]
    assert "gupta-sidki-3" in labels


def test_info(capsys):
    code, out, _ = run(capsys, "info", "gupta-sidki-3")
    assert code == 0
    assert "torsion (infinite p-group): yes" in out
    assert "n_star: 2" in out

    code, out, _ = run(capsys, "info", "exceptional-3", "--format", "machine")
    facts = json.loads(out)
    assert facts["exceptional"] is True
    assert facts["infinite_order_row"] == 1


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "gupta-sidki-3", "b1", "--depth", "2")
    assert code == 0
    assert out.splitlines() == ["(1 2 3)[(2 3 1)[e,e,e],(3 1 2)[e,e,e],(1 2 3)[e,e,e]]", "order: 3"]


def test_eval_with_inline_group(capsys):
    code, out, _ = run(capsys, "eval", "--p", "3", "--row", "1,2", "a*b1", "--depth", "3", "--format", "machine")
    assert code == 0
    assert json.loads(out)["order"] == 9


def test_sections(capsys):
    code, out, _ = run(capsys, "sections", "gupta-sidki-3", "b1", "--format", "machine")
    assert code == 0
    assert json.loads(out)["sections"] == ["a", "a^2", "b1"]


def test_sections_outside_the_stabilizer(capsys):
    code, _, err = run(capsys, "sections", "gupta-sidki-3", "a")
    assert code == USAGE_ERROR
    assert err.startswith("error: ")


def test_bad_word(capsys):
    code, _, err = run(capsys, "eval", "gupta-sidki-3", "b7")
    assert code == USAGE_ERROR
    assert "b7" in err


def test_theta(capsys):
    code, out, _ = run(capsys, "theta", "gupta-sidki-3", COMMUTATOR, "--map", "2", "--format", "machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["map"] == "2"
    assert payload["length"] == 2


def test_theta_needs_a_derived_word(capsys):
    code, _, _ = run(capsys, "theta", "gupta-sidki-3", "b1")
    assert code == USAGE_ERROR


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "gupta-sidki-3", COMMUTATOR)
    assert code == 0
    assert "trace: (none)" in out


def test_reduce_refuses_the_excluded_family(capsys):
    code, _, err = run(capsys, "reduce", "family-e-5", COMMUTATOR)
    assert code == CHECK_FAILURE
    assert "excluded" in err


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "--p", "3", "--row", "0,1", "--format", "machine")
    assert code == 0
    payload = json.loads(out)
    assert payload["normalized"] == [[1, 0]]
    assert payload["certified"] is True
    assert payload["root_permutation"] == [2, 1, 3]


def test_group_conflicts(capsys):
    code, _, _ = run(capsys, "info", "gupta-sidki-3", "--p", "3", "--row", "1,2")
    assert code == USAGE_ERROR
    code, _, _ = run(capsys, "info", "--p", "3", "--row", "1,2", "--row", "2,1")
    assert code == USAGE_ERROR


def test_quotient_abelianization(capsys):
    code, out, _ = run(
        capsys, "quotient", "gupta-sidki-3", "--depth", "2", "--report", "abelianization", "--format", "machine"
    )
    assert code == 0
    assert json.loads(out)["rows"] == [{"depth": 1, "index": 3}, {"depth": 2, "index": 9}]


def test_quotient_orders_text(capsys):
    code, out, _ = run(capsys, "quotient", "exceptional-3", "--depth", "2")
    assert code == 0
    assert "depth 2, order 81" in out


def test_quotient_degree_cap(capsys):
    code, _, err = run(capsys, "quotient", "gupta-sidki-3", "--depth", "7")
    assert code == USAGE_ERROR
    assert "degree cap" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "gupta-sidki-3", "--suite", "words", "--suite", "torsion", "--samples", "20")
    assert code == 0
    assert out.startswith("words on gupta-sidki-3 (seed 1)")
    assert "torsion on gupta-sidki-3" in out


def test_verify_machine_output(capsys):
    code, out, _ = run(capsys, "verify", "gupta-sidki-5", "--suite", "sections", "--samples", "10", "--seed", "4", "--format", "machine")
    assert code == 0
    (report,) = json.loads(out)
    assert report["seed"] == 4
    assert "wall_time_s" not in report


def test_verify_usage_errors(capsys):
    code, _, _ = run(capsys, "verify", "gupta-sidki-3", "--suite", "nope")
    assert code == USAGE_ERROR
    code, _, _ = run(capsys, "verify", "gupta-sidki-3", "--suite", "words", "--samples", "0")
    assert code == USAGE_ERROR


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "gupta-sidki-3", "a", "--depth", "-1"],
        ["normalize", "gupta-sidki-3", "--depth", "-2"],
        ["reduce", "gupta-sidki-3", COMMUTATOR, "--cap", "-3"],
    ],
)
def test_negative_depth_and_cap_are_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == USAGE_ERROR
    assert err.startswith("error: ")
