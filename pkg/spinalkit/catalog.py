"""Named groups used by the suites, the tests and the CLI.

A group argument on the command line is either one of these labels or a
path to a JSON file ``{"p": 3, "rows": [[1, 2]], "label": "..."}``.
"""

import json
import logging
from pathlib import Path

from pydantic import ValidationError

from spinalkit.errors import ConfigInvalid
from spinalkit.schemas import GroupConfig

logger = logging.getLogger(__name__)

DEFAULT_GROUPS = [
    {"label": "gupta-sidki-3", "p": 3, "rows": [[1, 2]]},
    {"label": "exceptional-3", "p": 3, "rows": [[1, 1]]},
    # syntactically in the family excluded from length reduction
    {"label": "multi-edge-3", "p": 3, "rows": [[1, 0], [1, 1]]},
    # same row space as multi-edge-3, ordered so that length reduction applies
    {"label": "multi-edge-3-theta", "p": 3, "rows": [[1, 1], [1, 0]]},
    {"label": "gupta-sidki-5", "p": 5, "rows": [[1, 4, 0, 0]]},
    {"label": "torsion-5", "p": 5, "rows": [[1, 1, 1, 2]]},
    {"label": "torsion-5-2", "p": 5, "rows": [[1, 1, 1, 2], [1, 2, 3, 4]]},
    {"label": "family-e-5", "p": 5, "rows": [[1, 0, 0, 0], [1, 0, 0, 1]]},
]

# Normalized groups outside the excluded family. multi-edge-3-theta is not torsion:
# no (p, r) = (3, 2) tuple is.
THETA_GROUPS = ["gupta-sidki-3", "multi-edge-3-theta", "gupta-sidki-5"]
ABELIANIZATION_GROUPS = ["gupta-sidki-3", "exceptional-3", "multi-edge-3", "gupta-sidki-5"]


def group_labels() -> list[str]:
    return [g["label"] for g in DEFAULT_GROUPS]


def get_group(label: str) -> GroupConfig:
    for group in DEFAULT_GROUPS:
        if group["label"] == label:
            return GroupConfig(**group)
    raise ConfigInvalid(f"unknown group {label!r}; known groups: {', '.join(group_labels())}")


def load_group_file(path: Path) -> GroupConfig:
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigInvalid(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigInvalid(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise ConfigInvalid(f"{path} must hold a JSON object")
    data.setdefault("label", path.stem)
    return build_group(data)


def build_group(data: dict) -> GroupConfig:
    try:
        return GroupConfig(**data)
    except ValidationError as exc:
        errors = "; ".join(f"{'.'.join(map(str, e['loc']))}: {e['msg']}" for e in exc.errors())
        raise ConfigInvalid(f"invalid group config: {errors}") from exc


def parse_row(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ConfigInvalid(f"row {text!r} must be comma-separated integers") from exc


def resolve_group(
    source: str | None,
    p: int | None = None,
    rows: list[str] | None = None,
    label: str | None = None,
) -> GroupConfig:
    """Group from inline ``--p``/``--row`` flags, a catalog label or a JSON file."""
    if p is not None or rows:
        if source is not None:
            raise ConfigInvalid("give either a group argument or --p/--row, not both")
        if p is None or not rows:
            raise ConfigInvalid("inline groups need both --p and at least one --row")
        return build_group({"p": p, "rows": [parse_row(r) for r in rows], "label": label})
    if source is None:
        raise ConfigInvalid("no group given")
    if source in group_labels():
        return get_group(source)
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return load_group_file(path)
    raise ConfigInvalid(f"{source!r} is neither a known group nor a JSON file")
