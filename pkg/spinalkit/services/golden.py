"""Golden values recorded for the catalog groups.

The table has one ``group-id, depth, quantity, value`` row per line; blank
lines and ``#`` comments are ignored.
"""

from functools import lru_cache
from pathlib import Path

from spinalkit.errors import ConfigInvalid

GOLDEN_PATH = Path(__file__).parent.parent / "data" / "golden.txt"

GoldenKey = tuple[str, int, str]


def parse_golden(text: str) -> dict[GoldenKey, int]:
    table: dict[GoldenKey, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 4:
            raise ConfigInvalid(f"golden line {lineno}: expected 4 fields, got {len(fields)}")
        group, depth, quantity, value = fields
        try:
            table[(group, int(depth), quantity)] = int(value)
        except ValueError as exc:
            raise ConfigInvalid(f"golden line {lineno}: depth and value must be integers") from exc
    return table


@lru_cache(maxsize=1)
def load_golden(path: Path = GOLDEN_PATH) -> dict[GoldenKey, int]:
    return parse_golden(path.read_text())


def golden_value(group: str, depth: int, quantity: str) -> int | None:
    return load_golden().get((group, depth, quantity))
