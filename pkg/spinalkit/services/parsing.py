"""Text syntax for words: ``a``, ``a^-1``, ``b1``, ``b2^3`` joined by ``*``.

``1`` (or an empty string) is the identity.
"""

import re

from spinalkit.errors import ContextMismatch, WordSyntaxError
from spinalkit.services import words
from spinalkit.services.words import ReducedWord

_TOKEN = re.compile(r"^(?:a|b(?P<index>[1-9][0-9]*))(?:\^(?P<exp>-?[0-9]+))?$")


def parse_word(text: str, p: int, r: int) -> ReducedWord:
    raw: list[tuple[int, int]] = []
    stripped = text.replace(" ", "")
    if stripped in ("", "1"):
        return words.identity(p, r)
    for token in stripped.split("*"):
        match = _TOKEN.match(token)
        if not match:
            raise WordSyntaxError(f"cannot parse {token!r} in {text!r}")
        index = int(match["index"]) if match["index"] else words.A_GENERATOR
        exponent = int(match["exp"]) if match["exp"] is not None else 1
        raw.append((index, exponent))
    try:
        return words.reduce(p, r, raw)
    except ContextMismatch as exc:
        raise WordSyntaxError(f"{exc.detail} in {text!r}") from exc


def _power(name: str, exponent: int) -> str:
    return name if exponent == 1 else f"{name}^{exponent}"


def format_word(w: ReducedWord) -> str:
    tokens: list[str] = []
    for kind, value in w.letters():
        if kind == "a":
            tokens.append(_power("a", value))
        else:
            tokens.extend(_power(f"b{i}", e) for i, e in enumerate(value, start=1) if e)
    return "*".join(tokens) or "1"
