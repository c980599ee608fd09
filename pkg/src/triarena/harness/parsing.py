"""Tolerant parsing of agent replies into environment actions.

Replies are expected to follow the environments' answer formats (an
"Actions" header with a comma-separated sequence, or an "action" header
with a single action ID), but the grammar is forgiving: markdown header
marks are optional, case is ignored and surrounding prose is skipped.
Only exact vocabulary tokens count as actions.
"""

from __future__ import annotations

import re
from typing import Sequence


class ParseError(ValueError):
    """Raised when a reply contains no extractable action."""


# A header is either a standalone "Actions" line (markdown marks and a
# colon optional) or a marked header with the list on the same line.
_SEQUENCE_HEADER = re.compile(r"^\s*(?:#+\s*)?actions?\b\s*:?\s*(.*)$", re.IGNORECASE)
_SINGLE_HEADER = re.compile(r"^\s*(?:#+\s*)?action\b\s*:?\s*(.*)$", re.IGNORECASE)
_CODE_BLOCK = re.compile(r"```(\w+)?\s*\n(.*?)```", re.DOTALL)


def _after_header(lines: list[str], header: re.Pattern) -> list[str]:
    """Content lines following (and on) the last header line, or None.

    Unmarked header lines must be standalone so prose mentioning the
    word "action" does not count as a header.
    """
    index = None
    inline = ""
    for i, line in enumerate(lines):
        match = header.match(line)
        if match and (match.group(1) == "" or line.lstrip().startswith("#")):
            index = i
            inline = match.group(1)
    if index is None:
        return None
    return [inline, *lines[index + 1 :]]


def parse_actions(text: str, vocab: Sequence[str], mode: str) -> list[str]:
    """Extract actions from a reply; raises ParseError when none found.

    ``sequence`` mode reads the comma/newline-separated list after the
    actions header; ``single`` mode reads one vocabulary token after the
    action header (or accepts a reply that is exactly one token).
    Tokens are matched case-insensitively and returned in vocabulary
    casing; non-vocabulary items are skipped.
    """
    if not vocab:
        raise ValueError("empty action vocabulary")
    if mode not in ("sequence", "single"):
        raise ValueError(f"unknown parse mode {mode!r}")
    canonical = {token.lower(): token for token in vocab}
    lines = text.split("\n")

    if mode == "sequence":
        tail = _after_header(lines, _SEQUENCE_HEADER)
        if tail is None:
            raise ParseError("no actions header found")
        items = re.split(r"[,\n]", "\n".join(tail))
        actions = [canonical[i.strip().lower()] for i in items if i.strip().lower() in canonical]
        if not actions:
            raise ParseError("no vocabulary tokens after actions header")
        return actions

    tail = _after_header(lines, _SINGLE_HEADER)
    if tail is None:
        # a bare reply consisting of exactly one vocabulary token is accepted
        bare = text.strip().strip(".'\"`").lower()
        if bare in canonical:
            return [canonical[bare]]
        raise ParseError("no action header found")
    for line in tail:
        token = line.strip().strip(".'\"`").lower()
        if token in canonical:
            return [canonical[token]]
    raise ParseError("no vocabulary token after action header")


NO_CHANGE = {
    "html": "*html do not need to change*",
    "css": "*css do not need to change*",
    "javascript": "*javascript do not need to change*",
}


def parse_code_blocks(text: str) -> dict[str, str]:
    """Extract fenced code blocks keyed by language.

    Returns a mapping with any of the keys html/css/javascript; a
    block's language tag decides its key (``js`` counts as javascript).
    An explicit "do not need to change" notice maps the key to None.
    Raises ParseError when neither code nor notices are present.
    """
    found: dict[str, str] = {}
    for language, body in _CODE_BLOCK.findall(text):
        language = (language or "").lower()
        if language in ("js", "javascript"):
            key = "javascript"
        elif language in ("html", "css"):
            key = language
        else:
            continue
        found[key] = body
    lowered = text.lower()
    for key, notice in NO_CHANGE.items():
        if key not in found and notice in lowered:
            found[key] = None
    if not found:
        raise ParseError("no code blocks found")
    return found
