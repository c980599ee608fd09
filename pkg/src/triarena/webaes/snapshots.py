"""Page snapshot document format: JSON serialization and validation.

One document per captured page:

    {"action_id": ..., "status": ..., "viewport": {"w": ..., "h": ...},
     "elements": [{"tag": ..., "bbox": [x, y, w, h], "children": ...,
                   "filter_by": ..., "eval_by": [...], "attributes": {...}}]}

This format is the contract between snapshot producers (the browser
toolkit, test fixtures) and the scorer; loaders validate against the
schema below and fail loudly on malformed documents.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

from .types import ElementSnapshot, PageSnapshot, PageStatus

SNAPSHOT_SCHEMA: dict = {
    "type": "object",
    "required": ["action_id", "status", "viewport", "elements"],
    "properties": {
        "action_id": {"type": "string", "minLength": 1},
        "status": {"enum": [status.value for status in PageStatus]},
        "viewport": {
            "type": "object",
            "required": ["w", "h"],
            "properties": {
                "w": {"type": "integer", "minimum": 1},
                "h": {"type": "integer", "minimum": 1},
            },
        },
        "elements": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["tag", "bbox", "children", "filter_by", "eval_by", "attributes"],
                "properties": {
                    "tag": {"type": "string", "minLength": 1},
                    "bbox": {
                        "type": "array",
                        "items": {"type": "number"},
                        "minItems": 4,
                        "maxItems": 4,
                    },
                    "children": {"type": "integer", "minimum": 0},
                    "filter_by": {"type": ["string", "null"]},
                    "eval_by": {"type": "array", "items": {"type": "string"}},
                    "attributes": {
                        "type": "object",
                        "additionalProperties": {"type": ["string", "number"]},
                    },
                },
            },
        },
    },
}


def snapshot_to_dict(page: PageSnapshot) -> dict:
    return {
        "action_id": page.action_id,
        "status": page.status.value,
        "viewport": {"w": page.viewport[0], "h": page.viewport[1]},
        "elements": [
            {
                "tag": element.tag,
                "bbox": list(element.bbox),
                "children": element.children_count,
                "filter_by": element.filter_by,
                "eval_by": list(element.eval_by),
                "attributes": dict(element.attributes),
            }
            for element in page.elements
        ],
    }


def snapshot_from_dict(data: dict) -> PageSnapshot:
    jsonschema.validate(data, SNAPSHOT_SCHEMA)
    elements = [
        ElementSnapshot(
            tag=item["tag"],
            bbox=tuple(float(v) for v in item["bbox"]),
            attributes={name: str(value) for name, value in item["attributes"].items()},
            children_count=item["children"],
            filter_by=item["filter_by"],
            eval_by=tuple(item["eval_by"]),
        )
        for item in data["elements"]
    ]
    return PageSnapshot(
        action_id=data["action_id"],
        elements=elements,
        status=PageStatus(data["status"]),
        viewport=(data["viewport"]["w"], data["viewport"]["h"]),
    )


def dump_page_snapshot(page: PageSnapshot, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(snapshot_to_dict(page), indent=2) + "\n")


def load_page_snapshot(path: Union[str, Path]) -> PageSnapshot:
    """Load and validate one snapshot document; raises on malformed input."""
    data = json.loads(Path(path).read_text())
    return snapshot_from_dict(data)


def load_snapshot_dir(
    directory: Union[str, Path], lenient: bool = False
) -> list[PageSnapshot]:
    """Load every ``*.json`` snapshot in a directory, initial page first.

    With ``lenient`` a malformed file becomes a parse-failure page named
    after the file instead of raising, so one bad snapshot only costs
    its own page.
    """
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"snapshot directory not found: {directory}")
    pages = []
    for path in sorted(directory.glob("*.json")):
        try:
            pages.append(load_page_snapshot(path))
        except (ValueError, KeyError, TypeError, jsonschema.ValidationError):
            if not lenient:
                raise
            pages.append(
                PageSnapshot(action_id=path.stem, elements=[], status=PageStatus.PARSE_ERROR)
            )
    pages.sort(key=lambda page: (page.action_id != "initial", page.action_id))
    return pages
