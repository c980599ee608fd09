"""Access to the shipped prompt assets.

The prompt texts live as data files next to this module; they are
loaded verbatim (only a trailing newline is dropped) so the exact
wording, line wrapping and placeholders reach the agent unchanged.
"""

from __future__ import annotations

from importlib import resources


def load_prompt(name: str) -> str:
    """Read a prompt asset by name; the .txt extension is optional."""
    if "." not in name:
        name += ".txt"
    path = resources.files(__package__) / "prompt_data" / name
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise KeyError(f"unknown prompt asset {name!r}") from None
    return text.rstrip("\n")


def fill_template(template: str, fields: dict[str, str]) -> str:
    """Substitute ``{NAME}`` placeholders; unknown placeholders stay put."""
    for name, value in fields.items():
        template = template.replace("{" + name + "}", value)
    return template


# Observation slot text used when a frame falls outside the window.
IMAGE_PLACEHOLDER = "image not available."


def continue_text() -> str:
    return load_prompt("continue.txt")
