"""Per-kind attribute similarity.

Four attribute kinds are distinguished: free text (term IoU), continuous
numeric values with units (inverted relative error), discrete enumerations
(equality) and colors (inverted mean channel distance). Every similarity
lands in [0, 1] and equal values always score 1.
"""

from __future__ import annotations

import re

CONTINUOUS_ATTRIBUTES = {
    "border-width",
    "border-radius",
    "font-size",
    "font-weight",
    "height",
    "width",
    "letter-spacing",
    "line-height",
    "margin",
    "padding",
    "top",
    "left",
    "right",
    "bottom",
    "opacity",
    "gap",
}

DISCRETE_ATTRIBUTES = {
    "background-image",
    "background-repeat",
    "src",
    "href",
    "type",
    "border-style",
    "outline-style",
    "font-family",
    "font-style",
    "tab-size",
    "display",
    "position",
    "text-align",
    "overflow",
    "cursor",
    "class",
    "id",
    "name",
}

COLOR_ATTRIBUTES = {
    "color",
    "background-color",
    "border-color",
    "outline-color",
    "fill",
    "stroke",
}

_NUMBER_UNIT_RE = re.compile(r"^\s*([+-]?\d+(?:\.\d+)?(?:e[+-]?\d+)?)\s*([a-z%]*)\s*$", re.I)

_NAMED_COLORS = {
    "black": (0, 0, 0),
    "white": (255, 255, 255),
    "red": (255, 0, 0),
    "green": (0, 128, 0),
    "lime": (0, 255, 0),
    "blue": (0, 0, 255),
    "yellow": (255, 255, 0),
    "cyan": (0, 255, 255),
    "magenta": (255, 0, 255),
    "gray": (128, 128, 128),
    "grey": (128, 128, 128),
    "silver": (192, 192, 192),
    "orange": (255, 165, 0),
    "purple": (128, 0, 128),
    "navy": (0, 0, 128),
    "teal": (0, 128, 128),
    "maroon": (128, 0, 0),
    "olive": (128, 128, 0),
    "transparent": (0, 0, 0),
}


def attribute_kind(name: str) -> str:
    """Classify an attribute name into text/continuous/discrete/color."""
    lowered = name.lower()
    if lowered in COLOR_ATTRIBUTES or lowered.endswith("-color"):
        return "color"
    if lowered in CONTINUOUS_ATTRIBUTES:
        return "continuous"
    if lowered in DISCRETE_ATTRIBUTES:
        return "discrete"
    return "text"


def parse_number_unit(value: str) -> tuple[float, str] | None:
    m = _NUMBER_UNIT_RE.match(str(value))
    if m is None:
        return None
    return float(m.group(1)), m.group(2).lower()


def parse_color(value: str) -> tuple[int, int, int] | None:
    """Parse hex/rgb()/named color tokens into 8-bit channels."""
    v = str(value).strip().lower()
    if v in _NAMED_COLORS:
        return _NAMED_COLORS[v]
    if v.startswith("#"):
        digits = v[1:]
        if len(digits) == 3:
            digits = "".join(c * 2 for c in digits)
        if len(digits) in (6, 8) and all(c in "0123456789abcdef" for c in digits):
            return tuple(int(digits[i : i + 2], 16) for i in (0, 2, 4))  # type: ignore[return-value]
        return None
    m = re.match(r"rgba?\(([^)]*)\)", v)
    if m:
        parts = [p.strip() for p in m.group(1).replace("/", ",").split(",") if p.strip()]
        if len(parts) >= 3:
            try:
                channels = []
                for p in parts[:3]:
                    if p.endswith("%"):
                        channels.append(round(float(p[:-1]) * 255 / 100))
                    else:
                        channels.append(round(float(p)))
                if all(0 <= c <= 255 for c in channels):
                    return tuple(channels)  # type: ignore[return-value]
            except ValueError:
                return None
    return None


def _term_iou(gt: str, gen: str) -> float:
    gt_terms = set(str(gt).lower().split())
    gen_terms = set(str(gen).lower().split())
    if not gt_terms and not gen_terms:
        return 1.0
    union = gt_terms | gen_terms
    return len(gt_terms & gen_terms) / len(union)


def _continuous_similarity(gt: str, gen: str) -> float:
    gt_parsed = parse_number_unit(gt)
    gen_parsed = parse_number_unit(gen)
    if gt_parsed is None or gen_parsed is None:
        return 1.0 if str(gt).strip() == str(gen).strip() else 0.0
    gt_num, gt_unit = gt_parsed
    gen_num, gen_unit = gen_parsed
    # A bare 0 matches any unit; otherwise units must agree.
    if gt_unit != gen_unit and not (gt_num == 0 or gen_num == 0):
        return 0.0
    if gt_num == 0:
        return 1.0 if gen_num == 0 else 0.0
    relative_error = abs(gt_num - gen_num) / abs(gt_num)
    return max(0.0, min(1.0, 1.0 - relative_error))


def _discrete_similarity(gt: str, gen: str) -> float:
    return 1.0 if str(gt).strip().lower() == str(gen).strip().lower() else 0.0


def _color_similarity(gt: str, gen: str) -> float:
    gt_rgb = parse_color(gt)
    gen_rgb = parse_color(gen)
    if gt_rgb is None or gen_rgb is None:
        return 1.0 if str(gt).strip().lower() == str(gen).strip().lower() else 0.0
    distance = sum(abs(a - b) for a, b in zip(gt_rgb, gen_rgb)) / (3 * 256)
    return 1.0 - distance


def attr_similarity(kind: str, gt: str, gen: str) -> float:
    """Similarity of a ground-truth attribute value against a generated one."""
    if kind == "text":
        return _term_iou(gt, gen)
    if kind == "continuous":
        return _continuous_similarity(gt, gen)
    if kind == "discrete":
        return _discrete_similarity(gt, gen)
    if kind == "color":
        return _color_similarity(gt, gen)
    raise ValueError(f"unknown attribute kind: {kind!r}")


def similarity_by_name(name: str, gt: str, gen: str) -> float:
    return attr_similarity(attribute_kind(name), gt, gen)
