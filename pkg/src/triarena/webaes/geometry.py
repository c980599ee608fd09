"""Bounding-box geometry: generalized intersection over union."""

from __future__ import annotations

from .types import BBox


def _area(b: BBox) -> float:
    return b[2] * b[3]


def _intersection_area(a: BBox, b: BBox) -> float:
    left = max(a[0], b[0])
    top = max(a[1], b[1])
    right = min(a[0] + a[2], b[0] + b[2])
    bottom = min(a[1] + a[3], b[1] + b[3])
    if right <= left or bottom <= top:
        return 0.0
    return (right - left) * (bottom - top)


def _enclosing_area(a: BBox, b: BBox) -> float:
    left = min(a[0], b[0])
    top = min(a[1], b[1])
    right = max(a[0] + a[2], b[0] + b[2])
    bottom = max(a[1] + a[3], b[1] + b[3])
    return (right - left) * (bottom - top)


def giou(a: BBox, b: BBox) -> float:
    """Generalized IoU of two (x, y, w, h) boxes, in [-1, 1].

    Zero-area boxes are treated as points: their IoU term is 0 (1 for two
    identical boxes) and the enclosure term still comes from the coordinates.
    """
    inter = _intersection_area(a, b)
    union = _area(a) + _area(b) - inter
    if union > 0:
        iou = inter / union
    else:
        iou = 1.0 if a == b else 0.0
    enclosing = _enclosing_area(a, b)
    if enclosing > 0:
        penalty = (enclosing - union) / enclosing
    else:
        penalty = 0.0
    return iou - penalty
