"""Snapshot data model and scoring configuration."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional


class PageStatus(str, enum.Enum):
    OK = "OK"
    PARSE_ERROR = "ParseError"
    RENDER_ERROR = "RenderError"
    INTERACTION_ERROR = "InteractionError"


BBox = tuple[float, float, float, float]  # (x, y, w, h) in page pixels


@dataclass(frozen=True)
class ElementSnapshot:
    """One rendered element: geometry, attributes and evaluation markers.

    ``eval_by`` is non-empty only on ground-truth atomic elements; generated
    elements carry just their geometry and attributes. ``space`` is the
    element's area weight and defaults to the bbox area.
    """

    tag: str
    bbox: BBox
    attributes: dict[str, str] = field(default_factory=dict)
    children_count: int = 0
    filter_by: Optional[str] = None
    eval_by: tuple[str, ...] = ()
    space: Optional[float] = None

    def __post_init__(self) -> None:
        x, y, w, h = self.bbox
        if w < 0 or h < 0:
            raise ValueError(f"bbox has negative extent: {self.bbox}")
        if self.filter_by is not None and self.filter_by not in self.attributes:
            raise ValueError(f"filter_by attribute {self.filter_by!r} missing from attributes")
        for name in self.eval_by:
            if name not in self.attributes:
                raise ValueError(f"eval_by attribute {name!r} missing from attributes")
        if self.space is None:
            object.__setattr__(self, "space", w * h)

    @property
    def is_atomic(self) -> bool:
        return len(self.eval_by) > 0


@dataclass
class PageSnapshot:
    """A static webpage capture: the initial page or the page after one interaction."""

    action_id: str
    elements: list[ElementSnapshot] = field(default_factory=list)
    status: PageStatus = PageStatus.OK
    viewport: tuple[int, int] = (1280, 800)

    def __post_init__(self) -> None:
        if self.status is PageStatus.OK and not self.elements:
            raise ValueError("OK page must have at least one element")

    def atomic_elements(self) -> list[ElementSnapshot]:
        return [e for e in self.elements if e.is_atomic]


# Filter thresholds are per attribute *kind*; a candidate whose filter
# attribute scores below the kind's threshold is pushed out of the matching.
DEFAULT_FILTER_THRESHOLDS: dict[str, float] = {
    "text": 0.5,
    "continuous": 0.5,
    "discrete": 1.0,
    "color": 0.8,
}


@dataclass(frozen=True)
class MatchConfig:
    """Knobs of the element-matching score."""

    children_penalty: float = 1e-3
    filter_thresholds: dict[str, float] = field(
        default_factory=lambda: dict(DEFAULT_FILTER_THRESHOLDS)
    )

    def __post_init__(self) -> None:
        if self.children_penalty <= 0:
            raise ValueError("children_penalty must be positive")
        for kind, thr in self.filter_thresholds.items():
            if not 0 < thr <= 1:
                raise ValueError(f"filter threshold for {kind!r} must be in (0, 1]")


@dataclass(frozen=True)
class ScoreWeights:
    """Attribute weights and the space exponent of the page score.

    ``alpha`` maps attribute names to non-negative weights; names absent from
    the map fall back to ``default_alpha``. ``beta`` is the exponent applied
    to each atom's area weight.
    """

    alpha: dict[str, float] = field(default_factory=dict)
    beta: float = 0.5
    default_alpha: float = 1.0

    def __post_init__(self) -> None:
        if any(v < 0 for v in self.alpha.values()) or self.default_alpha < 0:
            raise ValueError("alpha weights must be >= 0")
        if self.alpha and all(v == 0 for v in self.alpha.values()) and self.default_alpha == 0:
            raise ValueError("alpha weights must not all be zero")

    def weight_of(self, attribute: str) -> float:
        return self.alpha.get(attribute, self.default_alpha)
