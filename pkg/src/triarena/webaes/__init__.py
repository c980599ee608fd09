"""Atomic-element similarity scoring for reconstructed webpages.

Pages are compared as snapshots: every element carries a bounding box,
an attribute map and (on the ground-truth side) the list of attributes
it is evaluated by. Ground-truth atoms are matched to generated elements
with a Hungarian assignment over a GIoU-based score, then matched pairs
are scored by per-kind attribute similarity and aggregated into a single
percentage with an error-attribution breakdown.
"""

from .types import ElementSnapshot, PageSnapshot, MatchConfig, ScoreWeights, PageStatus
from .geometry import giou
from .attributes import attr_similarity, attribute_kind
from .matching import match_score, match_elements
from .scoring import score_page, aes, AESReport, PageScore
from .pso import pso_search, PsoConfig, ranking_agreement
from .snapshots import load_page_snapshot, dump_page_snapshot, load_snapshot_dir
from .env import WebUIEnv, WebUITask, load_task, load_task_corpus

__all__ = [
    "ElementSnapshot",
    "PageSnapshot",
    "MatchConfig",
    "ScoreWeights",
    "PageStatus",
    "giou",
    "attr_similarity",
    "attribute_kind",
    "match_score",
    "match_elements",
    "score_page",
    "aes",
    "AESReport",
    "PageScore",
    "pso_search",
    "PsoConfig",
    "ranking_agreement",
    "load_page_snapshot",
    "dump_page_snapshot",
    "load_snapshot_dir",
    "WebUIEnv",
    "WebUITask",
    "load_task",
    "load_task_corpus",
]
