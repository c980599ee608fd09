"""Element matching between a generated page and the ground-truth atoms.

The pairwise score combines bbox GIoU, a hard filter on one designated
attribute and a tiny penalty on child-count differences (so a container
that wraps the true element loses the tie to the element itself). The
assignment itself is a maximum-weight bipartite matching.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .attributes import attribute_kind, attr_similarity
from .geometry import giou
from .types import ElementSnapshot, MatchConfig, PageSnapshot, PageStatus


def match_score(gen: ElementSnapshot, gt: ElementSnapshot, cfg: MatchConfig) -> float:
    """Pairwise matching score: GIoU + filter - penalty * |children diff|."""
    score = giou(gen.bbox, gt.bbox)
    if gt.filter_by is not None:
        kind = attribute_kind(gt.filter_by)
        gen_value = gen.attributes.get(gt.filter_by)
        if gen_value is None:
            similarity = 0.0
        else:
            similarity = attr_similarity(kind, gt.attributes[gt.filter_by], gen_value)
        if similarity < cfg.filter_thresholds.get(kind, 1.0):
            score -= 1.0
    score -= cfg.children_penalty * abs(gen.children_count - gt.children_count)
    return score


def match_elements(
    gen_page: PageSnapshot, gt_page: PageSnapshot, cfg: MatchConfig
) -> dict[int, int]:
    """Assign ground-truth atoms to generated elements.

    Returns a map from gt atom index (within ``gt_page.atomic_elements()``)
    to the index of its generated element in ``gen_page.elements``. The
    assignment maximizes the total pairwise score; gt atoms stay unmatched
    only when the generated page has fewer elements than there are atoms.
    """
    if gen_page.status is not PageStatus.OK or gt_page.status is not PageStatus.OK:
        raise ValueError("both pages must have status OK to be matched")
    gt_atoms = gt_page.atomic_elements()
    gen_elements = gen_page.elements
    if not gt_atoms or not gen_elements:
        return {}
    scores = np.empty((len(gt_atoms), len(gen_elements)))
    for i, gt in enumerate(gt_atoms):
        for j, gen in enumerate(gen_elements):
            scores[i, j] = match_score(gen, gt, cfg)
    rows, cols = linear_sum_assignment(scores, maximize=True)
    return {int(i): int(j) for i, j in zip(rows, cols)}
