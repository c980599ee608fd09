"""Page scoring and whole-run aggregation with error attribution.

A run is scored as the mean of per-action-page scores. Whatever a page
does not earn is attributed to exactly one loss bucket: parsing (Par.),
rendering (Ren.), interaction (Act.), unmatched atoms (Mat.) or imperfect
attributes of matched atoms (Attr.). Buckets plus the earned score always
total 100%.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .attributes import attribute_kind, attr_similarity
from .matching import match_elements
from .types import MatchConfig, PageSnapshot, PageStatus, ScoreWeights

BUCKET_PARSE = "Par."
BUCKET_RENDER = "Ren."
BUCKET_INTERACTION = "Act."
BUCKET_MATCHING = "Mat."
BUCKET_ATTRIBUTE = "Attr."
ALL_BUCKETS = (BUCKET_PARSE, BUCKET_RENDER, BUCKET_INTERACTION, BUCKET_MATCHING, BUCKET_ATTRIBUTE)


@dataclass
class AtomScore:
    """Evaluation of one ground-truth atom against its matched element."""

    gt_index: int
    gen_index: Optional[int]
    weight: float  # normalized space**beta share of this atom
    attribute_mean: float  # weighted mean attribute similarity, 0 when unmatched
    attribute_scores: dict[str, float] = field(default_factory=dict)


@dataclass
class PageScore:
    """Score and loss attribution for a single action page."""

    action_id: str
    s_act: float
    cause: Optional[str] = None  # failing status name when the page earned nothing
    matched_loss: float = 0.0  # share of atom weight left unmatched
    atoms: list[AtomScore] = field(default_factory=list)


def score_page(
    gen_page: Optional[PageSnapshot],
    gt_page: PageSnapshot,
    cfg: MatchConfig,
    weights: ScoreWeights,
) -> PageScore:
    """Score one generated page against the ground-truth action page.

    A page whose status is not OK earns 0 and carries the status as its
    cause. Otherwise matched atoms contribute their weighted mean attribute
    similarity, weighted by normalized ``space**beta``; unmatched atoms
    contribute 0 and their weight share is reported as matching loss.
    """
    if gen_page is None or gen_page.status is not PageStatus.OK:
        cause = (gen_page.status if gen_page is not None else PageStatus.INTERACTION_ERROR).value
        return PageScore(action_id=gt_page.action_id, s_act=0.0, cause=cause)

    gt_atoms = gt_page.atomic_elements()
    if not gt_atoms:
        return PageScore(action_id=gt_page.action_id, s_act=1.0)

    raw_weights = [atom.space**weights.beta for atom in gt_atoms]
    total_weight = sum(raw_weights)
    if total_weight <= 0:
        return PageScore(
            action_id=gt_page.action_id, s_act=0.0, cause=None, matched_loss=1.0
        )

    assignment = match_elements(gen_page, gt_page, cfg)
    atoms: list[AtomScore] = []
    earned_num = 0.0
    unmatched_num = 0.0
    for i, atom in enumerate(gt_atoms):
        share = raw_weights[i] / total_weight
        gen_index = assignment.get(i)
        if gen_index is None:
            unmatched_num += share
            atoms.append(AtomScore(gt_index=i, gen_index=None, weight=share, attribute_mean=0.0))
            continue
        gen = gen_page.elements[gen_index]
        alpha_total = 0.0
        sim_total = 0.0
        per_attr: dict[str, float] = {}
        for name in atom.eval_by:
            alpha = weights.weight_of(name)
            gen_value = gen.attributes.get(name)
            if gen_value is None:
                similarity = 0.0
            else:
                similarity = attr_similarity(attribute_kind(name), atom.attributes[name], gen_value)
            per_attr[name] = similarity
            sim_total += similarity * alpha
            alpha_total += alpha
        mean = sim_total / alpha_total if alpha_total > 0 else 0.0
        earned_num += mean * share
        atoms.append(
            AtomScore(
                gt_index=i,
                gen_index=gen_index,
                weight=share,
                attribute_mean=mean,
                attribute_scores=per_attr,
            )
        )
    return PageScore(
        action_id=gt_page.action_id,
        s_act=earned_num,
        matched_loss=unmatched_num,
        atoms=atoms,
    )


@dataclass
class AESReport:
    """Final score with its loss decomposition; percentages total 100."""

    aes: float
    buckets: dict[str, float]
    pages: list[PageScore]
    weights_used: ScoreWeights

    def total(self) -> float:
        return (
            self.aes
            + self.buckets[BUCKET_PARSE]
            + self.buckets[BUCKET_RENDER]
            + self.buckets[BUCKET_INTERACTION]
            + self.buckets[BUCKET_MATCHING]
            + self.buckets[BUCKET_ATTRIBUTE]
        )


def _initial_page(gt_pages: list[PageSnapshot]) -> PageSnapshot:
    for page in gt_pages:
        if page.action_id == "initial":
            return page
    return gt_pages[0]


def aes(
    gen_pages: list[PageSnapshot],
    gt_pages: list[PageSnapshot],
    cfg: Optional[MatchConfig] = None,
    weights: Optional[ScoreWeights] = None,
) -> AESReport:
    """Score a full run: every ground-truth action page against its counterpart.

    Pages align by action id. A parse or render failure on the initial page
    zeroes the whole run; failures on interaction pages only zero that page.
    A missing generated initial page counts as a parse failure, a missing
    interaction page as an interaction failure.
    """
    if not gt_pages:
        raise ValueError("at least one ground-truth page is required")
    cfg = cfg or MatchConfig()
    weights = weights or ScoreWeights()
    gen_by_id = {page.action_id: page for page in gen_pages}
    initial = _initial_page(gt_pages)

    buckets = {name: 0.0 for name in ALL_BUCKETS}
    gen_initial = gen_by_id.get(initial.action_id)
    initial_status = gen_initial.status if gen_initial is not None else PageStatus.PARSE_ERROR
    if initial_status in (PageStatus.PARSE_ERROR, PageStatus.RENDER_ERROR):
        bucket = BUCKET_PARSE if initial_status is PageStatus.PARSE_ERROR else BUCKET_RENDER
        buckets[bucket] = 100.0
        pages = [
            PageScore(action_id=page.action_id, s_act=0.0, cause=initial_status.value)
            for page in gt_pages
        ]
        return AESReport(aes=0.0, buckets=buckets, pages=pages, weights_used=weights)

    share = 100.0 / len(gt_pages)
    pages = []
    earned = 0.0
    for gt_page in gt_pages:
        gen_page = gen_by_id.get(gt_page.action_id)
        page_score = score_page(gen_page, gt_page, cfg, weights)
        pages.append(page_score)
        if page_score.cause is not None:
            status = PageStatus(page_score.cause)
            if status is PageStatus.PARSE_ERROR:
                buckets[BUCKET_PARSE] += share
            elif status is PageStatus.RENDER_ERROR:
                buckets[BUCKET_RENDER] += share
            else:
                buckets[BUCKET_INTERACTION] += share
        else:
            earned += page_score.s_act * share
            buckets[BUCKET_MATCHING] += page_score.matched_loss * share
    # Attribute loss absorbs the remainder so the report always totals 100%.
    partial = (
        earned
        + buckets[BUCKET_PARSE]
        + buckets[BUCKET_RENDER]
        + buckets[BUCKET_INTERACTION]
        + buckets[BUCKET_MATCHING]
    )
    buckets[BUCKET_ATTRIBUTE] = 100.0 - partial
    return AESReport(aes=earned, buckets=buckets, pages=pages, weights_used=weights)
