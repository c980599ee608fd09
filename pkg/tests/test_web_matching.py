"""Element assignment: pairwise score shape and optimal matching."""

import random

import pytest

from oracles import brute_force_assignment
from web_fixtures import atom, landing_page, tweak_element
from triarena.webaes.matching import match_elements, match_score
from triarena.webaes.types import MatchConfig, PageSnapshot, PageStatus


def test_pairwise_score_of_identical_elements():
    gt = landing_page().elements[0]
    assert match_score(gt, gt, MatchConfig()) == 1.0


def test_failed_filter_subtracts_one():
    cfg = MatchConfig()
    gt = atom(
        "button",
        (0.0, 0.0, 100.0, 40.0),
        {"text": "Save", "color": "black"},
        eval_by=("color",),
        filter_by="text",
    )
    twin = atom("button", (0.0, 0.0, 100.0, 40.0), {"text": "Save", "color": "black"})
    renamed = atom("button", (0.0, 0.0, 100.0, 40.0), {"text": "Delete", "color": "black"})
    missing = atom("button", (0.0, 0.0, 100.0, 40.0), {"color": "black"})
    assert match_score(twin, gt, cfg) == 1.0
    assert match_score(renamed, gt, cfg) == 0.0
    assert match_score(missing, gt, cfg) == 0.0


def test_filter_threshold_is_per_kind():
    cfg = MatchConfig()
    gt = atom(
        "p",
        (0.0, 0.0, 100.0, 40.0),
        {"text": "one two", "color": "black"},
        eval_by=("color",),
        filter_by="text",
    )
    # Text threshold is 0.5: half overlap passes, a third does not.
    half = atom("p", (0.0, 0.0, 100.0, 40.0), {"text": "one"})
    third = atom("p", (0.0, 0.0, 100.0, 40.0), {"text": "one three four"})
    assert match_score(half, gt, cfg) == 1.0
    assert match_score(third, gt, cfg) == 0.0


def test_children_difference_penalty():
    cfg = MatchConfig()
    gt = atom(
        "ul",
        (0.0, 0.0, 100.0, 200.0),
        {"text": "list"},
        eval_by=("text",),
        children_count=4,
    )
    shallow = atom("ul", (0.0, 0.0, 100.0, 200.0), {"text": "list"}, children_count=1)
    assert match_score(shallow, gt, cfg) == pytest.approx(1.0 - 3e-3)
    # A containing box with matching children edges out by the penalty.
    container = atom("div", (0.0, 0.0, 110.0, 210.0), {"text": "list"}, children_count=4)
    assert match_score(shallow, gt, cfg) < 1.0
    assert match_score(container, gt, cfg) < match_score(
        atom("ul", (0.0, 0.0, 100.0, 200.0), {"text": "list"}, children_count=4), gt, cfg
    )


def test_matching_requires_ok_pages():
    page = landing_page()
    broken = PageSnapshot(action_id="initial", elements=[], status=PageStatus.RENDER_ERROR)
    with pytest.raises(ValueError):
        match_elements(broken, page, MatchConfig())
    with pytest.raises(ValueError):
        match_elements(page, broken, MatchConfig())


def test_identity_match_is_the_diagonal():
    page = landing_page()
    assignment = match_elements(page, page, MatchConfig())
    assert assignment == {0: 0, 1: 1, 2: 2}


def test_shifted_copy_still_matches_by_geometry():
    gt = landing_page()
    gen = tweak_element(gt, 1, bbox=(44.0, 124.0, 200.0, 48.0))
    assignment = match_elements(gen, gt, MatchConfig())
    assert assignment == {0: 0, 1: 1, 2: 2}


def test_fewer_generated_elements_leaves_atoms_unmatched():
    gt = landing_page()
    gen = PageSnapshot(action_id="initial", elements=[gt.elements[1]])
    assignment = match_elements(gen, gt, MatchConfig())
    assert len(assignment) == 1
    assert assignment[1] == 0


def random_matrix(rng, rows, cols):
    return [[rng.uniform(-2, 2) for _ in range(cols)] for _ in range(rows)]


def test_assignment_value_matches_brute_force():
    # The acceptance run covers 1,000 matrices; this is the fast slice.
    from scipy.optimize import linear_sum_assignment
    import numpy as np

    rng = random.Random(5)
    for _ in range(120):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        matrix = random_matrix(rng, rows, cols)
        r, c = linear_sum_assignment(np.array(matrix), maximize=True)
        value = float(np.array(matrix)[r, c].sum())
        assert value == pytest.approx(brute_force_assignment(matrix), abs=1e-9)


def test_match_total_is_maximal_on_small_pages():
    # End-to-end: the chosen assignment's total equals the brute-force
    # optimum of the same score matrix.
    cfg = MatchConfig()
    rng = random.Random(9)
    gt = landing_page()
    atoms = gt.atomic_elements()
    for _ in range(25):
        elements = [
            atom(
                "div",
                (rng.uniform(0, 1200), rng.uniform(0, 700), rng.uniform(10, 300), rng.uniform(10, 200)),
                {"text": rng.choice(["Welcome Home", "Sign in", "forecast charts", "noise"])},
            )
            for _ in range(rng.randint(1, 5))
        ]
        gen = PageSnapshot(action_id="initial", elements=elements)
        assignment = match_elements(gen, gt, cfg)
        total = sum(
            match_score(gen.elements[j], atoms[i], cfg) for i, j in assignment.items()
        )
        matrix = [
            [match_score(e, a, cfg) for e in elements] for a in atoms
        ]
        assert total == pytest.approx(brute_force_assignment(matrix), abs=1e-9)
