import pytest

from triarena.football.scenarios import scenario_sweep
from triarena.sokoban.generate import generate_corpus


@pytest.fixture(scope="session")
def sokoban_corpus():
    return generate_corpus()


@pytest.fixture(scope="session")
def football_scenarios():
    return scenario_sweep()
