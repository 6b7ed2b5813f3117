import pytest

from polyplan import fixtures
from polyplan.mapio import load_scenario


@pytest.fixture(scope="session")
def small_corpus():
    """A modest random-instance corpus for module-level property tests."""
    from polyplan.randmaps import generate_instance

    return [generate_instance(seed) for seed in range(60)]


@pytest.fixture(scope="session")
def scenarios():
    return {name: load_scenario(fixtures.path(f"{name}.scn"))
            for name in fixtures.SCENARIOS}


@pytest.fixture(scope="session")
def square_scenario():
    return load_scenario(fixtures.path("square.scn"))
