from pathlib import Path

import pytest

from fanchar.action import validate_action
from fanchar.corpus import generate_corpus, hexagon, product_of_lines, projective_plane, reflection

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def _validated(instance):
    name, fan, g = instance
    return fan, validate_action(fan, g)


@pytest.fixture
def plane():
    return _validated(projective_plane())


@pytest.fixture
def lines4():
    return _validated(product_of_lines())


@pytest.fixture
def hexa():
    return _validated(hexagon())


@pytest.fixture
def mirror():
    return _validated(reflection())


@pytest.fixture(scope="session")
def corpus():
    return [(name, fan, validate_action(fan, g)) for name, fan, g in generate_corpus()]


@pytest.fixture
def instances_dir():
    return INSTANCES
