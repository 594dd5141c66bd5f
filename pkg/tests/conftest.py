from __future__ import annotations

import random

import pytest

from rschoice.core import ChoiceFunction, GroundSet


def cf_from(options: tuple[str, ...], choices: dict[str, str]) -> ChoiceFunction:
    """Build a choice function from canonical menu keys; singletons implied."""
    ground = GroundSet(options)
    table = [-1] * (1 << ground.size)
    for pos, name in enumerate(ground.options):
        table[1 << pos] = pos
    for key, chosen in choices.items():
        table[ground.parse_menu_key(key)] = ground.index[chosen]
    return ChoiceFunction(ground, tuple(table))


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
