import random

import pytest
from hypothesis import settings

from zkec.curve import PAPER_B163, TOY_B5

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# x^163 + x^7 + x^6 + x^3 + 1 as a bit pattern
F163 = (1 << 163) | (1 << 7) | (1 << 6) | (1 << 3) | 1


@pytest.fixture
def curve():
    return PAPER_B163


@pytest.fixture
def toy():
    return TOY_B5


@pytest.fixture
def rng():
    return random.Random(20240611)
