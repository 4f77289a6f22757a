import random

import pytest

from bfvlab import corpus
from bfvlab.oddsymplectic import PhaseAlgebra


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture(scope="session")
def alg22():
    return PhaseAlgebra(2, 2)


@pytest.fixture(params=corpus.NAMES)
def setup(request):
    return corpus.get(request.param)
