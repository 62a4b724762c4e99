import pytest
from hypothesis import settings

from heckecm.eisenstein import EisensteinInt, SquarefreeD

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

PI = EisensteinInt(13, 12)
PI_BAR = EisensteinInt(1, -12)


@pytest.fixture(scope="session")
def D1():
    return SquarefreeD((PI,))


@pytest.fixture(scope="session")
def D2():
    return SquarefreeD((PI, PI_BAR))


@pytest.fixture(scope="session")
def D0():
    return SquarefreeD(())
