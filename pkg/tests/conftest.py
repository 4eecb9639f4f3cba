import math

import pytest
from hypothesis import settings

from qt3.jet import ScalarField

settings.register_profile("ci", max_examples=300, deadline=None)
settings.load_profile("ci")


def ulp_close(a, b, n=4):
    """True if a and b are within n units in the last place."""
    if a == b:
        return True
    return abs(a - b) <= n * math.ulp(max(abs(a), abs(b)))


@pytest.fixture
def exp_field():
    from qt3.jet import exp

    return ScalarField("exp", lambda y: exp(y), lambda y: (math.exp(y),) * 3)


@pytest.fixture
def const_field():
    return ScalarField("const", lambda y: 3.0)
