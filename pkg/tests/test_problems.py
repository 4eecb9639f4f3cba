import math
import random

import pytest

from qt3.jet import derivatives_of
from qt3.problems import PROBLEM_NAMES, builtin_problems, exact_solution, get_problem

WITH_EXACT = [p for p in builtin_problems() if p.exact is not None]


def test_registry():
    assert PROBLEM_NAMES == ("logistic", "bernoulli_small", "bernoulli_one", "gompertz",
                             "flame", "sine", "blowup_demo")
    with pytest.raises(ValueError):
        get_problem("lorenz")
    with pytest.raises(ValueError):
        exact_solution(get_problem("blowup_demo"), 1.0)


@pytest.mark.parametrize("problem", WITH_EXACT, ids=lambda p: p.name)
def test_exact_initial_value(problem):
    assert problem.exact(0.0) == pytest.approx(problem.y0, rel=1e-14)


@pytest.mark.parametrize("problem", WITH_EXACT, ids=lambda p: p.name)
def test_exact_solves_the_ode(problem):
    # central differences of the exact solution against the field
    h = 1e-5
    for k in range(1, 51):
        t = problem.T * k / 51
        slope = (problem.exact(t + h) - problem.exact(t - h)) / (2 * h)
        f = problem.field(problem.exact(t))
        assert abs(slope - f) <= 1e-6 * max(1.0, abs(f))


@pytest.mark.parametrize("problem", WITH_EXACT, ids=lambda p: p.name)
def test_exact_is_monotone_and_in_window(problem):
    A, B = problem.default_window
    ts = [problem.T * k / 200 for k in range(201)]
    ys = [problem.exact(t) for t in ts]
    increasing = ys[-1] > ys[0]
    for u, v in zip(ys, ys[1:]):
        assert (v >= u) if increasing else (v <= u)
    assert all(A <= y <= B for y in ys)


def test_exact_examples():
    e = math.exp(1.0)
    assert get_problem("logistic").exact(0.1) == pytest.approx(10 * e / (19 + e), rel=1e-15)
    assert get_problem("logistic").exact(0.1) == pytest.approx(1.2516099799833533, rel=1e-14)
    assert get_problem("gompertz").exact(2.0) == pytest.approx(30 * (29 / 30) ** math.exp(-2), rel=1e-15)


@pytest.mark.parametrize("problem", builtin_problems(), ids=lambda p: p.name)
def test_hand_triples_match_jets(problem):
    rng = random.Random(1)
    A, B = problem.default_window
    hand = problem.field.hand_derivatives
    for _ in range(200):
        y = rng.uniform(A + 1e-3, B)
        for j, h in zip(derivatives_of(problem.field, y), hand(y)):
            assert j == pytest.approx(h, rel=1e-10, abs=1e-300)
