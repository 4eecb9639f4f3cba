"""Built-in benchmark problems with their exact solutions."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Tuple

from .jet import ScalarField, exp, log, sin
from .special import lambert_w0

__all__ = ["Problem", "builtin_problems", "get_problem", "exact_solution", "PROBLEM_NAMES"]

BLOWUP_LAMBDA = 100.0
# exactly representable, avoids rounding the printed constant 4E10 - 1
_BERNOULLI_SMALL_K = 4 * 10**10 - 1


@dataclass(frozen=True)
class Problem:
    name: str
    field: ScalarField
    y0: float
    T: float
    default_window: Tuple[float, float]
    exact: Optional[Callable[[float], float]] = None


def _logistic(y):
    return y * (10 - y)


def _logistic_hand(y):
    return (y * (10 - y), 10 - 2 * y, -2.0)


def _bernoulli(y):
    return y * (1 - (y / 20) ** 2)


def _bernoulli_hand(y):
    return (y - y**3 / 400, 1 - 3 * y * y / 400, -6 * y / 400)


def _gompertz(y):
    return y * log(30 / y)


def _gompertz_hand(y):
    return (y * math.log(30 / y), math.log(30 / y) - 1, -1 / y)


def _flame(y):
    return y**2 - y**3


def _flame_hand(y):
    return (y * y - y**3, 2 * y - 3 * y * y, 2 - 6 * y)


def _sine(y):
    return sin(y)


def _sine_hand(y):
    return (math.sin(y), math.cos(y), -math.sin(y))


def _blowup(y):
    return (y - BLOWUP_LAMBDA) * (1 - y) * exp(-(y**4))


def _blowup_hand(y):
    lam = BLOWUP_LAMBDA
    p = (y - lam) * (1 - y)
    p1 = 1 + lam - 2 * y
    p2 = -2.0
    e = math.exp(-(y**4))
    e1 = -4 * y**3 * e
    e2 = (16 * y**6 - 12 * y**2) * e
    return (p * e, p1 * e + p * e1, p2 * e + 2 * p1 * e1 + p * e2)


def _logistic_exact(t):
    e = math.exp(10 * t)
    return 10 * e / (19 + e)


def _bernoulli_small_exact(t):
    return 20 / math.sqrt(_BERNOULLI_SMALL_K * math.exp(-2 * t) + 1)


def _bernoulli_one_exact(t):
    return 20 / math.sqrt(399 * math.exp(-2 * t) + 1)


def _gompertz_exact(t):
    return 30 * (29 / 30) ** math.exp(-t)


def _flame_exact(t):
    return 1 / (1 + lambert_w0(math.exp(1 / 49 - t) / 49))


def _sine_exact(t):
    return 2 * math.atan(math.tan(0.005) * math.exp(t))


def _build() -> Dict[str, Problem]:
    bern = ScalarField("bernoulli", _bernoulli, _bernoulli_hand)
    problems = [
        Problem("logistic", ScalarField("logistic", _logistic, _logistic_hand),
                0.5, 2.0, (0.0, 10.5), _logistic_exact),
        Problem("bernoulli_small", bern, 1e-4, 5.0, (0.0, 20.5), _bernoulli_small_exact),
        Problem("bernoulli_one", bern, 1.0, 5.0, (0.0, 20.5), _bernoulli_one_exact),
        # y ln(30/y) is undefined at 0, so the window starts at 1
        Problem("gompertz", ScalarField("gompertz", _gompertz, _gompertz_hand),
                29.0, 2.0, (1.0, 30.5), _gompertz_exact),
        Problem("flame", ScalarField("flame", _flame, _flame_hand),
                0.98, 10.0, (0.0, 1.1), _flame_exact),
        Problem("sine", ScalarField("sine", _sine, _sine_hand),
                0.01, 1.0, (0.0, math.pi), _sine_exact),
        Problem("blowup_demo", ScalarField("blowup_demo", _blowup, _blowup_hand),
                0.0, 2.0, (-2.5, 2.0), None),
    ]
    return {p.name: p for p in problems}


_REGISTRY = _build()
PROBLEM_NAMES = tuple(_REGISTRY)


def builtin_problems() -> List[Problem]:
    return list(_REGISTRY.values())


def get_problem(name: str) -> Problem:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ValueError(f"unknown problem {name!r}; expected one of {list(PROBLEM_NAMES)}") from None


def exact_solution(p: Problem, t: float) -> float:
    if p.exact is None:
        raise ValueError(f"problem {p.name!r} has no exact solution")
    return p.exact(t)
