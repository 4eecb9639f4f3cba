"""One-step methods: the quadratic Taylor step and the baselines it is compared to.

Every method has the autonomous signature ``step(field, y, h, tol0) -> y_next``.
Only the quadratic Taylor method can be undefined for a given step size; it
signals that with :class:`~qt3.riccati.StepUndefinedError`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction as Fr
from typing import Callable, Dict, Tuple

from .jet import ScalarField, derivatives_of
from .riccati import qt3_step, quadratic_model

__all__ = [
    "ButcherTableau",
    "OneStepMethod",
    "make_tableau",
    "rk_step",
    "euler_step",
    "phi1",
    "rosenbrock_euler_step",
    "quadratic_taylor_step",
    "METHODS",
    "get_method",
]


@dataclass(frozen=True)
class ButcherTableau:
    name: str
    A: Tuple[Tuple[float, ...], ...]
    b: Tuple[float, ...]
    c: Tuple[float, ...]

    @property
    def s(self) -> int:
        return len(self.b)

    def validate(self, tol: float = 1e-15) -> None:
        s = self.s
        if len(self.A) != s or len(self.c) != s or any(len(row) != s for row in self.A):
            raise ValueError(f"{self.name}: inconsistent tableau dimensions")
        for i, row in enumerate(self.A):
            if any(row[j] != 0.0 for j in range(i, s)):
                raise ValueError(f"{self.name}: A is not strictly lower triangular")
            if abs(sum(row) - self.c[i]) > tol:
                raise ValueError(f"{self.name}: row {i} sum differs from c[{i}]")
        if abs(sum(self.b) - 1.0) > tol:
            raise ValueError(f"{self.name}: weights do not sum to one")


def _tableau(name, rows, weights):
    s = len(weights)
    A = []
    for i in range(s):
        row = list(rows[i]) if i < len(rows) else []
        A.append(tuple(float(x) for x in row + [0] * (s - len(row))))
    c = tuple(float(sum(rows[i], Fr(0))) if i < len(rows) else 0.0 for i in range(s))
    return ButcherTableau(name, tuple(A), tuple(float(w) for w in weights), c)


_TABLEAUS = {
    "K3": (
        [[], [Fr(1, 2)], [Fr(-1), Fr(2)]],
        [Fr(1, 6), Fr(2, 3), Fr(1, 6)],
    ),
    "BS3": (
        [[], [Fr(1, 2)], [Fr(0), Fr(3, 4)], [Fr(2, 9), Fr(1, 3), Fr(4, 9)]],
        [Fr(2, 9), Fr(1, 3), Fr(4, 9), Fr(0)],
    ),
    "RK4": (
        [[], [Fr(1, 2)], [Fr(0), Fr(1, 2)], [Fr(0), Fr(0), Fr(1)]],
        [Fr(1, 6), Fr(1, 3), Fr(1, 3), Fr(1, 6)],
    ),
}


def make_tableau(name: str) -> ButcherTableau:
    """Butcher tableau for ``K3`` (Kutta), ``BS3`` (Bogacki-Shampine) or ``RK4``."""
    try:
        rows, weights = _TABLEAUS[name]
    except KeyError:
        raise ValueError(f"unknown tableau {name!r}; expected one of {sorted(_TABLEAUS)}") from None
    tab = _tableau(name, rows, weights)
    tab.validate()
    return tab


def rk_step(tab: ButcherTableau, field: ScalarField, y: float, h: float) -> float:
    k = []
    for i in range(tab.s):
        row = tab.A[i]
        k.append(field(y + h * sum(row[j] * k[j] for j in range(i))))
    return y + h * sum(bi * ki for bi, ki in zip(tab.b, k))


def euler_step(field: ScalarField, y: float, h: float) -> float:
    return y + h * field(y)


def phi1(z: float) -> float:
    """``(exp(z) - 1) / z``, with ``phi1(0) = 1``."""
    if abs(z) < 1e-5:
        return 1.0 + z * (1.0 / 2.0 + z * (1.0 / 6.0 + z / 24.0))
    return math.expm1(z) / z


def rosenbrock_euler_step(field: ScalarField, y: float, h: float) -> float:
    f, fp, _ = derivatives_of(field, y)
    return y + h * phi1(fp * h) * f


def quadratic_taylor_step(field: ScalarField, y: float, h: float, tol0: float) -> float:
    return qt3_step(quadratic_model(field, y), y, h, tol0)


@dataclass(frozen=True)
class OneStepMethod:
    name: str
    step: Callable[[ScalarField, float, float, float], float]
    order: int
    # True if the step may be undefined and needs the integrity check
    guarded: bool = False


def _rk_method(name: str, order: int) -> OneStepMethod:
    tab = make_tableau(name)
    return OneStepMethod(name, lambda field, y, h, tol0: rk_step(tab, field, y, h), order)


METHODS: Dict[str, OneStepMethod] = {
    "Euler": OneStepMethod("Euler", lambda field, y, h, tol0: euler_step(field, y, h), 1),
    "RosenbrockEuler": OneStepMethod(
        "RosenbrockEuler", lambda field, y, h, tol0: rosenbrock_euler_step(field, y, h), 2
    ),
    "K3": _rk_method("K3", 3),
    "BS3": _rk_method("BS3", 3),
    "RK4": _rk_method("RK4", 4),
    "QT3": OneStepMethod("QT3", quadratic_taylor_step, 3, guarded=True),
}


def get_method(name: str) -> OneStepMethod:
    try:
        return METHODS[name]
    except KeyError:
        raise ValueError(f"unknown method {name!r}; expected one of {list(METHODS)}") from None
