"""Equidistant integration loop, step-size integrity checks and the a priori h0."""
from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .jet import FieldEvaluationError, ScalarField
from .riccati import StepUndefinedError, quadratic_model
from .steppers import OneStepMethod

__all__ = [
    "IntegratorConfig",
    "Status",
    "TerminationReason",
    "Trajectory",
    "IntegrationError",
    "StepSizeContractError",
    "scan_max",
    "apriori_h0",
    "apriori_bounds",
    "integrate",
    "step_count",
    "DEFAULT_GRID_POINTS",
]

DEFAULT_GRID_POINTS = 2049
GRID_POINTS_ENV = "QT3_GRID_POINTS"

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class Status(enum.Enum):
    SUCCESS = "Success"
    INITIAL_OUTSIDE_WINDOW = "InitialOutsideWindow"
    STEP_SIZE_UNDEFINED = "StepSizeUndefined"
    LEFT_WINDOW = "LeftWindow"


@dataclass(frozen=True)
class TerminationReason:
    status: Status
    at_step: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.status is Status.SUCCESS

    def __str__(self) -> str:
        if self.at_step is None:
            return self.status.value
        return f"{self.status.value}({self.at_step})"


@dataclass(frozen=True)
class IntegratorConfig:
    h: float
    T: float
    A: float
    B: float
    tol0: float = 1e-14
    guard_mode: str = "runtime"

    def __post_init__(self):
        if not 0.0 < self.tol0 < 1e-3:
            raise ValueError(f"tol0 must lie in (0, 1e-3), got {self.tol0!r}")
        if not (self.h > 0.0 and self.T > 0.0):
            raise ValueError("h and T must be positive")
        if self.h > self.T:
            raise ValueError(f"step h={self.h!r} exceeds horizon T={self.T!r}")
        if not self.A < self.B:
            raise ValueError(f"window must satisfy A < B, got [{self.A!r}, {self.B!r}]")
        if self.guard_mode not in ("runtime", "apriori"):
            raise ValueError(f"guard_mode must be 'runtime' or 'apriori', got {self.guard_mode!r}")


@dataclass(frozen=True)
class Trajectory:
    t: Tuple[float, ...]
    y: Tuple[float, ...]
    status: TerminationReason
    h: float

    @property
    def steps_completed(self) -> int:
        return max(len(self.y) - 1, 0)


class IntegrationError(RuntimeError):
    """The field could not be evaluated during step ``step``."""

    def __init__(self, step: int, y: float, cause: Exception):
        self.step = step
        self.y = y
        super().__init__(f"integration aborted at step {step} (y={y!r}): {cause}")


class StepSizeContractError(RuntimeError):
    """A step was undefined in a priori mode, where the caller promised h < h0."""


def step_count(T: float, h: float) -> int:
    """Number of steps ``n`` with ``n h <= T``.

    Evaluated as ``floor(T/h)`` with a relative slack of 1e-12 so that a
    horizon that is a whole multiple of ``h`` is reached despite rounding
    (``0.3 / 0.1`` is ``2.9999999999999996``).
    """
    return int(math.floor(T / h * (1.0 + 1e-12)))


def _grid_points_default() -> int:
    raw = os.environ.get(GRID_POINTS_ENV)
    if not raw:
        return DEFAULT_GRID_POINTS
    n = int(raw)
    if n < 2:
        raise ValueError(f"{GRID_POINTS_ENV} must be >= 2, got {n}")
    return n


def _golden_max(g, lo, hi, iters=60):
    c = hi - _INV_PHI * (hi - lo)
    d = lo + _INV_PHI * (hi - lo)
    gc, gd = g(c), g(d)
    for _ in range(iters):
        if gc >= gd:
            hi, d, gd = d, c, gc
            c = hi - _INV_PHI * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + _INV_PHI * (hi - lo)
            gd = g(d)
        if hi - lo <= 1e-15 * max(1.0, abs(lo), abs(hi)):
            break
    return max(gc, gd)


def scan_max(g: Callable[[float], float], A: float, B: float,
             grid_points: Optional[int] = None) -> float:
    """Approximate ``max g`` on ``[A, B]``.

    Samples ``grid_points`` equally spaced points including both ends, then
    refines with a golden-section search on the two cells around the best
    sample.  May underestimate the maximum of a sharply peaked ``g``; raise
    ``grid_points`` (or ``QT3_GRID_POINTS``) in that case.
    """
    n = _grid_points_default() if grid_points is None else int(grid_points)
    if n < 2:
        raise ValueError("grid_points must be >= 2")
    step = (B - A) / (n - 1)
    xs = [A + i * step for i in range(n - 1)] + [B]
    vals = [g(x) for x in xs]
    k = max(range(n), key=vals.__getitem__)
    best = vals[k]
    lo, hi = xs[max(k - 1, 0)], xs[min(k + 1, n - 1)]
    if hi > lo:
        best = max(best, _golden_max(g, lo, hi))
    return best


def apriori_h0(field: ScalarField, A: float, B: float, tol0: float, T: float,
               grid_points: Optional[int] = None) -> float:
    """Step-size bound below which every step in ``[A, B]`` is defined."""
    return apriori_bounds(field, A, B, tol0, T, grid_points)[2]


def apriori_bounds(field: ScalarField, A: float, B: float, tol0: float, T: float,
                   grid_points: Optional[int] = None) -> Tuple[float, float, float]:
    """Return ``(b_max, s_max, h0)`` with ``s = b**2 + |delta|``."""
    if not 0.0 < tol0 < 1e-3:
        raise ValueError(f"tol0 must lie in (0, 1e-3), got {tol0!r}")
    if not A < B:
        raise ValueError(f"window must satisfy A < B, got [{A!r}, {B!r}]")

    def b_of(y):
        return quadratic_model(field, y).b

    def s_of(y):
        m = quadratic_model(field, y)
        return m.b * m.b + abs(m.delta)

    b_max = scan_max(b_of, A, B, grid_points)
    s_max = scan_max(s_of, A, B, grid_points)
    if s_max > tol0 and b_max > tol0:
        h0 = min(2.0 / math.sqrt(s_max), (2.0 - math.sqrt(tol0)) / b_max, T)
    elif s_max > tol0:
        h0 = min(2.0 / math.sqrt(s_max), T)
    else:
        h0 = T
    return b_max, s_max, h0


def integrate(method: OneStepMethod, field: ScalarField, y0: float,
              config: IntegratorConfig) -> Trajectory:
    """Integrate ``y' = f(y)``, ``y(0) = y0`` with equidistant steps.

    Stops early, keeping the samples computed so far, when the initial value
    is outside ``[A, B]``, when a guarded method's step is undefined (runtime
    mode), or when the next value would leave ``[A, B]``.  In a priori mode
    an undefined step raises :class:`StepSizeContractError`.
    """
    h, A, B = config.h, config.A, config.B
    if not A <= y0 <= B:
        return Trajectory((), (), TerminationReason(Status.INITIAL_OUTSIDE_WINDOW), h)

    n_steps = step_count(config.T, h)
    ys = [float(y0)]
    status = TerminationReason(Status.SUCCESS)
    y = ys[0]
    for n in range(n_steps):
        try:
            y_next = method.step(field, y, h, config.tol0)
        except StepUndefinedError as exc:
            if config.guard_mode == "apriori":
                raise StepSizeContractError(
                    f"step {n} undefined in a priori mode ({exc}); choose h below apriori_h0"
                ) from exc
            status = TerminationReason(Status.STEP_SIZE_UNDEFINED, n)
            break
        except FieldEvaluationError as exc:
            raise IntegrationError(n, y, exc) from exc
        if not A <= y_next <= B:
            status = TerminationReason(Status.LEFT_WINDOW, n)
            break
        ys.append(y_next)
        y = y_next

    ts = tuple(k * h for k in range(len(ys)))
    return Trajectory(ts, tuple(ys), status, h)
