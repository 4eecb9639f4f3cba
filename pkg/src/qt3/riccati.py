"""Quadratic Taylor model and the exact Riccati step built on it.

At a state ``y`` the right-hand side is replaced by its quadratic Taylor
polynomial, so the increment ``w = Phi(h, y) - y`` solves the constant
coefficient Riccati problem ``w' = a w^2 + b w + c``, ``w(0) = 0`` with
``a = f''(y)/2``, ``b = f'(y)``, ``c = f(y)``.  That problem has a closed form
solution which may blow up at a finite time ``h_max``; the branch sets below
decide which closed form is numerically safe for a given step ``h``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

from .jet import ScalarField, derivatives_of
from .special import arccot_real

__all__ = [
    "QuadraticModel",
    "BranchKind",
    "Branch",
    "StepUndefinedError",
    "quadratic_model",
    "h_max",
    "classify_branch",
    "qt3_step",
    "qt3_increment",
    "hyperbolic_increment",
    "trig_increment",
    "near_degenerate_increment",
    "psi",
    "riccati_exact",
]

# b - sqrt(delta) below this is treated as zero (h_max -> infinity)
_TINY_GAP = 1e-300
# |v| below this switches psi to its even power series
_PSI_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class QuadraticModel:
    a: float
    b: float
    c: float
    delta: float

    @classmethod
    def from_coefficients(cls, a: float, b: float, c: float) -> "QuadraticModel":
        a, b, c = float(a), float(b), float(c)
        return cls(a, b, c, b * b - 4.0 * a * c)


class BranchKind(enum.Enum):
    HYPERBOLIC_PLUS = "U+"
    TRIG_MINUS = "U-"
    NEAR_DEGENERATE = "U0"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class Branch:
    kind: BranchKind
    # "step-exceeds-hmax" or "stability-denominator" when undefined
    reason: Optional[str] = None

    @property
    def defined(self) -> bool:
        return self.kind is not BranchKind.UNDEFINED

    def __str__(self) -> str:
        if self.defined:
            return self.kind.value
        return f"Undefined({self.reason})"


class StepUndefinedError(ValueError):
    """The quadratic-model step is undefined for this (h, y)."""

    def __init__(self, branch: Branch, y: float, h: float):
        self.branch = branch
        self.y = y
        self.h = h
        super().__init__(f"step h={h!r} undefined at y={y!r}: {branch}")


def quadratic_model(field: ScalarField, y: float) -> QuadraticModel:
    f, fp, fpp = derivatives_of(field, y)
    return QuadraticModel.from_coefficients(0.5 * fpp, fp, f)


def h_max(model: QuadraticModel) -> float:
    """First positive blow-up time of ``w' = a w^2 + b w + c``, ``w(0) = 0``.

    Returns ``math.inf`` when the solution exists for all ``t >= 0``.
    """
    b, delta = model.b, model.delta
    if delta == 0.0:
        return 2.0 / b if b > 0.0 else math.inf
    if delta > 0.0:
        root = math.sqrt(delta)
        if not root < b:
            return math.inf
        gap = b - root
        if gap <= _TINY_GAP:
            return math.inf
        # ln((b + r)/(b - r)) written as log1p for small delta
        return math.log1p(2.0 * root / gap) / root
    root = math.sqrt(-delta)
    return 2.0 / root * arccot_real(b / root)


def classify_branch(model: QuadraticModel, h: float, tol0: float) -> Branch:
    """Select the step formula that applies to ``(h, y)``.

    The boundaries follow the admissible sets exactly: ``delta >= 4 tol0`` is
    hyperbolic, ``delta <= -4 tol0`` trigonometric, anything strictly between
    uses the near-degenerate expansion.  All three require
    ``2 - h b >= sqrt(tol0)``; the first two additionally ``h < h_max``.
    """
    stable = 2.0 - h * model.b >= math.sqrt(tol0)
    delta = model.delta
    if abs(delta) < 4.0 * tol0:
        if stable:
            return Branch(BranchKind.NEAR_DEGENERATE)
        return Branch(BranchKind.UNDEFINED, "stability-denominator")
    kind = BranchKind.HYPERBOLIC_PLUS if delta > 0.0 else BranchKind.TRIG_MINUS
    if not h < h_max(model):
        return Branch(BranchKind.UNDEFINED, "step-exceeds-hmax")
    if not stable:
        return Branch(BranchKind.UNDEFINED, "stability-denominator")
    return Branch(kind)


def hyperbolic_increment(b: float, c: float, root: float, h: float) -> float:
    """Increment for ``delta > 0``; ``root = sqrt(delta)``."""
    x = 0.5 * root * h
    sh = math.sinh(x)
    return 2.0 * c * sh / (root * math.cosh(x) - b * sh)


def trig_increment(b: float, c: float, root: float, h: float) -> float:
    """Increment for ``delta < 0``; ``root = sqrt(-delta)`` (either sign)."""
    x = 0.5 * root * h
    sn = math.sin(x)
    return 2.0 * c * sn / (root * math.cos(x) - b * sn)


def near_degenerate_increment(b: float, c: float, delta: float, h: float) -> float:
    """Increment for ``|delta|`` numerically zero, exact when ``delta == 0``."""
    den = 2.0 - b * h
    return 2.0 * c * h / den - h**3 * c * delta / (3.0 * den * den)


def qt3_increment(model: QuadraticModel, h: float, branch: Branch) -> float:
    if branch.kind is BranchKind.HYPERBOLIC_PLUS:
        return hyperbolic_increment(model.b, model.c, math.sqrt(model.delta), h)
    if branch.kind is BranchKind.TRIG_MINUS:
        return trig_increment(model.b, model.c, math.sqrt(-model.delta), h)
    if branch.kind is BranchKind.NEAR_DEGENERATE:
        return near_degenerate_increment(model.b, model.c, model.delta, h)
    raise ValueError(f"no step formula for branch {branch}")


def qt3_step(model: QuadraticModel, y: float, h: float, tol0: float) -> float:
    """One step of the quadratic Taylor method from ``y``.

    Raises :class:`StepUndefinedError` if ``(h, y)`` lies outside all three
    admissible sets.
    """
    branch = classify_branch(model, h, tol0)
    if not branch.defined:
        raise StepUndefinedError(branch, y, h)
    return y + qt3_increment(model, h, branch)


def psi(u: float, v2: float) -> float:
    """``sinh(v) / (u sinh(v) + v cosh(v))`` as a function of ``u`` and ``v**2``.

    ``v2 < 0`` is the imaginary-``v`` slice, where the function is
    ``sin(g) / (u sin(g) + g cos(g))`` with ``g = sqrt(-v2)``.  Near ``v = 0``
    the even series in ``v`` is used.
    """
    if abs(v2) < _PSI_SERIES_CUTOFF**2:
        up1 = 1.0 + u
        return 1.0 / up1 - v2 / (3.0 * up1**2) + (u + 6.0) * v2 * v2 / (45.0 * up1**3)
    if v2 > 0.0:
        v = math.sqrt(v2)
        # divide through by cosh to keep large v finite
        th = math.tanh(v)
        return th / (u * th + v)
    g = math.sqrt(-v2)
    sn, cs = math.sin(g), math.cos(g)
    return sn / (u * sn + g * cs)


def riccati_exact(model: QuadraticModel, t: float) -> float:
    """Maximal solution of ``w' = a w^2 + b w + c``, ``w(0) = 0`` at time ``t``.

    Evaluated as ``c t psi(t alpha, t beta)`` with ``alpha = -b/2`` and
    ``beta^2 = delta/4``.  Independent of the factored formulas used by
    :func:`qt3_step`, so it serves as their oracle.
    """
    if t < 0.0:
        raise ValueError("riccati_exact requires t >= 0")
    if not t < h_max(model):
        raise ValueError(f"t={t!r} is at or past the blow-up time {h_max(model)!r}")
    if t == 0.0 or model.c == 0.0:
        return 0.0
    u = -0.5 * model.b * t
    v2 = 0.25 * model.delta * t * t
    return model.c * t * psi(u, v2)
