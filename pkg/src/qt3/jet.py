"""Degree-2 truncated Taylor jets.

A :class:`Jet2` carries ``(v, d1, d2)``: the value of some expression and its
first and second derivatives with respect to the state.  Arithmetic on jets
follows the degree-2 chain and product rules, so writing a right-hand side
``f(y)`` once in terms of the operators and the ``exp``/``log``/``sin``/``cos``
helpers below gives both a float evaluator and an exact ``(f, f', f'')``
evaluator.

``d2`` is the raw second derivative, not ``f''/2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from numbers import Real
from typing import Callable, Optional, Tuple, Union

__all__ = [
    "Jet2",
    "JetDomainError",
    "FieldEvaluationError",
    "ScalarField",
    "jet_lift",
    "jet_arith",
    "derivatives_of",
    "exp",
    "log",
    "sin",
    "cos",
]


class JetDomainError(ValueError):
    """A primitive was applied outside its domain (log of v <= 0, division by 0)."""


class FieldEvaluationError(ValueError):
    """Evaluating a scalar field failed at state ``y``."""

    def __init__(self, y: float, message: str = ""):
        self.y = y
        super().__init__(f"field evaluation failed at y={y!r}" + (f": {message}" if message else ""))


@dataclass(frozen=True, slots=True)
class Jet2:
    v: float
    d1: float = 0.0
    d2: float = 0.0

    @classmethod
    def const(cls, value: float) -> "Jet2":
        return cls(float(value), 0.0, 0.0)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.v, self.d1, self.d2)

    def _unary(self, g0: float, g1: float, g2: float) -> "Jet2":
        # g0, g1, g2 = g(v), g'(v), g''(v)
        return Jet2(g0, g1 * self.d1, g2 * self.d1 * self.d1 + g1 * self.d2)

    def __neg__(self) -> "Jet2":
        return Jet2(-self.v, -self.d1, -self.d2)

    def __pos__(self) -> "Jet2":
        return self

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v + other.v, self.d1 + other.d1, self.d2 + other.d2)
        if isinstance(other, Real):
            return Jet2(self.v + other, self.d1, self.d2)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v - other.v, self.d1 - other.d1, self.d2 - other.d2)
        if isinstance(other, Real):
            return Jet2(self.v - other, self.d1, self.d2)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Real):
            return Jet2(other - self.v, -self.d1, -self.d2)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Jet2):
            # grouped so that swapping operands is bit-for-bit symmetric
            return Jet2(
                self.v * other.v,
                self.v * other.d1 + self.d1 * other.v,
                (self.v * other.d2 + self.d2 * other.v) + 2.0 * self.d1 * other.d1,
            )
        if isinstance(other, Real):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, k: float) -> "Jet2":
        return Jet2(self.v * k, self.d1 * k, self.d2 * k)

    def __truediv__(self, other):
        if isinstance(other, Real):
            other = Jet2.const(other)
        if not isinstance(other, Jet2):
            return NotImplemented
        if other.v == 0.0:
            raise JetDomainError("division by a jet with zero value")
        q = self.v / other.v
        q1 = (self.d1 - q * other.d1) / other.v
        q2 = (self.d2 - 2.0 * q1 * other.d1 - q * other.d2) / other.v
        return Jet2(q, q1, q2)

    def __rtruediv__(self, other):
        if isinstance(other, Real):
            return Jet2.const(other) / self
        return NotImplemented

    def __pow__(self, n):
        if isinstance(n, bool) or not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return Jet2(1.0, 0.0, 0.0)
        if n == 1:
            return self
        if n < 0 and self.v == 0.0:
            raise JetDomainError("negative power of a jet with zero value")
        v = self.v
        return self._unary(v**n, n * v ** (n - 1), n * (n - 1) * v ** (n - 2))

    def exp(self) -> "Jet2":
        e = math.exp(self.v)
        return Jet2(e, e * self.d1, e * (self.d1 * self.d1 + self.d2))

    def log(self) -> "Jet2":
        if not self.v > 0.0:
            raise JetDomainError(f"log of non-positive value {self.v!r}")
        r1 = self.d1 / self.v
        return Jet2(math.log(self.v), r1, self.d2 / self.v - r1 * r1)

    def sin(self) -> "Jet2":
        s, c = math.sin(self.v), math.cos(self.v)
        return self._unary(s, c, -s)

    def cos(self) -> "Jet2":
        s, c = math.sin(self.v), math.cos(self.v)
        return self._unary(c, -s, -c)


Number = Union[float, Jet2]


def exp(x: Number) -> Number:
    return x.exp() if isinstance(x, Jet2) else math.exp(x)


def log(x: Number) -> Number:
    return x.log() if isinstance(x, Jet2) else math.log(x)


def sin(x: Number) -> Number:
    return x.sin() if isinstance(x, Jet2) else math.sin(x)


def cos(x: Number) -> Number:
    return x.cos() if isinstance(x, Jet2) else math.cos(x)


def jet_lift(y: float) -> Jet2:
    """Seed jet of the identity map at ``y``."""
    return Jet2(float(y), 1.0, 0.0)


_BINARY = {
    "add": lambda x, y: x + y,
    "sub": lambda x, y: x - y,
    "mul": lambda x, y: x * y,
    "div": lambda x, y: x / y,
    "scale": lambda x, k: x.scale(k),
    "int_pow": lambda x, n: x**n,
}
_UNARY = {
    "neg": lambda x: -x,
    "exp": Jet2.exp,
    "ln": Jet2.log,
    "sin": Jet2.sin,
    "cos": Jet2.cos,
}


def jet_arith(op: str, x: Jet2, y=None) -> Jet2:
    """Apply primitive ``op`` by name.

    Binary primitives (``add``, ``sub``, ``mul``, ``div``) take a second jet;
    ``scale`` takes a real factor and ``int_pow`` an integer exponent.
    """
    if op in _UNARY:
        return _UNARY[op](x)
    if op in _BINARY:
        if y is None:
            raise TypeError(f"primitive {op!r} needs a second operand")
        return _BINARY[op](x, y)
    raise ValueError(f"unknown jet primitive {op!r}")


_EVAL_ERRORS = (JetDomainError, ValueError, ZeroDivisionError, OverflowError)


@dataclass(frozen=True)
class ScalarField:
    """Autonomous right-hand side ``f`` of ``y' = f(y)``.

    ``fn`` must be written with the jet-aware operators/helpers so that it
    accepts both floats and :class:`Jet2`.  ``hand_derivatives`` is an optional
    independently coded ``y -> (f, f', f'')`` used for cross-checks only.
    """

    name: str
    fn: Callable[[Number], Number]
    hand_derivatives: Optional[Callable[[float], Tuple[float, float, float]]] = None

    def __call__(self, y: float) -> float:
        try:
            value = self.fn(y)
        except _EVAL_ERRORS as exc:
            raise FieldEvaluationError(y, str(exc)) from exc
        return float(value)

    def derivatives(self, y: float) -> Tuple[float, float, float]:
        try:
            jet = self.fn(jet_lift(y))
        except _EVAL_ERRORS as exc:
            raise FieldEvaluationError(y, str(exc)) from exc
        if isinstance(jet, Jet2):
            return jet.as_tuple()
        # constant field: fn ignored its argument
        return (float(jet), 0.0, 0.0)


def derivatives_of(field: ScalarField, y: float) -> Tuple[float, float, float]:
    """Return ``(f(y), f'(y), f''(y))`` propagated through degree-2 jets."""
    return field.derivatives(y)
