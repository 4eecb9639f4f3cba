"""Special functions needed by the blow-up formulas and the exact solutions."""
import math

__all__ = ["lambert_w0", "arccot_real"]

_EPS = 2.0**-52


def lambert_w0(x: float, *, rtol: float = 1e-14, max_iter: int = 50) -> float:
    """Principal branch of the Lambert W function for ``x >= 0``.

    Solves ``w * exp(w) = x`` with Halley's method started from ``log1p(x)``.
    Iterates until the Halley correction is at rounding level, then requires
    ``|w e^w - x| <= rtol * (1 + x)``.  The correction test matters for small
    ``x``, where the residual bound alone accepts the starting guess.

    Raises
    ------
    ValueError
        For negative ``x`` or if the iteration does not converge.
    """
    if not x >= 0.0:
        raise ValueError(f"lambert_w0 requires x >= 0, got {x!r}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return math.inf
    w = math.log1p(x)
    for _ in range(max_iter):
        ew = math.exp(w)
        resid = w * ew - x
        wp1 = w + 1.0
        dw = resid / (ew * wp1 - (w + 2.0) * resid / (2.0 * wp1))
        w -= dw
        if abs(dw) <= 4.0 * _EPS * abs(w):
            break
    if abs(w * math.exp(w) - x) <= rtol * (1.0 + x):
        return w
    raise ValueError(f"lambert_w0 did not converge for x={x!r}")


def arccot_real(x: float) -> float:
    """Arccotangent with range (0, pi), continuous through x = 0."""
    if x > 0.0:
        return math.atan(1.0 / x)
    if x == 0.0:
        return 0.5 * math.pi
    return math.atan(1.0 / x) + math.pi
