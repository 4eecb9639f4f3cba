import math
from fractions import Fraction

import pytest

from qt3.jet import ScalarField
from qt3.problems import get_problem
from qt3.steppers import (
    METHODS,
    euler_step,
    get_method,
    make_tableau,
    phi1,
    rk_step,
    rosenbrock_euler_step,
)

identity = ScalarField("y", lambda y: y)


def linear(lam):
    return ScalarField(f"{lam}y", lambda y: lam * y)


def test_k3_tableau():
    tab = make_tableau("K3")
    assert tab.s == 3
    assert tab.b == (1 / 6, 2 / 3, 1 / 6)
    assert tab.c == (0.0, 0.5, 1.0)
    assert (tab.A[1][0], tab.A[2][0], tab.A[2][1]) == (0.5, -1.0, 2.0)


def test_bs3_tableau():
    tab = make_tableau("BS3")
    assert tab.s == 4
    assert tab.b == (2 / 9, 1 / 3, 4 / 9, 0.0)
    assert tab.A[3][:3] == tab.b[:3]
    assert tab.A[3][2] == 4 / 9
    assert tab.c == (0.0, 0.5, 0.75, 1.0)


def test_rk4_tableau():
    tab = make_tableau("RK4")
    assert tab.b == (1 / 6, 1 / 3, 1 / 3, 1 / 6)
    assert tab.A[1][0] == tab.A[2][1] == 0.5
    assert tab.A[3][2] == 1.0


@pytest.mark.parametrize("name", ["K3", "BS3", "RK4"])
def test_tableau_invariants(name):
    tab = make_tableau(name)
    tab.validate()
    for i, row in enumerate(tab.A):
        assert all(x == 0.0 for x in row[i:])
        assert abs(sum(row) - tab.c[i]) <= 1e-15
    assert abs(sum(tab.b) - 1.0) <= 1e-15


def test_unknown_tableau():
    with pytest.raises(ValueError):
        make_tableau("RK45")
    with pytest.raises(ValueError):
        get_method("Heun")


def test_rk4_linear_is_degree4_taylor():
    expected = float(sum(Fraction(1, math.factorial(k)) * Fraction(1, 10) ** k for k in range(5)))
    assert expected == pytest.approx(1.1051708333333333, rel=1e-16)
    assert rk_step(make_tableau("RK4"), identity, 1.0, 0.1) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("lam", range(-5, 6))
@pytest.mark.parametrize("h", [0.01, 0.1])
def test_linear_exactness(lam, h):
    z = lam * h
    taylor4 = 1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24
    assert rk_step(make_tableau("RK4"), linear(lam), 1.0, h) == pytest.approx(taylor4, rel=1e-13)
    assert rosenbrock_euler_step(linear(lam), 1.0, h) == pytest.approx(math.exp(z), rel=1e-13)


def test_euler_examples():
    assert euler_step(ScalarField("c", lambda y: 2.0), 1.0, 0.5) == 2.0
    assert euler_step(identity, 1.0, 0.1) == 1.1
    assert euler_step(get_problem("logistic").field, 0.5, 0.1) == pytest.approx(0.975, rel=1e-15)


def test_phi1():
    assert phi1(0.0) == 1.0
    # mpmath: (e^0.1 - 1)/0.1 = 1.0517091807564762...
    assert phi1(0.1) == pytest.approx(1.0517091807564762, rel=1e-15)
    assert abs(phi1(1e-9) - (1 + 5e-10)) <= 1e-18
    assert phi1(-30.0) == pytest.approx((math.exp(-30) - 1) / -30, rel=1e-15)
    # both sides of the series cutoff agree with the Taylor expansion
    for z in (9.999e-6, 1.0001e-5, -9.999e-6, -1.0001e-5):
        assert phi1(z) == pytest.approx(1 + z / 2 + z * z / 6, rel=1e-11)


def test_rosenbrock_euler_examples():
    assert rosenbrock_euler_step(ScalarField("c", lambda y: 3.0), 2.0, 0.4) == pytest.approx(3.2, rel=1e-16)
    assert rosenbrock_euler_step(identity, 1.0, 0.1) == pytest.approx(math.exp(0.1), rel=1e-15)
    assert rosenbrock_euler_step(get_problem("logistic").field, 0.5, 0.0) == 0.5


@pytest.mark.parametrize("name", list(METHODS))
def test_zero_step_identity(name):
    method = METHODS[name]
    for problem in ("logistic", "gompertz", "sine", "flame"):
        p = get_problem(problem)
        assert method.step(p.field, p.y0, 0.0, 1e-14) == p.y0


def test_method_orders_labels():
    assert {m.name: m.order for m in METHODS.values()} == {
        "Euler": 1, "RosenbrockEuler": 2, "K3": 3, "BS3": 3, "RK4": 4, "QT3": 3,
    }
    assert [m.name for m in METHODS.values() if m.guarded] == ["QT3"]
