"""Explicit third-order one-step integrator for autonomous scalar ODEs ``y' = f(y)``.

Each step replaces ``f`` by its quadratic Taylor polynomial at the current
state and advances with the exact solution of the resulting Riccati equation.
"""
__version__ = "0.1.0"

from .jet import FieldEvaluationError, Jet2, ScalarField, derivatives_of, jet_arith, jet_lift
from .riccati import (
    Branch,
    BranchKind,
    QuadraticModel,
    StepUndefinedError,
    classify_branch,
    h_max,
    qt3_step,
    quadratic_model,
    riccati_exact,
)
from .special import arccot_real, lambert_w0
from .steppers import METHODS, ButcherTableau, OneStepMethod, euler_step, get_method, make_tableau, phi1, rk_step, rosenbrock_euler_step
from .driver import IntegratorConfig, Status, TerminationReason, Trajectory, apriori_bounds, apriori_h0, integrate, scan_max
from .problems import Problem, builtin_problems, exact_solution, get_problem
from .bench import BenchSpec, global_error, observed_order, render_report, run_benchmark
