"""Command line front end: ``bench``, ``solve`` and ``apriori``.

Options may also come from a ``--config`` file of ``key=value`` lines (keys are
the long option names, e.g. ``steps=0.1,0.05``); command line flags win.

Exit codes: 0 on success, 2 if any integration terminated early, 1 on usage
or input errors.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .bench import DEFAULT_METHODS, DEFAULT_PROBLEMS, DEFAULT_STEPS, BenchSpec, render_report, run_benchmark
from .driver import IntegrationError, IntegratorConfig, StepSizeContractError, apriori_bounds, integrate
from .problems import get_problem
from .steppers import get_method

EXIT_OK, EXIT_USAGE, EXIT_FAILED = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def load_config(path: str) -> Dict[str, str]:
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _floats(text: str) -> List[float]:
    try:
        return [float(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _names(text: str) -> List[str]:
    return [x.strip() for x in str(text).split(",") if x.strip()]


def _window(text) -> tuple:
    vals = _floats(text)
    if len(vals) != 2:
        raise UsageError(f"window must be 'A,B', got {text!r}")
    return tuple(vals)


class _Options:
    """Looks up an option: command line first, then config file, then default."""

    def __init__(self, args, config):
        self.args = args
        self.config = config

    def get(self, key, default=None, convert=None):
        value = getattr(self.args, key, None)
        if value is None and key in self.config:
            value = self.config[key]
        if value is None:
            return default
        if convert is not None:
            try:
                return convert(value)
            except UsageError:
                raise
            except ValueError as exc:
                raise UsageError(f"bad value for {key}: {value!r}") from exc
        return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qt3", description="Quadratic Taylor integrator and benchmark tables.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--config", help="key=value file with option defaults")
        p.add_argument("--tol0", help="numerical-zero tolerance (default 1e-14)")
        p.add_argument("--out", help="write output here instead of stdout")

    b = sub.add_parser("bench", help="reproduce the global-error tables")
    common(b)
    b.add_argument("--problems", help="comma-separated problem names")
    b.add_argument("--methods", help="comma-separated methods (Euler, RosenbrockEuler, K3, BS3, RK4, QT3)")
    b.add_argument("--steps", help="comma-separated step sizes")
    b.add_argument("--guard", choices=["runtime", "apriori"])
    b.add_argument("--format", choices=["csv", "md"])
    b.add_argument("--digits", help="significant digits in the table (default 5)")

    s = sub.add_parser("solve", help="integrate one problem and print t,y[,exact,abs_err] CSV")
    common(s)
    s.add_argument("--problem")
    s.add_argument("--method")
    s.add_argument("--h")
    s.add_argument("--T", dest="T")
    s.add_argument("--y0")
    s.add_argument("--window", help="A,B (use --window=-1,2 for negative A)")
    s.add_argument("--guard", choices=["runtime", "apriori"])

    a = sub.add_parser("apriori", help="a priori step-size bound for a problem and window")
    common(a)
    a.add_argument("--problem")
    a.add_argument("--window", help="A,B (use --window=-1,2 for negative A)")
    a.add_argument("--T", dest="T")
    a.add_argument("--grid-points", dest="grid_points")
    return parser


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_bench(opt: _Options) -> int:
    spec = BenchSpec(
        problems=tuple(opt.get("problems", DEFAULT_PROBLEMS, _names)),
        methods=tuple(opt.get("methods", DEFAULT_METHODS, _names)),
        steps=tuple(opt.get("steps", DEFAULT_STEPS, _floats)),
        tol0=opt.get("tol0", 1e-14, float),
        guard=opt.get("guard", "runtime"),
    )
    if spec.guard not in ("runtime", "apriori"):
        raise UsageError(f"guard must be runtime or apriori, got {spec.guard!r}")
    report = run_benchmark(spec)
    text = render_report(report, opt.get("format", "md"), opt.get("digits", 5, int))
    _emit(text, opt.get("out"))
    print(f"bench finished in {report.seconds:.2f} s", file=sys.stderr)
    return EXIT_FAILED if report.has_failures else EXIT_OK


def _cmd_solve(opt: _Options) -> int:
    name = opt.get("problem")
    if name is None:
        raise UsageError("solve needs --problem")
    problem = get_problem(name)
    method = get_method(opt.get("method", "QT3"))
    window = opt.get("window", problem.default_window, _window)
    config = IntegratorConfig(
        h=opt.get("h", 0.1, float),
        T=opt.get("T", problem.T, float),
        A=window[0],
        B=window[1],
        tol0=opt.get("tol0", 1e-14, float),
        guard_mode=opt.get("guard", "runtime"),
    )
    y0 = opt.get("y0", problem.y0, float)
    if config.guard_mode == "apriori" and method.guarded:
        h0 = apriori_bounds(problem.field, config.A, config.B, config.tol0, config.T)[2]
        if not config.h < h0:
            print(f"warning: h={config.h:g} is not below the a priori bound {h0:.6g}", file=sys.stderr)
    try:
        traj = integrate(method, problem.field, y0, config)
    except (StepSizeContractError, IntegrationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    with_exact = problem.exact is not None and y0 == problem.y0
    lines = ["t,y,exact,abs_err" if with_exact else "t,y"]
    for t, y in zip(traj.t, traj.y):
        if with_exact:
            ex = problem.exact(t)
            lines.append(f"{t!r},{y!r},{ex!r},{abs(ex - y)!r}")
        else:
            lines.append(f"{t!r},{y!r}")
    _emit("\n".join(lines) + "\n", opt.get("out"))
    print(f"status: {traj.status}; {traj.steps_completed} steps, solution on "
          f"[0, {traj.steps_completed * config.h:g}]", file=sys.stderr)
    return EXIT_OK if traj.status.ok else EXIT_FAILED


def _cmd_apriori(opt: _Options) -> int:
    name = opt.get("problem")
    if name is None:
        raise UsageError("apriori needs --problem")
    problem = get_problem(name)
    A, B = opt.get("window", problem.default_window, _window)
    tol0 = opt.get("tol0", 1e-14, float)
    T = opt.get("T", problem.T, float)
    b_max, s_max, h0 = apriori_bounds(problem.field, A, B, tol0, T, opt.get("grid_points", None, int))
    text = (f"problem: {name}\nwindow: [{A:g}, {B:g}]\nb_max: {b_max!r}\ns_max: {s_max!r}\n"
            f"h0: {h0!r}\nSuggest stepsize to be less than {h0:.6g}\n")
    _emit(text, opt.get("out"))
    return EXIT_OK


_COMMANDS = {"bench": _cmd_bench, "solve": _cmd_solve, "apriori": _cmd_apriori}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else {}
        return _COMMANDS[args.command](_Options(args, config))
    except (UsageError, ValueError, OSError) as exc:
        print(f"qt3 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
