"""Global-error tables, observed orders and their CSV / Markdown rendering."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .driver import (
    IntegrationError,
    IntegratorConfig,
    StepSizeContractError,
    Trajectory,
    apriori_bounds,
    integrate,
)
from .problems import get_problem
from .steppers import get_method

__all__ = [
    "DEFAULT_STEPS",
    "DEFAULT_METHODS",
    "DEFAULT_PROBLEMS",
    "Cell",
    "ErrorTable",
    "BenchSpec",
    "BenchReport",
    "global_error",
    "observed_order",
    "run_benchmark",
    "render_report",
    "parse_csv",
]

DEFAULT_STEPS = (0.1, 0.05, 0.02, 0.01)
DEFAULT_METHODS = ("K3", "BS3", "RK4", "QT3")
DEFAULT_PROBLEMS = ("logistic", "bernoulli_small", "bernoulli_one", "gompertz", "flame", "sine")


def global_error(traj: Trajectory, exact: Callable[[float], float]) -> float:
    """``max_n |exact(n h) - y_n|`` over a successful trajectory."""
    if not traj.status.ok:
        raise ValueError(f"global error needs a successful trajectory, got {traj.status}")
    return max(abs(exact(n * traj.h) - yn) for n, yn in enumerate(traj.y))


def observed_order(e_coarse: float, e_fine: float, ratio: float = 2.0,
                   tol0: float = 1e-14) -> Optional[float]:
    """Empirical order from errors at step sizes ``h`` and ``h / ratio``.

    Returns ``None`` (indeterminate) if either error is at or below the noise
    floor ``10 * tol0``.
    """
    floor = 10.0 * tol0
    if not (e_coarse > floor and e_fine > floor):
        return None
    return math.log(e_coarse / e_fine) / math.log(ratio)


@dataclass(frozen=True)
class Cell:
    raw: Optional[float]
    status: str
    tol0: float
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "Success"

    @property
    def clamped(self) -> Optional[float]:
        if self.raw is None:
            return None
        return 0.0 if self.raw < self.tol0 else self.raw


@dataclass
class ErrorTable:
    problem: str
    steps: Tuple[float, ...]
    methods: Tuple[str, ...]
    window: Tuple[float, float]
    cells: Dict[Tuple[float, str], Cell] = field(default_factory=dict)

    def cell(self, h: float, method: str) -> Cell:
        return self.cells[(h, method)]

    def column(self, method: str) -> List[Cell]:
        return [self.cells[(h, method)] for h in self.steps]


@dataclass(frozen=True)
class BenchSpec:
    problems: Tuple[str, ...] = DEFAULT_PROBLEMS
    methods: Tuple[str, ...] = DEFAULT_METHODS
    steps: Tuple[float, ...] = DEFAULT_STEPS
    tol0: float = 1e-14
    guard: str = "runtime"
    windows: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    grid_points: Optional[int] = None


@dataclass
class BenchReport:
    tables: List[ErrorTable]
    # problem -> method -> [(h_coarse, h_fine, order or None)]
    orders: Dict[str, Dict[str, List[Tuple[float, float, Optional[float]]]]]
    config: Dict[str, object]
    seconds: float

    @property
    def has_failures(self) -> bool:
        return any(not c.ok for t in self.tables for c in t.cells.values())

    def table(self, problem: str) -> ErrorTable:
        for t in self.tables:
            if t.problem == problem:
                return t
        raise KeyError(problem)


def _run_cell(problem, method, h, spec, window) -> Cell:
    cfg = IntegratorConfig(h=h, T=problem.T, A=window[0], B=window[1],
                           tol0=spec.tol0, guard_mode=spec.guard)
    start = time.perf_counter()
    try:
        traj = integrate(method, problem.field, problem.y0, cfg)
    except StepSizeContractError:
        return Cell(None, "ContractViolation", spec.tol0, time.perf_counter() - start)
    except IntegrationError as exc:
        return Cell(None, f"EvaluationError({exc.step})", spec.tol0, time.perf_counter() - start)
    elapsed = time.perf_counter() - start
    if not traj.status.ok:
        return Cell(None, str(traj.status), spec.tol0, elapsed)
    raw = global_error(traj, problem.exact) if problem.exact is not None else None
    return Cell(raw, "Success", spec.tol0, elapsed)


def _order_pairs(steps):
    # disjoint consecutive pairs: (h0, h1), (h2, h3), ...
    return [(steps[i], steps[i + 1]) for i in range(0, len(steps) - 1, 2)]


def run_benchmark(spec: BenchSpec = BenchSpec()) -> BenchReport:
    """Integrate every (problem, method, h) cell and tabulate global errors.

    Integration failures are recorded in the cell's status, never raised.
    """
    if not spec.problems or not spec.methods or not spec.steps:
        raise ValueError("benchmark needs at least one problem, method and step size")
    start = time.perf_counter()
    steps = tuple(sorted(set(spec.steps), reverse=True))
    methods = [get_method(m) for m in spec.methods]
    tables, orders = [], {}
    windows, h0s = {}, {}
    for name in spec.problems:
        problem = get_problem(name)
        window = tuple(spec.windows.get(name, problem.default_window))
        windows[name] = window
        if spec.guard == "apriori":
            h0s[name] = apriori_bounds(problem.field, window[0], window[1], spec.tol0,
                                       problem.T, spec.grid_points)[2]
        table = ErrorTable(name, steps, tuple(spec.methods), window)
        for method in methods:
            for h in steps:
                table.cells[(h, method.name)] = _run_cell(problem, method, h, spec, window)
        tables.append(table)

        per_method = {}
        for method in methods:
            pairs = []
            for hc, hf in _order_pairs(steps):
                cc, cf = table.cell(hc, method.name), table.cell(hf, method.name)
                order = None
                if cc.raw is not None and cf.raw is not None:
                    order = observed_order(cc.raw, cf.raw, hc / hf, spec.tol0)
                pairs.append((hc, hf, order))
            per_method[method.name] = pairs
        orders[name] = per_method

    config = {
        "tol0": spec.tol0,
        "guard": spec.guard,
        "problems": list(spec.problems),
        "methods": list(spec.methods),
        "steps": list(steps),
        "windows": windows,
    }
    if h0s:
        config["apriori_h0"] = h0s
    return BenchReport(tables, orders, config, time.perf_counter() - start)


def _fmt_h(h: float) -> str:
    return f"{h:g}"


def _fmt_cell(cell: Cell, digits: int) -> str:
    if not cell.ok:
        return cell.status
    value = cell.clamped
    if value is None:
        return "n/a"
    if value == 0.0:
        return "0"
    return f"{value:.{digits - 1}e}"


def _render_csv(report: BenchReport, digits: int) -> str:
    cfg = report.config
    lines = [f"# tol0={cfg['tol0']:g} guard={cfg['guard']}"]
    for table in report.tables:
        lines.append(f"# table: {table.problem}")
        lines.append(",".join(["h", *table.methods]))
        for h in table.steps:
            row = [_fmt_h(h)] + [_fmt_cell(table.cell(h, m), digits) for m in table.methods]
            lines.append(",".join(row))
        lines.append("")
    return "\n".join(lines)


def _render_md(report: BenchReport, digits: int) -> str:
    cfg = report.config
    out = []
    for table in report.tables:
        out.append(f"### {table.problem}")
        out.append("")
        out.append("| " + " | ".join(["h", *table.methods]) + " |")
        out.append("|" + "---|" * (len(table.methods) + 1))
        for h in table.steps:
            row = [_fmt_h(h)] + [_fmt_cell(table.cell(h, m), digits) for m in table.methods]
            out.append("| " + " | ".join(row) + " |")
        out.append("")
        pairs = _order_pairs(table.steps)
        if pairs:
            out.append("| observed order | " + " | ".join(
                f"{_fmt_h(a)}/{_fmt_h(b)}" for a, b in pairs) + " |")
            out.append("|" + "---|" * (len(pairs) + 1))
            for m in table.methods:
                vals = ["-" if o is None else f"{o:.2f}" for _, _, o in report.orders[table.problem][m]]
                out.append(f"| {m} | " + " | ".join(vals) + " |")
            out.append("")
    windows = ", ".join(f"{k} [{a:g}, {b:g}]" for k, (a, b) in cfg["windows"].items())
    out.append(f"tol0 = {cfg['tol0']:g}; guard = {cfg['guard']}; windows: {windows}.")
    if "apriori_h0" in cfg:
        out.append("a priori h0: " + ", ".join(f"{k} {v:.6g}" for k, v in cfg["apriori_h0"].items()) + ".")
    out.append("Errors below tol0 are shown as 0. Guard mode does not change a trajectory "
               "unless a step is undefined.")
    out.append("")
    return "\n".join(out)


def render_report(report: BenchReport, fmt: str = "md", digits: int = 5) -> str:
    """Render ``report`` as ``"csv"`` or ``"md"`` with ``digits`` significant digits."""
    if not report.tables:
        raise ValueError("empty report")
    if fmt == "csv":
        return _render_csv(report, digits)
    if fmt == "md":
        return _render_md(report, digits)
    raise ValueError(f"unknown format {fmt!r}; expected 'csv' or 'md'")


def parse_csv(text: str) -> Dict[str, Dict[float, Dict[str, object]]]:
    """Inverse of the CSV rendering: ``problem -> h -> method -> value``.

    Numeric cells become floats; failure statuses and ``n/a`` stay strings.
    """
    result: Dict[str, Dict[float, Dict[str, object]]] = {}
    current = None
    header: Sequence[str] = ()
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("# table:"):
            current = result.setdefault(line.split(":", 1)[1].strip(), {})
            header = ()
            continue
        if line.startswith("#"):
            continue
        fields = line.split(",")
        if not header:
            header = fields[1:]
            continue
        if current is None:
            raise ValueError("CSV row before any table marker")
        row = {}
        for name, raw in zip(header, fields[1:]):
            try:
                row[name] = float(raw)
            except ValueError:
                row[name] = raw
        current[float(fields[0])] = row
    return result
