"""Command-line front end.

Exit status: 0 success, 2 usage error, 3 validation failure, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .certificate import build_certificate
from .closed_loop import regulate
from .errors import BangBangError
from .scaling import PhysicalConfig, PhysicalState, ScaledState, to_physical, to_scaled
from .synthesis import DEFAULT_EPS_CURVE, Case, Plan, plan
from .trajectory import samples_to_array, trajectory_of_plan
from .validation import validate_state

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3
EXIT_IO = 4

CSV_HEADER = "t,x,xdot,u"
DEFAULT_GRID = "-5:5:21,-5:5:21"
SUBCOMMANDS = ("plan", "simulate", "regulate", "validate", "batch", "scale")


class UsageError(BangBangError):
    pass


@dataclass
class GridSpec:
    x_min: float
    x_max: float
    x_count: int
    v_min: float
    v_max: float
    v_count: int

    @classmethod
    def parse(cls, text: str) -> GridSpec:
        try:
            ax, av = text.split(",")
            x_min, x_max, nx = ax.split(":")
            v_min, v_max, nv = av.split(":")
            grid = cls(float(x_min), float(x_max), int(nx), float(v_min), float(v_max), int(nv))
        except ValueError:
            raise UsageError(f"bad grid {text!r}; expected xmin:xmax:n,vmin:vmax:n") from None
        if grid.x_count < 1 or grid.v_count < 1:
            raise UsageError("grid counts must be at least 1")
        return grid

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Grid states in row-major order (position outer, velocity inner)."""
        xs = np.linspace(self.x_min, self.x_max, self.x_count)
        vs = np.linspace(self.v_min, self.v_max, self.v_count)
        xx, vv = np.meshgrid(xs, vs, indexing="ij")
        return xx.ravel(), vv.ravel()


@dataclass
class RunConfig:
    subcommand: str
    initial: ScaledState | None = None
    physical: PhysicalState | None = None
    physical_config: PhysicalConfig | None = None
    control: float | None = None
    eps_curve: float = DEFAULT_EPS_CURVE
    samples: int = 200
    dt: float = 1e-3
    deadband: float = 1e-2
    output_format: str = "json"
    output_path: str | None = None
    grid: GridSpec = field(default_factory=lambda: GridSpec.parse(DEFAULT_GRID))
    certificate: bool = False
    rho: float = 1.0
    t_step: float = 1e-3
    radius: float | None = None
    with_validation: bool = False

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        positive = {"eps_curve": self.eps_curve, "dt": self.dt, "deadband": self.deadband,
                    "t_step": self.t_step, "rho": self.rho}
        for name, value in positive.items():
            if not (math.isfinite(value) and value > 0):
                raise UsageError(f"--{name.replace('_', '-')} must be positive, got {value!r}")
        if self.radius is not None and not self.radius > 0:
            raise UsageError("--radius must be positive")
        if self.samples < 2:
            raise UsageError("--samples must be at least 2")
        if self.output_format not in ("json", "csv"):
            raise UsageError(f"unknown format {self.output_format!r}")


# --- serialization ----------------------------------------------------------

def _num(value):
    if value is None:
        return None
    return float(value)


def _point(s: ScaledState | None):
    return None if s is None else {"x": s.x, "xdot": s.x_dot}


def plan_to_dict(p: Plan, cert=None) -> dict:
    return {
        "initial": _point(p.initial),
        "case": p.case.value,
        "sigma0": p.sigma0,
        "lambda0": _num(p.lambda0),
        "bangs": [{"u": b.u, "duration": b.duration} for b in p.bangs],
        "t_star": p.total_time,
        "switch_point": _point(p.switch_point),
        "certificate": None if cert is None else {"rho": cert.rho, "p_x0": cert.p_x0, "p_xdot0": cert.p_xdot0},
    }


def format_csv(header: str, rows) -> str:
    buf = io.StringIO()
    buf.write(header + "\n")
    for row in rows:
        buf.write(",".join(_csv_cell(v) for v in row) + "\n")
    return buf.getvalue()


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if math.isnan(v):
        return ""
    return format(float(v), ".17g")


def format_json(doc) -> str:
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def trace_csv(arr: np.ndarray) -> str:
    return format_csv(CSV_HEADER, arr.tolist())


def _trace_json(arr: np.ndarray) -> list[dict]:
    return [{"t": t, "x": x, "xdot": v, "u": u} for t, x, v, u in arr.tolist()]


# --- subcommands ------------------------------------------------------------

def _cmd_plan(cfg: RunConfig) -> tuple[str, int]:
    p = plan(cfg.initial, cfg.eps_curve)
    cert = None
    if cfg.certificate and p.case is not Case.AT_ORIGIN:
        cert = build_certificate(p, cfg.rho)
    if cfg.output_format == "csv":
        return format_csv("u,duration", [(b.u, b.duration) for b in p.bangs]), EXIT_OK
    return format_json(plan_to_dict(p, cert)), EXIT_OK


def _cmd_simulate(cfg: RunConfig) -> tuple[str, int]:
    p = plan(cfg.initial, cfg.eps_curve)
    arr = samples_to_array(trajectory_of_plan(p, cfg.samples))
    if cfg.output_format == "csv":
        return trace_csv(arr), EXIT_OK
    doc = plan_to_dict(p)
    doc["samples"] = _trace_json(arr)
    return format_json(doc), EXIT_OK


def _cmd_regulate(cfg: RunConfig) -> tuple[str, int]:
    reg = regulate(cfg.initial, cfg.dt, cfg.deadband, cfg.eps_curve)
    if cfg.output_format == "csv":
        text = trace_csv(reg.trace)
    else:
        doc = plan_to_dict(plan(cfg.initial, cfg.eps_curve))
        doc["regulation"] = {
            "dt": cfg.dt,
            "deadband": cfg.deadband,
            "arrived": reg.arrived,
            "arrival_time": reg.arrival_time,
            "t_limit": reg.t_limit,
        }
        doc["samples"] = _trace_json(reg.trace)
        text = format_json(doc)
    if reg.arrived:
        print(f"arrival_time={reg.arrival_time!r} t_star={reg.t_star!r}", file=sys.stderr)
        return text, EXIT_OK
    print(f"deadband not reached by t={reg.t_limit!r}", file=sys.stderr)
    return text, EXIT_VALIDATION


def _validation_doc(report: dict) -> dict:
    doc = plan_to_dict(report["plan"])
    doc["certificate"] = report["certificate"]
    doc["endpoint_miss"] = report["endpoint_miss"]
    doc["verification"] = report["verification"]
    doc["oracle"] = report["oracle"]
    doc["checks"] = report["checks"]
    doc["passed"] = report["passed"]
    return doc


def _validate(cfg: RunConfig, s: ScaledState) -> dict:
    return validate_state(s, cfg.eps_curve, max(cfg.samples, 2), cfg.t_step, cfg.radius)


def _cmd_validate(cfg: RunConfig) -> tuple[str, int]:
    report = _validate(cfg, cfg.initial)
    doc = _validation_doc(report)
    if cfg.output_format == "csv":
        rows = [(name, ok) for name, ok in report["checks"].items()]
        text = format_csv("check,passed", rows)
    else:
        text = format_json(doc)
    return text, EXIT_OK if report["passed"] else EXIT_VALIDATION


BATCH_COLUMNS = ("x0", "v0", "case", "sigma0", "lambda0", "d1", "d2", "t_star", "switch_x", "switch_xdot")
_CASE_NAMES = {_kernels.AT_ORIGIN: Case.AT_ORIGIN.value, _kernels.ON_CURVE: Case.ON_CURVE.value,
               _kernels.OFF_CURVE: Case.OFF_CURVE.value}


def _cmd_batch(cfg: RunConfig) -> tuple[str, int]:
    x0, v0 = cfg.grid.points()
    case, sigma, lam, d1, d2, tstar, xs, vs = _kernels.plan_batch(x0, v0, cfg.eps_curve)
    rows = []
    for i in range(x0.size):
        rows.append([x0[i], v0[i], _CASE_NAMES[int(case[i])], sigma[i], lam[i], d1[i], d2[i], tstar[i], xs[i], vs[i]])
    columns = list(BATCH_COLUMNS)
    status = EXIT_OK
    if cfg.with_validation:
        columns += ["oracle_time", "passed"]
        for row in rows:
            report = _validate(cfg, ScaledState(row[0], row[1]))
            oracle = report["oracle"]
            row += [None if oracle is None else oracle["best_time"], report["passed"]]
            if not report["passed"]:
                status = EXIT_VALIDATION
    if cfg.output_format == "csv":
        return format_csv(",".join(columns), rows), status
    doc = {
        "grid": vars(cfg.grid),
        "rows": [{k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in zip(columns, _plain(row))}
                 for row in rows],
    }
    return format_json(doc), status


def _plain(row):
    return [v.item() if isinstance(v, np.generic) else v for v in row]


def _cmd_scale(cfg: RunConfig) -> tuple[str, int]:
    pc = cfg.physical_config
    if pc is None:
        raise UsageError("scale needs --inertia and --cmax")
    if cfg.physical is not None:
        control = 0.0 if cfg.control is None else cfg.control
        scaled, u = to_scaled(pc, cfg.physical, control)
        back, c_back = to_physical(pc, scaled, u)
        doc = {
            "inertia": pc.inertia, "control_max": pc.control_max,
            "physical": {"y": cfg.physical.y, "ydot": cfg.physical.y_dot, "C": control},
            "scaled": {"x": scaled.x, "xdot": scaled.x_dot, "u": u},
            "round_trip": {"y": back.y, "ydot": back.y_dot, "C": c_back},
        }
    else:
        u = 0.0 if cfg.control is None else cfg.control
        phys, c = to_physical(pc, cfg.initial, u)
        doc = {
            "inertia": pc.inertia, "control_max": pc.control_max,
            "scaled": {"x": cfg.initial.x, "xdot": cfg.initial.x_dot, "u": u},
            "physical": {"y": phys.y, "ydot": phys.y_dot, "C": c},
        }
    if cfg.output_format == "csv":
        rows = [(f"{grp}.{k}", v) for grp, sub in doc.items() if isinstance(sub, dict) for k, v in sub.items()]
        return format_csv("quantity,value", rows), EXIT_OK
    return format_json(doc), EXIT_OK


_COMMANDS = {
    "plan": _cmd_plan,
    "simulate": _cmd_simulate,
    "regulate": _cmd_regulate,
    "validate": _cmd_validate,
    "batch": _cmd_batch,
    "scale": _cmd_scale,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one subcommand and write its output; returns the exit status."""
    stdout = sys.stdout if stdout is None else stdout
    try:
        if cfg.subcommand not in ("batch", "scale") and cfg.initial is None:
            raise UsageError("an initial state is required (--x0/--v0 or --y0/--ydot0/--inertia/--cmax)")
        text, status = _COMMANDS[cfg.subcommand](cfg)
    except BangBangError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION if not isinstance(exc, (UsageError, ValueError)) else EXIT_USAGE
    try:
        if cfg.output_path is None:
            stdout.write(text)
            stdout.flush()
        else:
            with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    st = common.add_argument_group("initial state")
    st.add_argument("--x0", type=float, help="scaled position")
    st.add_argument("--v0", type=float, help="scaled velocity")
    st.add_argument("--y0", type=float, help="physical displacement")
    st.add_argument("--ydot0", type=float, help="physical rate")
    st.add_argument("--inertia", type=float)
    st.add_argument("--cmax", type=float, help="control bound")
    common.add_argument("--eps-curve", type=float, default=DEFAULT_EPS_CURVE)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--format", choices=("json", "csv"), default="json", dest="output_format")
    common.add_argument("--out", dest="output_path", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="bangbang", description="Minimum-time control of the double integrator.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("plan", parents=[common], help="optimal bang schedule as JSON")
    p.add_argument("--certificate", action="store_true", help="include the costate certificate")
    p.add_argument("--rho", type=float, default=1.0)

    sub.add_parser("simulate", parents=[common], help="sampled optimal trajectory")

    p = sub.add_parser("regulate", parents=[common], help="closed-loop feedback simulation")
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--deadband", type=float, default=1e-2)

    p = sub.add_parser("validate", parents=[common], help="certificate and oracle checks")
    p.add_argument("--t-step", type=float, default=1e-3)
    p.add_argument("--radius", type=float)

    p = sub.add_parser("batch", parents=[common], help="plan over a grid of initial states")
    p.add_argument("--grid", default=DEFAULT_GRID, help="xmin:xmax:n,vmin:vmax:n")
    p.add_argument("--validate", action="store_true", dest="with_validation")
    p.add_argument("--t-step", type=float, default=1e-3)
    p.add_argument("--radius", type=float)

    p = sub.add_parser("scale", parents=[common], help="convert between physical and scaled units")
    p.add_argument("--c0", type=float, help="physical control")
    p.add_argument("--u", type=float, help="scaled control")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    scaled_given = ns.x0 is not None or ns.v0 is not None
    physical_given = ns.y0 is not None or ns.ydot0 is not None
    if scaled_given and physical_given:
        raise UsageError("give either --x0/--v0 or --y0/--ydot0, not both")

    pc = None
    if ns.inertia is not None or ns.cmax is not None:
        if ns.inertia is None or ns.cmax is None:
            raise UsageError("--inertia and --cmax go together")
        pc = PhysicalConfig(ns.inertia, ns.cmax)

    initial = physical = None
    control = None
    if scaled_given:
        initial = ScaledState(ns.x0 or 0.0, ns.v0 or 0.0)
    elif physical_given:
        if pc is None:
            raise UsageError("physical entry needs --inertia and --cmax")
        physical = PhysicalState(ns.y0 or 0.0, ns.ydot0 or 0.0)
        initial, _ = to_scaled(pc, physical, 0.0)

    if ns.subcommand == "scale":
        if ns.c0 is not None and ns.u is not None:
            raise UsageError("give either --c0 or --u")
        if physical is not None and ns.u is not None:
            raise UsageError("--u applies to scaled input; use --c0 with physical input")
        control = ns.c0 if ns.c0 is not None else ns.u
        if initial is None:
            raise UsageError("scale needs an input state")

    extra = {}
    for name in ("certificate", "rho", "dt", "deadband", "t_step", "radius", "with_validation"):
        if hasattr(ns, name):
            extra[name] = getattr(ns, name)
    if hasattr(ns, "grid"):
        extra["grid"] = GridSpec.parse(ns.grid)
    return RunConfig(
        subcommand=ns.subcommand,
        initial=initial,
        physical=physical,
        physical_config=pc,
        control=control,
        eps_curve=ns.eps_curve,
        samples=ns.samples,
        output_format=ns.output_format,
        output_path=ns.output_path,
        **extra,
    )


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (BangBangError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
