"""Command-line interface, result serialization and the validation suite.

Exit codes: 0 success, 1 failed check (or unconverged result), 2 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .negativity import (
    NegativityResult,
    PhaseGrid,
    QuadratureConfig,
    Rectangle,
    delta_from_nu,
    delta_indicator,
    evaluate_grid,
    nu_from_delta,
    support_rectangle,
)
from .oracle import cat_delta_upper_bound, wigner_from_wavefunction
from .states import (
    Cat,
    Coherent,
    Fock,
    SqueezedDisplacedFock,
    SqueezedVacuum,
    StateError,
    cat_normalization,
    format_state,
    parse_state,
    wigner,
)
from .sweeps import SweepResult, SweepSpec, fock_scan, run_sweep

__all__ = [
    "UsageError",
    "OutputError",
    "RunConfig",
    "parse_args",
    "write_result",
    "format_float",
    "Check",
    "validate_suite",
    "emit_figure_scripts",
    "main",
]

COMMANDS = ("eval", "delta", "sweep", "fock-scan", "validate", "figures")
FORMATS = {
    "eval": ("matrix", "csv", "json"),
    "delta": ("json", "csv"),
    "sweep": ("csv", "json"),
    "fock-scan": ("csv", "json"),
}

STATE_GRAMMAR = """\
state grammar (keys in any order, missing keys default to 0):
  fock:n=3
  coherent:q0=1,p0=2
  sqvac:s=1,phi=0,q0=0,p0=0
  sdf:n=3,s=0.5,phi=0.5235987756,q0=0,p0=0
  cat:q0=2,p0=4
environment: WIGNER_THREADS caps worker threads (0 or unset = all CPUs)"""


class UsageError(Exception):
    """Malformed command line; reported on one line with exit code 2."""


class OutputError(OSError):
    """Writing a result failed; the message names the path."""


@dataclass
class RunConfig:
    command: str
    state: object = None
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    output: str | None = None
    format: str | None = None
    vary: tuple | None = None  # (name, start, stop, step)
    fixed: dict = field(default_factory=dict)
    n_max: int | None = None
    points: tuple | None = None  # (nq, np)
    rect: Rectangle | None = None
    plot_script: str | None = None
    quick: bool = False

    def to_argv(self) -> list[str]:
        """Command line that parses back to an equivalent configuration."""
        argv = [self.command]
        if self.state is not None:
            argv += ["--state", format_state(self.state) if self.command != "sweep" else _family_text(self.state)]
        if self.command in ("delta", "sweep", "fock-scan"):
            argv += ["--tol", repr(self.quad.tolerance), "--padding", repr(self.quad.padding),
                     "--cells-per-unit", str(self.quad.base_cells_per_unit),
                     "--max-refinements", str(self.quad.max_refinements)]
        if self.vary is not None:
            name, a, b, h = self.vary
            argv += ["--vary", f"{name}={a!r}:{b!r}:{h!r}"]
        if self.fixed:
            argv += ["--fixed", ",".join(f"{k}={v!r}" for k, v in self.fixed.items())]
        if self.n_max is not None:
            argv += ["--n-max", str(self.n_max)]
        if self.points is not None:
            argv += ["--points", f"{self.points[0]},{self.points[1]}"]
        if self.rect is not None:
            # "=" form: a leading minus would read as a flag
            argv += ["--rect=" + ",".join(repr(float(v)) for v in self.rect)]
        if self.format is not None and self.command in FORMATS:
            argv += ["--format", self.format]
        if self.output is not None:
            argv += ["--output", self.output]
        if self.plot_script is not None:
            argv += ["--plot-script", self.plot_script]
        if self.quick:
            argv += ["--quick"]
        return argv


def _family_text(state):
    return format_state(state)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(
        prog="wignerneg",
        description="Negative volume of Wigner functions for Fock, squeezed and cat states.",
        epilog=STATE_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def quad_flags(p):
        p.add_argument("--tol", type=float, default=1e-4, help="absolute tolerance on delta")
        p.add_argument("--padding", type=float, default=6.0)
        p.add_argument("--cells-per-unit", type=int, default=16)
        p.add_argument("--max-refinements", type=int, default=6)

    def out_flags(p, command):
        p.add_argument("--format", choices=FORMATS[command], default=FORMATS[command][0])
        p.add_argument("--output", "-o", help="output path (default stdout)")

    common = dict(epilog=STATE_GRAMMAR, formatter_class=argparse.RawDescriptionHelpFormatter)
    p = sub.add_parser("eval", help="sample W on a grid", **common)
    p.add_argument("--state", required=True)
    p.add_argument("--points", help="nodes per axis, N or NQ,NP (default 201)")
    p.add_argument("--rect", help="qmin,qmax,pmin,pmax (default: support rectangle)")
    p.add_argument("--padding", type=float, default=6.0)
    p.add_argument("--plot-script", help="also write a gnuplot script for the data")
    out_flags(p, "eval")

    p = sub.add_parser("delta", help="negativity indicator of one state", **common)
    p.add_argument("--state", required=True)
    quad_flags(p)
    out_flags(p, "delta")

    p = sub.add_parser("sweep", help="scan one state parameter", **common)
    p.add_argument("--state", required=True, help="state family with optional defaults, e.g. cat")
    p.add_argument("--vary", required=True, help="name=start:stop:step")
    p.add_argument("--fixed", action="append", default=[], help="k=v[,k=v...] (repeatable)")
    p.add_argument("--plot-script", help="also write a gnuplot script for the data")
    quad_flags(p)
    out_flags(p, "sweep")

    p = sub.add_parser("fock-scan", help="delta of |0> .. |n_max>", **common)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--plot-script", help="also write a gnuplot script for the data")
    quad_flags(p)
    out_flags(p, "fock-scan")

    p = sub.add_parser("validate", help="run the reference checks", **common)
    p.add_argument("--quick", action="store_true", help="skip the slower oracle grids")

    p = sub.add_parser("figures", help="write gnuplot scripts for the figure analogues", **common)
    p.add_argument("--outdir", required=True)
    return parser


def _state_arg(text):
    try:
        return parse_state(text)
    except StateError as exc:
        raise UsageError(f"invalid --state {text!r}: {exc}") from None


def _number(token, what):
    try:
        value = float(token)
    except ValueError:
        raise UsageError(f"bad number {token!r} in {what}") from None
    if not math.isfinite(value):
        raise UsageError(f"non-finite number {token!r} in {what}")
    return value


def _parse_vary(text):
    name, eq, rng = text.partition("=")
    parts = rng.split(":")
    if not eq or len(parts) != 3 or not name.strip():
        raise UsageError(f"malformed --vary {text!r} (expected name=start:stop:step)")
    a, b, h = (_number(t, "--vary") for t in parts)
    return name.strip(), a, b, h


def _parse_fixed(items):
    fixed = {}
    for item in items:
        for pair in filter(None, (s.strip() for s in item.split(","))):
            key, eq, raw = pair.partition("=")
            key = key.strip()
            if not eq or not key:
                raise UsageError(f"malformed --fixed entry {pair!r} (expected key=value)")
            if key in fixed:
                raise UsageError(f"--fixed sets {key!r} twice")
            fixed[key] = _number(raw, "--fixed")
    return fixed


def _quad(ns):
    try:
        return QuadratureConfig(padding=ns.padding, base_cells_per_unit=ns.cells_per_unit,
                                max_refinements=ns.max_refinements, tolerance=ns.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def parse_args(argv) -> RunConfig:
    """Turn a command line into a `RunConfig`; raises `UsageError` on bad input."""
    ns = _build_parser().parse_args(list(argv))
    cfg = RunConfig(command=ns.command)
    if ns.command == "figures":
        cfg.output = ns.outdir
        return cfg
    if ns.command == "validate":
        cfg.quick = ns.quick
        return cfg
    cfg.format = ns.format
    cfg.output = ns.output
    cfg.plot_script = getattr(ns, "plot_script", None)
    if cfg.plot_script is not None and cfg.output is None:
        raise UsageError("--plot-script needs --output (the script reads the data file)")
    if ns.command == "eval":
        cfg.state = _state_arg(ns.state)
        if ns.points is not None:
            parts = ns.points.split(",")
            try:
                pts = tuple(int(t) for t in parts)
            except ValueError:
                raise UsageError(f"bad --points {ns.points!r}") from None
            if len(pts) == 1:
                pts = pts * 2
            if len(pts) != 2 or min(pts) < 2:
                raise UsageError(f"bad --points {ns.points!r} (need N or NQ,NP with N >= 2)")
            cfg.points = pts
        if ns.rect is not None:
            vals = [_number(t, "--rect") for t in ns.rect.split(",")]
            if len(vals) != 4 or not (vals[1] > vals[0] and vals[3] > vals[2]):
                raise UsageError(f"bad --rect {ns.rect!r} (need qmin<qmax,pmin<pmax)")
            cfg.rect = Rectangle(*vals)
        cfg.quad = QuadratureConfig(padding=ns.padding)
        return cfg
    cfg.quad = _quad(ns)
    if ns.command == "delta":
        cfg.state = _state_arg(ns.state)
    elif ns.command == "fock-scan":
        if ns.n_max < 1:
            raise UsageError(f"--n-max must be >= 1, got {ns.n_max}")
        cfg.n_max = ns.n_max
    elif ns.command == "sweep":
        cfg.state = _state_arg(ns.state)
        cfg.vary = _parse_vary(ns.vary)
        cfg.fixed = _parse_fixed(ns.fixed)
        try:
            _sweep_spec(cfg)
        except (ValueError, StateError) as exc:
            raise UsageError(str(exc)) from None
    return cfg


def _sweep_spec(cfg):
    name, a, b, h = cfg.vary
    spec = SweepSpec(cfg.state, name, a, b, h, dict(cfg.fixed), cfg.quad)
    # build the end points once so invalid parameter combinations fail early
    spec.state_at(a)
    spec.state_at(b)
    return spec


# --------------------------------------------------------------------------
# serialization

def format_float(x) -> str:
    """Nine significant digits, the same text on every run."""
    return f"{float(x):.9g}"


def _jnum(x):
    x = float(x)
    return float(format_float(x)) if math.isfinite(x) else None


def _grid_matrix(grid: PhaseGrid):
    lines = [f"# q: {format_float(grid.q_min)} {format_float(grid.q_max)} {grid.nq}",
             f"# p: {format_float(grid.p_min)} {format_float(grid.p_max)} {grid.np}"]
    lines += [" ".join(format_float(v) for v in row) for row in grid.values]
    return "\n".join(lines) + "\n"


def _render(result, fmt):
    if isinstance(result, NegativityResult):
        d = result.as_dict()
        if fmt == "json":
            body = {k: ([_jnum(v) if k == "domain" else int(v) for v in val]
                        if isinstance(val, list) else _jnum(val)) for k, val in d.items()}
            return json.dumps(body, indent=2) + "\n"
        if fmt == "csv":
            head = "delta,nu,i_plus,i_minus,error_estimate,q_min,q_max,p_min,p_max,nq_cells,np_cells"
            vals = [d["delta"], d["nu"], d["i_plus"], d["i_minus"], d["error_estimate"], *d["domain"]]
            row = ",".join(format_float(v) for v in vals) + "," + ",".join(str(v) for v in d["resolution"])
            return head + "\n" + row + "\n"
    elif isinstance(result, SweepResult):
        if fmt == "csv":
            lines = ["param,delta,nu,error_estimate"]
            lines += [",".join(format_float(v) for v in (r.param, r.delta, r.nu, r.error_estimate))
                      for r in result.records]
            return "\n".join(lines) + "\n"
        if fmt == "json":
            body = {
                "varied": result.varied,
                "records": [{"param": _jnum(r.param), "delta": _jnum(r.delta), "nu": _jnum(r.nu),
                             "error_estimate": _jnum(r.error_estimate), "converged": r.converged}
                            for r in result.records],
                "extrema": [{"location": _jnum(e.location), "value": _jnum(e.value), "kind": e.kind}
                            for e in result.extrema],
                "period_estimate": None if result.period_estimate is None else _jnum(result.period_estimate),
                "summary": _json_summary(result.summary),
            }
            return json.dumps(body, indent=2) + "\n"
    elif isinstance(result, PhaseGrid):
        if fmt == "matrix":
            return _grid_matrix(result)
        if fmt == "csv":
            lines = ["q,p,W"]
            for qi, row in zip(result.q, result.values):
                lines += [f"{format_float(qi)},{format_float(pj)},{format_float(v)}"
                          for pj, v in zip(result.p, row)]
            return "\n".join(lines) + "\n"
        if fmt == "json":
            body = {"q_min": _jnum(result.q_min), "q_max": _jnum(result.q_max), "nq": result.nq,
                    "p_min": _jnum(result.p_min), "p_max": _jnum(result.p_max), "np": result.np,
                    "values": [[_jnum(v) for v in row] for row in result.values]}
            return json.dumps(body) + "\n"
    raise ValueError(f"cannot write {type(result).__name__} as {fmt!r}")


def _json_summary(summary):
    out = {}
    for k, v in summary.items():
        if isinstance(v, (list, tuple)):
            out[k] = [_jnum(x) for x in v]
        elif isinstance(v, bool) or v is None:
            out[k] = v
        else:
            out[k] = _jnum(v)
    return out


def write_result(result, fmt, sink=None):
    """Serialize `result` to `sink` (path, text stream, or stdout when None)."""
    text = _render(result, fmt)
    if sink is None:
        sys.stdout.write(text)
    elif isinstance(sink, (str, os.PathLike)):
        path = Path(sink)
        try:
            path.write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OutputError(f"cannot write {path}: {exc.strerror or exc}") from exc
    else:
        sink.write(text)


# --------------------------------------------------------------------------
# plot scripts

def _gp_grid_script(data, grid: PhaseGrid, title):
    dq = (grid.q_max - grid.q_min) / (grid.nq - 1)
    dp = (grid.p_max - grid.p_min) / (grid.np - 1)
    return f"""# gnuplot script: Wigner function map
set title "{title}"
set xlabel "q"; set ylabel "p"
set view map
set size ratio -1
set palette defined (-1 "blue", 0 "white", 1 "red")
set cbrange [-1/pi:1/pi]
splot "{data}" matrix using ({format_float(grid.q_min)} + $2*{format_float(dq)}):({format_float(grid.p_min)} + $1*{format_float(dp)}):3 with pm3d notitle
"""


def _gp_sweep_script(data, xlabel, title, extra=""):
    return f"""# gnuplot script: delta along a parameter scan
set datafile separator ","
set title "{title}"
set xlabel "{xlabel}"; set ylabel "delta"
set key autotitle columnhead
plot "{data}" using 1:2 with lines lw 2{extra}
"""


FIGURES = {
    "fig2": ("cat Wigner maps, standing (p0=0) and moving (p0=4)",
             [f"cat:q0={q0},p0={p0}" for p0 in (0, 4) for q0 in (0.5, 1, 3)]),
    "fig3": ("cat Wigner maps at the extrema of delta(q0), p0=4",
             [f"cat:q0={q0},p0=4" for q0 in (0.4, 0.725, 1.175)]),
    "fig4": ("delta(q0) of cat states for several p0", [0, 1, 2, 4]),
    "fig5": ("delta(p0) of cat states for several q0", [1, 2, 3]),
    "fig6": ("delta of Fock states versus n with sqrt(n)/2", 250),
    "fig7": ("squeezed Fock n=3, phi=pi/6, several s",
             [f"sdf:n=3,s={s},phi={math.pi / 6!r}" for s in (0, 0.5, 1, 1.5)]),
}


def emit_figure_scripts(outdir) -> list[Path]:
    """Write a data-generation shell script and one gnuplot script per figure analogue."""
    out = Path(outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputError(f"cannot create {out}: {exc.strerror or exc}") from exc
    sh = ["#!/bin/sh", "# regenerate the data read by the gnuplot scripts", "set -e"]
    written = []
    for fig, (title, what) in FIGURES.items():
        gp = [f"# {fig}: {title}", "set terminal pngcairo size 1200,800", f'set output "{fig}.png"']
        if fig in ("fig2", "fig3", "fig7"):
            cols = 3 if len(what) % 3 == 0 else 2
            rows = math.ceil(len(what) / cols)
            gp += [f"set multiplot layout {rows},{cols}", "set view map", "set size ratio -1",
                   'set palette defined (-1 "blue", 0 "white", 1 "red")', "set cbrange [-1/pi:1/pi]"]
            for k, state in enumerate(what):
                data = f"{fig}_{k}.dat"
                sh.append(f"wignerneg eval --state '{state}' --points 301 --padding 4 --format matrix -o {data}")
                gp += [f'set title "{state}"',
                       f'load "< sed -n \'1,2p\' {data} | awk \'{{print \\"# \\" $0}}\'"',
                       f'splot "{data}" matrix with pm3d notitle']
            gp.append("unset multiplot")
        elif fig == "fig4":
            gp += ['set datafile separator ","', 'set xlabel "q0"', 'set ylabel "delta"']
            plots = []
            for p0 in what:
                data = f"{fig}_p0_{p0}.csv"
                sh.append(f"wignerneg sweep --state cat --vary q0=0:6:0.025 --fixed p0={p0} --format csv -o {data}")
                plots.append(f'"{data}" every ::1 using 1:2 with lines title "p0={p0}"')
            gp.append("plot " + ", ".join(plots))
        elif fig == "fig5":
            gp += ['set datafile separator ","', 'set xlabel "p0"', 'set ylabel "delta"']
            plots = []
            for q0 in what:
                data = f"{fig}_q0_{q0}.csv"
                sh.append(f"wignerneg sweep --state cat --vary p0=0:12.566:0.02 --fixed q0={q0} --tol 1e-6 --format csv -o {data}")
                plots.append(f'"{data}" every ::1 using 1:2 with lines title "q0={q0}"')
            gp.append("plot " + ", ".join(plots))
        else:
            data = f"{fig}.csv"
            sh.append(f"wignerneg fock-scan --n-max {what} --tol 1e-3 --format csv -o {data}")
            gp += ['set datafile separator ","', 'set xlabel "n"', 'set ylabel "delta"',
                   f'plot "{data}" every ::1 using 1:2 with lines lw 2 title "delta(n)", '
                   'sqrt(x)/2 dashtype 2 title "sqrt(n)/2"']
        path = out / f"{fig}.gp"
        path.write_text("\n".join(gp) + "\n", encoding="utf-8")
        written.append(path)
    run = out / "make_data.sh"
    run.write_text("\n".join(sh) + "\n", encoding="utf-8")
    run.chmod(0o755)
    written.append(run)
    return written


# --------------------------------------------------------------------------
# validation suite

@dataclass
class Check:
    name: str
    measured: float
    expected: float
    tol: float
    relation: str = "abs"  # "abs": |m - e| <= tol; "le": m <= e + tol; "ge": m >= e - tol
    expected_text: str | None = None

    @property
    def passed(self):
        m, e, t = self.measured, self.expected, self.tol
        if not math.isfinite(m):
            return False
        if self.relation == "le":
            return m <= e + t
        if self.relation == "ge":
            return m >= e - t
        return abs(m - e) <= t

    def line(self):
        exp = self.expected_text or format(self.expected, ".9g")
        rel = {"abs": "expected", "le": "expected <=", "ge": "expected >="}[self.relation]
        return (f"{self.name}: measured≈{self.measured:.5g} {rel} {exp} "
                f"tol {self.tol:g} {'PASS' if self.passed else 'FAIL'}")


# reference values for the number states
FOCK_DELTAS = [(0, 0.0, "0", 1e-6), (1, 4 * math.exp(-0.5) - 2, "0.4261226", 1e-4),
               (2, 0.72899, "0.72899", 1e-4), (3, 0.97667, "0.97667", 5e-4),
               (4, 1.19138, "1.19138", 5e-4)]

ORACLE_STATES = (
    [Fock(n) for n in (0, 1, 2, 3, 5)]
    + [Cat(q0, p0) for q0, p0 in ((0, 0), (1, 4), (3, 0), (6, 2))]
    + [SqueezedVacuum(s=s) for s in (0.0, 0.5, 1.0)]
)


def _oracle_grid_diff(spec, size=33):
    rect = support_rectangle(spec, 1.0)
    qs = np.linspace(rect.q_min, rect.q_max, size)
    ps = np.linspace(rect.p_min, rect.p_max, size)
    worst = 0.0
    for q in qs:
        closed = wigner(spec, q, ps)
        for p, c in zip(ps, closed):
            worst = max(worst, abs(wigner_from_wavefunction(spec, q, p) - c))
    return worst


def validate_suite(quad: QuadratureConfig | None = None, delta_fn=None, stream=None,
                   quick=False) -> list[Check]:
    """Run the reference checks, printing one PASS/FAIL line each.

    `delta_fn(spec, quad)` replaces `delta_indicator` (for harness tests).
    """
    quad = quad or QuadratureConfig()
    delta_fn = delta_fn or delta_indicator
    stream = stream or sys.stdout
    checks = []

    def emit(check):
        checks.append(check)
        print(check.line(), file=stream, flush=True)

    for n, expected, text, tol in FOCK_DELTAS:
        emit(Check(f"fock n={n} delta", delta_fn(Fock(n), quad).delta, expected, tol, expected_text=text))
    emit(Check("cat q0=6 p0=0 delta", delta_fn(Cat(6.0, 0.0), quad).delta, 0.636, 5e-3, expected_text="0.636"))
    for p0 in (0.0, 2.0):
        emit(Check(f"cat q0=0 p0={p0:g} delta", delta_fn(Cat(0.0, p0), quad).delta, 0.0, 1e-6))

    sq = [delta_fn(SqueezedDisplacedFock(3, s, math.pi / 6), quad).delta for s in (0.0, 0.5, 1.0, 1.5)]
    emit(Check("sdf n=3 phi=pi/6 squeezing spread", max(sq) - min(sq), 0.0, 5e-3))
    disp = [delta_fn(SqueezedDisplacedFock(2, 0.0, 0.0, q0, p0), quad).delta
            for q0, p0 in ((0, 0), (3, -2), (10, 10))]
    emit(Check("sdf n=2 displacement spread", max(disp) - min(disp), 0.0, 2e-4))

    for d in (0.0, 0.4261226, 1.0, 7.99):
        emit(Check(f"nu round trip delta={d:g}", abs(delta_from_nu(nu_from_delta(d)) - d), 0.0, 1e-14))

    for spec in (Fock(1), Fock(3), Cat(2.0, 4.0), SqueezedDisplacedFock(2, 1.0, 0.7, 1.0, -1.0)):
        grid = evaluate_grid(spec, support_rectangle(spec, 6.0), 401, 401)
        label = format_state(spec)
        emit(Check(f"normalization {label}", grid.trapezoid(), 1.0, 1e-5))
        emit(Check(f"bound max|W| {label}", float(np.abs(grid.values).max()), 1 / math.pi, 1e-12,
                   relation="le", expected_text="1/pi"))

    for q0, p0 in ((0.5, 4.0), (2.0, 0.0), (6.0, 0.0)):
        ub = cat_delta_upper_bound(q0, p0)
        emit(Check(f"cat upper bound q0={q0:g} p0={p0:g}", ub, delta_fn(Cat(q0, p0), quad).delta,
                   2 * quad.tolerance, relation="ge"))
        cap = 2 * cat_normalization(q0, p0).N ** 2 - 1
        emit(Check(f"cat bound cap q0={q0:g} p0={p0:g}", ub, cap, 1e-9, relation="le"))

    oracle_states = ORACLE_STATES if not quick else [Fock(3), Cat(1, 4), SqueezedVacuum(s=0.5)]
    for spec in oracle_states:
        emit(Check(f"oracle {format_state(spec)} max-abs-diff", _oracle_grid_diff(spec), 0.0, 1e-6))
    return checks


# --------------------------------------------------------------------------

def _progress(record):
    print(f"  {format_float(record.param)}: delta={format_float(record.delta)}", file=sys.stderr, flush=True)


def run(cfg: RunConfig) -> int:
    if cfg.command == "validate":
        checks = validate_suite(quick=cfg.quick)
        failed = sum(not c.passed for c in checks)
        print(f"{len(checks) - failed}/{len(checks)} checks passed (backend {kernels.BACKEND})")
        return 1 if failed else 0
    if cfg.command == "figures":
        for path in emit_figure_scripts(cfg.output):
            print(path)
        return 0

    status = 0
    if cfg.command == "eval":
        rect = cfg.rect or support_rectangle(cfg.state, cfg.quad.padding)
        nq, np_ = cfg.points or (201, 201)
        result = evaluate_grid(cfg.state, rect, nq, np_)
    elif cfg.command == "delta":
        result = delta_indicator(cfg.state, cfg.quad)
        status = 0 if result.converged else 1
    elif cfg.command == "sweep":
        result = run_sweep(_sweep_spec(cfg), progress=_progress)
        status = 0 if all(r.converged for r in result.records) else 1
    else:
        result = fock_scan(cfg.n_max, cfg.quad, progress=_progress)
        status = 0 if all(r.converged for r in result.records) and result.summary["monotone"] else 1
    write_result(result, cfg.format, cfg.output)

    if cfg.plot_script is not None:
        data = os.path.relpath(cfg.output, Path(cfg.plot_script).resolve().parent)
        if cfg.command == "eval":
            text = _gp_grid_script(data, result, format_state(cfg.state))
        elif cfg.command == "sweep":
            text = _gp_sweep_script(data, cfg.vary[0], format_state(cfg.state))
        else:
            text = _gp_sweep_script(data, "n", "Fock states", ', sqrt(x)/2 dashtype 2 title "sqrt(n)/2"')
        try:
            Path(cfg.plot_script).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise OutputError(f"cannot write {cfg.plot_script}: {exc.strerror or exc}") from exc
    return status


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"wignerneg: error: {exc}", file=sys.stderr)
        return 2
    try:
        return run(cfg)
    except OutputError as exc:
        print(f"wignerneg: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
