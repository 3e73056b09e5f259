"""One-parameter scans of delta with extremum and period detection."""
from __future__ import annotations

import dataclasses
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .negativity import ConvergenceWarning, QuadratureConfig, delta_indicator
from .states import Fock, StateSpec

__all__ = [
    "SweepSpec",
    "SweepRecord",
    "Extremum",
    "SweepResult",
    "scan_values",
    "find_extrema",
    "run_sweep",
    "fock_scan",
]

log = logging.getLogger(__name__)

MIN_POINTS = 8


class SweepRecord(NamedTuple):
    param: float
    delta: float
    nu: float
    error_estimate: float
    converged: bool = True


class Extremum(NamedTuple):
    location: float
    value: float
    kind: str  # "max" or "min"


@dataclass(frozen=True)
class SweepSpec:
    """Scan `varied` over ``start, start + step, ...`` up to `stop` (inclusive).

    `family` supplies the state type and default parameters; `fixed`
    overrides fields before each point is built.
    """

    family: StateSpec
    varied: str
    start: float
    stop: float
    step: float
    fixed: dict = field(default_factory=dict)
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        names = {f.name for f in dataclasses.fields(self.family)}
        if self.varied not in names:
            raise ValueError(f"{type(self.family).__name__} has no parameter {self.varied!r}")
        unknown = set(self.fixed) - names
        if unknown:
            raise ValueError(f"unknown fixed parameter(s): {', '.join(sorted(unknown))}")
        if self.varied in self.fixed:
            raise ValueError(f"{self.varied!r} is both varied and fixed")
        if not self.step > 0:
            raise ValueError("step must be > 0")
        if not self.start < self.stop:
            raise ValueError("start must be < stop")
        if len(scan_values(self.start, self.stop, self.step)) < MIN_POINTS:
            raise ValueError(f"a sweep needs at least {MIN_POINTS} points")

    def state_at(self, value) -> StateSpec:
        if self.varied == "n":
            value = int(round(value))
        return dataclasses.replace(self.family, **self.fixed, **{self.varied: value})


@dataclass
class SweepResult:
    varied: str
    records: list[SweepRecord]
    extrema: list[Extremum]
    period_estimate: float | None = None
    summary: dict = field(default_factory=dict)

    @property
    def params(self):
        return np.array([r.param for r in self.records])

    @property
    def deltas(self):
        return np.array([r.delta for r in self.records])


def scan_values(start, stop, step):
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [start + k * step for k in range(count)]


def find_extrema(x, y):
    """Interior local extrema from sign changes of the first differences.

    Each bracketing triple is refined by the vertex of its interpolating
    parabola. Runs of equal values are skipped rather than reported.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = np.diff(y)
    out = []
    last_sign, last_i = 0, None
    for i, step in enumerate(d):
        sign = int(np.sign(step))
        if sign == 0:
            continue
        if last_sign and sign != last_sign:
            # the turning node is the one right after the last nonzero difference
            k = last_i + 1
            out.append(_refine(x, y, k, "max" if last_sign > 0 else "min"))
        last_sign, last_i = sign, i
    return out


def _refine(x, y, k, kind):
    if k <= 0 or k >= len(x) - 1:
        return Extremum(float(x[k]), float(y[k]), kind)
    x0, x1, x2 = x[k - 1], x[k], x[k + 1]
    y0, y1, y2 = y[k - 1], y[k], y[k + 1]
    denom = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom
    b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom
    if a == 0:
        return Extremum(float(x1), float(y1), kind)
    xv = -b / (2 * a)
    xv = min(max(xv, x0), x2)
    c = y1 - a * x1 * x1 - b * x1
    yv = a * xv * xv + b * xv + c
    return Extremum(float(xv), float(yv), kind)


def _period(extrema):
    maxima = sorted(e.location for e in extrema if e.kind == "max")
    if len(maxima) < 3:
        return None
    return float(np.mean(np.diff(maxima)))


def _evaluate(state, quad):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", ConvergenceWarning)
        res = delta_indicator(state, quad)
    if caught:
        log.warning("point %s: %s", state, caught[-1].message)
    return res


def run_sweep(spec: SweepSpec, progress=None) -> SweepResult:
    """One `delta_indicator` call per scan point, then extrema and period.

    Points that miss the quadrature tolerance are kept and flagged
    (``converged=False``). A period is reported only for momentum scans with
    at least three maxima.
    """
    records = []
    for value in scan_values(spec.start, spec.stop, spec.step):
        res = _evaluate(spec.state_at(value), spec.quad)
        records.append(SweepRecord(float(value), res.delta, res.nu, res.error_estimate, res.converged))
        if progress is not None:
            progress(records[-1])
    records.sort(key=lambda r: r.param)
    extrema = find_extrema([r.param for r in records], [r.delta for r in records])
    period = _period(extrema) if spec.varied == "p0" else None
    return SweepResult(spec.varied, records, extrema, period)


def fock_scan(n_max: int, quad: QuadratureConfig | None = None, progress=None) -> SweepResult:
    """Delta of ``|0>, ..., |n_max>`` and its ratio to ``sqrt(n) / 2``.

    ``summary`` holds ``monotone`` (strict increase over the ladder), the
    ratio curve for ``n >= 1`` and its min/max, and the largest relative
    deviation from ``sqrt(n) / 2``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    quad = quad or QuadratureConfig()
    records = []
    for n in range(n_max + 1):
        res = _evaluate(Fock(n), quad)
        records.append(SweepRecord(float(n), res.delta, res.nu, res.error_estimate, res.converged))
        if progress is not None:
            progress(records[-1])
    deltas = np.array([r.delta for r in records])
    monotone = bool(np.all(np.diff(deltas) > 0))
    if not monotone:
        warnings.warn("delta(n) is not strictly increasing over the Fock ladder", RuntimeWarning)
    ns = np.arange(1, n_max + 1)
    ratio = deltas[1:] / (0.5 * np.sqrt(ns))
    summary = {
        "monotone": monotone,
        "ratio": ratio.tolist(),
        "ratio_min": float(ratio.min()),
        "ratio_max": float(ratio.max()),
        "max_rel_deviation": float(np.max(np.abs(ratio - 1.0))),
    }
    return SweepResult("n", records, find_extrema(ns, deltas[1:]), None, summary)
