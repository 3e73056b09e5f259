"""Negative volume of a Wigner function by truncated-domain quadrature.

The Wigner function is sampled on a uniform lattice, interpolated linearly
on the triangulated cells, and the negative part of that interpolant is
integrated exactly. This is the two-dimensional trapezoid rule with the
sign changes inside cells split out, so the nodal lines of W do not spoil the
regular ``h**2`` error expansion. Successive lattice doublings are combined
by Richardson extrapolation until two extrapolated values agree.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .states import Cat, StateSpec, as_sdf, cat_normalization

__all__ = [
    "Rectangle",
    "QuadratureConfig",
    "NegativityResult",
    "PhaseGrid",
    "ConvergenceWarning",
    "support_rectangle",
    "evaluate_grid",
    "delta_indicator",
    "nu_from_delta",
    "delta_from_nu",
]


class ConvergenceWarning(UserWarning):
    """Raised (as a warning) when the resolution ladder ends before meeting tolerance."""


class Rectangle(NamedTuple):
    q_min: float
    q_max: float
    p_min: float
    p_max: float

    @property
    def widths(self):
        return self.q_max - self.q_min, self.p_max - self.p_min


@dataclass(frozen=True)
class QuadratureConfig:
    """Truncation and resolution policy for `delta_indicator`.

    ``threads`` and ``backend`` only choose how the work runs; results do not
    depend on the thread count.
    """

    padding: float = 6.0
    base_cells_per_unit: int = 16
    max_refinements: int = 6
    tolerance: float = 1e-4
    threads: int | None = None
    backend: str | None = None

    def __post_init__(self):
        if not (self.padding >= 0 and math.isfinite(self.padding)):
            raise ValueError(f"padding must be finite and >= 0, got {self.padding}")
        if int(self.base_cells_per_unit) != self.base_cells_per_unit or self.base_cells_per_unit < 1:
            raise ValueError("base_cells_per_unit must be a positive integer")
        if int(self.max_refinements) != self.max_refinements or self.max_refinements < 2:
            raise ValueError("max_refinements must be an integer >= 2 (extrapolation needs three levels)")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")


@dataclass
class NegativityResult:
    delta: float
    nu: float
    i_plus: float
    i_minus: float
    error_estimate: float
    domain: Rectangle
    resolution: tuple[int, int]
    converged: bool = True
    raw_delta: float = 0.0
    history: list[tuple[int, int, float]] = field(default_factory=list, repr=False)

    def as_dict(self):
        """Report fields in their canonical order."""
        return {
            "delta": self.delta,
            "nu": self.nu,
            "i_plus": self.i_plus,
            "i_minus": self.i_minus,
            "error_estimate": self.error_estimate,
            "domain": list(self.domain),
            "resolution": list(self.resolution),
        }


@dataclass
class PhaseGrid:
    q_min: float
    q_max: float
    p_min: float
    p_max: float
    nq: int
    np: int
    values: np.ndarray

    def __post_init__(self):
        if not (self.q_max > self.q_min and self.p_max > self.p_min):
            raise ValueError("grid rectangle must have positive extent")
        if self.values.shape != (self.nq, self.np):
            raise ValueError(f"values shape {self.values.shape} != ({self.nq}, {self.np})")

    @property
    def q(self):
        return np.linspace(self.q_min, self.q_max, self.nq)

    @property
    def p(self):
        return np.linspace(self.p_min, self.p_max, self.np)

    def trapezoid(self):
        """Composite trapezoid integral of the stored values."""
        return float(np.trapezoid(np.trapezoid(self.values, self.p, axis=1), self.q))


def support_rectangle(spec: StateSpec, padding: float = 6.0) -> Rectangle:
    """Rectangle outside of which ``|W|`` carries negligible mass.

    Fock-type states use the energy-shell radius ``sqrt(2n+1)`` stretched by
    ``exp(|s|)`` on both axes (the squeezing direction may be rotated).
    """
    if isinstance(spec, Cat):
        return Rectangle(-spec.q0 - padding, spec.q0 + padding, spec.p0 - padding, spec.p0 + padding)
    sdf = as_sdf(spec)
    half = math.sqrt(2 * sdf.n + 1) * math.exp(abs(sdf.s)) + padding
    return Rectangle(sdf.q0 - half, sdf.q0 + half, sdf.p0 - half, sdf.p0 + half)


def _kernel_args(spec: StateSpec):
    if isinstance(spec, Cat):
        n2 = cat_normalization(spec.q0, spec.p0).N ** 2
        return kernels.KIND_CAT, np.array([spec.q0, spec.p0, n2], dtype=float)
    sdf = as_sdf(spec)
    return kernels.KIND_SDF, np.array([sdf.n, sdf.s, sdf.phi, sdf.q0, sdf.p0], dtype=float)


def evaluate_grid(spec: StateSpec, rect: Rectangle, nq: int, np_: int, *,
                  threads: int | None = None, backend: str | None = None) -> PhaseGrid:
    """Sample ``W`` at ``nq x np_`` uniform nodes, endpoints included."""
    if nq < 2 or np_ < 2:
        raise ValueError("grid needs at least 2 nodes per axis")
    rect = Rectangle(*map(float, rect))
    kind, params = _kernel_args(spec)
    impl = kernels.get_backend(backend)
    values = impl.grid_values(kind, params, rect.q_min, rect.q_max, int(nq),
                              rect.p_min, rect.p_max, int(np_), threads or kernels.default_threads())
    return PhaseGrid(rect.q_min, rect.q_max, rect.p_min, rect.p_max, int(nq), int(np_), values)


def _lattice_integrals(kind, params, rect, mq, mp, threads, impl):
    """Negative-part and total integrals of the interpolant on an ``mq x mp`` cell lattice."""
    neg, tot = impl.strip_integrals(kind, params, rect.q_min, rect.q_max, mq + 1,
                                    rect.p_min, rect.p_max, mp + 1, threads)
    wq, wp = rect.widths
    area = 0.5 * (wq / mq) * (wp / mp)
    # fsum keeps the reduction independent of how strips were partitioned
    return area * math.fsum(neg), area * math.fsum(tot)


def delta_indicator(spec: StateSpec, config: QuadratureConfig | None = None) -> NegativityResult:
    """Doubled negative volume ``delta = iint |W| dq dp - 1`` of `spec`.

    The lattice starts at ``base_cells_per_unit`` cells per unit length and
    doubles up to ``max_refinements`` times. Each new level yields a
    Richardson value ``(4 T_fine - T_coarse) / 3``; the ladder stops once two
    consecutive extrapolated deltas differ by less than ``tolerance``, which
    difference is reported as ``error_estimate``.

    A result that misses the tolerance is still returned, with
    ``converged=False`` and a `ConvergenceWarning`.
    """
    config = config or QuadratureConfig()
    rect = support_rectangle(spec, config.padding)
    kind, params = _kernel_args(spec)
    impl = kernels.get_backend(config.backend)
    threads = config.threads or kernels.default_threads()

    wq, wp = rect.widths
    mq0 = max(2, math.ceil(wq * config.base_cells_per_unit))
    mp0 = max(2, math.ceil(wp * config.base_cells_per_unit))

    history = []
    prev_t = prev_r = None
    err = math.inf
    converged = False
    for level in range(config.max_refinements + 1):
        mq, mp = mq0 << level, mp0 << level
        neg, tot = _lattice_integrals(kind, params, rect, mq, mp, threads, impl)
        if prev_t is not None:
            r_neg = (4.0 * neg - prev_t[0]) / 3.0
            r_tot = (4.0 * tot - prev_t[1]) / 3.0
            history.append((mq, mp, 2.0 * r_neg))
            if prev_r is not None:
                err = abs(2.0 * (r_neg - prev_r[0]))
                if err < config.tolerance:
                    converged = True
            prev_r = (r_neg, r_tot)
        else:
            history.append((mq, mp, 2.0 * neg))
        prev_t = (neg, tot)
        if converged:
            break

    r_neg, r_tot = prev_r
    raw = 2.0 * r_neg
    delta = max(raw, 0.0)
    if raw < 0.0:
        err = max(err, -raw)
    if not converged:
        warnings.warn(
            f"delta did not reach tolerance {config.tolerance:g} after "
            f"{config.max_refinements} refinements (last change {err:.3g})",
            ConvergenceWarning,
            stacklevel=2,
        )
    i_minus = 0.5 * delta
    return NegativityResult(
        delta=delta,
        nu=nu_from_delta(delta),
        i_plus=i_minus + r_tot,
        i_minus=i_minus,
        error_estimate=err,
        domain=rect,
        resolution=(mq, mp),
        converged=converged,
        raw_delta=raw,
        history=history,
    )


def nu_from_delta(delta: float) -> float:
    """Map the negative volume onto the bounded measure ``nu = delta / (1 + delta)``."""
    if not delta >= 0:
        raise ValueError(f"delta must be >= 0, got {delta}")
    return delta / (1.0 + delta)


def delta_from_nu(nu: float) -> float:
    if not 0 <= nu < 1:
        raise ValueError(f"nu must lie in [0, 1), got {nu}")
    return nu / (1.0 - nu)
