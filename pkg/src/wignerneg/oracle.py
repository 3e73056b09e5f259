"""Independent checks on the closed forms and on the 2D quadrature.

* `wigner_from_wavefunction` integrates the Wigner transform of a position
  wavefunction directly, one phase-space point at a time.
* `cat_delta_upper_bound` bounds the cat negativity by dropping the
  interference between the fringes and the peaks.
* `fock_delta_radial` and `cat_delta_1d` reduce delta to one-dimensional
  integrals with the sign changes located analytically, giving reference
  values for the lattice quadrature in `negativity`.
"""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate, special

from .states import (
    Cat,
    SqueezedDisplacedFock,
    StateSpec,
    UnsupportedStateError,
    as_sdf,
    cat_normalization,
    wavefunction,
)
from .special_fn import hermite_functions

__all__ = [
    "ResolutionError",
    "default_x_cutoff",
    "wigner_transform",
    "wigner_from_wavefunction",
    "rotated_sdf_wavefunction",
    "cat_delta_upper_bound",
    "fock_delta_radial",
    "cat_delta_1d",
]

# one-sided Gaussian tail e^{-t^2} is below 1e-35 past this
_TAIL = 9.0


class ResolutionError(RuntimeError):
    """The transform integral left a non-negligible imaginary part."""


def _energy_scale(spec):
    if isinstance(spec, Cat):
        return abs(spec.q0), 1.0
    sdf = as_sdf(spec)
    return abs(sdf.q0), math.sqrt(2 * sdf.n + 1) * math.exp(sdf.s)


def default_x_cutoff(spec: StateSpec) -> float:
    shift, radius = _energy_scale(spec)
    return 2.0 * (shift + radius) + 12.0


def wigner_transform(psi, q, p, x_cutoff, nx=4096):
    """Complex value of ``(1/2pi) int psi(q - x/2) conj(psi(q + x/2)) exp(ipx) dx``.

    `psi` is any vectorized callable; the integral is a composite trapezoid
    on ``nx`` intervals of ``[-x_cutoff, x_cutoff]``.
    """
    if nx < 64:
        raise ValueError("nx must be >= 64")
    x = np.linspace(-x_cutoff, x_cutoff, nx + 1)
    integrand = psi(q - 0.5 * x) * np.conj(psi(q + 0.5 * x)) * np.exp(1j * p * x)
    return complex(np.trapezoid(integrand, x)) / (2.0 * math.pi)


def wigner_from_wavefunction(spec: StateSpec, q, p, x_cutoff=None, nx=4096,
                             imag_limit=1e-6):
    """Wigner value at ``(q, p)`` from the position wavefunction of `spec`."""
    if isinstance(spec, SqueezedDisplacedFock) and spec.phi != 0:
        raise UnsupportedStateError("no wavefunction path for phi != 0 squeezing")
    if x_cutoff is None:
        x_cutoff = default_x_cutoff(spec)
    value = wigner_transform(lambda y: wavefunction(spec, y), q, p, x_cutoff, nx)
    if abs(value.imag) > imag_limit:
        raise ResolutionError(
            f"imaginary residual {value.imag:.3g} at ({q}, {p}); increase nx or x_cutoff"
        )
    return value.real


def rotated_sdf_wavefunction(spec: SqueezedDisplacedFock, k_max=120, q_span=None, nq=8001):
    """Position wavefunction of a squeezed displaced Fock state with any ``phi``.

    The ``phi = 0`` squeezed Fock state is projected numerically on number
    states up to `k_max`; the phase ``exp(i k phi/2)`` on each amplitude
    rotates its Wigner function by ``phi/2``, which is how the squeezing
    angle enters. The result is then displaced to ``(q0, p0)``. Returns a
    vectorized callable.
    """
    base = SqueezedDisplacedFock(n=spec.n, s=spec.s, phi=0.0)
    if q_span is None:
        q_span = 2.0 * math.sqrt(2 * k_max + 1) + 10.0
    grid = np.linspace(-q_span, q_span, nq)
    basis = hermite_functions(k_max, grid)
    amps = np.trapezoid(basis * wavefunction(base, grid)[None, :], grid, axis=1)
    amps = amps * np.exp(0.5j * spec.phi * np.arange(k_max + 1))
    q0, p0 = spec.q0, spec.p0

    def psi(q):
        q = np.asarray(q, dtype=float)
        h = hermite_functions(k_max, q - q0)
        return np.tensordot(amps, h, axes=1) * np.exp(1j * p0 * q)

    return psi


def cat_delta_upper_bound(q0, p0, tol=1e-10):
    """Triangle-inequality bound ``N^2 [1 + pi^-1/2 int |cos 2pq0| e^-(p-p0)^2 dp] - 1``.

    The momentum integral is split at every zero of ``cos(2 p q0)`` so each
    panel has a smooth integrand.
    """
    if q0 < 0:
        raise ValueError("q0 must be >= 0")
    if q0 == 0:
        return 0.0
    n2 = cat_normalization(q0, p0).N ** 2
    half = _TAIL + math.sqrt(max(0.0, -math.log(tol)))
    lo, hi = p0 - half, p0 + half
    spacing = math.pi / (2.0 * q0)
    k0 = math.ceil((lo - spacing / 2.0) / spacing)
    cuts = [lo] + [spacing * (k + 0.5) for k in range(k0, k0 + int(2 * half / spacing) + 3)
                   if lo < spacing * (k + 0.5) < hi] + [hi]
    f = lambda p: abs(math.cos(2.0 * p * q0)) * math.exp(-((p - p0) ** 2))
    panel_tol = tol / len(cuts)
    total = math.fsum(integrate.quad(f, a, b, epsabs=panel_tol, epsrel=0)[0]
                      for a, b in zip(cuts[:-1], cuts[1:]))
    return n2 * (1.0 + total / math.sqrt(math.pi)) - 1.0


def fock_delta_radial(n, tol=1e-13):
    """Delta of ``|n>`` as ``(1/2) int_0^inf e^{-x/2} |L_n(x)| dx - 1``.

    The radial integral is split at the Gauss-Laguerre nodes, which are the
    zeros of ``L_n``; uses scipy's Laguerre evaluation throughout.
    """
    if n == 0:
        return 0.0
    roots = np.sort(special.roots_laguerre(n)[0])
    # past the last zero the weighted polynomial decays like exp(-(x - x_n)/4)
    edges = np.concatenate([[0.0], roots, [roots[-1] + 200.0]])
    f = lambda x: math.exp(-0.5 * x) * abs(special.eval_laguerre(n, x))
    parts = [integrate.quad(f, a, b, epsabs=tol, epsrel=tol, limit=200)[0]
             for a, b in zip(edges[:-1], edges[1:])]
    return 0.5 * math.fsum(parts) - 1.0


def _gauss_cos_integral(t1, t2, q0, p0):
    """``int_{t1}^{t2} cos(2 (t + p0) q0) exp(-t^2) dt`` via the complex error function."""
    z = special.erf(t2 - 1j * q0) - special.erf(t1 - 1j * q0)
    return (np.exp(2j * p0 * q0 - q0 * q0) * 0.5 * math.sqrt(math.pi) * z).real


def _cat_negative_slice(q, q0, p0):
    """Negative part of ``int W dp`` at fixed q, divided by ``N^2 / pi``."""
    b = math.exp(-q * q)
    r = math.exp(-q0 * q0) * math.cosh(2.0 * q * q0)  # peaks / fringe amplitude
    if r >= 1.0:
        return 0.0
    theta = math.acos(-r)
    lo, hi = p0 - _TAIL, p0 + _TAIL
    k_first = math.floor((2.0 * lo * q0 - (2.0 * math.pi - theta)) / (2.0 * math.pi))
    k_last = math.ceil((2.0 * hi * q0 - theta) / (2.0 * math.pi))
    total = 0.0
    for k in range(k_first, k_last + 1):
        a = (2.0 * math.pi * k + theta) / (2.0 * q0)
        c = a + (math.pi - theta) / q0
        a, c = max(a, lo), min(c, hi)
        if c <= a:
            continue
        t1, t2 = a - p0, c - p0
        gauss = 0.5 * math.sqrt(math.pi) * (math.erf(t2) - math.erf(t1))
        total -= r * gauss + _gauss_cos_integral(t1, t2, q0, p0)
    return b * total


def cat_delta_1d(q0, p0, tol=1e-12):
    """Cat negativity from one outer quadrature over q.

    At fixed q the Wigner function is ``(N^2/pi) e^{-(p-p0)^2} e^{-q^2}
    (r(q) + cos 2pq0)``, so its negative intervals in p are known exactly
    and integrate in closed form. Negativity only exists where ``r(q) < 1``,
    i.e. ``|q| < arccosh(e^{q0^2}) / (2 q0)``.
    """
    if q0 < 0:
        raise ValueError("q0 must be >= 0")
    if q0 == 0:
        return 0.0
    n2 = cat_normalization(q0, p0).N ** 2
    edge = math.acosh(math.exp(q0 * q0)) / (2.0 * q0)
    inner, _ = integrate.quad(_cat_negative_slice, 0.0, edge, args=(q0, p0),
                              epsabs=tol, epsrel=tol, limit=400)
    # even in q; delta is twice the negative volume
    return 2.0 * 2.0 * n2 / math.pi * inner
