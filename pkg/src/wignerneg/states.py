"""State family and closed-form Wigner functions (m = hbar = omega = 1).

Phase-space points use ``alpha = (q + i p) / sqrt(2)``; a displacement
``(q0, p0)`` corresponds to ``beta = (q0 + i p0) / sqrt(2)`` and squeezing to
``eta = s * exp(i phi)``. All Wigner functions here are densities with respect
to ``dq dp`` and integrate to one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Union

import numpy as np

from .special_fn import hermite_functions, weighted_laguerre

__all__ = [
    "Fock",
    "Coherent",
    "SqueezedVacuum",
    "SqueezedDisplacedFock",
    "Cat",
    "StateSpec",
    "CatNormalization",
    "StateError",
    "UnsupportedStateError",
    "parse_state",
    "format_state",
    "as_sdf",
    "wigner_fock",
    "wigner_sdf",
    "wigner_squeezed_vacuum",
    "cat_normalization",
    "wigner_cat",
    "wigner",
    "wavefunction",
]


class StateError(ValueError):
    """Invalid state parameters or malformed state string."""


class UnsupportedStateError(StateError):
    """The requested operation has no implementation for this state."""


def _finite(name, value):
    if not math.isfinite(value):
        raise StateError(f"{name} must be finite, got {value!r}")


def _order(value):
    if isinstance(value, float) and value.is_integer():
        value = int(value)
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < 0:
        raise StateError(f"n must be a nonnegative integer, got {value!r}")
    return int(value)


def _nonneg(name, value):
    _finite(name, value)
    if value < 0:
        raise StateError(f"{name} must be >= 0, got {value!r}")


@dataclass(frozen=True)
class Fock:
    n: int = 0

    def __post_init__(self):
        object.__setattr__(self, "n", _order(self.n))


@dataclass(frozen=True)
class Coherent:
    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        _finite("q0", self.q0)
        _finite("p0", self.p0)


@dataclass(frozen=True)
class SqueezedVacuum:
    s: float = 0.0
    phi: float = 0.0
    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        _nonneg("s", self.s)
        for name in ("phi", "q0", "p0"):
            _finite(name, getattr(self, name))


@dataclass(frozen=True)
class SqueezedDisplacedFock:
    n: int = 0
    s: float = 0.0
    phi: float = 0.0
    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n", _order(self.n))
        _nonneg("s", self.s)
        for name in ("phi", "q0", "p0"):
            _finite(name, getattr(self, name))


@dataclass(frozen=True)
class Cat:
    """Superposition of coherent packets at ``(+q0, p0)`` and ``(-q0, p0)``."""

    q0: float = 0.0
    p0: float = 0.0

    def __post_init__(self):
        _nonneg("q0", self.q0)
        _finite("p0", self.p0)


StateSpec = Union[Fock, Coherent, SqueezedVacuum, SqueezedDisplacedFock, Cat]

_TAGS = {
    "fock": Fock,
    "coherent": Coherent,
    "sqvac": SqueezedVacuum,
    "sdf": SqueezedDisplacedFock,
    "cat": Cat,
}
_TAG_OF = {cls: tag for tag, cls in _TAGS.items()}


def parse_state(text: str) -> StateSpec:
    """Parse ``tag[:key=value,...]``, e.g. ``sdf:n=3,s=0.5,phi=0.52``.

    Keys may come in any order and default to 0 when absent. Unknown tags,
    unknown keys, repeated keys and unparsable values raise `StateError`.
    """
    tag, _, body = text.strip().partition(":")
    cls = _TAGS.get(tag.strip().lower())
    if cls is None:
        raise StateError(f"unknown state tag {tag!r} (expected one of {', '.join(_TAGS)})")
    allowed = {f.name for f in fields(cls)}
    kwargs = {}
    for item in filter(None, (part.strip() for part in body.split(","))):
        key, eq, raw = item.partition("=")
        key = key.strip()
        if not eq:
            raise StateError(f"malformed state parameter {item!r} (expected key=value)")
        if key not in allowed:
            raise StateError(f"unknown key {key!r} for state {tag!r}")
        if key in kwargs:
            raise StateError(f"repeated key {key!r}")
        try:
            value = float(raw)
        except ValueError:
            raise StateError(f"bad value {raw!r} for {key}") from None
        if key == "n":
            if not value.is_integer():
                raise StateError(f"n must be a nonnegative integer, got {raw!r}")
            value = int(value)
        kwargs[key] = value
    return cls(**kwargs)


def format_state(spec: StateSpec) -> str:
    """Inverse of `parse_state`; emits every field so the round trip is exact."""
    parts = []
    for f in fields(spec):
        value = getattr(spec, f.name)
        parts.append(f"{f.name}={value}" if f.name == "n" else f"{f.name}={float(value)!r}")
    return f"{_TAG_OF[type(spec)]}:{','.join(parts)}"


def as_sdf(spec: StateSpec) -> SqueezedDisplacedFock:
    """Express any Gaussian-envelope state in the squeezed displaced Fock family."""
    if isinstance(spec, SqueezedDisplacedFock):
        return spec
    if isinstance(spec, Fock):
        return SqueezedDisplacedFock(n=spec.n)
    if isinstance(spec, Coherent):
        return SqueezedDisplacedFock(q0=spec.q0, p0=spec.p0)
    if isinstance(spec, SqueezedVacuum):
        return SqueezedDisplacedFock(s=spec.s, phi=spec.phi, q0=spec.q0, p0=spec.p0)
    raise UnsupportedStateError(f"{type(spec).__name__} is not a squeezed displaced Fock state")


def wigner_fock(n, q, p):
    """Wigner function of the number state ``|n>``; ``|W| <= 1/pi``."""
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    sign = -1.0 if n % 2 else 1.0
    out = sign / math.pi * weighted_laguerre(n, 2.0 * (q * q + p * p))
    return float(out) if np.ndim(out) == 0 else out


def _four_b_squared(spec, q, p):
    # 4|b|^2 with b = cosh(s)(alpha* - beta*) + exp(-i phi) sinh(s)(alpha - beta)
    dq = np.asarray(q, dtype=float) - spec.q0
    dp = np.asarray(p, dtype=float) - spec.p0
    ch, sh = math.cosh(spec.s), math.sinh(spec.s)
    c, s = math.cos(spec.phi), math.sin(spec.phi)
    re = ch * dq + sh * (c * dq + s * dp)
    im = -ch * dp + sh * (c * dp - s * dq)
    return 2.0 * (re * re + im * im)


def wigner_sdf(spec: SqueezedDisplacedFock, q, p):
    """Wigner function of the squeezed displaced Fock state.

    Returns ``((-1)^n / pi) exp(-2|b|^2) L_n(4|b|^2)``. The prefactor is
    ``1/pi`` because the density is taken with respect to ``dq dp``; the
    same function written as a density in ``d^2 alpha`` carries ``2/pi``.
    """
    x = _four_b_squared(spec, q, p)
    sign = -1.0 if spec.n % 2 else 1.0
    out = sign / math.pi * weighted_laguerre(spec.n, x)
    return float(out) if np.ndim(out) == 0 else out


def wigner_squeezed_vacuum(spec: SqueezedVacuum, q, p):
    """Gaussian Wigner function of a squeezed vacuum with ``phi = 0``."""
    if spec.phi != 0:
        raise UnsupportedStateError("closed Gaussian form needs phi == 0; use wigner_sdf")
    dq = np.asarray(q, dtype=float) - spec.q0
    dp = np.asarray(p, dtype=float) - spec.p0
    e2s = math.exp(2.0 * spec.s)
    out = np.exp(-e2s * dq * dq - dp * dp / e2s) / math.pi
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class CatNormalization:
    q0: float
    p0: float
    N: float


def cat_normalization(q0, p0) -> CatNormalization:
    """Normalization of the two-packet superposition."""
    radicand = 1.0 + math.cos(2.0 * p0 * q0) * math.exp(-q0 * q0)
    if not radicand > 0.0:
        raise StateError(f"degenerate cat normalization at q0={q0}, p0={p0}")
    return CatNormalization(q0=q0, p0=p0, N=radicand ** -0.5)


def wigner_cat(q0, p0, q, p):
    """Two Gaussian peaks at ``(+-q0, p0)`` plus the interference fringes at ``q = 0``."""
    n2 = cat_normalization(q0, p0).N ** 2
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    gp = np.exp(-((p - p0) ** 2))
    peaks = 0.5 * (np.exp(-((q + q0) ** 2)) + np.exp(-((q - q0) ** 2)))
    fringes = np.cos(2.0 * p * q0) * np.exp(-q * q)
    out = n2 / math.pi * gp * (peaks + fringes)
    return float(out) if np.ndim(out) == 0 else out


def wigner(spec: StateSpec, q, p):
    """Dispatch to the closed form for `spec`."""
    if isinstance(spec, Cat):
        return wigner_cat(spec.q0, spec.p0, q, p)
    if isinstance(spec, Fock):
        return wigner_fock(spec.n, q, p)
    return wigner_sdf(as_sdf(spec), q, p)


def _sdf_phi0_wavefunction(n, s, q0, p0, q):
    # squeezing by exp(s) in q, then displacement and momentum kick
    scale = math.exp(s)
    h = hermite_functions(n, scale * (q - q0))[n]
    return math.sqrt(scale) * h * np.exp(1j * p0 * q)


def wavefunction(spec: StateSpec, q):
    """Position amplitude ``psi(q)`` (complex), normalized to one.

    Supported: Fock, Coherent, SqueezedVacuum and SqueezedDisplacedFock with
    ``phi == 0``, and Cat. Rotated squeezing has no position-space path here.
    """
    q = np.asarray(q, dtype=float)
    if isinstance(spec, Cat):
        N = cat_normalization(spec.q0, spec.p0).N
        pref = N / math.sqrt(2.0) * math.pi ** -0.25
        plus = np.exp(-0.5 * (q + spec.q0) ** 2 + 1j * spec.p0 * (q + spec.q0))
        minus = np.exp(-0.5 * (q - spec.q0) ** 2 + 1j * spec.p0 * (q - spec.q0))
        out = pref * (plus + minus)
    elif isinstance(spec, Fock):
        out = hermite_functions(spec.n, q)[spec.n].astype(complex)
    else:
        sdf = as_sdf(spec)
        if sdf.phi != 0:
            raise UnsupportedStateError("no position-space wavefunction for phi != 0 squeezing")
        out = _sdf_phi0_wavefunction(sdf.n, sdf.s, sdf.q0, sdf.p0, q)
    return complex(out) if out.ndim == 0 else out
