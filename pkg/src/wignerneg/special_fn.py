"""Laguerre polynomials and the exponentially weighted Laguerre function.

Every Fock-type Wigner function contains the product ``exp(-x/2) * L_n(x)``.
The raw polynomial overflows double precision long before the weighted
product does, so the recurrence is run directly on the weighted values.
"""
import math

import numpy as np

__all__ = ["weighted_laguerre", "laguerre", "hermite_functions", "MAX_UNWEIGHTED_ORDER"]

MAX_UNWEIGHTED_ORDER = 30

# exp(-x/2) underflows to zero past this argument
_UNDERFLOW_X = 1400.0
_RESCALE = 1e200


def _check_order(n):
    if int(n) != n or n < 0:
        raise ValueError(f"order must be a nonnegative integer, got {n!r}")
    return int(n)


def _weighted_scaled(n, x):
    """Scalar weighted Laguerre for arguments where exp(-x/2) underflows.

    Runs the unweighted recurrence with periodic rescaling and applies the
    exponential weight (and accumulated scale) in log space at the end.
    """
    l0, l1 = 1.0, 1.0 - x
    if n == 0:
        return math.exp(-x / 2.0)
    log_scale = 0.0
    for k in range(1, n):
        l0, l1 = l1, ((2 * k + 1 - x) * l1 - k * l0) / (k + 1)
        if abs(l1) > _RESCALE:
            l0 /= _RESCALE
            l1 /= _RESCALE
            log_scale += math.log(_RESCALE)
    if l1 == 0.0:
        return 0.0
    return math.copysign(math.exp(math.log(abs(l1)) + log_scale - x / 2.0), l1)


def weighted_laguerre(n, x):
    """Evaluate ``exp(-x/2) * L_n(x)`` for ``x >= 0``.

    Parameters
    ----------
    n : int
        Nonnegative polynomial order.
    x : float or array_like
        Nonnegative argument(s).

    Returns
    -------
    float or ndarray
        Same shape as `x`. Magnitudes never exceed 1.

    Notes
    -----
    Uses ``w_{k+1} = ((2k+1-x) w_k - k w_{k-1}) / (k+1)`` seeded with
    ``w_0 = exp(-x/2)``, ``w_1 = (1-x) exp(-x/2)``. All intermediates are
    bounded by 1, so orders in the hundreds are safe.
    """
    n = _check_order(n)
    xa = np.asarray(x, dtype=float)
    if np.any(xa < 0) or np.any(np.isnan(xa)):
        raise ValueError("weighted_laguerre requires x >= 0")
    scalar = xa.ndim == 0
    xa = np.atleast_1d(xa)

    w0 = np.exp(-0.5 * xa)
    if n == 0:
        out = w0
    else:
        w1 = (1.0 - xa) * w0
        for k in range(1, n):
            w0, w1 = w1, ((2 * k + 1 - xa) * w1 - k * w0) / (k + 1)
        out = w1
    big = xa > _UNDERFLOW_X
    if np.any(big):
        out = out.copy()
        out[big] = [_weighted_scaled(n, float(v)) for v in xa[big]]
    return float(out[0]) if scalar else out


def laguerre(n, x):
    """Plain Laguerre polynomial ``L_n(x)`` for small orders (``n <= 30``)."""
    n = _check_order(n)
    if n > MAX_UNWEIGHTED_ORDER:
        raise ValueError(
            f"unweighted Laguerre limited to n <= {MAX_UNWEIGHTED_ORDER}; "
            "use weighted_laguerre for larger orders"
        )
    xa = np.asarray(x, dtype=float)
    l0 = np.ones_like(xa)
    if n == 0:
        out = l0
    else:
        l1 = 1.0 - xa
        for k in range(1, n):
            l0, l1 = l1, ((2 * k + 1 - xa) * l1 - k * l0) / (k + 1)
        out = l1
    return float(out) if out.ndim == 0 else out


def hermite_functions(n_max, q):
    """Normalized Hermite functions ``h_0 .. h_{n_max}`` at points `q`.

    Returns an array of shape ``(n_max + 1,) + q.shape``; row k is the
    harmonic-oscillator eigenfunction with k quanta (m = hbar = omega = 1).
    """
    n_max = _check_order(n_max)
    q = np.asarray(q, dtype=float)
    out = np.empty((n_max + 1,) + q.shape)
    out[0] = math.pi ** -0.25 * np.exp(-0.5 * q * q)
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * q * out[0]
    for k in range(1, n_max):
        out[k + 1] = math.sqrt(2.0 / (k + 1)) * q * out[k] - math.sqrt(k / (k + 1)) * out[k - 1]
    return out
