"""The Boolean min-convolution semigroup on [0, 1] and its isomorphism to ([0, 1], *).

For x in (0, 1] write ``u(x) = 1/x - 1`` (the *odds* of x). The Boolean
min-convolution is the operation that adds odds::

    u(x ⊼ y) = u(x) + u(y)

and ``chi(x) = exp(-u(x))`` carries it to ordinary multiplication. Zero has
infinite odds and is absorbing; one has zero odds and is the identity.

All functions accept scalars or numpy arrays. Scalars in, floats out.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "check_unit",
    "odds",
    "from_odds",
    "boolean_min",
    "boolean_min_power",
    "chi",
    "chi_inverse",
]


def check_unit(x, name="x"):
    """Validate that every entry of ``x`` lies in [0, 1] (exact bounds)."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise ValueError(f"{name} must lie in [0, 1], got {x!r}")
    return arr


def _out(arr, scalar):
    return float(arr) if scalar else arr


def odds(x):
    """Return ``1/x - 1`` computed as ``(1 - x)/x``; ``odds(0) = inf``."""
    scalar = np.ndim(x) == 0
    return _out(_odds(check_unit(x)), scalar)


def from_odds(u):
    """Inverse of :func:`odds` on [0, inf]."""
    scalar = np.ndim(u) == 0
    u = np.asarray(u, dtype=float)
    if np.any(np.isnan(u)) or np.any(u < 0.0):
        raise ValueError("odds must be nonnegative")
    with np.errstate(divide="ignore"):
        z = 1.0 / (1.0 + u)
    return _out(z, scalar)


def _odds(arr):
    with np.errstate(divide="ignore", over="ignore"):
        return (1.0 - arr) / arr


def boolean_min(x, y):
    """Boolean min-convolution ``x ⊼ y = 1/(1/x + 1/y - 1)``.

    Evaluated as ``1/(1 + u(x) + u(y))`` with each odds computed as
    ``(1 - x)/x``. Every step is monotone under rounding, so the result is
    monotone in both arguments; it is clamped to ``min(x, y)``, which it
    never exceeds exactly. 1 is an exact identity, 0 exactly absorbing.
    """
    scalar = np.ndim(x) == 0 and np.ndim(y) == 0
    x = check_unit(x, "x")
    y = check_unit(y, "y")
    x, y = np.broadcast_arrays(x, y)
    with np.errstate(over="ignore"):
        u = _odds(x) + _odds(y)
    z = np.minimum(from_odds(u), np.minimum(x, y))
    z = np.where(y == 1.0, x, z)
    z = np.where(x == 1.0, y, z)
    return _out(z, scalar)


def boolean_min_power(x, n):
    """n-fold Boolean min-convolution of ``x`` with itself: odds times n."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    scalar = np.ndim(x) == 0
    x = check_unit(x)
    if n == 1:
        return _out(x.copy(), scalar)
    with np.errstate(over="ignore"):
        u = n * _odds(x)
    z = np.minimum(from_odds(u), x)
    return _out(z, scalar)


def chi(x):
    """The isomorphism ``chi(x) = exp(1 - 1/x)``, with ``chi(0) = 0``.

    Underflows to 0 for x below roughly 1/745, where ``exp(1 - 1/x)`` is
    smaller than the least positive double.
    """
    scalar = np.ndim(x) == 0
    arr = check_unit(x)
    safe = np.where(arr > 0.0, arr, 1.0)
    with np.errstate(over="ignore"):
        y = np.where(arr > 0.0, np.exp(-(1.0 - safe) / safe), 0.0)
    return _out(y, scalar)


def chi_inverse(y):
    """Inverse isomorphism ``(1 - log y)^-1``, with ``chi_inverse(0) = 0``."""
    scalar = np.ndim(y) == 0
    arr = check_unit(y, "y")
    safe = np.where(arr > 0.0, arr, 1.0)
    x = np.where(arr > 0.0, 1.0 / (1.0 - np.log(safe)), 0.0)
    return _out(x, scalar)
