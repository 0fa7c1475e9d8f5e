"""Dagum and Frechet laws, the transfer between them, and Boolean max-stability.

A Dagum law ``(1 + lam t^-alpha)^-1`` has odds ``lam t^-alpha``; a Frechet law
``exp(-lam t^-alpha)`` has ``-log`` equal to the same expression. Transfer
therefore maps ``Dagum(lam, alpha)`` onto ``Frechet(lam, alpha)``.

Boolean n-fold max-convolution multiplies odds by n, so

    Dagum^{⊻n}(n^{1/alpha} t) = Dagum(t)

holds identically: the norming constants are ``a_n = n^{1/alpha}``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distfn import Dagum, Frechet, boolean_max_conv_power, rescale

__all__ = [
    "DagumLaw",
    "FrechetLaw",
    "dagum_eval",
    "frechet_eval",
    "transfer_pair_identity",
    "stable_norming",
    "StabilityReport",
    "stability_check",
    "StableFit",
    "is_boolean_max_stable",
]

DagumLaw = Dagum
FrechetLaw = Frechet


def dagum_eval(law, t):
    return law(t)


def frechet_eval(law, t):
    return law(t)


def transfer_pair_identity(law):
    """The Frechet law that is the transfer image of ``law``."""
    return FrechetLaw(law.lam, law.alpha)


def stable_norming(law, n):
    """``a_n = n^{1/alpha}``, the exact self-norming constant."""
    return float(n) ** (1.0 / law.alpha)


@dataclass(frozen=True)
class StabilityReport:
    n: int
    a_n: float
    defect: float


def stability_check(law, n, grid):
    """``sup |F^{⊻n}(a_n t) - F(t)|`` over a strictly positive grid."""
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0 or np.any(grid <= 0.0):
        raise ValueError("stability grid must be nonempty and strictly positive")
    a_n = stable_norming(law, n)
    normed = rescale(boolean_max_conv_power(law, n), a_n)
    defect = float(np.max(np.abs(normed(grid) - law(grid))))
    return StabilityReport(int(n), a_n, defect)


@dataclass(frozen=True)
class StableFit:
    accepted: bool
    lam: float
    alpha: float
    max_residual: float
    points_used: int

    def law(self):
        return DagumLaw(self.lam, self.alpha)


def is_boolean_max_stable(F, grid, tolerance=1e-6):
    """Test whether ``F`` is a Dagum law on the grid.

    Fits ``log odds(t) = log lam - alpha log t`` by least squares, using only
    grid points where ``0 < F(t) < 1``. Accepts when every residual is at most
    ``tolerance`` and the fitted ``alpha`` exceeds it (a flat odds curve is a
    step, not a Dagum law).
    """
    grid = np.asarray(grid, dtype=float).ravel()
    if np.any(grid <= 0.0):
        raise ValueError("grid must be strictly positive")
    odds = F.odds(grid)
    usable = np.isfinite(odds) & (odds > 0.0)
    if np.count_nonzero(usable) < 3:
        raise ValueError("fewer than 3 grid points with 0 < F(t) < 1")
    x = np.log(grid[usable])
    y = np.log(odds[usable])
    design = np.column_stack([np.ones_like(x), -x])
    (log_lam, alpha), *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = float(np.max(np.abs(design @ np.array([log_lam, alpha]) - y)))
    accepted = resid <= tolerance and alpha > tolerance
    return StableFit(bool(accepted), float(np.exp(log_lam)), float(alpha), resid, int(usable.sum()))
