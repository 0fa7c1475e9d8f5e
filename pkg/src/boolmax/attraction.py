"""Regular variation, norming constants and Boolean domains of attraction.

``G`` lies in the Boolean max-domain of attraction of ``(1 + t^-alpha)^-1``
exactly when ``1 - G`` is regularly varying with index ``-alpha``. The
estimators here probe that numerically through ratios ``T(tx)/T(t)``.
Norming constants come from the tail of ``transfer(G)``, where classical
(Gnedenko) norming applies.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .cauchy import NumericalFailure
from .distfn import boolean_max_conv_power, rescale, sup_distance, transfer

__all__ = [
    "EstimationFailure",
    "NormingFailure",
    "RVEstimate",
    "NormingSequence",
    "DOAReport",
    "DEFAULT_SCALES",
    "DEFAULT_MULTIPLIERS",
    "rv_index_estimate",
    "rv_equivalence_check",
    "norming_constant",
    "norming_sequence",
    "doa_check",
]

DEFAULT_SCALES = tuple(10.0**k for k in range(2, 10))
DEFAULT_MULTIPLIERS = (2.0, 4.0, 8.0)
UNDERFLOW = 1e-300
DISPERSION_TOL = 1e-3
T_MAX = 1e15
REL_PREC = 1e-10


class EstimationFailure(NumericalFailure):
    pass


class NormingFailure(NumericalFailure):
    pass


@dataclass(frozen=True)
class RVEstimate:
    """Tail index estimates ``alpha(t, x) = -log(T(tx)/T(t)) / log x``."""

    alpha_hat: float
    estimates: tuple  # (t, x, alpha) rows
    converged: bool
    dispersion: float
    drift: tuple = ()
    excluded: tuple = ()  # (t, x) pairs dropped for zero or non-finite tails


def _tail_values(tail, pts):
    with np.errstate(all="ignore"):
        vals = np.asarray(tail(np.asarray(pts, dtype=float)), dtype=float)
    return np.where(np.isfinite(vals) & (vals >= UNDERFLOW), vals, 0.0)


def rv_index_estimate(tail, base_scales=DEFAULT_SCALES, multipliers=DEFAULT_MULTIPLIERS):
    """Estimate the regular-variation index of a tail function ``T = 1 - G``.

    ``alpha_hat`` is the mean estimate at the largest base scale. The
    estimate counts as converged when the spread over multipliers there is
    at most 1e-3, the scale-to-scale drift of the mean never grows, and the
    largest scale is usable at all.
    """
    scales = sorted(float(s) for s in base_scales)
    mults = sorted(float(x) for x in multipliers)
    if not scales or not mults or scales[0] <= 0.0 or mults[0] <= 1.0:
        raise ValueError("need positive base scales and multipliers > 1")
    rows, excluded, means = [], [], []
    for t in scales:
        t_vals = _tail_values(tail, [t] + [t * x for x in mults])
        here = []
        for x, tx_val in zip(mults, t_vals[1:]):
            if t_vals[0] > 0.0 and tx_val > 0.0:
                a = -np.log(tx_val / t_vals[0]) / np.log(x)
                rows.append((t, x, float(a)))
                here.append(a)
            else:
                excluded.append((t, x))
        if here:
            means.append((t, float(np.mean(here)), float(np.ptp(here))))
    if not means:
        raise EstimationFailure("tail is zero or non-finite at every probe")
    top_t, alpha_hat, dispersion = means[-1]
    drift = tuple(abs(b[1] - a[1]) for a, b in zip(means, means[1:]))
    settling = all(d2 <= d1 + 1e-12 for d1, d2 in zip(drift, drift[1:]))
    converged = top_t == scales[-1] and dispersion <= DISPERSION_TOL and settling
    return RVEstimate(alpha_hat, tuple(rows), bool(converged), dispersion, drift, tuple(excluded))


@dataclass(frozen=True)
class EquivalenceReport:
    direct: RVEstimate
    transferred: RVEstimate

    @property
    def difference(self):
        return abs(self.direct.alpha_hat - self.transferred.alpha_hat)


def rv_equivalence_check(G, base_scales=DEFAULT_SCALES, multipliers=DEFAULT_MULTIPLIERS):
    """Estimate the index of ``1 - G`` and of ``1 - exp(1 - 1/G)`` side by side."""
    direct = rv_index_estimate(G.tail, base_scales, multipliers)
    transferred = rv_index_estimate(transfer(G).tail, base_scales, multipliers)
    return EquivalenceReport(direct, transferred)


@dataclass(frozen=True)
class NormingSequence:
    entries: tuple  # (n, a_n)
    nondecreasing: bool = field(init=False)

    def __post_init__(self):
        a = [e[1] for e in self.entries]
        object.__setattr__(self, "nondecreasing", all(y >= x for x, y in zip(a, a[1:])))

    def as_dict(self):
        return dict(self.entries)


def norming_constant(G, n, t_lo=0.0):
    """``inf{t >= t_lo : 1 - transfer(G)(t) <= 1/n}`` by doubling and bisection."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    H = transfer(G)
    level = 1.0 / n

    def ok(t):
        return H.tail(t) <= level

    if ok(t_lo):
        return float(t_lo)
    hi = max(1.0, 2.0 * t_lo)
    while not ok(hi):
        hi *= 2.0
        if hi > T_MAX:
            raise NormingFailure(f"tail of transfer(G) stays above 1/{n} up to t = {T_MAX:g}")
    lo = t_lo
    while hi - lo > REL_PREC * hi:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def norming_sequence(G, n_values):
    return NormingSequence(tuple((int(n), norming_constant(G, n)) for n in sorted(n_values)))


@dataclass(frozen=True)
class DOAReport:
    n_values: tuple
    norming: tuple
    errors: tuple
    decreasing: bool
    eventually_decreasing: bool
    failure: str | None = None


def _strictly_decreasing(xs):
    return all(b < a for a, b in zip(xs, xs[1:]))


def doa_check(G, target, n_values, grid, workers=None):
    """Sup-distance between ``G^{⊻n}(a_n t)`` and ``target`` for each n.

    ``decreasing`` asks for strict decrease over all n; ``eventually_decreasing``
    only from the largest error on, and needs that to be before the last n.
    A norming failure is reported, not raised.
    """
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0 or np.any(grid <= 0.0):
        raise ValueError("grid must be nonempty and strictly positive")
    ns = sorted(int(n) for n in n_values)

    def one(n):
        a_n = norming_constant(G, n)
        return a_n, sup_distance(rescale(boolean_max_conv_power(G, n), a_n), target, grid)

    try:
        if workers:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(one, ns))
        else:
            results = [one(n) for n in ns]
    except NormingFailure as exc:
        return DOAReport(tuple(ns), (), (), False, False, failure=str(exc))
    norming = tuple(r[0] for r in results)
    errors = tuple(r[1] for r in results)
    peak = int(np.argmax(errors))
    eventually = peak < len(errors) - 1 and _strictly_decreasing(errors[peak:])
    return DOAReport(tuple(ns), norming, errors, _strictly_decreasing(errors), eventually)
