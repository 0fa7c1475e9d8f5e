"""Distribution functions on [0, inf) as composable, immutable values.

Every :class:`DistFn` can be read in four coordinates, all vectorised over
``t``:

``F(t)``          the distribution function itself (``__call__``),
``F.tail(t)``     ``1 - F(t)``,
``F.odds(t)``     ``1/F(t) - 1``, the coordinate in which Boolean max-convolution adds,
``F.neg_log(t)``  ``-log F(t)``, the coordinate in which classical max-convolution adds.

The transfer map ``F -> exp(1 - 1/F)`` sends odds to ``-log``; composite
nodes pass whichever coordinate is native to them, so identities such as
Dagum stability hold to rounding instead of being swamped by cancellation in
``1 - F`` near 1.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .cauchy import AtomicMeasure
from .semigroup import boolean_min

__all__ = [
    "DistFn",
    "Dagum",
    "Frechet",
    "Pareto",
    "PointMass",
    "BernoulliProjection",
    "Step",
    "Tabulated",
    "Custom",
    "Product",
    "BooleanMaxConv",
    "BooleanPower",
    "Rescale",
    "Transfer",
    "TransferInverse",
    "evaluate",
    "classical_max_conv",
    "boolean_max_conv",
    "boolean_max_conv_power",
    "rescale",
    "transfer",
    "transfer_inverse",
    "sup_distance",
    "geometric_grid",
    "check_delta_plus",
    "from_spec",
    "to_spec",
    "load_spec",
    "SPEC_KINDS",
]

LIMIT_PROBE = 1e12
LIMIT_TOL = 1e-6


def _as_points(t):
    scalar = np.ndim(t) == 0
    arr = np.asarray(t, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0.0):
        raise ValueError("distribution functions in this package live on t >= 0")
    return arr, scalar


def _out(arr, scalar):
    arr = np.asarray(arr, dtype=float)
    return float(arr) if scalar else arr


def _odds_from_tail(tail, cdf):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.where(cdf > 0.0, tail / np.where(cdf > 0.0, cdf, 1.0), np.inf)


def _from_odds(u):
    with np.errstate(divide="ignore", invalid="ignore"):
        cdf = 1.0 / (1.0 + u)
        tail = 1.0 / (1.0 + 1.0 / u)
    tail = np.where(u == 0.0, 0.0, tail)
    return cdf, tail


class DistFn:
    """Base class. Subclasses override ``_cdf`` and/or ``_tail``, or one of
    the native coordinates ``_odds`` / ``_neg_log``."""

    # True when F(t) -> 1 holds by construction (closed forms)
    analytic_limit = False

    def _cdf(self, t):
        return 1.0 - self._tail(t)

    def _tail(self, t):
        return 1.0 - self._cdf(t)

    def _odds(self, t):
        return _odds_from_tail(self._tail(t), self._cdf(t))

    def _neg_log(self, t):
        with np.errstate(divide="ignore"):
            return -np.log1p(-self._tail(t))

    def __call__(self, t):
        t, scalar = _as_points(t)
        return _out(self._cdf(t), scalar)

    def tail(self, t):
        t, scalar = _as_points(t)
        return _out(self._tail(t), scalar)

    def odds(self, t):
        t, scalar = _as_points(t)
        return _out(self._odds(t), scalar)

    def neg_log(self, t):
        t, scalar = _as_points(t)
        return _out(self._neg_log(t), scalar)

    # operator sugar: F * G is classical max-convolution, F | G is Boolean
    def __mul__(self, other):
        return classical_max_conv(self, other)

    def __or__(self, other):
        return boolean_max_conv(self, other)


class _OddsNative(DistFn):
    def _cdf(self, t):
        return _from_odds(self._odds(t))[0]

    def _tail(self, t):
        return _from_odds(self._odds(t))[1]

    def _neg_log(self, t):
        return np.log1p(self._odds(t))


class _LogNative(DistFn):
    def _cdf(self, t):
        return np.exp(-self._neg_log(t))

    def _tail(self, t):
        return -np.expm1(-self._neg_log(t))

    def _odds(self, t):
        with np.errstate(over="ignore"):
            return np.expm1(self._neg_log(t))


def _positive(name, value):
    value = float(value)
    if not (np.isfinite(value) and value > 0.0):
        raise ValueError(f"{name} must be a positive finite number, got {value!r}")
    return value


def _power_decay(lam, alpha, t):
    """``lam * t**-alpha`` with the t = 0 limit set to inf."""
    with np.errstate(divide="ignore"):
        return lam * np.power(t, -alpha)


@dataclass(frozen=True)
class Dagum(_OddsNative):
    """Dagum (log-logistic) law ``(1 + lam t^-alpha)^-1``; odds ``lam t^-alpha``."""

    lam: float
    alpha: float
    analytic_limit = True

    def __post_init__(self):
        object.__setattr__(self, "lam", _positive("lam", self.lam))
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))

    def _odds(self, t):
        return _power_decay(self.lam, self.alpha, t)


@dataclass(frozen=True)
class Frechet(_LogNative):
    """Frechet law ``exp(-lam t^-alpha)``."""

    lam: float
    alpha: float
    analytic_limit = True

    def __post_init__(self):
        object.__setattr__(self, "lam", _positive("lam", self.lam))
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))

    def _neg_log(self, t):
        return _power_decay(self.lam, self.alpha, t)


@dataclass(frozen=True)
class Pareto(DistFn):
    """Pareto law ``1 - (t/threshold)^-alpha`` for ``t >= threshold``, else 0."""

    alpha: float
    threshold: float = 1.0
    analytic_limit = True

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        object.__setattr__(self, "threshold", _positive("threshold", self.threshold))

    def _tail(self, t):
        above = t >= self.threshold
        safe = np.where(above, t, self.threshold)
        return np.where(above, np.power(safe / self.threshold, -self.alpha), 1.0)

    def _cdf(self, t):
        return np.where(t >= self.threshold, 1.0 - self._tail(t), 0.0)


@dataclass(frozen=True)
class PointMass(DistFn):
    """Unit mass at ``location >= 0``."""

    location: float = 0.0
    analytic_limit = True

    def __post_init__(self):
        loc = float(self.location)
        if not (np.isfinite(loc) and loc >= 0.0):
            raise ValueError("point mass location must be finite and >= 0")
        object.__setattr__(self, "location", loc)

    def _cdf(self, t):
        return np.where(t >= self.location, 1.0, 0.0)

    def _tail(self, t):
        return np.where(t >= self.location, 0.0, 1.0)


@dataclass(frozen=True)
class BernoulliProjection(DistFn):
    """Distribution of a projection with ``phi(I - P) = p``: p on [0, 1), 1 after."""

    p: float
    analytic_limit = True

    def __post_init__(self):
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        object.__setattr__(self, "p", p)

    def _cdf(self, t):
        return np.where(t >= 1.0, 1.0, self.p)

    def _tail(self, t):
        return np.where(t >= 1.0, 0.0, 1.0 - self.p)

    def measure(self):
        return AtomicMeasure.bernoulli_projection(self.p)


class Step(DistFn):
    """Right-continuous step function of an :class:`AtomicMeasure` on [0, inf)."""

    analytic_limit = True

    def __init__(self, measure):
        if not isinstance(measure, AtomicMeasure):
            measure = AtomicMeasure.from_pairs(measure)
        if measure.locations[0] < 0.0:
            raise ValueError("a step distribution on [0, inf) needs atoms at t >= 0")
        self.measure = measure
        self._locs = measure.locations
        # suffix sums keep small tails accurate
        self._above = np.append(np.cumsum(measure.masses[::-1])[::-1], 0.0)
        self._below = np.append(0.0, np.cumsum(measure.masses))

    def _index(self, t):
        return np.searchsorted(self._locs, t, side="right")

    def _cdf(self, t):
        return np.minimum(self._below[self._index(t)], 1.0)

    def _tail(self, t):
        return np.minimum(self._above[self._index(t)], 1.0)

    def __repr__(self):
        return f"Step({self.measure!r})"


class Tabulated(DistFn):
    """User data as right-continuous steps: value ``F_k`` on ``[t_k, t_{k+1})``, 0 before ``t_0``."""

    def __init__(self, knots):
        knots = np.asarray(knots, dtype=float)
        if knots.ndim != 2 or knots.shape[1] != 2 or knots.shape[0] == 0:
            raise ValueError("knots must be a nonempty list of [t, F] pairs")
        ts, fs = knots[:, 0], knots[:, 1]
        if np.any(ts < 0.0) or np.any(np.diff(ts) <= 0.0):
            raise ValueError("knot locations must be >= 0 and strictly increasing")
        if np.any(fs < 0.0) or np.any(fs > 1.0) or np.any(np.diff(fs) < 0.0):
            raise ValueError("knot values must be nondecreasing within [0, 1]")
        if fs[-1] < 1.0 - LIMIT_TOL:
            raise ValueError(f"last knot value {fs[-1]!r} does not reach 1")
        self.knots = knots
        self._ts = ts
        self._fs = np.append(0.0, fs)

    def _cdf(self, t):
        return self._fs[np.searchsorted(self._ts, t, side="right")]

    def __repr__(self):
        return f"Tabulated({self.knots.tolist()})"


class Custom(DistFn):
    """Wrap user callables; ``tail`` is optional and used for accurate upper tails."""

    def __init__(self, cdf, tail=None, name="custom"):
        self._f = cdf
        self._g = tail
        self.name = name

    def _cdf(self, t):
        return np.asarray(self._f(t), dtype=float)

    def _tail(self, t):
        if self._g is None:
            return 1.0 - self._cdf(t)
        return np.asarray(self._g(t), dtype=float)

    def __repr__(self):
        return f"Custom({self.name})"


# composite nodes


@dataclass(frozen=True)
class Product(_LogNative):
    """Classical max-convolution ``F(t) G(t)``."""

    left: DistFn
    right: DistFn

    @property
    def analytic_limit(self):
        return self.left.analytic_limit and self.right.analytic_limit

    def _neg_log(self, t):
        return self.left._neg_log(t) + self.right._neg_log(t)

    def _cdf(self, t):
        return self.left._cdf(t) * self.right._cdf(t)


@dataclass(frozen=True)
class BooleanMaxConv(_OddsNative):
    """Boolean max-convolution ``F(t) ⊼ G(t)``."""

    left: DistFn
    right: DistFn

    @property
    def analytic_limit(self):
        return self.left.analytic_limit and self.right.analytic_limit

    def _odds(self, t):
        return self.left._odds(t) + self.right._odds(t)

    def _cdf(self, t):
        return boolean_min(self.left._cdf(t), self.right._cdf(t))


@dataclass(frozen=True)
class BooleanPower(_OddsNative):
    """n-fold Boolean max-convolution of ``base`` with itself."""

    base: DistFn
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))

    @property
    def analytic_limit(self):
        return self.base.analytic_limit

    def _odds(self, t):
        return self.n * self.base._odds(t)

    def _cdf(self, t):
        if self.n == 1:
            return self.base._cdf(t)
        return _from_odds(self._odds(t))[0]


@dataclass(frozen=True)
class Rescale(DistFn):
    """``t -> F(a t)``."""

    base: DistFn
    a: float

    def __post_init__(self):
        object.__setattr__(self, "a", _positive("a", self.a))

    @property
    def analytic_limit(self):
        return self.base.analytic_limit

    def _cdf(self, t):
        return self.base._cdf(self.a * t)

    def _tail(self, t):
        return self.base._tail(self.a * t)

    def _odds(self, t):
        return self.base._odds(self.a * t)

    def _neg_log(self, t):
        return self.base._neg_log(self.a * t)


@dataclass(frozen=True)
class Transfer(_LogNative):
    """``exp(1 - 1/F)``: the odds of ``F`` become the ``-log`` of the image."""

    base: DistFn

    @property
    def analytic_limit(self):
        return self.base.analytic_limit

    def _neg_log(self, t):
        return self.base._odds(t)


@dataclass(frozen=True)
class TransferInverse(_OddsNative):
    """``(1 - log F)^-1``: the ``-log`` of ``F`` becomes the odds of the image."""

    base: DistFn

    @property
    def analytic_limit(self):
        return self.base.analytic_limit

    def _odds(self, t):
        return self.base._neg_log(t)


def evaluate(F, t):
    """``F(t)`` for ``t >= 0``; arrays evaluate pointwise."""
    return F(t)


def classical_max_conv(F, G):
    return Product(F, G)


def boolean_max_conv(F, G):
    return BooleanMaxConv(F, G)


def boolean_max_conv_power(F, n):
    return BooleanPower(F, n)


def rescale(F, a):
    return Rescale(F, a)


def transfer(F):
    """The isomorphism carrying ``boolean_max_conv`` to ``classical_max_conv``."""
    if isinstance(F, TransferInverse):
        return F.base
    return Transfer(F)


def transfer_inverse(H):
    if isinstance(H, Transfer):
        return H.base
    return TransferInverse(H)


def sup_distance(F, G, grid):
    """``max |F(t) - G(t)|`` over the grid points."""
    grid = np.asarray(grid, dtype=float).ravel()
    if grid.size == 0:
        raise ValueError("empty grid")
    return float(np.max(np.abs(F(grid) - G(grid))))


def geometric_grid(lo=0.1, hi=10.0, points=50):
    """``points`` geometrically spaced values from ``lo`` to ``hi`` inclusive."""
    if not (lo > 0.0 and hi > lo and points >= 2):
        raise ValueError("need 0 < lo < hi and points >= 2")
    return np.geomspace(lo, hi, int(points))


def check_delta_plus(F, grid):
    """Check the Δ₊ conditions on a grid; returns a dict of findings.

    Range and monotonicity are checked on the sorted grid. The limit at
    infinity is trusted for closed forms and probed at ``LIMIT_PROBE``
    otherwise.
    """
    grid = np.sort(np.asarray(grid, dtype=float).ravel())
    values = F(grid)
    in_range = bool(np.all((values >= 0.0) & (values <= 1.0)))
    monotone = bool(np.all(np.diff(values) >= 0.0))
    if F.analytic_limit:
        limit_ok = True
    else:
        limit_ok = bool(F(LIMIT_PROBE) >= 1.0 - LIMIT_TOL)
    return {
        "in_range": in_range,
        "monotone": monotone,
        "limit": limit_ok,
        "ok": in_range and monotone and limit_ok,
    }


# spec files

SPEC_KINDS = {
    "dagum": ("lambda", "alpha"),
    "frechet": ("lambda", "alpha"),
    "pareto": ("alpha", "threshold"),
    "pointmass": ("location",),
    "bernoulli_projection": ("p",),
    "atoms": ("atoms",),
    "tabulated": ("knots",),
}


def from_spec(spec):
    """Build a distribution from a spec mapping such as ``{"kind": "dagum", "lambda": 1, "alpha": 2}``."""
    if not isinstance(spec, dict):
        raise ValueError("a distribution spec must be a JSON object")
    kind = spec.get("kind")
    if kind not in SPEC_KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {sorted(SPEC_KINDS)}")
    fields = SPEC_KINDS[kind]
    extra = set(spec) - set(fields) - {"kind"}
    if extra:
        raise ValueError(f"unexpected fields for {kind}: {sorted(extra)}")
    optional = {"pareto": {"threshold": 1.0}, "pointmass": {"location": 0.0}}.get(kind, {})
    args = {}
    for name in fields:
        if name in spec:
            args[name] = spec[name]
        elif name in optional:
            args[name] = optional[name]
        else:
            raise ValueError(f"{kind} spec is missing field {name!r}")
    for name, value in args.items():
        if name not in ("atoms", "knots") and (isinstance(value, bool) or not isinstance(value, (int, float))):
            raise ValueError(f"field {name!r} must be a number")
    if kind == "dagum":
        return Dagum(args["lambda"], args["alpha"])
    if kind == "frechet":
        return Frechet(args["lambda"], args["alpha"])
    if kind == "pareto":
        return Pareto(args["alpha"], args["threshold"])
    if kind == "pointmass":
        return PointMass(args["location"])
    if kind == "bernoulli_projection":
        return BernoulliProjection(args["p"])
    pairs = args["atoms"] if kind == "atoms" else args["knots"]
    if not isinstance(pairs, list) or not all(
        isinstance(p, list) and len(p) == 2 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)
        for p in pairs
    ):
        raise ValueError(f"field {'atoms' if kind == 'atoms' else 'knots'!r} must be a list of [number, number] pairs")
    if kind == "atoms":
        return Step(AtomicMeasure.from_pairs(pairs))
    return Tabulated(pairs)


def to_spec(F):
    """Inverse of :func:`from_spec` for the leaf families."""
    if isinstance(F, Dagum):
        return {"kind": "dagum", "lambda": F.lam, "alpha": F.alpha}
    if isinstance(F, Frechet):
        return {"kind": "frechet", "lambda": F.lam, "alpha": F.alpha}
    if isinstance(F, Pareto):
        return {"kind": "pareto", "alpha": F.alpha, "threshold": F.threshold}
    if isinstance(F, PointMass):
        return {"kind": "pointmass", "location": F.location}
    if isinstance(F, BernoulliProjection):
        return {"kind": "bernoulli_projection", "p": F.p}
    if isinstance(F, Step):
        return {"kind": "atoms", "atoms": [list(a) for a in F.measure]}
    if isinstance(F, Tabulated):
        return {"kind": "tabulated", "knots": F.knots.tolist()}
    raise TypeError(f"{type(F).__name__} has no spec form")


def load_spec(path):
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: not valid JSON ({exc})") from None
    return from_spec(data)
