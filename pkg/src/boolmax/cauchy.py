"""Cauchy and K-transforms of finitely atomic measures, and Boolean additive
convolution by adding K-transforms.

For an atomic probability measure the Cauchy transform

    G(z) = sum_i w_i / (z - t_i)

is a rational function, exactly. So is ``K(z) = z - 1/G(z)``. Boolean
convolution adds K-transforms; the result is mapped back to a measure by
reading off the poles of ``G = 1/(z - K)`` and their residues.

Polynomials are numpy coefficient arrays in ascending degree.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

__all__ = [
    "NumericalFailure",
    "AtomicMeasure",
    "RationalFunction",
    "cauchy_transform",
    "k_transform",
    "cauchy_from_k",
    "poles_and_residues",
    "measure_from_cauchy",
    "boolean_additive_convolve",
    "atom_mass_at_zero",
]

MAX_ATOMS = 32
GCD_TOL = 1e-10
IMAG_TOL = 1e-8
CLUSTER_TOL = 1e-8
SNAP_ZERO = 1e-12
DROP_MASS = 1e-12
MASS_TOL = 1e-9


class NumericalFailure(ArithmeticError):
    """A root finder or estimator could not produce a trustworthy answer."""


@dataclass(frozen=True, eq=False)
class AtomicMeasure:
    """A probability measure with finitely many atoms.

    Atoms at equal locations are merged; locations are stored strictly
    increasing. Masses must be positive and sum to 1 within 1e-12.
    """

    locations: np.ndarray
    masses: np.ndarray

    def __init__(self, locations, masses):
        locs = np.asarray(locations, dtype=float).ravel()
        ms = np.asarray(masses, dtype=float).ravel()
        if locs.shape != ms.shape or locs.size == 0:
            raise ValueError("need the same positive number of locations and masses")
        if not (np.all(np.isfinite(locs)) and np.all(np.isfinite(ms))):
            raise ValueError("locations and masses must be finite")
        if np.any(ms <= 0.0):
            raise ValueError("atom masses must be positive")
        if abs(ms.sum() - 1.0) > 1e-12:
            raise ValueError(f"masses sum to {ms.sum()!r}, not 1")
        uniq, inverse = np.unique(locs, return_inverse=True)
        merged = np.zeros(uniq.size)
        np.add.at(merged, inverse, ms)
        uniq.flags.writeable = False
        merged.flags.writeable = False
        object.__setattr__(self, "locations", uniq)
        object.__setattr__(self, "masses", merged)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        return cls([p[0] for p in pairs], [p[1] for p in pairs])

    @classmethod
    def point(cls, location=0.0):
        return cls([location], [1.0])

    @classmethod
    def bernoulli_projection(cls, p):
        """Law of a projection with ``phi(I - P) = p``: atoms {0: p, 1: 1 - p}."""
        if not 0.0 <= p <= 1.0:
            raise ValueError("p must lie in [0, 1]")
        if p == 0.0:
            return cls.point(1.0)
        if p == 1.0:
            return cls.point(0.0)
        return cls([0.0, 1.0], [p, 1.0 - p])

    def __len__(self):
        return self.locations.size

    def __iter__(self):
        return iter(zip(self.locations.tolist(), self.masses.tolist()))

    def __repr__(self):
        body = ", ".join(f"{t:g}: {w:g}" for t, w in self)
        return f"AtomicMeasure({{{body}}})"

    def moment(self, k):
        return float(np.sum(self.masses * self.locations**k))

    def allclose(self, other, atol=1e-8):
        return (
            len(self) == len(other)
            and np.allclose(self.locations, other.locations, rtol=0.0, atol=atol)
            and np.allclose(self.masses, other.masses, rtol=0.0, atol=atol)
        )


def _trim(c, tol=0.0):
    c = np.atleast_1d(np.asarray(c))
    if c.size == 0:
        return np.zeros(1)
    scale = np.max(np.abs(c))
    if scale == 0.0:
        return np.zeros(1, dtype=c.dtype)
    nz = np.nonzero(np.abs(c) > tol * scale)[0]
    return c[: nz[-1] + 1]


def _deflate(c, root):
    """Divide the polynomial ``c`` by ``(z - root)``, dropping the remainder."""
    n = c.size - 1
    q = np.zeros(n, dtype=np.result_type(c, root))
    acc = c[-1]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = c[k] + acc * root
    return q


def _roots(c):
    c = _trim(c)
    if c.size <= 1:
        return np.zeros(0)
    return P.polyroots(c)


class RationalFunction:
    """``num(z) / den(z)`` with real coefficients, ascending degree.

    On construction the denominator is made monic and common roots of
    numerator and denominator are cancelled. Two roots are treated as common
    when the numerator, evaluated at a denominator root, is below
    ``GCD_TOL`` relative to its coefficient scale.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1.0,), reduce=True):
        num = _trim(np.asarray(num, dtype=float))
        den = _trim(np.asarray(den, dtype=float))
        if not np.any(den):
            raise ZeroDivisionError("denominator is identically zero")
        if not np.any(num):
            num, den = np.zeros(1), np.ones(1)
        if reduce:
            num, den = _cancel(num, den)
        lead = den[-1]
        self.num = num / lead
        self.den = den / lead

    @classmethod
    def z(cls):
        return cls([0.0, 1.0])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degrees(self):
        return self.num.size - 1 if np.any(self.num) else -1, self.den.size - 1

    def is_zero(self):
        return not np.any(self.num)

    def __call__(self, z):
        return P.polyval(z, self.num) / P.polyval(z, self.den)

    def __add__(self, other):
        other = _coerce(other)
        return RationalFunction(
            P.polyadd(P.polymul(self.num, other.den), P.polymul(other.num, self.den)),
            P.polymul(self.den, other.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunction(P.polymul(self.num, other.num), P.polymul(self.den, other.den))

    __rmul__ = __mul__

    def reciprocal(self):
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        return self * _coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return _coerce(other) * self.reciprocal()

    def allclose(self, other, atol=1e-10):
        other = _coerce(other)
        if self.num.size != other.num.size or self.den.size != other.den.size:
            return False
        return np.allclose(self.num, other.num, rtol=0, atol=atol) and np.allclose(
            self.den, other.den, rtol=0, atol=atol
        )

    def __repr__(self):
        return f"RationalFunction(num={self.num.tolist()}, den={self.den.tolist()})"


def _coerce(x):
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.constant(float(x))


def _cancel(num, den):
    if num.size == 1 or den.size == 1:
        return num, den
    num = num.astype(complex)
    den = den.astype(complex)
    changed = True
    while changed and num.size > 1 and den.size > 1:
        changed = False
        nscale = np.max(np.abs(num))
        for r in _roots(den):
            # scale-aware residual test, |num(r)| against the size of its terms
            terms = np.sum(np.abs(num) * np.abs(r) ** np.arange(num.size))
            if abs(P.polyval(r, num)) <= GCD_TOL * max(terms, nscale):
                num = _deflate(num, r)
                den = _deflate(den, r)
                changed = True
                break
    return _trim(num.real), _trim(den.real)


def cauchy_transform(mu):
    """``G(z) = sum_i w_i/(z - t_i)`` as a reduced rational function."""
    if len(mu) > MAX_ATOMS:
        raise ValueError(f"at most {MAX_ATOMS} atoms supported")
    den = P.polyfromroots(mu.locations)
    num = np.zeros(max(den.size - 1, 1))
    for i, (t, w) in enumerate(mu):
        others = np.delete(mu.locations, i)
        num = P.polyadd(num, w * P.polyfromroots(others))
    return RationalFunction(num, den)


def _check_cauchy_shape(G):
    dn, dd = G.degrees
    if dn != dd - 1:
        raise ValueError(
            f"not a Cauchy transform: numerator degree {dn}, denominator degree {dd}"
        )
    if abs(G.num[-1] - 1.0) > 1e-9:
        raise ValueError(f"not a probability Cauchy transform: z*G(z) -> {G.num[-1]!r}")


def k_transform(G):
    """``K(z) = z - 1/G(z)``."""
    _check_cauchy_shape(G)
    return RationalFunction.z() - G.reciprocal()


def cauchy_from_k(K):
    """``G(z) = 1/(z - K(z))``, the inverse of :func:`k_transform`."""
    return (RationalFunction.z() - K).reciprocal()


def poles_and_residues(G):
    """Real poles of ``G`` (companion-matrix roots) and their residues.

    Roots with imaginary part above ``IMAG_TOL`` raise NumericalFailure.
    Roots closer than ``CLUSTER_TOL`` are merged; the merged residue is the
    sum of the individual ones.
    """
    den = G.den
    roots = _roots(den)
    if roots.size == 0:
        return np.zeros(0), np.zeros(0)
    if np.any(np.abs(roots.imag) > IMAG_TOL):
        raise NumericalFailure(f"denominator has non-real roots: {roots[np.abs(roots.imag) > IMAG_TOL]}")
    roots = np.sort(roots.real)
    dden = P.polyder(den)
    # one Newton step against the undeflated denominator
    d = P.polyval(roots, dden)
    ok = d != 0.0
    roots[ok] -= P.polyval(roots[ok], den) / d[ok]
    roots = np.sort(roots)
    groups = [[roots[0]]]
    for r in roots[1:]:
        if r - groups[-1][-1] <= CLUSTER_TOL:
            groups[-1].append(r)
        else:
            groups.append([r])
    poles, residues = [], []
    for g in groups:
        g = np.asarray(g)
        res = P.polyval(g, G.num) / P.polyval(g, dden)
        if not np.all(np.isfinite(res)):
            raise NumericalFailure(f"repeated pole near {g.mean()!r}")
        poles.append(g.mean())
        residues.append(float(np.sum(res)))
    return np.array(poles), np.array(residues)


def measure_from_cauchy(G):
    """Recover the atomic measure whose Cauchy transform is ``G``."""
    poles, residues = poles_and_residues(G)
    if np.any(residues < -DROP_MASS):
        raise NumericalFailure(f"negative residues {residues[residues < -DROP_MASS]}")
    keep = residues > DROP_MASS
    poles, residues = poles[keep], residues[keep]
    total = residues.sum()
    if abs(total - 1.0) > MASS_TOL:
        raise NumericalFailure(f"recovered masses sum to {total!r}")
    poles = np.where(np.abs(poles) < SNAP_ZERO, 0.0, poles)
    return AtomicMeasure(poles, residues / total)


def boolean_additive_convolve(mu, nu):
    """Boolean additive convolution of two atomic measures."""
    K = k_transform(cauchy_transform(mu)) + k_transform(cauchy_transform(nu))
    return measure_from_cauchy(cauchy_from_k(K))


def atom_mass_at_zero(G):
    """``lim_{z->0} z G(z)``: the residue at a pole at 0, else 0."""
    roots = _roots(G.den)
    if roots.size == 0:
        return 0.0
    r = roots[np.argmin(np.abs(roots))]
    if abs(r) > SNAP_ZERO:
        return 0.0
    den1 = _deflate(G.den.astype(complex), r).real
    return float(P.polyval(0.0, G.num) / P.polyval(0.0, den1))
