"""Finite-dimensional operator models: Boolean-independent embeddings,
spectral scales, projection meets and the spectral (Ando) max.

This is a brute-force oracle. Everything is dense complex linear algebra at
dimensions up to 64, so results can be checked against the closed forms in
:mod:`boolmax.semigroup`, :mod:`boolmax.distfn` and :mod:`boolmax.cauchy`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .cauchy import AtomicMeasure

__all__ = [
    "OperatorModel",
    "BooleanEmbedding",
    "projection_model",
    "diagonal_model",
    "model_from_measure",
    "boolean_embed",
    "spectral_projection",
    "spectral_scale",
    "embedded_scale",
    "embedded_scale_nonneg",
    "projection_meet",
    "spectral_max_distribution",
    "moment",
    "distribution",
]

MAX_DIM = 64
HERM_TOL = 1e-12
NORM_TOL = 1e-12
EIG_SLACK = 1e-12
PROJ_TOL = 1e-9
MEET_TOL = 1e-9
PSD_TOL = 1e-10


def _is_hermitian(m, tol=HERM_TOL):
    return np.allclose(m, m.conj().T, rtol=0.0, atol=tol)


@dataclass(frozen=True, eq=False)
class OperatorModel:
    """A state vector on C^d together with named hermitian observables."""

    state: np.ndarray
    observables: MappingProxyType = field(default_factory=dict)

    def __post_init__(self):
        xi = np.asarray(self.state, dtype=complex).ravel()
        if xi.size < 1:
            raise ValueError("zero-dimensional model")
        if xi.size > MAX_DIM:
            raise ValueError(f"dimension {xi.size} exceeds {MAX_DIM}")
        if abs(np.linalg.norm(xi) - 1.0) > NORM_TOL:
            raise ValueError(f"state has norm {np.linalg.norm(xi)!r}, not 1")
        obs = {}
        for name, m in dict(self.observables).items():
            m = np.asarray(m, dtype=complex)
            if m.shape != (xi.size, xi.size):
                raise ValueError(f"observable {name!r} has shape {m.shape}, expected {(xi.size, xi.size)}")
            if not _is_hermitian(m):
                raise ValueError(f"observable {name!r} is not hermitian")
            m = m.copy()
            m.flags.writeable = False
            obs[name] = m
        xi.flags.writeable = False
        object.__setattr__(self, "state", xi)
        object.__setattr__(self, "observables", MappingProxyType(obs))

    @property
    def dimension(self):
        return self.state.size

    def __getitem__(self, name):
        try:
            return self.observables[name]
        except KeyError:
            raise KeyError(f"unknown observable {name!r}") from None

    def expect(self, m):
        """``phi(m) = <m xi, xi>`` (complex)."""
        return complex(np.vdot(self.state, m @ self.state))

    def with_observable(self, name, matrix):
        obs = dict(self.observables)
        obs[name] = matrix
        return OperatorModel(self.state, obs)


def projection_model(p, name="P"):
    """Rank-one projection onto ``sqrt(p) h + sqrt(1-p) xi`` in C^2, so ``phi(P) = 1 - p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    xi = np.array([1.0, 0.0])
    v = np.array([np.sqrt(1.0 - p), np.sqrt(p)])
    return OperatorModel(xi, {name: np.outer(v, v)})


def diagonal_model(eigenvalues, state, name="X"):
    """``diag(eigenvalues)`` with the given state (normalised)."""
    state = np.asarray(state, dtype=complex)
    return OperatorModel(state / np.linalg.norm(state), {name: np.diag(np.asarray(eigenvalues, dtype=float))})


def model_from_measure(mu, name="X"):
    """A diagonal model whose distribution is the atomic measure ``mu``."""
    return diagonal_model(mu.locations, np.sqrt(mu.masses), name=name)


def _complement_basis(xi):
    """Orthonormal basis (columns) of the orthogonal complement of ``xi``."""
    d = xi.size
    # complete QR of [xi | I]: column 0 spans xi, the rest is orthonormal to it
    q, _ = np.linalg.qr(np.column_stack([xi, np.eye(d, dtype=complex)]), mode="complete")
    q = q[:, :d]
    # first column is xi up to a phase; the remaining d-1 span its complement
    return q[:, 1:]


@dataclass(frozen=True, eq=False)
class BooleanEmbedding:
    """Two models joined along their state vectors.

    The combined space is ``(H' - C xi') + (H'' - C xi'') + C xi'''`` with
    ordered basis: complement of xi' (d'-1 vectors), complement of xi''
    (d''-1 vectors), then xi'''.
    """

    model: OperatorModel
    v_a: np.ndarray
    v_b: np.ndarray
    source_a: OperatorModel
    source_b: OperatorModel
    names_a: tuple
    names_b: tuple

    @property
    def dimension(self):
        return self.model.dimension

    def isometry(self, which):
        return self.v_a if which == "A" else self.v_b

    def source(self, which):
        return self.source_a if which == "A" else self.source_b

    def complement_projection(self, which):
        """Projection onto the block ``H' - C xi'`` (``which="A"``) or ``H'' - C xi''``."""
        d = self.dimension
        da = self.source_a.dimension - 1
        diag = np.zeros(d)
        if which == "A":
            diag[:da] = 1.0
        else:
            diag[da : d - 1] = 1.0
        return np.diag(diag).astype(complex)

    def state_projection(self):
        d = self.dimension
        e = np.zeros(d, dtype=complex)
        e[-1] = 1.0
        return np.outer(e, e)


def boolean_embed(model_a, model_b):
    """Boolean-independent copies of the observables of two models.

    Observable names must be distinct across the two models.
    """
    clash = set(model_a.observables) & set(model_b.observables)
    if clash:
        raise ValueError(f"observable names used by both models: {sorted(clash)}")
    da, db = model_a.dimension, model_b.dimension
    d = da + db - 1
    if d > MAX_DIM:
        raise ValueError(f"combined dimension {d} exceeds {MAX_DIM}")
    ba = _complement_basis(model_a.state)
    bb = _complement_basis(model_b.state)
    v_a = np.zeros((d, da), dtype=complex)
    v_a[: da - 1] = ba.conj().T
    v_a[-1] = model_a.state.conj()
    v_b = np.zeros((d, db), dtype=complex)
    v_b[da - 1 : d - 1] = bb.conj().T
    v_b[-1] = model_b.state.conj()
    xi = np.zeros(d, dtype=complex)
    xi[-1] = 1.0
    obs = {}
    for name, m in model_a.observables.items():
        obs[name] = v_a @ m @ v_a.conj().T
    for name, m in model_b.observables.items():
        obs[name] = v_b @ m @ v_b.conj().T
    for name in obs:
        obs[name] = (obs[name] + obs[name].conj().T) / 2
    return BooleanEmbedding(
        model=OperatorModel(xi, obs),
        v_a=v_a,
        v_b=v_b,
        source_a=model_a,
        source_b=model_b,
        names_a=tuple(model_a.observables),
        names_b=tuple(model_b.observables),
    )


def spectral_projection(matrix, t):
    """Projection onto eigenvectors of ``matrix`` with eigenvalue ``<= t``."""
    w, u = np.linalg.eigh(matrix)
    keep = u[:, w <= t + EIG_SLACK]
    return keep @ keep.conj().T


def spectral_scale(model, name, t):
    """``E(T; (-inf, t])`` for the named observable."""
    return spectral_projection(model[name], t)


def _which(emb, name):
    if name in emb.names_a:
        return "A"
    if name in emb.names_b:
        return "B"
    raise KeyError(f"unknown observable {name!r}")


def embedded_scale(emb, name, t):
    """Spectral scale of an embedded observable assembled from its source.

    For ``t >= 0`` the other block is added: the embedded operator vanishes
    there. For ``t < 0`` the scale is just ``V E V*``.
    """
    which = _which(emb, name)
    v = emb.isometry(which)
    inner = spectral_scale(emb.source(which), name, t)
    out = v @ inner @ v.conj().T
    if t >= 0.0:
        out = out + emb.complement_projection("B" if which == "A" else "A")
    return out


def embedded_scale_nonneg(emb, name, t):
    """:func:`embedded_scale` restricted to nonnegative observables and ``t >= 0``."""
    if t < 0.0:
        raise ValueError("t must be >= 0")
    src = emb.source(_which(emb, name))[name]
    if np.linalg.eigvalsh(src)[0] < -PSD_TOL:
        raise ValueError(f"observable {name!r} is not positive semidefinite")
    return embedded_scale(emb, name, t)


def _check_projection(m, label):
    if not _is_hermitian(m, PROJ_TOL) or not np.allclose(m @ m, m, rtol=0.0, atol=PROJ_TOL):
        raise ValueError(f"{label} is not an orthogonal projection")


def projection_meet(p, q):
    """Projection onto ``range(p) ∩ range(q)``.

    The intersection is the null space of ``(I - p) + (I - q)``, a positive
    semidefinite matrix; eigenvalues at or below ``MEET_TOL`` count as zero.
    """
    _check_projection(p, "first argument")
    _check_projection(q, "second argument")
    eye = np.eye(p.shape[0])
    m = (eye - p) + (eye - q)
    m = (m + m.conj().T) / 2
    w, u = np.linalg.eigh(m)
    keep = u[:, w <= MEET_TOL]
    return keep @ keep.conj().T


def _sole(names, side):
    if len(names) != 1:
        raise ValueError(f"model {side} has {len(names)} observables; name the one to use")
    return names[0]


def spectral_max_distribution(emb, grid, a=None, b=None):
    """Distribution function of the spectral max of two embedded observables.

    Returns a list of ``(t, <(E_a(t) ∧ E_b(t)) xi, xi>)``.
    """
    a = a or _sole(emb.names_a, "A")
    b = b or _sole(emb.names_b, "B")
    xi = emb.model.state
    rows = []
    for t in np.asarray(grid, dtype=float).ravel():
        if t < 0.0:
            raise ValueError("grid points must be >= 0")
        meet = projection_meet(embedded_scale_nonneg(emb, a, t), embedded_scale_nonneg(emb, b, t))
        value = float(np.vdot(xi, meet @ xi).real)
        rows.append((float(t), min(max(value, 0.0), 1.0)))
    return rows


def moment(model, word):
    """``phi`` of the product of the named observables, left to right.

    Accepts an :class:`OperatorModel` or a :class:`BooleanEmbedding`. Words
    are limited to length 8.
    """
    if isinstance(model, BooleanEmbedding):
        model = model.model
    word = [word] if isinstance(word, str) else list(word)
    if not word:
        raise ValueError("empty word")
    if len(word) > 8:
        raise ValueError("words are limited to length 8")
    m = np.eye(model.dimension, dtype=complex)
    for name in word:
        m = m @ model[name]
    value = model.expect(m)
    return value.real


def distribution(model, name, cluster=1e-8):
    """Law of an observable in the state: eigenvalues weighted by ``|<u_i, xi>|^2``.

    Eigenvalues within ``cluster`` of each other are merged; weights below
    1e-14 are dropped.
    """
    if isinstance(model, BooleanEmbedding):
        model = model.model
    w, u = np.linalg.eigh(model[name])
    weights = np.abs(u.conj().T @ model.state) ** 2
    locs, masses = [], []
    for lam, wt in zip(w, weights):
        if locs and lam - locs[-1][-1] <= cluster:
            locs[-1].append(lam)
            masses[-1] += wt
        else:
            locs.append([lam])
            masses.append(wt)
    pts = np.array([np.mean(g) for g in locs])
    masses = np.array(masses)
    keep = masses > 1e-14
    pts, masses = pts[keep], masses[keep]
    pts = np.where(np.abs(pts) < 1e-12, 0.0, pts)
    return AtomicMeasure(pts, masses / masses.sum())
