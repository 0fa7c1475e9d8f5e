import itertools

import numpy as np
import pytest

from boolmax.distfn import Step, boolean_max_conv, geometric_grid
from boolmax.operator_model import (
    OperatorModel,
    boolean_embed,
    diagonal_model,
    distribution,
    embedded_scale,
    embedded_scale_nonneg,
    moment,
    projection_meet,
    projection_model,
    spectral_max_distribution,
    spectral_projection,
    spectral_scale,
)

PQ = [round(0.1 * k, 1) for k in range(1, 10)]


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return (a + a.conj().T) / 2


def random_state(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_model(rng, d, name, psd=False):
    m = random_hermitian(rng, d)
    if psd:
        m = m @ m
    return OperatorModel(random_state(rng, d), {name: m})


def is_projection(p, tol=1e-9):
    return np.allclose(p, p.conj().T, atol=tol) and np.allclose(p @ p, p, atol=tol)


def dominated(small, big, tol=1e-9):
    # range(small) inside range(big) iff big @ small == small
    return np.allclose(big @ small, small, atol=tol)


def test_model_validation():
    with pytest.raises(ValueError):
        OperatorModel(np.array([1.0, 1.0]), {})
    with pytest.raises(ValueError):
        OperatorModel(np.array([1.0, 0.0]), {"X": np.array([[0.0, 1.0], [0.0, 0.0]])})
    with pytest.raises(ValueError):
        OperatorModel(np.zeros(0), {})
    m = projection_model(0.3)
    with pytest.raises(KeyError):
        m["nope"]


def test_projection_model_expectation():
    for p in (0.0, 0.3, 1.0):
        m = projection_model(p)
        assert moment(m, ["P"]) == pytest.approx(1 - p, abs=1e-15)
        assert is_projection(m["P"])


def test_embedding_isometries():
    rng = np.random.default_rng(0)
    for da, db in [(1, 1), (2, 3), (3, 2), (4, 4)]:
        emb = boolean_embed(random_model(rng, da, "X"), random_model(rng, db, "Y"))
        assert emb.dimension == da + db - 1
        assert np.allclose(emb.v_a.conj().T @ emb.v_a, np.eye(da), atol=1e-12)
        assert np.allclose(emb.v_b.conj().T @ emb.v_b, np.eye(db), atol=1e-12)
        xi = emb.model.state
        assert np.allclose(emb.v_a @ emb.source_a.state, xi, atol=1e-12)
        assert np.allclose(emb.v_b @ emb.source_b.state, xi, atol=1e-12)


def test_embedding_preserves_single_moments():
    rng = np.random.default_rng(1)
    A, B = random_model(rng, 3, "X"), random_model(rng, 2, "Y")
    emb = boolean_embed(A, B)
    assert moment(emb, ["X"]) == pytest.approx(moment(A, ["X"]), abs=1e-12)
    assert moment(emb, ["Y"]) == pytest.approx(moment(B, ["Y"]), abs=1e-12)


def test_embedding_rejects_name_clash():
    with pytest.raises(ValueError):
        boolean_embed(projection_model(0.2, "P"), projection_model(0.3, "P"))


def blocks(word):
    return [list(g) for _, g in itertools.groupby(word)]


@pytest.mark.parametrize("dims", [(2, 2), (2, 3), (3, 3), (3, 2)])
def test_boolean_factorization(dims):
    rng = np.random.default_rng(sum(dims))
    A, B = random_model(rng, dims[0], "X"), random_model(rng, dims[1], "Y")
    emb = boolean_embed(A, B)
    sources = {"X": A, "Y": B}
    for length in range(1, 7):
        for _ in range(8):
            word = list(rng.choice(["X", "Y"], size=length))
            expected = 1.0 + 0j
            for block in blocks(word):
                src = sources[block[0]]
                expected *= src.expect(np.linalg.matrix_power(src[block[0]], len(block)))
            m = np.eye(emb.dimension, dtype=complex)
            for name in word:
                m = m @ emb.model[name]
            assert abs(emb.model.expect(m) - expected) <= 1e-9


def test_mixed_moment_examples():
    rng = np.random.default_rng(2)
    for da, db in [(2, 2), (3, 3), (2, 3)]:
        A, B = random_model(rng, da, "X"), random_model(rng, db, "Y")
        emb = boolean_embed(A, B)
        x, y = moment(A, "X"), moment(B, "Y")
        assert abs(moment(emb, ["X", "Y"]) - x * y) <= 1e-10
        assert abs(moment(emb, ["X", "Y", "X"]) - x * y * x) <= 1e-10


def test_moment_examples():
    m = diagonal_model([0.0, 1.0], np.sqrt([0.3, 0.7]))
    assert moment(m, ["X"]) == pytest.approx(0.7, abs=1e-15)
    emb = boolean_embed(projection_model(0.5, "P"), projection_model(0.5, "Q"))
    s = emb.model.with_observable("S", emb.model["P"] + emb.model["Q"])
    assert moment(s, ["S"]) == pytest.approx(1.0, abs=1e-12)
    assert moment(s, ["S", "S"]) == pytest.approx(1.5, abs=1e-12)
    with pytest.raises(ValueError):
        moment(s, [])
    with pytest.raises(KeyError):
        moment(s, ["Z"])
    with pytest.raises(ValueError):
        moment(s, ["S"] * 9)


def test_spectral_scale_examples():
    rng = np.random.default_rng(3)
    m = random_model(rng, 4, "X")
    w = np.linalg.eigvalsh(m["X"])
    assert np.allclose(spectral_scale(m, "X", w[0] - 1.0), 0.0)
    assert np.allclose(spectral_scale(m, "X", w[-1] + 1.0), np.eye(4))
    pm = projection_model(0.4)
    e = spectral_scale(pm, "P", 0.5)
    assert np.allclose(e, np.eye(2) - pm["P"], atol=1e-12)
    assert np.trace(e).real == pytest.approx(1.0)


def test_spectral_scale_monotone_and_projection():
    rng = np.random.default_rng(4)
    m = random_model(rng, 5, "X")
    ts = np.linspace(-4, 4, 25)
    scales = [spectral_scale(m, "X", t) for t in ts]
    for lo, hi in zip(scales, scales[1:]):
        assert is_projection(lo, 1e-10)
        assert dominated(lo, hi, 1e-10)


def test_embedded_scale_two_paths():
    rng = np.random.default_rng(5)
    for da, db in [(2, 2), (3, 4), (5, 2)]:
        emb = boolean_embed(random_model(rng, da, "X", psd=True), random_model(rng, db, "Y", psd=True))
        for name in ("X", "Y"):
            for t in (0.0, 0.3, 1.0, 2.5, 10.0, 1e3):
                direct = spectral_scale(emb.model, name, t)
                assembled = embedded_scale_nonneg(emb, name, t)
                assert np.allclose(direct, assembled, atol=1e-10)
        big = 1e6
        assert np.allclose(embedded_scale_nonneg(emb, "X", big), np.eye(emb.dimension), atol=1e-10)


def test_embedded_scale_rank_for_projection():
    db = 3
    rng = np.random.default_rng(6)
    emb = boolean_embed(projection_model(0.3, "P"), random_model(rng, db, "Y", psd=True))
    e = embedded_scale_nonneg(emb, "P", 0.5)
    rank = round(np.trace(e).real)
    assert rank == 1 + (db - 1)


def test_embedded_scale_rejects_indefinite():
    rng = np.random.default_rng(7)
    A = diagonal_model([-1.0, 2.0], [1.0, 1.0], "X")
    emb = boolean_embed(A, random_model(rng, 2, "Y", psd=True))
    with pytest.raises(ValueError):
        embedded_scale_nonneg(emb, "X", 0.5)
    with pytest.raises(ValueError):
        embedded_scale_nonneg(emb, "Y", -0.5)


def test_negative_t_branch_is_subprojection():
    rng = np.random.default_rng(8)
    A = random_model(rng, 3, "X")
    emb = boolean_embed(A, random_model(rng, 3, "Y"))
    own_block = emb.complement_projection("A") + emb.state_projection()
    for t in (-3.0, -1.0, -0.1):
        e = embedded_scale(emb, "X", t)
        assert is_projection(e, 1e-10)
        assert dominated(e, own_block, 1e-10)


def test_meet_examples():
    rng = np.random.default_rng(9)
    p = spectral_scale(random_model(rng, 4, "X"), "X", 0.0)
    eye = np.eye(4)
    assert np.allclose(projection_meet(eye, p), p, atol=1e-9)
    assert np.allclose(projection_meet(p, p), p, atol=1e-9)
    with pytest.raises(ValueError):
        projection_meet(eye, 2 * eye)


def test_meet_properties():
    rng = np.random.default_rng(10)
    for _ in range(20):
        d = rng.integers(2, 7)
        p = spectral_projection(random_hermitian(rng, d), rng.normal())
        q = spectral_projection(random_hermitian(rng, d), rng.normal())
        m = projection_meet(p, q)
        assert is_projection(m)
        assert dominated(m, p) and dominated(m, q)


def test_meet_of_shared_subspace():
    # two planes in C^3 sharing the line e1
    e1, e2, e3 = np.eye(3)
    v = (e2 + e3) / np.sqrt(2)
    p = np.outer(e1, e1) + np.outer(e2, e2)
    q = np.outer(e1, e1) + np.outer(v, v)
    assert np.allclose(projection_meet(p, q), np.outer(e1, e1), atol=1e-9)


def test_bare_embedded_projections_meet_is_trivial():
    for p, q in [(0.2, 0.5), (0.5, 0.5), (0.9, 0.1)]:
        emb = boolean_embed(projection_model(p, "P"), projection_model(q, "Q"))
        meet = projection_meet(emb.model["P"], emb.model["Q"])
        assert dominated(meet, emb.state_projection())
        value = emb.model.expect(meet).real
        assert min(abs(value), abs(value - 1.0)) <= 1e-9


def test_half_half_meet_is_one_third():
    emb = boolean_embed(projection_model(0.5, "P"), projection_model(0.5, "Q"))
    meet = projection_meet(embedded_scale_nonneg(emb, "P", 0.5), embedded_scale_nonneg(emb, "Q", 0.5))
    assert emb.model.expect(meet).real == pytest.approx(1 / 3, abs=1e-12)
    rows = spectral_max_distribution(emb, [0.5, 1.0, 5.0])
    assert rows[0][1] == pytest.approx(1 / 3, abs=1e-12)
    assert rows[1][1] == pytest.approx(1.0, abs=1e-12)
    assert rows[2][1] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("p", PQ)
def test_projection_sweep(p):
    for q in PQ:
        emb = boolean_embed(projection_model(p, "P"), projection_model(q, "Q"))
        value = spectral_max_distribution(emb, [0.5])[0][1]
        assert abs(value - 1 / (1 / p + 1 / q - 1)) <= 1e-10


def test_diagonal_example_against_boolean_max_conv():
    X = diagonal_model([0.0, 2.0], np.sqrt([0.3, 0.7]), "X")
    Y = diagonal_model([0.0, 3.0], np.sqrt([0.6, 0.4]), "Y")
    grid = np.linspace(0.0, 4.0, 81)
    rows = spectral_max_distribution(boolean_embed(X, Y), grid)
    closed = boolean_max_conv(Step([[0.0, 0.3], [2.0, 0.7]]), Step([[0.0, 0.6], [3.0, 0.4]]))(grid)
    assert np.max(np.abs(np.array([v for _, v in rows]) - closed)) <= 1e-9


def test_random_diagonal_against_boolean_max_conv():
    rng = np.random.default_rng(11)
    grid = geometric_grid(0.01, 5.0, 50)
    for _ in range(10):
        da, db = rng.integers(1, 6, 2)
        X = diagonal_model(rng.uniform(0, 4, da), random_state(rng, da), "X")
        Y = diagonal_model(rng.uniform(0, 4, db), random_state(rng, db), "Y")
        rows = spectral_max_distribution(boolean_embed(X, Y), grid)
        values = np.array([v for _, v in rows])
        closed = boolean_max_conv(Step(distribution(X, "X")), Step(distribution(Y, "Y")))(grid)
        assert np.max(np.abs(values - closed)) <= 1e-9
        assert np.all(np.diff(values) >= -1e-12)
        assert np.all((values >= 0) & (values <= 1))


def test_distribution_of_observable():
    m = diagonal_model([2.0, 0.0, 2.0], np.sqrt([0.25, 0.5, 0.25]))
    mu = distribution(m, "X")
    assert mu.locations.tolist() == [0.0, 2.0]
    assert np.allclose(mu.masses, [0.5, 0.5])
