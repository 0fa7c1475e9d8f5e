import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolmax.cauchy import (
    AtomicMeasure,
    NumericalFailure,
    RationalFunction,
    atom_mass_at_zero,
    boolean_additive_convolve,
    cauchy_from_k,
    cauchy_transform,
    k_transform,
    measure_from_cauchy,
    poles_and_residues,
)
from boolmax.operator_model import boolean_embed, distribution, model_from_measure, moment

PQ = [round(0.1 * k, 1) for k in range(1, 10)]


def random_measure(rng, k, lo=-2.0, hi=3.0):
    locs = rng.uniform(lo, hi, k)
    w = rng.uniform(0.2, 1.0, k)
    return AtomicMeasure(locs, w / w.sum())


def operator_convolution(mu, nu):
    """Law of X~ + Y~ in the Boolean product of diagonal models."""
    emb = boolean_embed(model_from_measure(mu, "X"), model_from_measure(nu, "Y"))
    m = emb.model
    return distribution(m.with_observable("S", m["X"] + m["Y"]), "S")


def test_measure_validation():
    with pytest.raises(ValueError):
        AtomicMeasure([0.0, 1.0], [0.5, 0.6])
    with pytest.raises(ValueError):
        AtomicMeasure([0.0, 1.0], [1.0, 0.0])
    with pytest.raises(ValueError):
        AtomicMeasure([], [])
    mu = AtomicMeasure([1.0, 0.0, 1.0], [0.25, 0.5, 0.25])
    assert mu.locations.tolist() == [0.0, 1.0]
    assert mu.masses.tolist() == [0.5, 0.5]


def test_cauchy_transform_examples():
    assert cauchy_transform(AtomicMeasure.point(0.0)).allclose(RationalFunction([1.0], [0.0, 1.0]))
    p = 0.3
    G = cauchy_transform(AtomicMeasure.bernoulli_projection(p))
    # (z - p) / (z (z - 1))
    assert G.allclose(RationalFunction([-p, 1.0], [0.0, -1.0, 1.0]), atol=1e-15)
    G = cauchy_transform(AtomicMeasure([0.0, 1.5], [1 / 3, 2 / 3]))
    assert G.allclose(RationalFunction([-0.5, 1.0], [0.0, -1.5, 1.0]), atol=1e-15)


def test_cauchy_transform_degrees():
    rng = np.random.default_rng(3)
    for k in range(1, 8):
        G = cauchy_transform(random_measure(rng, k))
        dn, dd = G.degrees
        assert dd == k and dn == k - 1


def test_cauchy_transform_pointwise():
    rng = np.random.default_rng(4)
    mu = random_measure(rng, 5)
    G = cauchy_transform(mu)
    for z in (0.3 + 1j, -4.0 + 0.1j, 10.0):
        direct = np.sum(mu.masses / (z - mu.locations))
        assert abs(G(z) - direct) <= 1e-12


def test_k_transform_examples():
    assert k_transform(RationalFunction([1.0], [0.0, 1.0])).is_zero()
    p = 0.35
    K = k_transform(cauchy_transform(AtomicMeasure.bernoulli_projection(p)))
    # z (1 - p) / (z - p)
    assert K.allclose(RationalFunction([0.0, 1 - p], [-p, 1.0]), atol=1e-14)


def test_k_transform_round_trip():
    rng = np.random.default_rng(5)
    for k in range(1, 7):
        G = cauchy_transform(random_measure(rng, k))
        assert cauchy_from_k(k_transform(G)).allclose(G, atol=1e-10)


def test_k_transform_rejects_non_cauchy():
    with pytest.raises(ValueError):
        k_transform(RationalFunction([1.0, 1.0], [0.0, 1.0]))
    with pytest.raises(ValueError):
        k_transform(RationalFunction([2.0], [0.0, 1.0]))


def test_bernoulli_half_half():
    b = AtomicMeasure.bernoulli_projection(0.5)
    out = boolean_additive_convolve(b, b)
    # hand residues of (z - 1/2) / (z (z - 3/2)): at 0 -> 1/3, at 3/2 -> 2/3
    assert out.allclose(AtomicMeasure([0.0, 1.5], [1 / 3, 2 / 3]), atol=1e-10)
    assert out.allclose(operator_convolution(b, b), atol=1e-10)


def test_identity_element():
    rng = np.random.default_rng(6)
    delta = AtomicMeasure.point(0.0)
    for k in (1, 2, 4):
        mu = random_measure(rng, k)
        assert boolean_additive_convolve(mu, delta).allclose(mu, atol=1e-10)
        assert boolean_additive_convolve(delta, mu).allclose(mu, atol=1e-10)


def test_atom_mass_at_zero_examples():
    assert atom_mass_at_zero(RationalFunction([1.0], [0.0, 1.0])) == pytest.approx(1.0, abs=1e-15)
    assert atom_mass_at_zero(cauchy_transform(AtomicMeasure.point(1.0))) == 0.0
    b = cauchy_transform(AtomicMeasure.bernoulli_projection(0.5))
    G = cauchy_from_k(k_transform(b) + k_transform(b))
    assert atom_mass_at_zero(G) == pytest.approx(1 / 3, abs=1e-12)


@pytest.mark.parametrize("p", PQ)
@pytest.mark.parametrize("q", PQ)
def test_projection_sum_atom_at_zero(p, q):
    mp = AtomicMeasure.bernoulli_projection(p)
    mq = AtomicMeasure.bernoulli_projection(q)
    G = cauchy_from_k(k_transform(cauchy_transform(mp)) + k_transform(cauchy_transform(mq)))
    assert abs(atom_mass_at_zero(G) - 1 / (1 / p + 1 / q - 1)) <= 1e-9
    out = boolean_additive_convolve(mp, mq)
    assert out.locations[0] == 0.0
    assert abs(out.masses[0] - 1 / (1 / p + 1 / q - 1)) <= 1e-9


def test_first_moment_additive():
    rng = np.random.default_rng(7)
    for _ in range(20):
        mu, nu = random_measure(rng, 3), random_measure(rng, 3)
        out = boolean_additive_convolve(mu, nu)
        assert abs(out.moment(1) - mu.moment(1) - nu.moment(1)) <= 1e-8


def test_moments_match_operator_model():
    rng = np.random.default_rng(8)
    for _ in range(10):
        mu, nu = random_measure(rng, rng.integers(1, 4)), random_measure(rng, rng.integers(1, 4))
        out = boolean_additive_convolve(mu, nu)
        emb = boolean_embed(model_from_measure(mu, "X"), model_from_measure(nu, "Y"))
        m = emb.model.with_observable("S", emb.model["X"] + emb.model["Y"])
        for k in range(1, 5):
            assert abs(out.moment(k) - moment(m, ["S"] * k)) <= 1e-8


def test_matches_operator_eigendecomposition():
    rng = np.random.default_rng(9)
    for _ in range(10):
        mu, nu = random_measure(rng, rng.integers(1, 5)), random_measure(rng, rng.integers(1, 5))
        assert boolean_additive_convolve(mu, nu).allclose(operator_convolution(mu, nu), atol=1e-8)


def test_commutative_and_associative():
    rng = np.random.default_rng(10)
    for _ in range(10):
        a, b, c = (random_measure(rng, rng.integers(1, 4)) for _ in range(3))
        ab = boolean_additive_convolve(a, b)
        ba = boolean_additive_convolve(b, a)
        assert ab.allclose(ba, atol=1e-8)
        left = boolean_additive_convolve(ab, c)
        right = boolean_additive_convolve(a, boolean_additive_convolve(b, c))
        assert left.allclose(right, atol=1e-8)


def test_rebuild_cauchy_from_output_atoms():
    rng = np.random.default_rng(11)
    for _ in range(10):
        mu, nu = random_measure(rng, 3), random_measure(rng, 2)
        K = k_transform(cauchy_transform(mu)) + k_transform(cauchy_transform(nu))
        G = cauchy_from_k(K)
        rebuilt = cauchy_transform(measure_from_cauchy(G))
        assert rebuilt.allclose(G, atol=1e-8)


def test_non_real_poles_reported():
    # 1 / (z^2 + 1) has poles at +-i
    with pytest.raises(NumericalFailure):
        poles_and_residues(RationalFunction([1.0], [1.0, 0.0, 1.0]))


def test_negative_residue_reported():
    # 1/(z-1) - 1/(z-2) is not a Cauchy transform of a positive measure
    G = RationalFunction([1.0], [-1.0, 1.0]) - RationalFunction([1.0], [-2.0, 1.0])
    with pytest.raises(NumericalFailure):
        measure_from_cauchy(G)


def test_rational_arithmetic():
    z = RationalFunction.z()
    f = (z - 1) / (z * z - 1)  # common factor z - 1 cancels
    assert f.allclose(RationalFunction([1.0], [1.0, 1.0]))
    g = 1 / z + 2
    assert g(0.5) == pytest.approx(4.0)
    assert (g - g).is_zero()
    with pytest.raises(ZeroDivisionError):
        RationalFunction([1.0], [0.0])


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(0.0, 3.0), st.floats(0.05, 1.0)), min_size=1, max_size=4))
def test_small_outputs_are_probability_measures(pairs):
    locs = np.round([p[0] for p in pairs], 3)
    w = np.array([p[1] for p in pairs])
    mu = AtomicMeasure(locs, w / w.sum())
    out = boolean_additive_convolve(mu, AtomicMeasure.bernoulli_projection(0.4))
    assert abs(out.masses.sum() - 1.0) <= 1e-9
    assert np.all(out.masses > 0.0)
