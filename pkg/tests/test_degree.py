import numpy as np
import pytest

from circlefix.degree import (
    DegreeError,
    MapDescriptor,
    NonlinearSlice,
    bidegree,
    Bidegree,
    cayley_mult,
    hopf_from_bidegree,
    linear_slice_degree,
    mc_degree,
    rounded_degree,
    tangent_frames,
    winding_degree,
)
from circlefix.space import mapping_cone_ring

E = np.eye(4)


def unit(rng, n, m=None):
    x = rng.standard_normal((m, n) if m else n)
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def test_complex_multiplication_adds_angles():
    a, b = 0.7, -2.1
    z = cayley_mult(1, [np.cos(a), np.sin(a)], [np.cos(b), np.sin(b)])
    assert np.allclose(z, [np.cos(a + b), np.sin(a + b)])


def test_quaternion_table():
    assert np.allclose(cayley_mult(2, E[1], E[2]), E[3])
    assert np.allclose(cayley_mult(2, E[2], E[1]), -E[3])


def test_octonions_norm_and_associator():
    rng = np.random.default_rng(5)
    x, y, z = unit(rng, 8), unit(rng, 8), unit(rng, 8)
    xy = cayley_mult(3, x, y)
    assert abs(np.linalg.norm(xy) - 1) < 1e-10
    assoc = cayley_mult(3, xy, z) - cayley_mult(3, x, cayley_mult(3, y, z))
    assert np.linalg.norm(assoc) > 1e-3


def test_cayley_rejects_non_unit():
    with pytest.raises(DegreeError):
        cayley_mult(2, 2 * E[0], E[1])


@pytest.mark.parametrize("m", [MapDescriptor("phi", 2), MapDescriptor("phi", 4), MapDescriptor("phi", 8),
                               MapDescriptor.cayley(1), MapDescriptor.cayley(2), MapDescriptor.cayley(3)])
def test_norm_preservation(m):
    rng = np.random.default_rng(0)
    x, y = unit(rng, m.n, 10_000), unit(rng, m.n, 10_000)
    assert np.max(np.abs(np.linalg.norm(m(x, y), axis=1) - 1)) < 1e-10


def test_linear_slice_examples():
    phi = MapDescriptor("phi", 4)
    assert linear_slice_degree(phi, "first", E[0]) == -1
    rng = np.random.default_rng(1)
    q = MapDescriptor.cayley(2)
    assert linear_slice_degree(q, "first", unit(rng, 4)) == 1
    c = MapDescriptor.cayley(1)
    assert linear_slice_degree(c, "first", unit(rng, 2)) == 1
    assert linear_slice_degree(c, "second", unit(rng, 2)) == 1
    with pytest.raises(NonlinearSlice):
        linear_slice_degree(phi, "second", E[0])


def g(p):
    return np.stack([1 - 2 * p[:, 0] ** 2, -2 * p[:, 0] * p[:, 1]], axis=1)


def test_winding_examples():
    assert winding_degree(g) == 2
    assert winding_degree(lambda p: p) == 1
    assert winding_degree(lambda p: -g(p)) == 2
    assert winding_degree(lambda p: p[:, ::-1]) == -1
    with pytest.raises(DegreeError):
        winding_degree(g, samples=10)


def test_tangent_frames_are_oriented():
    rng = np.random.default_rng(2)
    p = unit(rng, 5, 200)
    p[0] = [1, 0, 0, 0, 0]
    p[1] = [-1, 0, 0, 0, 0]
    full = np.concatenate([p[:, :, None], tangent_frames(p)], axis=2)
    assert np.allclose(np.linalg.det(full), 1)
    assert np.allclose(np.einsum("nij,nik->njk", full, full), np.eye(5))


def test_mc_identity_and_reflection():
    ident = mc_degree(lambda x: x, 4, 100_000, seed=1)
    assert abs(ident.estimate - 1) < 1e-6
    refl = mc_degree(lambda x: x * np.array([-1.0, 1, 1, 1]), 4, 100_000, seed=1)
    assert rounded_degree(refl) == -1


def test_mc_agrees_with_exact_route():
    phi = MapDescriptor("phi", 4)
    rng = np.random.default_rng(3)
    x = unit(rng, 4)
    est = mc_degree(phi.slice("first", x), 4, 100_000, seed=7)
    assert rounded_degree(est) == linear_slice_degree(phi, "first", x)


def test_mc_seed_determinism():
    phi = MapDescriptor("phi", 4)
    f = phi.slice("second", E[1])
    a = mc_degree(f, 4, 100_000, seed=11, workers=2)
    b = mc_degree(f, 4, 100_000, seed=11, workers=2)
    assert a == b
    with pytest.raises(DegreeError):
        mc_degree(f, 4, 1000)


def test_rounding_band():
    from circlefix.degree import MCEstimate
    with pytest.raises(DegreeError):
        rounded_degree(MCEstimate(1.5, 0.01, 100_000, 0))


def test_bidegree_examples():
    b = bidegree(MapDescriptor("phi", 2))
    assert (b.alpha, b.beta) == (2, -1)
    for level in (1, 2, 3):
        b = bidegree(MapDescriptor.cayley(level))
        assert (b.alpha, b.beta) == (1, 1)


@pytest.mark.slow
def test_bidegree_phi4_base_pairs():
    b = bidegree(MapDescriptor("phi", 4), seed=3, samples=200_000)
    assert (b.alpha, b.beta) == (2, -1)
    runs = b.estimates["base_pairs"]
    assert len(runs) == 3
    assert all(abs(r["alpha_info"]["estimate"] - 2) < 0.3 for r in runs)


def test_hopf_examples():
    assert hopf_from_bidegree(Bidegree(2, -1)).magnitude == 2
    assert hopf_from_bidegree(Bidegree(2, -1)).signed == -2
    assert hopf_from_bidegree(Bidegree(1, 1)).magnitude == 1
    assert hopf_from_bidegree(Bidegree(0, 5)).magnitude == 0


def test_phi_hopf_matches_cone_primitive():
    h = hopf_from_bidegree(bidegree(MapDescriptor("phi", 2)))
    assert h.magnitude == 2
    assert mapping_cone_ring(2, h.signed).iso_class == "P2(2)"


def test_descriptor_errors():
    with pytest.raises(DegreeError):
        MapDescriptor("phi", 3)
    with pytest.raises(DegreeError):
        MapDescriptor("cayley", 5)
