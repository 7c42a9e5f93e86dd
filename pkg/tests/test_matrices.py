from fractions import Fraction

import numpy as np
import pytest

from shilov.errors import (
    NoConvergence,
    NonSymmetricInput,
    NotBoundary,
    NotInClosedBall,
    NotInGroup,
    NotTransversal,
    RankMismatch,
    RankUnstable,
    SingularDenominator,
)
from shilov.jts import Flavor, TripleModel, is_transversal, is_tripotent
from shilov.matrices import (
    BoundaryMatrix,
    MoebiusElement,
    cayley_pair_normalize,
    direct_invariants,
    embed_torus,
    kernel_dim,
    linear_element,
    moebius_apply,
    reduce_to_torus,
    spectral_decompose,
    takagi,
    transversality_index,
)
from shilov.polydisc import TorusPoint, standard_triple, torus_invariants
from shilov import sampling

FLAVORS = [Flavor.SYMMETRIC, Flavor.HERMITIAN]


def test_spectral_decompose_examples():
    sd = spectral_decompose(Flavor.HERMITIAN, np.diag([3.0, 1.0]))
    assert np.allclose(sd.eigenvalues, [3, 1])
    assert np.allclose(np.abs(sd.frame[0]), np.diag([1, 0]))
    assert np.allclose(np.abs(sd.frame[1]), np.diag([0, 1]))
    assert np.allclose(spectral_decompose(Flavor.SYMMETRIC, np.eye(3)).eigenvalues, 1)
    assert np.allclose(spectral_decompose(Flavor.SYMMETRIC, np.zeros((2, 2))).eigenvalues, 0)
    assert spectral_decompose(Flavor.HERMITIAN, np.eye(2)).spectral_norm == pytest.approx(1)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_spectral_frame_reconstructs_and_consists_of_tripotents(flavor):
    rng = np.random.default_rng(0)
    z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    if flavor is Flavor.SYMMETRIC:
        z = z + z.T
    sd = spectral_decompose(flavor, z)
    assert np.allclose(sd.reconstruct(), z, atol=1e-10)
    assert np.all(np.diff(sd.eigenvalues) <= 1e-12)
    model = TripleModel(flavor, 4)
    for c in sd.frame:
        assert is_tripotent(model, c)


def test_takagi_with_zero_singular_values():
    rng = np.random.default_rng(1)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    z = np.outer(v, v)
    u, s = takagi(z)
    assert np.allclose(u.conj().T @ u, np.eye(3), atol=1e-10)
    assert np.allclose(u @ np.diag(s) @ u.T, z, atol=1e-10)
    assert np.count_nonzero(s > 1e-8) == 1


def test_spectral_decompose_rejects_non_symmetric():
    with pytest.raises(NonSymmetricInput):
        spectral_decompose(Flavor.SYMMETRIC, np.array([[0, 1], [0, 0]]))


def test_boundary_validation():
    with pytest.raises(NotBoundary):
        BoundaryMatrix(Flavor.HERMITIAN, np.diag([1.0, 0.5]))
    with pytest.raises(NotBoundary):
        BoundaryMatrix(Flavor.SYMMETRIC, np.array([[0, 1], [-1, 0]]))
    u = BoundaryMatrix(Flavor.SYMMETRIC, np.diag([1, 1j]))
    assert BoundaryMatrix.from_json(u.to_json()).z.tolist() == u.z.tolist()


def test_group_validation():
    with pytest.raises(NotInGroup):
        MoebiusElement(np.diag([2.0, 1.0]), Flavor.HERMITIAN)
    a = np.diag([1.0, 1j])
    linear_element(Flavor.HERMITIAN, a, np.eye(2))
    with pytest.raises(NotInGroup):
        MoebiusElement(np.block([[a, np.zeros((2, 2))], [np.zeros((2, 2)), np.eye(2)]]), Flavor.SYMMETRIC)


def test_identity_acts_trivially():
    z = np.diag([0.3, -0.2j])
    assert np.allclose(moebius_apply(MoebiusElement.identity(Flavor.SYMMETRIC, 2), z), z)


def test_symmetric_linear_action():
    rng = np.random.default_rng(2)
    a = sampling.random_unitary(rng, 3)
    g = linear_element(Flavor.SYMMETRIC, a)
    assert np.allclose(moebius_apply(g, np.eye(3)), a @ a.T)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_action_composes(flavor):
    rng = np.random.default_rng(3)
    g, h = (sampling.random_moebius(rng, flavor, 3) for _ in range(2))
    z = sampling.random_boundary(rng, flavor, 3)
    assert np.allclose(moebius_apply(g @ h, z), moebius_apply(g, moebius_apply(h, z)), atol=1e-8)
    assert np.allclose(moebius_apply(g.inverse(), moebius_apply(g, z)), z, atol=1e-8)
    image = moebius_apply(g, BoundaryMatrix(flavor, z))
    assert isinstance(image, BoundaryMatrix)


def test_moebius_json_round_trip():
    rng = np.random.default_rng(4)
    g = sampling.random_moebius(rng, Flavor.SYMMETRIC, 2)
    back = MoebiusElement.from_json(g.to_json())
    assert np.allclose(back.matrix, g.matrix)


def test_singular_denominator():
    t = 0.7
    g = MoebiusElement(np.array([[np.cosh(t), np.sinh(t)], [np.sinh(t), np.cosh(t)]]), Flavor.HERMITIAN)
    with pytest.raises(SingularDenominator):
        moebius_apply(g, np.array([[-1 / np.tanh(t)]]))


@pytest.mark.parametrize("flavor", FLAVORS)
def test_cayley_pair_normalize_examples(flavor):
    g, k = cayley_pair_normalize(flavor, np.eye(2), -np.eye(2))
    assert k == 0 and np.allclose(g.matrix, np.eye(4))
    g, k = cayley_pair_normalize(flavor, np.eye(2), np.diag([0.0, -1.0]))
    assert k == 1
    assert np.allclose(moebius_apply(g, np.diag([0.0, -1.0])), np.diag([0.0, -1.0]), atol=1e-10)
    assert np.allclose(moebius_apply(g, np.eye(2)), np.eye(2), atol=1e-10)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_cayley_pair_normalize_random_opposite(flavor):
    rng = np.random.default_rng(5)
    for _ in range(20):
        x = sampling.random_boundary(rng, flavor, 3)
        g, k = cayley_pair_normalize(flavor, x, -x)
        assert k == 0
        assert np.linalg.norm(moebius_apply(g, -x) + np.eye(3)) <= 1e-6
        assert np.linalg.norm(moebius_apply(g, x) - np.eye(3)) <= 1e-6


def test_cayley_pair_normalize_interior_point():
    rng = np.random.default_rng(6)
    x = sampling.random_symmetric_unitary(rng, 3)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    z = 0.5 * np.outer(v, v) / np.linalg.norm(v) ** 2 - 0.3 * x
    g, k = cayley_pair_normalize(Flavor.SYMMETRIC, x, z)
    target = np.diag([0.0] * k + [-1.0] * (3 - k))
    assert np.allclose(moebius_apply(g, z), target, atol=1e-8)


def test_cayley_pair_normalize_errors():
    with pytest.raises(NotTransversal):
        cayley_pair_normalize(Flavor.HERMITIAN, np.eye(2), np.diag([1.0, -1.0]))
    with pytest.raises(NotInClosedBall):
        cayley_pair_normalize(Flavor.HERMITIAN, np.eye(2), np.diag([2.0, -1.0]))


@pytest.mark.parametrize("flavor", FLAVORS)
def test_reduce_already_diagonal(flavor):
    g, *ts = reduce_to_torus(flavor, np.eye(2), -np.eye(2), np.diag([1j, -1j]))
    assert np.allclose(g.matrix, np.eye(4), atol=1e-10)
    assert [t.turns for t in ts] == [(0, 0), (Fraction(1, 2),) * 2, (Fraction(1, 4), Fraction(3, 4))]


@pytest.mark.parametrize("flavor", FLAVORS)
def test_reduce_total_coincidence(flavor):
    rng = np.random.default_rng(7)
    u = sampling.random_boundary(rng, flavor, 3)
    g, t1, t2, t3 = reduce_to_torus(flavor, u, u, u)
    assert t1 == t2 == t3
    assert np.allclose(moebius_apply(g, u), embed_torus(flavor, t1).z, atol=1e-6)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_reduce_recovers_conjugated_standard_triples(flavor):
    rng = np.random.default_rng(8)
    for N in [(0, 0, 0, 0, 0), (0, 1, 2, 3, 3), (1, 1, 2, 2, 3), (0, 0, 1, 1, 2), (0, 0, 0, 3, 3)]:
        ts = standard_triple(N, 3)
        g = sampling.random_moebius(rng, flavor, 3)
        us = [moebius_apply(g, embed_torus(flavor, t)) for t in ts]
        h, *found = reduce_to_torus(flavor, *us)
        assert torus_invariants(*found) == torus_invariants(*ts)
        for t, u in zip(found, us):
            assert np.linalg.norm(moebius_apply(h, u).z - embed_torus(flavor, t).z) <= 1e-6


def test_reduce_reports_ill_conditioned_input():
    # two points 1e-9 apart: the rank decision is ambiguous
    u = np.diag([1.0, 1.0]).astype(complex)
    v = np.diag([1.0, np.exp(2e-8j)])
    with pytest.raises(NoConvergence):
        reduce_to_torus(Flavor.HERMITIAN, u, v, -u)


def test_kernel_dim_guard_band():
    with pytest.raises(RankUnstable):
        kernel_dim(np.diag([1.0, 5e-8]))
    assert kernel_dim(np.diag([1.0, 1e-12])) == 1


def test_embed_torus_examples():
    assert np.allclose(embed_torus(Flavor.HERMITIAN, TorusPoint([0, "1/2"])).z, np.diag([1, -1]))
    assert np.allclose(embed_torus(Flavor.SYMMETRIC, TorusPoint(["3/4"])).z, [[-1j]])
    with pytest.raises(RankMismatch):
        embed_torus(Flavor.SYMMETRIC, TorusPoint([0]), n=2)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_direct_invariants_examples(flavor):
    inv = direct_invariants(flavor, np.eye(2), -np.eye(2), np.diag([1j, -1j]))
    assert inv.as_tuple() == (0, 0, 0, 0, 0)
    assert direct_invariants(flavor, np.eye(3), np.eye(3), np.eye(3)).as_tuple() == (3, 3, 3, 3, 0)
    ts = standard_triple((0, 1, 2, 3, 3), 3)
    inv = direct_invariants(flavor, *(embed_torus(flavor, t) for t in ts))
    assert inv.as_tuple() == (1, 1, 1, 0, 0)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_direct_invariants_match_torus_oracle(flavor):
    rng = np.random.default_rng(9)
    for k in range(100):
        ts = sampling.random_torus_triple(rng, 1 + k % 4)
        assert direct_invariants(flavor, *(embed_torus(flavor, t) for t in ts)) == torus_invariants(*ts)


@pytest.mark.parametrize("flavor", FLAVORS)
def test_triple_intersection_is_group_invariant(flavor):
    rng = np.random.default_rng(10)
    for _ in range(30):
        ts, _, us = sampling.synthesize_triple(rng, flavor, 3)
        g = sampling.random_moebius(rng, flavor, 3)
        a, b, c = (moebius_apply(g, u) for u in us)
        assert kernel_dim(np.vstack([a - b, a - c])) == torus_invariants(*ts).n123


@pytest.mark.parametrize("flavor", FLAVORS)
def test_pair_index_and_transversality_agree(flavor):
    rng = np.random.default_rng(11)
    model = TripleModel(flavor, 2)
    for k in range(3):
        for _ in range(5):
            x, y = sampling.synthesize_pair(rng, flavor, 2, k)
            mu = transversality_index(flavor, x, y)
            assert mu == k
            assert is_transversal(model, x, y) == (mu == 0)
    for r in range(1, 7):
        for k in range(r + 1):
            eps = embed_torus(flavor, TorusPoint([0] * k + ["1/2"] * (r - k)))
            assert transversality_index(flavor, np.eye(r), eps) == k
