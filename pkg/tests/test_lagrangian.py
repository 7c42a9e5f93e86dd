import itertools
from fractions import Fraction

import numpy as np
import pytest

from shilov import sampling
from shilov.errors import DimensionMismatch, NotLagrangian, NotSymmetricUnitary, SignatureUnstable
from shilov.jts import Flavor
from shilov.lagrangian import (
    CALIBRATION,
    LagrangianSubspace,
    SymplecticSpace,
    angle_lagrangian,
    intersection_dim,
    joint_normal_form,
    kashiwara_index,
    lagrangian_to_unitary,
    raw_signature,
    symplectic_defect,
    unitary_to_lagrangian,
)
from shilov.matrices import embed_torus, kernel_dim
from shilov.polydisc import TorusPoint, circle_maslov, torus_invariants

X_AXIS = LagrangianSubspace(np.array([[1.0], [0.0]]))
Y_AXIS = LagrangianSubspace(np.array([[0.0], [1.0]]))
DIAGONAL = LagrangianSubspace(np.array([[1.0], [1.0]]))


def _same_span(a, b):
    return intersection_dim(a, b, 1e-8) == a.r


def test_symplectic_space():
    space = SymplecticSpace(2)
    assert space.omega([1, 0, 0, 0], [0, 0, 1, 0]) == 1
    assert space.omega([0, 0, 1, 0], [1, 0, 0, 0]) == -1


def test_lagrangian_validation():
    with pytest.raises(NotLagrangian):
        LagrangianSubspace(np.array([[1.0, 0], [0, 0], [0, 1.0], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        LagrangianSubspace(np.ones((3, 1)))
    l = LagrangianSubspace(np.array([[1.0], [2.0]]))
    assert np.allclose(LagrangianSubspace.from_json(l.to_json()).basis, l.basis)


def test_raw_signature_and_calibration():
    assert raw_signature(X_AXIS, Y_AXIS, DIAGONAL) == -1
    assert CALIBRATION == -1
    assert kashiwara_index(X_AXIS, Y_AXIS, DIAGONAL) == 1
    assert kashiwara_index(X_AXIS, X_AXIS, DIAGONAL) == 0


def test_circle_images():
    assert _same_span(unitary_to_lagrangian(np.eye(1)), X_AXIS)
    assert np.allclose(lagrangian_to_unitary(X_AXIS), [[1]])
    assert np.allclose(lagrangian_to_unitary(Y_AXIS), [[-1]])
    assert np.allclose(lagrangian_to_unitary(DIAGONAL), [[-1j]])


def test_torus_images_are_half_angle_lines():
    theta = np.array([0.3, 2.0, 4.0])
    l = unitary_to_lagrangian(np.diag(np.exp(1j * theta)))
    expected = LagrangianSubspace(np.vstack([np.diag(np.cos(theta / 2)), -np.diag(np.sin(theta / 2))]))
    assert _same_span(l, expected)
    assert _same_span(unitary_to_lagrangian(np.eye(3)),
                      LagrangianSubspace(np.vstack([np.eye(3), np.zeros((3, 3))])))


def test_unitary_round_trip():
    rng = np.random.default_rng(0)
    for k in range(100):
        u = sampling.random_symmetric_unitary(rng, 1 + k % 4)
        assert np.linalg.norm(lagrangian_to_unitary(unitary_to_lagrangian(u)) - u) <= 1e-8


def test_unitary_to_lagrangian_rejects_non_symmetric():
    with pytest.raises(NotSymmetricUnitary):
        unitary_to_lagrangian(np.array([[0, 1], [-1, 0]]))


def test_intersections_match_kernels():
    rng = np.random.default_rng(1)
    for k in range(30):
        r = 1 + k % 4
        x, y = sampling.synthesize_pair(rng, Flavor.SYMMETRIC, r, k % (r + 1))
        assert intersection_dim(unitary_to_lagrangian(x), unitary_to_lagrangian(y)) == kernel_dim(x - y)


def test_signature_index_is_symplectic_invariant():
    rng = np.random.default_rng(2)
    for k in range(200):
        r = 1 + k % 4
        ls = [sampling.random_lagrangian(rng, r) for _ in range(3)]
        s = sampling.random_symplectic(rng, r)
        assert kashiwara_index(*(l.transform(s) for l in ls)) == kashiwara_index(*ls)


def test_bridge_on_circle_eighths():
    eighths = [Fraction(k, 8) for k in range(8)]
    ls = {t: unitary_to_lagrangian(embed_torus(Flavor.SYMMETRIC, TorusPoint([t])).z) for t in eighths}
    for a, b, c in itertools.product(eighths, repeat=3):
        assert kashiwara_index(ls[a], ls[b], ls[c]) == circle_maslov(a, b, c)


def test_signature_guard_band():
    tilted = LagrangianSubspace(np.array([[1.0], [3e-9]]))
    with pytest.raises(SignatureUnstable):
        kashiwara_index(X_AXIS, tilted, Y_AXIS)


def test_joint_normal_form_of_normal_triple():
    minus_graph = LagrangianSubspace(np.array([[1.0], [-1.0]]))
    nf = joint_normal_form(X_AXIS, Y_AXIS, minus_graph)
    assert np.allclose(nf.g, np.eye(2), atol=1e-10)
    assert np.allclose([a[0] for a in nf.angles], [0, np.pi / 2, 3 * np.pi / 4])


def test_joint_normal_form_recovers_invariants():
    rng = np.random.default_rng(3)
    for k in range(40):
        ts = sampling.random_torus_triple(rng, 1 + k % 4)
        _, ls = sampling.lagrangian_images(rng, ts)
        nf = joint_normal_form(*ls)
        assert symplectic_defect(nf.g) <= 1e-8
        assert nf.invariant() == torus_invariants(*ts)
        back = np.linalg.inv(nf.g)
        for l, m in zip(ls, nf.normal_lagrangians()):
            assert intersection_dim(l.transform(back), m, 1e-6) == l.r


def test_angle_lagrangian_matches_torus_image():
    t = TorusPoint(["1/8", "5/8"])
    from shilov.lagrangian import turns_to_angles

    l = unitary_to_lagrangian(embed_torus(Flavor.SYMMETRIC, t).z)
    assert _same_span(l, angle_lagrangian(turns_to_angles(t)))
