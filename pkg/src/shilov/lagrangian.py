"""Lagrangian subspaces of (R^2r, omega) and the signature form of a triple.

``omega(a, b) = a^T J b`` with ``J = [[0, I], [-I, 0]]``, i.e.
``omega((xi, eta), (xi', eta')) = xi.eta' - eta.xi'``.

Symmetric unitaries ``u`` correspond to Lagrangians through the complex
coordinates ``a = (xi + i eta)/sqrt2``, ``b = (xi - i eta)/sqrt2``: the
complexification of ``L`` is the graph ``{b = u a}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateFrame,
    DimensionMismatch,
    ExtractionRankFailure,
    NoConvergence,
    NotLagrangian,
    NotSymmetricUnitary,
    ParseError,
    SignatureUnstable,
)
from .invariants import OrbitInvariant
from .jts import Flavor
from .matrices import EPS_RANK, EPS_VAL, embed_torus, reduce_to_torus, symplectic_form
from .polydisc import TorusPoint, torus_invariants


@dataclass(frozen=True)
class SymplecticSpace:
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise DimensionMismatch("half-dimension must be positive")
        J = self.J
        if not np.array_equal(J, -J.T) or abs(np.linalg.det(J)) != 1.0:
            raise DimensionMismatch("standard form is degenerate")

    @property
    def J(self) -> np.ndarray:
        return symplectic_form(self.r)

    def omega(self, a, b) -> float:
        return float(np.asarray(a) @ self.J @ np.asarray(b))

    def is_symplectic(self, g, tol: float = EPS_VAL) -> bool:
        g = np.asarray(g, dtype=float)
        return g.shape == (2 * self.r, 2 * self.r) and symplectic_defect(g) <= tol


def symplectic_defect(g) -> float:
    g = np.asarray(g)
    J = symplectic_form(g.shape[0] // 2)
    return float(np.linalg.norm(g.T @ J @ g - J))


@dataclass(frozen=True)
class LagrangianSubspace:
    basis: np.ndarray  # 2r x r, columns span the subspace
    tol: float = EPS_VAL

    def __post_init__(self):
        B = np.asarray(self.basis, dtype=float)
        if B.ndim != 2 or B.shape[0] != 2 * B.shape[1] or B.shape[1] == 0:
            raise DimensionMismatch(f"Lagrangian basis must be 2r x r, got {B.shape}")
        s = np.linalg.svd(B, compute_uv=False)
        if s[-1] <= EPS_RANK * s[0]:
            raise NotLagrangian("basis is not of full column rank")
        Q, _ = np.linalg.qr(B)
        if np.linalg.norm(Q.T @ symplectic_form(B.shape[1]) @ Q) > self.tol:
            raise NotLagrangian("subspace is not isotropic")
        B = B.copy()
        B.setflags(write=False)
        object.__setattr__(self, "basis", B)

    @property
    def r(self) -> int:
        return self.basis.shape[1]

    def orthonormal(self) -> np.ndarray:
        Q, _ = np.linalg.qr(self.basis)
        return Q

    def transform(self, g) -> "LagrangianSubspace":
        return LagrangianSubspace(np.asarray(g, dtype=float) @ self.basis, self.tol)

    def to_json(self) -> dict:
        return {"basis": self.basis.T.tolist()}

    @classmethod
    def from_json(cls, obj, tol: float = EPS_VAL) -> "LagrangianSubspace":
        try:
            cols = np.asarray(obj["basis"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad Lagrangian: {exc}") from None
        if cols.ndim != 2:
            raise ParseError("basis must be a list of columns")
        return cls(cols.T, tol)


def _same_space(*ls: LagrangianSubspace) -> int:
    r = ls[0].r
    if any(l.r != r for l in ls):
        raise DimensionMismatch("Lagrangians live in different symplectic spaces")
    return r


def intersection_dim(l1: LagrangianSubspace, l2: LagrangianSubspace, tol: float = EPS_RANK) -> int:
    """``dim(l1 ∩ l2) = r - rank(omega restricted to l1 x l2)``."""
    r = _same_space(l1, l2)
    s = np.linalg.svd(l1.orthonormal().T @ symplectic_form(r) @ l2.orthonormal(), compute_uv=False)
    return int(np.sum(s <= tol * max(1.0, s[0])))


def signature_form(l1, l2, l3) -> np.ndarray:
    """Matrix of ``omega(a,b) + omega(b,c) + omega(c,a)`` on ``l1 + l2 + l3``."""
    r = _same_space(l1, l2, l3)
    J = symplectic_form(r)
    L = [l.orthonormal() for l in (l1, l2, l3)]
    S = np.zeros((3 * r, 3 * r))
    for i, j in ((0, 1), (1, 2), (2, 0)):
        block = 0.5 * L[i].T @ J @ L[j]
        S[i * r:(i + 1) * r, j * r:(j + 1) * r] += block
        S[j * r:(j + 1) * r, i * r:(i + 1) * r] += block.T
    return S


def raw_signature(l1, l2, l3, tol: float = EPS_RANK) -> int:
    vals = np.linalg.eigvalsh(signature_form(l1, l2, l3))
    scale = max(1.0, float(np.max(np.abs(vals))))
    mag = np.abs(vals)
    if np.any((mag >= 0.1 * tol * scale) & (mag < tol * scale)):
        raise SignatureUnstable("eigenvalue inside the signature guard band")
    big = mag >= tol * scale
    return int(np.sum(vals[big] > 0) - np.sum(vals[big] < 0))


def unitary_to_lagrangian(u, tol: float = EPS_VAL) -> LagrangianSubspace:
    u = np.asarray(getattr(u, "z", u), dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise NotSymmetricUnitary("expected a square matrix")
    r = u.shape[0]
    eye = np.eye(r)
    if np.linalg.norm(u - u.T) > tol or np.linalg.norm(u @ u.conj().T - eye) > tol:
        raise NotSymmetricUnitary("matrix is not a symmetric unitary")
    W = np.vstack([(eye + u) / np.sqrt(2.0), (eye - u) / (1j * np.sqrt(2.0))])
    U, s, _ = np.linalg.svd(np.hstack([W.real, W.imag]))
    if s[r - 1] <= EPS_RANK * s[0] or (s[r] if len(s) > r else 0.0) > 1e-6 * s[0]:
        raise ExtractionRankFailure("real span of the graph does not have dimension r")
    return LagrangianSubspace(U[:, :r], tol)


def lagrangian_to_unitary(l: LagrangianSubspace) -> np.ndarray:
    r = l.r
    Q = l.orthonormal()
    X, Y = Q[:r], Q[r:]
    A = X + 1j * Y
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= EPS_RANK * s[0]:
        raise DegenerateFrame("complex frame of the Lagrangian is singular")
    u = np.linalg.solve(A.T, (X - 1j * Y).T).T
    return 0.5 * (u + u.T)


def _calibration() -> int:
    third = embed_torus(Flavor.SYMMETRIC, TorusPoint(["3/4"])).z
    ls = [unitary_to_lagrangian(np.array([[z]])) for z in (1.0, -1.0)]
    return raw_signature(*ls, unitary_to_lagrangian(third))


CALIBRATION = _calibration()


def kashiwara_index(l1: LagrangianSubspace, l2: LagrangianSubspace, l3: LagrangianSubspace,
                    tol: float = EPS_RANK) -> int:
    """Maslov index of a Lagrangian triple, normalized so (1, -1, -i) gives +1."""
    return CALIBRATION * raw_signature(l1, l2, l3, tol)


@dataclass(frozen=True)
class JointNormalForm:
    """``g^-1 l_k`` is spanned by ``cos(a_j) e_j + sin(a_j) f_j`` for ``a = angles[k]``."""

    g: np.ndarray
    angles: tuple  # three arrays of angles in [0, pi)
    turns: tuple  # the same positions as TorusPoints

    def invariant(self) -> OrbitInvariant:
        return torus_invariants(*self.turns)

    def normal_lagrangians(self) -> tuple:
        return tuple(angle_lagrangian(a) for a in self.angles)


def angle_lagrangian(angles) -> LagrangianSubspace:
    a = np.asarray(angles, dtype=float)
    return LagrangianSubspace(np.vstack([np.diag(np.cos(a)), np.diag(np.sin(a))]))


def turns_to_angles(t: TorusPoint) -> np.ndarray:
    """Position ``exp(2 pi i t)`` spans ``(cos pi t, -sin pi t)``."""
    return np.array([float(Fraction(-x) % 1) * np.pi for x in t.turns])


def _transport(g: np.ndarray) -> np.ndarray:
    """Real symplectic matrix acting on Lagrangians as ``g`` acts on symmetric unitaries."""
    r = g.shape[0] // 2
    eye, zero = np.eye(r), np.zeros((r, r))
    swap = np.block([[zero, eye], [eye, zero]])
    C = np.block([[eye, 1j * eye], [eye, -1j * eye]]) / np.sqrt(2.0)
    s = np.linalg.solve(C, swap @ g @ swap @ C)
    if np.linalg.norm(s.imag) > 1e-6 * max(1.0, np.linalg.norm(s)):
        raise NoConvergence("transported witness is not real")
    return s.real


def joint_normal_form(l1: LagrangianSubspace, l2: LagrangianSubspace, l3: LagrangianSubspace,
                      tol: float = 1e-6) -> JointNormalForm:
    _same_space(l1, l2, l3)
    us = [lagrangian_to_unitary(l) for l in (l1, l2, l3)]
    g, *turns = reduce_to_torus(Flavor.SYMMETRIC, *us, tol=tol)
    s = _transport(np.asarray(g.matrix))
    g_ret = np.linalg.inv(s)
    if symplectic_defect(g_ret) > 1e-8 * max(1.0, np.linalg.norm(g_ret) ** 2):
        raise NoConvergence("witness is not symplectic")
    return JointNormalForm(g_ret, tuple(turns_to_angles(t) for t in turns), tuple(turns))
