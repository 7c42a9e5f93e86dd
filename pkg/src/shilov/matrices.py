"""Symmetric-unitary and unitary matrix models with their Moebius group action.

``SYMMETRIC``: the ball in Sym_n(C), boundary = symmetric unitaries, group
Sp_2n(C) ∩ U(n,n).  ``HERMITIAN``: the ball in M_n(C), boundary = U(n),
group U(n,n).  Both act by ``z -> (a z + b)(c z + d)^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    NoConvergence,
    NonSymmetricInput,
    NotBoundary,
    NotInClosedBall,
    NotInGroup,
    NotTransversal,
    RankMismatch,
    RankUnstable,
    SingularDenominator,
    UnknownFlavor,
    ParseError,
)
from .invariants import OrbitInvariant
from .jts import Flavor
from .polydisc import TorusPoint, torus_invariants

EPS_VAL = 1e-8
EPS_RANK = 1e-8
EPS_SINGULAR = 1e-13
MATCH_TOL = 1e-6
MAX_DENOMINATOR = 10**6

MATRIX_FLAVORS = (Flavor.SYMMETRIC, Flavor.HERMITIAN)


def _matrix_flavor(flavor) -> Flavor:
    flavor = Flavor.parse(flavor)
    if flavor not in MATRIX_FLAVORS:
        raise UnknownFlavor(f"{flavor.value} is not a matrix flavor")
    return flavor


def _square(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim != 2 or z.shape[0] != z.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {z.shape}")
    return z


def matrix_to_json(z, flavor) -> dict:
    z = np.asarray(z, dtype=complex)
    return {"flavor": Flavor.parse(flavor).value, "re": z.real.tolist(), "im": z.imag.tolist()}


def matrix_from_json(obj):
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        flavor = obj["flavor"]
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ParseError(f"bad matrix: {exc}") from None
    flavor = Flavor.parse(flavor)
    if re.shape != im.shape:
        raise ParseError("re/im shapes differ")
    return flavor, re + 1j * im


@dataclass(frozen=True)
class BoundaryMatrix:
    flavor: Flavor
    z: np.ndarray
    tol: float = EPS_VAL

    def __post_init__(self):
        flavor = _matrix_flavor(self.flavor)
        z = _square(self.z).copy()
        n = z.shape[0]
        if np.linalg.norm(z @ z.conj().T - np.eye(n)) > self.tol:
            raise NotBoundary("matrix is not unitary")
        if flavor is Flavor.SYMMETRIC and np.linalg.norm(z - z.T) > self.tol:
            raise NotBoundary("matrix is not symmetric")
        z.setflags(write=False)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "z", z)

    @property
    def n(self) -> int:
        return self.z.shape[0]

    def to_json(self) -> dict:
        return matrix_to_json(self.z, self.flavor)

    @classmethod
    def from_json(cls, obj, tol: float = EPS_VAL) -> "BoundaryMatrix":
        flavor, z = matrix_from_json(obj)
        return cls(flavor, z, tol)


def _as_boundary(flavor, u, tol=EPS_VAL) -> np.ndarray:
    if isinstance(u, BoundaryMatrix):
        if u.flavor is not flavor:
            raise UnknownFlavor(f"expected {flavor.value} boundary matrix, got {u.flavor.value}")
        return np.asarray(u.z)
    return BoundaryMatrix(flavor, u, tol).z


def indefinite_form(n: int) -> np.ndarray:
    return np.diag(np.r_[np.ones(n), -np.ones(n)]).astype(complex)


def symplectic_form(n: int) -> np.ndarray:
    eye = np.eye(n)
    zero = np.zeros((n, n))
    return np.block([[zero, eye], [-eye, zero]])


def group_defects(flavor, g) -> tuple:
    """``(|g* eta g - eta|, |g^T J g - J|)``; the second is 0 for HERMITIAN."""
    g = np.asarray(g, dtype=complex)
    n = g.shape[0] // 2
    eta = indefinite_form(n)
    unitary = float(np.linalg.norm(g.conj().T @ eta @ g - eta))
    if Flavor.parse(flavor) is Flavor.SYMMETRIC:
        J = symplectic_form(n)
        return unitary, float(np.linalg.norm(g.T @ J @ g - J))
    return unitary, 0.0


@dataclass(frozen=True)
class MoebiusElement:
    matrix: np.ndarray
    flavor: Flavor
    tol: float = EPS_VAL

    def __post_init__(self):
        flavor = _matrix_flavor(self.flavor)
        g = _square(self.matrix).copy()
        if g.shape[0] % 2:
            raise DimensionMismatch("Moebius matrix must have even size")
        unitary, sympl = group_defects(flavor, g)
        scale = max(1.0, float(np.linalg.norm(g)) ** 2)
        if unitary > self.tol * scale:
            raise NotInGroup(f"matrix does not preserve the indefinite form (defect {unitary:.2e})")
        if sympl > self.tol * scale:
            raise NotInGroup(f"matrix is not complex-symplectic (defect {sympl:.2e})")
        g.setflags(write=False)
        object.__setattr__(self, "flavor", flavor)
        object.__setattr__(self, "matrix", g)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] // 2

    @property
    def blocks(self):
        n, g = self.n, self.matrix
        return g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]

    @classmethod
    def identity(cls, flavor, n: int) -> "MoebiusElement":
        return cls(np.eye(2 * n, dtype=complex), flavor)

    def __matmul__(self, other: "MoebiusElement") -> "MoebiusElement":
        if self.flavor is not other.flavor:
            raise UnknownFlavor("cannot compose elements of different flavors")
        return MoebiusElement(self.matrix @ other.matrix, self.flavor, max(self.tol, other.tol))

    def inverse(self) -> "MoebiusElement":
        return MoebiusElement(np.linalg.inv(self.matrix), self.flavor, self.tol)

    def __call__(self, z):
        return moebius_apply(self, z)

    def to_json(self) -> dict:
        return matrix_to_json(self.matrix, self.flavor)

    @classmethod
    def from_json(cls, obj, tol: float = EPS_VAL) -> "MoebiusElement":
        flavor, g = matrix_from_json(obj)
        return cls(g, flavor, tol)


def _apply(g: np.ndarray, z: np.ndarray, singular_tol: float = None) -> np.ndarray:
    n = z.shape[0]
    if g.shape != (2 * n, 2 * n):
        raise DimensionMismatch(f"element of size {g.shape[0]} cannot act on {n}x{n} matrices")
    if singular_tol is None:
        singular_tol = EPS_SINGULAR
    a, b, c, d = g[:n, :n], g[:n, n:], g[n:, :n], g[n:, n:]
    den = c @ z + d
    if n:
        # on the closed ball sigma_min(cz + d) only shrinks like 1/|g|^2, so the
        # test is against round-off of the product, not a fixed ratio
        s_min = np.linalg.svd(den, compute_uv=False)[-1]
        scale = np.linalg.norm(c, 2) * np.linalg.norm(z, 2) + np.linalg.norm(d, 2)
        if s_min <= singular_tol * scale:
            raise SingularDenominator("c z + d is singular: z is outside the domain of g")
    num = a @ z + b
    return np.linalg.solve(den.T, num.T).T


def moebius_apply(g: MoebiusElement, z, singular_tol: float = None):
    """``(a z + b)(c z + d)^-1``.

    A :class:`BoundaryMatrix` argument yields a validated BoundaryMatrix.
    """
    if isinstance(z, BoundaryMatrix):
        out = _apply(np.asarray(g.matrix), np.asarray(z.z), singular_tol)
        return BoundaryMatrix(z.flavor, out, max(z.tol, g.tol))
    return _apply(np.asarray(g.matrix), _square(z), singular_tol)


def linear_element(flavor, a, d=None) -> MoebiusElement:
    """``z -> a z d^-1``; for SYMMETRIC the only choice is ``d = a^-T``."""
    flavor = _matrix_flavor(flavor)
    a = _square(a)
    if d is None:
        d = np.linalg.inv(a).T if flavor is Flavor.SYMMETRIC else a
    n = a.shape[0]
    zero = np.zeros((n, n), dtype=complex)
    return MoebiusElement(np.block([[a, zero], [zero, _square(d)]]), flavor)


# -- spectral decomposition ---------------------------------------------------


@dataclass(frozen=True)
class SpectralData:
    frame: tuple
    eigenvalues: np.ndarray
    left: np.ndarray
    right: np.ndarray  # z = left @ diag(eigenvalues) @ right

    @property
    def spectral_norm(self) -> float:
        return float(self.eigenvalues[0]) if len(self.eigenvalues) else 0.0

    def reconstruct(self) -> np.ndarray:
        return sum((lam * c for lam, c in zip(self.eigenvalues, self.frame)),
                   np.zeros_like(self.left))


def takagi(z, tol: float = EPS_RANK):
    """``z = u diag(s) u^T`` with ``u`` unitary, ``s`` decreasing.

    Uses the real symmetric matrix ``[[A, B], [B, -A]]`` (``z = A + iB``),
    whose eigenvalues are ``±s``; eigenvectors ``(X; Y)`` for ``+s`` give
    the columns ``X + iY``.
    """
    z = _square(z)
    n = z.shape[0]
    A, B = z.real, z.imag
    M = np.block([[A, B], [B, -A]])
    vals, vecs = np.linalg.eigh(0.5 * (M + M.T))
    order = np.argsort(-vals, kind="stable")[:n]
    s = vals[order]
    u = vecs[:n, order] + 1j * vecs[n:, order]
    # zero singular values: the +0 and -0 eigenvectors mix, rebuild that block
    small = s <= tol * max(1.0, s[0] if n else 1.0)
    if small.any():
        keep = u[:, ~small]
        comp = scipy.linalg.null_space(keep.conj().T) if keep.shape[1] else np.eye(n, dtype=complex)
        u = np.hstack([keep, comp[:, : int(small.sum())]])
        s = np.where(small, 0.0, s)
    return u, np.clip(s, 0.0, None)


def spectral_decompose(flavor, z, tol: float = EPS_VAL) -> SpectralData:
    flavor = _matrix_flavor(flavor)
    z = _square(z)
    if flavor is Flavor.SYMMETRIC:
        if np.linalg.norm(z - z.T) > tol * max(1.0, np.linalg.norm(z)):
            raise NonSymmetricInput("matrix is not symmetric")
        u, s = takagi(z)
        frame = tuple(np.outer(u[:, j], u[:, j]) for j in range(len(s)))
        return SpectralData(frame, s, u, u.T)
    U, s, Vh = np.linalg.svd(z)
    frame = tuple(np.outer(U[:, j], Vh[j, :]) for j in range(len(s)))
    return SpectralData(frame, s, U, Vh)


def _to_identity(flavor: Flavor, x: np.ndarray) -> np.ndarray:
    """Linear element moving the boundary point ``x`` to ``I``."""
    sd = spectral_decompose(flavor, x)
    n = x.shape[0]
    zero = np.zeros((n, n), dtype=complex)
    if flavor is Flavor.SYMMETRIC:
        u = sd.left
        return np.block([[u.conj().T, zero], [zero, u.T]])
    return np.block([[sd.left.conj().T, zero], [zero, sd.right]])


# -- rank decisions -----------------------------------------------------------


def _null_space(m: np.ndarray, rank_tol: float, scale: float = 1.0) -> np.ndarray:
    """Orthonormal kernel basis; singular values in the decade above the
    threshold are ambiguous and raise RankUnstable."""
    ncols = m.shape[1]
    if ncols == 0:
        return np.zeros((0, 0), dtype=complex)
    _, s, vh = np.linalg.svd(m)
    s = np.r_[s, np.zeros(ncols - len(s))]
    thresh = rank_tol * max(scale, s[0])
    if np.any((s > thresh) & (s <= 10 * thresh)):
        raise RankUnstable(f"singular value near the rank threshold {thresh:.1e}")
    return vh[s <= thresh].conj().T


def kernel_dim(m, rank_tol: float = EPS_RANK) -> int:
    return _null_space(np.asarray(m, dtype=complex), rank_tol).shape[1]


def transversality_index(flavor, x, y, rank_tol: float = EPS_RANK, tol: float = EPS_VAL) -> int:
    """``dim ker(x - y)``: 0 for transversal pairs, ``n`` for ``x = y``."""
    flavor = _matrix_flavor(flavor)
    x, y = _as_boundary(flavor, x, tol), _as_boundary(flavor, y, tol)
    if x.shape != y.shape:
        raise RankMismatch("boundary matrices of different sizes")
    return kernel_dim(x - y, rank_tol)


def is_transversal_matrix(x, z, rank_tol: float = EPS_RANK) -> bool:
    """Invertibility of ``1 - z* x``, i.e. of the Bergman operator ``B(x, z)``."""
    x, z = _square(x), _square(z)
    s = np.linalg.svd(np.eye(x.shape[0]) - z.conj().T @ x, compute_uv=False)
    return bool(s[-1] > rank_tol * max(1.0, s[0]))


# -- Cayley machinery ---------------------------------------------------------


def cayley_element(n: int) -> np.ndarray:
    """``z -> (1 + z)(1 - z)^-1`` (ball to right half tube)."""
    eye = np.eye(n, dtype=complex)
    return np.block([[eye, eye], [-eye, eye]]) / np.sqrt(2.0)


def inverse_cayley_element(n: int) -> np.ndarray:
    eye = np.eye(n, dtype=complex)
    return np.block([[eye, -eye], [eye, eye]]) / np.sqrt(2.0)


def _pair_normalize(flavor: Flavor, x: np.ndarray, z: np.ndarray, rank_tol: float):
    n = x.shape[0]
    eye = np.eye(n, dtype=complex)
    zero = np.zeros((n, n), dtype=complex)
    L = _to_identity(flavor, x)
    z1 = _apply(L, z)
    if not is_transversal_matrix(eye, z1, rank_tol):
        raise NotTransversal("pair is not transversal")
    C = cayley_element(n)
    zeta = _apply(C, z1)
    # close points give |Im zeta| ~ 1/delta; a dilation first keeps the
    # translation O(1), so the element has norm ~ delta^-1/2 rather than delta^-1
    skew = (zeta - zeta.conj().T) / 2j
    h, V = np.linalg.eigh(skew.real if flavor is Flavor.SYMMETRIC else skew)
    V = V.astype(complex)
    d = 1.0 / np.sqrt(np.maximum(np.abs(h), 1.0))
    D = np.block([[d[:, None] * V.conj().T, zero], [zero, (1.0 / d)[:, None] * V.conj().T]])
    zeta = _apply(D, zeta)
    im = (zeta - zeta.conj().T) / 2j
    re = (zeta + zeta.conj().T) / 2
    if flavor is Flavor.SYMMETRIC:
        im, re = im.real.astype(complex), re.real.astype(complex)
    T = np.block([[eye, -1j * im], [zero, eye]])
    vals, W = np.linalg.eigh(re)
    order = np.argsort(-vals, kind="stable")
    vals, W = vals[order], W[:, order]
    if flavor is Flavor.SYMMETRIC:
        W = W.real.astype(complex)
    # Re zeta vanishes on boundary directions; its noise scales with |zeta|
    k = int(np.sum(vals > rank_tol * max(1.0, np.linalg.norm(zeta, 2) if n else 1.0)))
    scale = np.ones(n)
    scale[:k] = 1.0 / np.sqrt(vals[:k])
    A = scale[:, None] * W.conj().T
    A_inv_adj = (1.0 / scale)[:, None] * W.conj().T
    S = np.block([[A, zero], [zero, A_inv_adj]])
    g = inverse_cayley_element(n) @ S @ T @ D @ C @ L
    return g, k


def cayley_pair_normalize(flavor, x, z, tol: float = EPS_VAL, rank_tol: float = EPS_RANK):
    """Element ``g`` and ``k`` with ``g(x) = I`` and ``g(z) = diag(0_k, -1, ..., -1)``.

    ``x`` is a boundary point, ``z`` any point of the closed ball transversal to it.
    """
    flavor = _matrix_flavor(flavor)
    x = _as_boundary(flavor, x, tol)
    z = _square(z)
    if z.shape != x.shape:
        raise RankMismatch("x and z have different sizes")
    if flavor is Flavor.SYMMETRIC and np.linalg.norm(z - z.T) > tol:
        raise NonSymmetricInput("z is not symmetric")
    if np.linalg.norm(z, 2) > 1 + tol:
        raise NotInClosedBall("z lies outside the closed unit ball")
    g, k = _pair_normalize(flavor, x, z, rank_tol)
    return MoebiusElement(g, flavor, tol), k


# -- triple reduction ---------------------------------------------------------


def _align(V: np.ndarray, real: bool) -> np.ndarray:
    """Reorder/rephase an orthonormal basis so it is as close to ``I`` as possible."""
    n = V.shape[0]
    rows = np.argmax(np.abs(V), axis=0)
    if len(set(rows.tolist())) == n:
        V = V[:, np.argsort(rows)]
    piv = V[np.argmax(np.abs(V), axis=0), np.arange(n)]
    if real:
        return V * np.where(piv.real < 0, -1.0, 1.0)
    return V * (np.abs(piv) / piv)


def _unitary_eigenbasis(flavor: Flavor, w: np.ndarray) -> np.ndarray:
    """Eigenbasis of a unitary ``w``, real orthogonal when ``w`` is symmetric.

    The rational function ``i(p* w + 1)(p* w - 1)^-1`` for a circle point ``p``
    in the largest gap of the spectrum is hermitian (real symmetric for
    symmetric ``w``) with the same eigenvectors and well separated eigenvalues.
    """
    n = w.shape[0]
    angles = np.sort(np.mod(np.angle(np.linalg.eigvals(w)), 2 * np.pi))
    gaps = np.diff(np.r_[angles, angles[0] + 2 * np.pi])
    j = int(np.argmax(gaps))
    p = np.exp(1j * (angles[j] + gaps[j] / 2))
    eye = np.eye(n)
    f = 1j * np.linalg.solve((np.conj(p) * w - eye).T, (np.conj(p) * w + eye).T).T
    h = 0.5 * (f + f.conj().T)
    if flavor is Flavor.SYMMETRIC:
        _, V = np.linalg.eigh(h.real)
        return _align(V, real=True).astype(complex)
    _, V = np.linalg.eigh(h)
    return _align(V, real=False)


def _embed(g_sub: np.ndarray, idx, n: int) -> np.ndarray:
    """Act by ``g_sub`` on the coordinates ``idx`` and trivially on the rest."""
    m = len(idx)
    g = np.eye(2 * n, dtype=complex)
    full = np.r_[idx, np.asarray(idx) + n].astype(int)
    g[np.ix_(full, full)] = 0
    a, b, c, d = g_sub[:m, :m], g_sub[:m, m:], g_sub[m:, :m], g_sub[m:, m:]
    ii = np.asarray(idx, dtype=int)
    g[np.ix_(ii, ii)] = a
    g[np.ix_(ii, ii + n)] = b
    g[np.ix_(ii + n, ii)] = c
    g[np.ix_(ii + n, ii + n)] = d
    return g


def _clean(flavor: Flavor, w: np.ndarray) -> np.ndarray:
    """Nearest unitary (and symmetric) matrix; stops error build-up in recursion."""
    if w.size == 0:
        return w
    if flavor is Flavor.SYMMETRIC:
        w = 0.5 * (w + w.T)
    u, _ = scipy.linalg.polar(w)
    if flavor is Flavor.SYMMETRIC:
        u = 0.5 * (u + u.T)
    return u


def _real_basis(B: np.ndarray, m: int) -> np.ndarray:
    """Real orthonormal basis of a conjugation-invariant subspace spanned by ``B``."""
    U, _, _ = np.linalg.svd(np.hstack([B.real, B.imag]))
    return U[:, :m]


def _linear(P: np.ndarray) -> np.ndarray:
    """``z -> P* z P`` for unitary ``P`` (real orthogonal for SYMMETRIC)."""
    n = P.shape[0]
    zero = np.zeros((n, n), dtype=complex)
    Ph = P.conj().T
    return np.block([[Ph, zero], [zero, Ph]])


def _reduce(flavor: Flavor, us, rank_tol: float) -> np.ndarray:
    n = us[0].shape[0]
    if n == 0:
        return np.zeros((0, 0), dtype=complex)
    eye = np.eye(n, dtype=complex)
    g0 = _to_identity(flavor, us[0])
    v2, v3 = (_clean(flavor, _apply(g0, u)) for u in us[1:])

    # case 1: common fixed directions split off as a block of 1's
    K = _null_space(np.vstack([eye - v2, eye - v3]), rank_tol)
    m = K.shape[1]
    if m:
        if flavor is Flavor.SYMMETRIC:
            K = _real_basis(K, m)
            comp = scipy.linalg.null_space(K.T)
        else:
            comp = scipy.linalg.null_space(K.conj().T)
        P = np.hstack([K, comp]).astype(complex)
        gP = _linear(P)
        w2, w3 = (_clean(flavor, (P.conj().T @ v @ P)[m:, m:]) for v in (v2, v3))
        g_sub = _reduce(flavor, [np.eye(n - m, dtype=complex), w2, w3], rank_tol)
        return _embed(g_sub, np.arange(m, n), n) @ gP @ g0

    vs = [eye, v2, v3]
    d12 = kernel_dim(eye - v2, rank_tol)
    d13 = kernel_dim(eye - v3, rank_tol)
    d23 = kernel_dim(v2 - v3, rank_tol)

    # case 2: a transversal pair is moved to (I, -I), the third point is
    # diagonalized by the stabilizer of that pair
    for (p, q, s), dim in (((0, 1, 2), d12), ((0, 2, 1), d13), ((1, 2, 0), d23)):
        if dim == 0:
            gn, k = _pair_normalize(flavor, vs[p], vs[q], rank_tol)
            if k != 0:
                raise NoConvergence("transversal boundary pair did not normalize to (I, -I)")
            w = _clean(flavor, _apply(gn, vs[s]))
            V = _unitary_eigenbasis(flavor, w)
            return _linear(V) @ gn @ g0

    # case 3: x = v2 on ker(v2 - v3), 0 elsewhere, is transversal to I;
    # normalizing (I, x) puts v2, v3 into the block face diag(*, -I)
    K23 = _null_space(v2 - v3, rank_tol)
    x = v2 @ K23 @ K23.conj().T
    if flavor is Flavor.SYMMETRIC:
        x = 0.5 * (x + x.T)
    gn, k = _pair_normalize(flavor, eye, x, rank_tol)
    w2, w3 = (_apply(gn, v) for v in (v2, v3))
    tail = slice(k, n)
    for w in (w2, w3):
        if np.linalg.norm(w[tail, tail] + np.eye(n - k)) > MATCH_TOL or \
                np.linalg.norm(w[:k, tail]) + np.linalg.norm(w[tail, :k]) > MATCH_TOL:
            raise NoConvergence("face block structure not reached in case 3")
    head = [np.eye(k, dtype=complex)] + [_clean(flavor, w[:k, :k]) for w in (w2, w3)]
    g_sub = _reduce(flavor, head, rank_tol)
    return _embed(g_sub, np.arange(k), n) @ gn @ g0


def _circle_orientation(p1: complex, p2: complex, p3: complex) -> int:
    t = [float(np.mod(np.angle(p), 2 * np.pi)) for p in (p1, p2, p3)]
    descents = (t[0] > t[1]) + (t[1] > t[2]) + (t[2] > t[0])
    return 1 if descents == 1 else -1


def _three_point_map(src, dst) -> np.ndarray:
    """SU(1,1) matrix sending the distinct circle points ``src`` to ``dst``."""

    def to_standard(z1, z2, z3):
        # z1 -> 0, z2 -> 1, z3 -> oo
        return np.array([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])

    M = np.linalg.solve(to_standard(*dst), to_standard(*src))
    M = M / np.sqrt(np.linalg.det(M))
    if M[0, 0].real < 0:
        M = -M
    return M


def _canonical_disc_map(p, tol: float) -> np.ndarray:
    """SU(1,1) matrix moving one coordinate triple to its canonical position.

    Canonical values are 1 for the first point, then -1 / +1 / ±i as in the
    six circle orbits (1,1,1), (1,1,-1), (1,-1,1), (1,-1,-1), (1,-1,∓i).
    """
    p1, p2, p3 = p
    e12, e13, e23 = abs(p1 - p2) <= tol, abs(p1 - p3) <= tol, abs(p2 - p3) <= tol
    if e12 and e13:
        half = np.exp(-0.5j * np.angle(p1))
        return np.diag([half, np.conj(half)])
    if e12 or e13 or e23:
        a, b = (p1, p3) if e12 else (p1, p2)
        mid = -(a + b)
        mid = mid / abs(mid) if abs(mid) > 1e-3 else 1j * a
        third = -1j if _circle_orientation(a, b, mid) > 0 else 1j
        return _three_point_map((a, b, mid), (1, -1, third))
    third = -1j if _circle_orientation(p1, p2, p3) > 0 else 1j
    return _three_point_map((p1, p2, p3), (1, -1, third))


def _global_phase(flavor: Flavor, g: np.ndarray) -> np.ndarray:
    tr = np.trace(g)
    if flavor is Flavor.SYMMETRIC:
        return -g if tr.real < 0 else g
    return g * (np.conj(tr) / abs(tr)) if abs(tr) > 1e-12 else g


def reduce_to_diagonal(flavor, u1, u2, u3, tol: float = MATCH_TOL, rank_tol: float = EPS_RANK):
    """Witness ``g`` and the unit-modulus diagonals of ``g(u_k)``.

    Each coordinate triple of the diagonals is in canonical position.
    """
    flavor = _matrix_flavor(flavor)
    us = [_as_boundary(flavor, u, EPS_VAL) for u in (u1, u2, u3)]
    n = us[0].shape[0]
    if any(u.shape != (n, n) for u in us):
        raise RankMismatch("boundary matrices of different sizes")
    try:
        g = _reduce(flavor, us, rank_tol)
    except (RankUnstable, NotTransversal, SingularDenominator) as exc:
        raise NoConvergence(f"triple reduction failed: {exc}") from exc
    diags = []
    for u in us:
        w = _apply(g, u)
        if np.linalg.norm(w - np.diag(np.diag(w))) > tol:
            raise NoConvergence("reduced triple is not diagonal")
        diags.append(np.diag(w))
    if np.any(np.abs(np.abs(np.array(diags)) - 1) > tol):
        raise NoConvergence("reduced diagonal entries are not unimodular")
    maps = [_canonical_disc_map([d[j] for d in diags], tol) for j in range(n)]
    h = np.zeros((2 * n, 2 * n), dtype=complex)
    for j, M in enumerate(maps):
        h[j, j], h[j, j + n], h[j + n, j], h[j + n, j + n] = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    g = _global_phase(flavor, h @ g)
    diags = [np.diag(_apply(g, u)) for u in us]
    return MoebiusElement(g, flavor, EPS_VAL), diags


def _to_turns(d: np.ndarray, tol: float) -> TorusPoint:
    turns = []
    for entry in d:
        x = Fraction(float(np.mod(np.angle(entry) / (2 * np.pi), 1.0)))
        t = x.limit_denominator(MAX_DENOMINATOR) % 1
        if abs(np.exp(2j * np.pi * float(t)) - entry) > tol:
            raise NoConvergence(f"diagonal entry {entry} has no rational turn within {tol}")
        turns.append(t)
    return TorusPoint(turns)


def reduce_to_torus(flavor, u1, u2, u3, tol: float = MATCH_TOL, rank_tol: float = EPS_RANK):
    """``(g, t1, t2, t3)`` with ``g(u_k) = embed_torus(t_k)`` up to ``tol``."""
    g, diags = reduce_to_diagonal(flavor, u1, u2, u3, tol, rank_tol)
    t1, t2, t3 = (_to_turns(d, tol) for d in diags)
    return g, t1, t2, t3


def embed_torus(flavor, t: TorusPoint, n: int | None = None) -> BoundaryMatrix:
    flavor = _matrix_flavor(flavor)
    if n is not None and n != t.rank:
        raise RankMismatch(f"torus point of rank {t.rank} cannot embed in size {n}")
    diag = np.exp(2j * np.pi * np.array([float(x) for x in t.turns]))
    return BoundaryMatrix(flavor, np.diag(diag))


def direct_invariants(flavor, u1, u2, u3, tol: float = EPS_RANK) -> OrbitInvariant:
    """The five integers computed from kernels of differences.

    The Maslov index goes through the Lagrangian picture for SYMMETRIC and
    through the torus reduction for HERMITIAN.
    """
    flavor = _matrix_flavor(flavor)
    us = [_as_boundary(flavor, u) for u in (u1, u2, u3)]
    n = us[0].shape[0]
    if any(u.shape != (n, n) for u in us):
        raise RankMismatch("boundary matrices of different sizes")
    a, b, c = us
    n12 = kernel_dim(a - b, tol)
    n23 = kernel_dim(b - c, tol)
    n31 = kernel_dim(c - a, tol)
    n123 = kernel_dim(np.vstack([a - b, a - c]), tol)
    if flavor is Flavor.SYMMETRIC:
        from .lagrangian import kashiwara_index, unitary_to_lagrangian

        iota = kashiwara_index(*(unitary_to_lagrangian(u) for u in us))
    else:
        _, t1, t2, t3 = reduce_to_torus(flavor, *us, rank_tol=tol)
        iota = torus_invariants(t1, t2, t3).iota
    return OrbitInvariant(r=n, n12=n12, n23=n23, n31=n31, n123=n123, iota=iota)


__all__ = [
    "BoundaryMatrix",
    "EPS_RANK",
    "EPS_VAL",
    "MoebiusElement",
    "SpectralData",
    "cayley_pair_normalize",
    "direct_invariants",
    "embed_torus",
    "kernel_dim",
    "linear_element",
    "moebius_apply",
    "reduce_to_diagonal",
    "reduce_to_torus",
    "spectral_decompose",
    "takagi",
    "transversality_index",
]
