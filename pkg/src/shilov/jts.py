"""Jordan triple operators for the polydisc and the two classical matrix models.

Elements are plain numpy arrays: a complex vector of length ``r`` for the
polydisc, a complex ``n x n`` matrix for the matrix models.  Operators that
may be antilinear (``Q(x)``, and products involving it) are stored as real
matrices acting on the realification ``V_R = R^{2N}``, coordinates being
``[Re c, Im c]`` of the complex coordinate vector ``c`` in an orthonormal
basis.

Normalization: ``{x,x,x} = x`` for tripotents, i.e. ``{x,y,z} = x y* z``
on the polydisc.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, NotTripotent, SpectrumOutOfRange

DEFAULT_TOL = 1e-8


class Flavor(str, enum.Enum):
    POLYDISC = "POLYDISC"
    SYMMETRIC = "SYMMETRIC"
    HERMITIAN = "HERMITIAN"

    @classmethod
    def parse(cls, value) -> "Flavor":
        from .errors import UnknownFlavor

        if isinstance(value, Flavor):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise UnknownFlavor(f"unknown flavor {value!r}") from None


class Linearity(str, enum.Enum):
    LINEAR = "LINEAR"
    ANTILINEAR = "ANTILINEAR"


def _jordan(a, b):
    return 0.5 * (a @ b + b @ a)


def _polydisc_product(x, y, z):
    return x * np.conj(y) * z


def _hermitian_product(x, y, z):
    ys = y.conj().T
    return 0.5 * (x @ ys @ z + z @ ys @ x)


def _symmetric_product(x, y, z):
    # complexified euclidean Jordan algebra Sym_n(R): (x yb)z + x(yb z) - yb(xz)
    yb = np.conj(y)
    return _jordan(_jordan(x, yb), z) + _jordan(x, _jordan(yb, z)) - _jordan(yb, _jordan(x, z))


@dataclass(frozen=True)
class TripleModel:
    """A concrete hermitian Jordan triple.

    ``size`` is ``r`` for the polydisc and the matrix size ``n`` otherwise;
    in all three cases it equals the rank.
    """

    flavor: Flavor
    size: int
    triple_product: Callable = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        flavor = Flavor.parse(self.flavor)
        object.__setattr__(self, "flavor", flavor)
        if self.size < 1:
            raise DimensionMismatch("model size must be positive")
        product = {
            Flavor.POLYDISC: _polydisc_product,
            Flavor.SYMMETRIC: _symmetric_product,
            Flavor.HERMITIAN: _hermitian_product,
        }[flavor]
        object.__setattr__(self, "triple_product", product)

    @property
    def rank(self) -> int:
        return self.size

    @property
    def shape(self) -> tuple:
        if self.flavor is Flavor.POLYDISC:
            return (self.size,)
        return (self.size, self.size)

    @property
    def ambient_dim(self) -> int:
        n = self.size
        if self.flavor is Flavor.POLYDISC:
            return n
        if self.flavor is Flavor.SYMMETRIC:
            return n * (n + 1) // 2
        return n * n

    def check(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        if x.shape != self.shape:
            raise DimensionMismatch(f"expected shape {self.shape}, got {x.shape}")
        return x

    def triple(self, x, y, z) -> np.ndarray:
        return self.triple_product(self.check(x), self.check(y), self.check(z))

    def unit(self) -> np.ndarray:
        if self.flavor is Flavor.POLYDISC:
            return np.ones(self.size, dtype=complex)
        return np.eye(self.size, dtype=complex)

    # coordinates in an orthonormal basis (Frobenius inner product)

    def to_coords(self, x) -> np.ndarray:
        x = self.check(x)
        if self.flavor is Flavor.SYMMETRIC:
            iu = np.triu_indices(self.size, 1)
            return np.concatenate([np.diag(x), np.sqrt(2.0) * x[iu]])
        return x.reshape(-1).copy()

    def from_coords(self, c) -> np.ndarray:
        c = np.asarray(c, dtype=complex)
        n = self.size
        if self.flavor is Flavor.SYMMETRIC:
            x = np.diag(c[:n]).astype(complex)
            iu = np.triu_indices(n, 1)
            off = c[n:] / np.sqrt(2.0)
            x[iu] = off
            x[(iu[1], iu[0])] = off
            return x
        return c.reshape(self.shape)

    def realify(self, x) -> np.ndarray:
        c = self.to_coords(x)
        return np.concatenate([c.real, c.imag])

    def unrealify(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=float)
        m = self.ambient_dim
        return self.from_coords(v[:m] + 1j * v[m:])

    def norm(self, x) -> float:
        return float(np.linalg.norm(self.check(x)))


def complex_structure(dim: int) -> np.ndarray:
    """Realified multiplication by ``i`` on ``C^dim``."""
    eye = np.eye(dim)
    zero = np.zeros((dim, dim))
    return np.block([[zero, -eye], [eye, zero]])


@dataclass(frozen=True)
class RealifiedOperator:
    matrix: np.ndarray
    linearity: Linearity

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] % 2:
            raise DimensionMismatch("realified operator must be square of even size")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "linearity", Linearity(self.linearity))

    @property
    def complex_dim(self) -> int:
        return self.matrix.shape[0] // 2

    def __matmul__(self, other: "RealifiedOperator") -> "RealifiedOperator":
        same = self.linearity == other.linearity
        lin = Linearity.LINEAR if same else Linearity.ANTILINEAR
        return RealifiedOperator(self.matrix @ other.matrix, lin)

    def __add__(self, other: "RealifiedOperator") -> "RealifiedOperator":
        if self.linearity != other.linearity:
            raise ValueError("cannot add a linear and an antilinear operator")
        return RealifiedOperator(self.matrix + other.matrix, self.linearity)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def scaled(self, s: float) -> "RealifiedOperator":
        return RealifiedOperator(s * self.matrix, self.linearity)

    def apply(self, model: TripleModel, x) -> np.ndarray:
        return model.unrealify(self.matrix @ model.realify(x))

    def linearity_defect(self) -> float:
        """Norm of ``[T, i]`` (linear) or ``{T, i}`` (antilinear)."""
        j = complex_structure(self.complex_dim)
        if self.linearity is Linearity.LINEAR:
            return float(np.linalg.norm(self.matrix @ j - j @ self.matrix))
        return float(np.linalg.norm(self.matrix @ j + j @ self.matrix))

    def complex_matrix(self) -> np.ndarray:
        if self.linearity is not Linearity.LINEAR:
            raise ValueError("only linear operators have a complex matrix")
        m = self.complex_dim
        return self.matrix[:m, :m] + 1j * self.matrix[m:, :m]

    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.matrix, compute_uv=False)


def identity_operator(model: TripleModel) -> RealifiedOperator:
    return RealifiedOperator(np.eye(2 * model.ambient_dim), Linearity.LINEAR)


def _assemble(model: TripleModel, fn, linearity) -> RealifiedOperator:
    dim = 2 * model.ambient_dim
    cols = [model.realify(fn(model.unrealify(e))) for e in np.eye(dim)]
    return RealifiedOperator(np.column_stack(cols), linearity)


def box(model: TripleModel, x, y) -> RealifiedOperator:
    """The linear operator ``z -> {x, y, z}``."""
    x, y = model.check(x), model.check(y)
    return _assemble(model, lambda z: model.triple_product(x, y, z), Linearity.LINEAR)


def quadratic(model: TripleModel, x) -> RealifiedOperator:
    """The antilinear operator ``y -> {x, y, x}``."""
    x = model.check(x)
    return _assemble(model, lambda y: model.triple_product(x, y, x), Linearity.ANTILINEAR)


def bergman(model: TripleModel, x, y) -> RealifiedOperator:
    """``B(x, y) = 1 - 2 x[]y + Q(x) Q(y)``."""
    return identity_operator(model) - box(model, x, y).scaled(2.0) + quadratic(model, x) @ quadratic(model, y)


def is_tripotent(model: TripleModel, e, tol: float = DEFAULT_TOL) -> bool:
    e = model.check(e)
    return model.norm(model.triple_product(e, e, e) - e) <= tol


@dataclass(frozen=True)
class PeirceDecomposition:
    tripotent: np.ndarray
    projections: tuple  # (P0, P1, P2) as LINEAR RealifiedOperators
    dims: tuple  # complex dimensions of (V0, V1, V2)

    def projection(self, j: int) -> RealifiedOperator:
        return self.projections[j]


def peirce(model: TripleModel, e, tol: float = DEFAULT_TOL) -> PeirceDecomposition:
    e = model.check(e)
    if not is_tripotent(model, e, tol):
        raise NotTripotent("element is not a tripotent")
    op = box(model, e, e).scaled(2.0).matrix
    if np.allclose(op, op.T, atol=tol):
        vals, vecs = np.linalg.eigh(0.5 * (op + op.T))
        inv = vecs.T
    else:
        vals, vecs = np.linalg.eig(op)
        inv = np.linalg.inv(vecs)
    labels = np.rint(vals.real).astype(int)
    if np.any(np.abs(vals - labels) > tol) or np.any((labels < 0) | (labels > 2)):
        raise SpectrumOutOfRange(f"eigenvalues of 2 e[]e not in {{0,1,2}}: {np.round(vals, 12)}")
    projs = []
    dims = []
    for j in range(3):
        sel = labels == j
        p = np.real(vecs[:, sel] @ inv[sel, :])
        projs.append(RealifiedOperator(p, Linearity.LINEAR))
        # realified eigenspaces come in (v, iv) pairs
        dims.append(int(sel.sum()) // 2)
    return PeirceDecomposition(e, tuple(projs), tuple(dims))


def is_transversal(model: TripleModel, x, y, tol: float = DEFAULT_TOL) -> bool:
    s = bergman(model, x, y).singular_values()
    return bool(s[-1] > tol * max(1.0, s[0]))
