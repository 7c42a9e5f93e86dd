"""Seeded generators for group elements, boundary points and synthesized triples.

Synthesized triples start from rational torus points with denominator 64,
so distinct circle points sit at least 1/64 turn apart, far from the rank
thresholds, and are then moved by a random group element.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import scipy.linalg
from scipy.stats import unitary_group

from .jts import Flavor
from .lagrangian import LagrangianSubspace, unitary_to_lagrangian
from .matrices import MoebiusElement, embed_torus, moebius_apply, symplectic_form
from .polydisc import TorusPoint

DENOMINATOR = 64


def rng_for(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _gaussian(rng, shape, complex_=True):
    if complex_:
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return rng.standard_normal(shape)


def random_unitary(rng, n: int) -> np.ndarray:
    if n == 1:
        return np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    return unitary_group.rvs(n, random_state=rng)


def random_symmetric_unitary(rng, n: int) -> np.ndarray:
    u = random_unitary(rng, n)
    return u @ u.T


def random_boundary(rng, flavor, n: int) -> np.ndarray:
    if Flavor.parse(flavor) is Flavor.SYMMETRIC:
        return random_symmetric_unitary(rng, n)
    return random_unitary(rng, n)


def random_moebius(rng, flavor, n: int, scale: float = 0.5) -> MoebiusElement:
    """``exp`` of a random Lie algebra element of norm about ``scale * n``."""
    flavor = Flavor.parse(flavor)
    A = _gaussian(rng, (n, n))
    A = 0.5 * (A - A.conj().T)
    B = _gaussian(rng, (n, n))
    if flavor is Flavor.SYMMETRIC:
        B = 0.5 * (B + B.T)
        X = np.block([[A, B], [B.conj(), A.conj()]])
    else:
        D = _gaussian(rng, (n, n))
        D = 0.5 * (D - D.conj().T)
        X = np.block([[A, B], [B.conj().T, D]])
    return MoebiusElement(scipy.linalg.expm(scale * X), flavor)


def random_symplectic(rng, r: int, scale: float = 0.5) -> np.ndarray:
    S = rng.standard_normal((2 * r, 2 * r))
    return scipy.linalg.expm(scale * symplectic_form(r) @ (0.5 * (S + S.T)))


def random_lagrangian(rng, r: int) -> LagrangianSubspace:
    U = random_unitary(rng, r)
    return LagrangianSubspace(np.vstack([U.real, U.imag]))


def random_turn(rng) -> Fraction:
    return Fraction(int(rng.integers(DENOMINATOR)), DENOMINATOR)


# per-coordinate coincidence patterns: which of the three points are equal
_PATTERNS = ("all", "12", "23", "31", "distinct", "distinct")


def random_torus_triple(rng, r: int) -> tuple:
    """Torus triple whose coordinates mix all coincidence patterns."""
    cols = []
    for _ in range(r):
        pattern = _PATTERNS[int(rng.integers(len(_PATTERNS)))]
        a = random_turn(rng)
        b, c = a, a
        while b == a:
            b = random_turn(rng)
        while c in (a, b):
            c = random_turn(rng)
        cols.append({"all": (a, a, a), "12": (a, a, b), "23": (a, b, b),
                     "31": (a, b, a), "distinct": (a, b, c)}[pattern])
    return tuple(TorusPoint([col[k] for col in cols]) for k in range(3))


def synthesize_triple(rng, flavor, r: int, scale: float = 0.5):
    """``(source torus triple, g, (g t1, g t2, g t3))`` for a random ``g``."""
    flavor = Flavor.parse(flavor)
    ts = random_torus_triple(rng, r)
    while True:
        g = random_moebius(rng, flavor, r, scale)
        try:
            us = tuple(moebius_apply(g, embed_torus(flavor, t)).z for t in ts)
        except Exception:  # pragma: no cover - denominator singular with probability 0
            continue
        return ts, g, us


def synthesize_pair(rng, flavor, r: int, k: int, scale: float = 0.5):
    """Random image of ``(I, eps_k)``, ``eps_k = diag(1,..,1,-1,..,-1)`` with ``k`` ones."""
    flavor = Flavor.parse(flavor)
    e = TorusPoint([0] * r)
    eps = TorusPoint([0] * k + [Fraction(1, 2)] * (r - k))
    g = random_moebius(rng, flavor, r, scale)
    return tuple(moebius_apply(g, embed_torus(flavor, t)).z for t in (e, eps))


def random_isotropic(rng, n: int) -> np.ndarray:
    """Random null vector of the form with signature (n, 1) on ``C^(n+1)``."""
    w = _gaussian(rng, n)
    w /= np.linalg.norm(w)
    lam = _gaussian(rng, ())
    return lam * np.r_[w, 1.0]


def random_pseudo_unitary(rng, n: int, scale: float = 0.5) -> np.ndarray:
    """Element of U(n, 1) as ``exp(eta A)`` with ``A`` anti-hermitian."""
    A = _gaussian(rng, (n + 1, n + 1))
    A = 0.5 * (A - A.conj().T)
    eta = np.diag([1.0] * n + [-1.0])
    return scipy.linalg.expm(scale * eta @ A)


def lagrangian_images(rng, ts, scale: float = 0.5):
    """Random symplectic image of the Lagrangians of a torus triple."""
    r = ts[0].rank
    s = random_symplectic(rng, r, scale)
    ls = [unitary_to_lagrangian(embed_torus(Flavor.SYMMETRIC, t).z) for t in ts]
    return s, tuple(l.transform(s) for l in ls)
