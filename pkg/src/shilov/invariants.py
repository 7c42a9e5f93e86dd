"""Orbit bookkeeping: the five integers, the monotone tuple N, pair classes.

Also hosts the cross-ratio type invariant of isotropic lines for the
non-tube ball, which separates infinitely many triple orbits there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneratePair,
    DimensionMismatch,
    Infeasible,
    NotIsotropic,
    NotMonotone,
    OutOfRange,
    ParseError,
    RankMismatch,
)


def feasible(r0: int, r1: int, r2: int, r3: int, d: int, r: int) -> bool:
    """Conditions under which (n123, n12, n23, n31, iota) come from a triple."""
    if not (0 <= r0 <= min(r1, r2, r3) and max(r1, r2, r3) <= r):
        return False
    slack = r + 2 * r0 - (r1 + r2 + r3)
    if slack < 0 or abs(d) > slack:
        return False
    return (d - (r + r1 + r2 + r3)) % 2 == 0


@dataclass(frozen=True)
class MonotoneTuple:
    """Weakly increasing 5-tuple ``n1 <= ... <= n5`` indexing triple orbits."""

    values: tuple

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != 5:
            raise NotMonotone(f"need five integers, got {len(vals)}")
        if vals[0] < 0 or any(a > b for a, b in zip(vals, vals[1:])):
            raise NotMonotone(f"{vals} is not a weakly increasing tuple of nonnegative integers")
        object.__setattr__(self, "values", vals)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def fits(self, r: int) -> bool:
        return self.values[4] <= r

    def to_json(self) -> dict:
        return {"N": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> "MonotoneTuple":
        try:
            return cls(tuple(obj["N"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad monotone tuple: {exc}") from None


@dataclass(frozen=True)
class OrbitInvariant:
    r: int
    n12: int
    n23: int
    n31: int
    n123: int
    iota: int

    def __post_init__(self):
        for name in ("r", "n12", "n23", "n31", "n123", "iota"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if self.r < 1:
            raise Infeasible("rank must be positive")
        if not feasible(self.n123, self.n12, self.n23, self.n31, self.iota, self.r):
            raise Infeasible(f"{self.as_tuple()} violates the feasibility conditions for r={self.r}")

    def as_tuple(self) -> tuple:
        return (self.n12, self.n23, self.n31, self.n123, self.iota)

    def to_json(self) -> dict:
        return {"r": self.r, "n12": self.n12, "n23": self.n23, "n31": self.n31,
                "n123": self.n123, "iota": self.iota}

    @classmethod
    def from_json(cls, obj) -> "OrbitInvariant":
        try:
            return cls(**{k: obj[k] for k in ("r", "n12", "n23", "n31", "n123", "iota")})
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad orbit invariant: {exc}") from None


def to_monotone_tuple(inv: OrbitInvariant) -> MonotoneTuple:
    if not feasible(inv.n123, inv.n12, inv.n23, inv.n31, inv.iota, inv.r):
        raise Infeasible(f"{inv.as_tuple()} is infeasible")
    n1 = inv.n123
    n2 = inv.n12
    n3 = inv.n23 + inv.n12 - inv.n123
    n4 = inv.n31 + inv.n23 + inv.n12 - 2 * inv.n123
    twice_n5 = inv.iota + inv.r + n4
    assert twice_n5 % 2 == 0
    return MonotoneTuple((n1, n2, n3, n4, twice_n5 // 2))


def from_monotone_tuple(N: MonotoneTuple, r: int) -> OrbitInvariant:
    """Inverse of :func:`to_monotone_tuple`."""
    if not N.fits(r):
        raise OutOfRange(f"{N.values} exceeds rank {r}")
    n1, n2, n3, n4, n5 = N
    return OrbitInvariant(r=r, n12=n2, n23=n1 + n3 - n2, n31=n1 + n4 - n3, n123=n1,
                          iota=2 * n5 - n4 - r)


def same_orbit(a: OrbitInvariant, b: OrbitInvariant) -> bool:
    if a.r != b.r:
        raise RankMismatch(f"ranks differ: {a.r} vs {b.r}")
    return a.as_tuple() == b.as_tuple()


def enumerate_orbits(r: int) -> list:
    """All triple-orbit labels for rank ``r``, lexicographically sorted."""
    if r < 1:
        raise OutOfRange("rank must be at least 1")
    return [MonotoneTuple(t) for t in itertools.combinations_with_replacement(range(r + 1), 5)]


@dataclass(frozen=True)
class PairClass:
    mu: int
    r: int
    transversal: bool
    label: str
    representative: tuple  # (e, eps_mu) as TorusPoints

    def to_json(self) -> dict:
        return {"mu": self.mu, "r": self.r, "transversal": self.transversal, "label": self.label,
                "representative": [p.to_json() for p in self.representative]}


def pair_class(mu: int, r: int) -> PairClass:
    """Orbit of pairs with transversality index ``mu``, represented by ``(e, eps_mu)``.

    ``eps_k`` is ``+1`` on the first ``k`` frame coordinates and ``-1`` on the rest.
    """
    from .polydisc import TorusPoint

    if r < 1 or not 0 <= mu <= r:
        raise OutOfRange(f"transversality index {mu} out of range for rank {r}")
    e = TorusPoint([0] * r)
    eps = TorusPoint([0] * mu + ["1/2"] * (r - mu))
    if mu == 0:
        label = "transversal"
    elif mu == r:
        label = "diagonal"
    else:
        label = f"face rank {mu}"
    return PairClass(mu, r, mu == 0, label, (e, eps))


def pair_classes(r: int) -> list:
    return [pair_class(mu, r) for mu in range(r + 1)]


# -- non-tube demonstration --------------------------------------------------


def signature_form(n: int) -> np.ndarray:
    return np.diag([1.0] * n + [-1.0])


def hermitian_form(z, w) -> complex:
    """``h(z, w) = sum_{j<=n} z_j conj(w_j) - z_{n+1} conj(w_{n+1})``."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    return complex(z[:-1] @ np.conj(w[:-1]) - z[-1] * np.conj(w[-1]))


def cartan_invariant(v1, v2, v3, tol: float = 1e-8) -> complex:
    vs = [np.asarray(v, dtype=complex) for v in (v1, v2, v3)]
    if vs[0].ndim != 1 or len(vs[0]) < 2 or any(v.shape != vs[0].shape for v in vs):
        raise DimensionMismatch("need three vectors of equal length n+1 >= 2")
    for v in vs:
        if abs(hermitian_form(v, v)) > tol * float(np.vdot(v, v).real):
            raise NotIsotropic("vector is not isotropic for the (n,1) form")
    h = {(a, b): hermitian_form(vs[a], vs[b]) for a in range(3) for b in range(3) if a != b}
    for (a, b), val in h.items():
        if abs(val) <= tol * np.linalg.norm(vs[a]) * np.linalg.norm(vs[b]):
            raise DegeneratePair(f"lines {a + 1} and {b + 1} coincide")
    num = h[0, 1] * h[1, 2] * h[2, 0]
    den = h[1, 0] * h[2, 1] * h[0, 2]
    return num / den
