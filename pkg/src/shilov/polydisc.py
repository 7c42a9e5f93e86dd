"""Exact model of the r-polydisc and its torus boundary.

Points of the unit circle are stored as rational turns ``t`` standing for
``exp(2 pi i t)``, so all coincidence and orientation tests are exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotMonotone, OutOfRange, ParseError, RankMismatch
from .invariants import MonotoneTuple, OrbitInvariant

__all__ = [
    "MonotoneTuple",
    "TorusPoint",
    "circle_maslov",
    "circle_orbit_representatives",
    "standard_triple",
    "torus_invariants",
    "turn",
]


def turn(value) -> Fraction:
    """Coerce to a rational turn reduced to ``[0, 1)``."""
    if isinstance(value, float):
        raise TypeError("turns must be exact; pass a Fraction, int or 'p/q' string")
    return Fraction(value) % 1


@dataclass(frozen=True)
class TorusPoint:
    turns: tuple

    def __post_init__(self):
        object.__setattr__(self, "turns", tuple(turn(t) for t in self.turns))
        if not self.turns:
            raise RankMismatch("torus point needs at least one coordinate")

    @property
    def rank(self) -> int:
        return len(self.turns)

    def __len__(self):
        return len(self.turns)

    def __iter__(self):
        return iter(self.turns)

    def concat(self, other: "TorusPoint") -> "TorusPoint":
        return TorusPoint(self.turns + other.turns)

    def permuted(self, perm: Sequence[int]) -> "TorusPoint":
        return TorusPoint(tuple(self.turns[p] for p in perm))

    def to_json(self) -> dict:
        return {"turns": [f"{t.numerator}/{t.denominator}" for t in self.turns]}

    @classmethod
    def from_json(cls, obj) -> "TorusPoint":
        try:
            return cls(tuple(Fraction(str(t)) for t in obj["turns"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad torus point: {exc}") from None


def circle_maslov(a, b, c) -> int:
    """Orientation index of three circle points given as turns.

    Zero when two points coincide, +1 for counterclockwise order, so that
    ``(1, -1, -i)`` i.e. turns ``(0, 1/2, 3/4)`` gives +1.
    """
    a, b, c = turn(a), turn(b), turn(c)
    if a == b or b == c or c == a:
        return 0
    # one cyclic descent <=> the turns increase around the cycle
    descents = (a > b) + (b > c) + (c > a)
    return 1 if descents == 1 else -1


def torus_invariants(t1: TorusPoint, t2: TorusPoint, t3: TorusPoint) -> OrbitInvariant:
    r = t1.rank
    if t2.rank != r or t3.rank != r:
        raise RankMismatch(f"ranks differ: {t1.rank}, {t2.rank}, {t3.rank}")
    coords = list(zip(t1.turns, t2.turns, t3.turns))
    return OrbitInvariant(
        r=r,
        n12=sum(x == y for x, y, _ in coords),
        n23=sum(y == z for _, y, z in coords),
        n31=sum(z == x for x, _, z in coords),
        n123=sum(x == y == z for x, y, z in coords),
        iota=sum(circle_maslov(x, y, z) for x, y, z in coords),
    )


_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)
_THREE_QUARTERS = Fraction(3, 4)


def standard_triple(N, r: int) -> tuple:
    """The standard torus triple of type ``N``."""
    if not isinstance(N, MonotoneTuple):
        N = MonotoneTuple(tuple(N))
    if r < 1 or not N.fits(r):
        raise OutOfRange(f"{N.values} does not fit rank {r}")
    n1, n2, n3, n4, n5 = N
    x1 = [0] * r
    x2 = [0 if j <= n2 else _HALF for j in range(1, r + 1)]
    x3 = []
    for j in range(1, r + 1):
        if j <= n1:
            x3.append(0)
        elif j <= n3:
            x3.append(_HALF)
        elif j <= n4:
            x3.append(0)
        elif j <= n5:
            x3.append(_THREE_QUARTERS)
        else:
            x3.append(_QUARTER)
    return TorusPoint(x1), TorusPoint(x2), TorusPoint(x3)


def circle_orbit_representatives() -> list:
    """The six triple orbits on the circle: (1,1,1), (1,1,-1), (1,-1,1), (1,-1,-1), (1,-1,-i), (1,-1,i)."""
    h, q, tq = _HALF, _QUARTER, _THREE_QUARTERS
    return [
        (Fraction(0), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(0), h),
        (Fraction(0), h, Fraction(0)),
        (Fraction(0), h, h),
        (Fraction(0), h, tq),
        (Fraction(0), h, q),
    ]


def check_monotone(values, r: int) -> MonotoneTuple:
    N = MonotoneTuple(tuple(values))
    if not N.fits(r):
        raise NotMonotone(f"{N.values} exceeds rank {r}")
    return N
