"""Seeded property suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult`; details are deterministic for a
given seed so the CLI report is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import sampling
from .invariants import cartan_invariant, enumerate_orbits, from_monotone_tuple, to_monotone_tuple
from .jts import Flavor, TripleModel, is_transversal
from .lagrangian import (
    intersection_dim,
    joint_normal_form,
    kashiwara_index,
    symplectic_defect,
    unitary_to_lagrangian,
)
from .matrices import (
    direct_invariants,
    embed_torus,
    moebius_apply,
    reduce_to_torus,
    transversality_index,
)
from .polydisc import TorusPoint, circle_maslov, circle_orbit_representatives, standard_triple, torus_invariants

FLAVORS = (Flavor.SYMMETRIC, Flavor.HERMITIAN)
ORBIT_COUNTS = {1: 6, 2: 21, 3: 56, 4: 126}


@dataclass(frozen=True)
class SuiteResult:
    number: int
    name: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"criterion": self.number, "name": self.name, "passed": self.passed, "detail": self.detail}


def _seed(seed: int, number: int) -> np.random.Generator:
    return np.random.default_rng([seed, number])


def classification_round_trip(seed: int = 0) -> SuiteResult:
    failures = []
    counts = {}
    for r in range(1, 5):
        tuples = enumerate_orbits(r)
        counts[r] = len(tuples)
        for N in tuples:
            if to_monotone_tuple(torus_invariants(*standard_triple(N, r))) != N:
                failures.append((r, N.values))
            if to_monotone_tuple(from_monotone_tuple(N, r)) != N:
                failures.append((r, N.values, "inverse"))
    ok = not failures and counts == ORBIT_COUNTS
    return SuiteResult(1, "classification round trip", ok,
                       f"orbit counts {list(counts.values())}, {len(failures)} mismatches")


CIRCLE_VALUES = (0, 0, 0, 0, 1, -1)


def maslov_normalization(seed: int = 0) -> SuiteResult:
    got = tuple(circle_maslov(*t) for t in circle_orbit_representatives())
    ok = got == CIRCLE_VALUES
    return SuiteResult(2, "circle Maslov normalization", ok, f"values on the six circle orbits {list(got)}")


def _circle_lagrangian(t):
    return unitary_to_lagrangian(embed_torus(Flavor.SYMMETRIC, TorusPoint([t])).z)


def bridge_identity(seed: int = 0, samples: int = 200) -> SuiteResult:
    eighths = [Fraction(k, 8) for k in range(8)]
    ls = {t: _circle_lagrangian(t) for t in eighths}
    table = {}
    bad = 0
    for a, b, c in itertools.product(eighths, repeat=3):
        table[a, b, c] = kashiwara_index(ls[a], ls[b], ls[c])
        bad += table[a, b, c] != circle_maslov(a, b, c)
    rng = _seed(seed, 3)
    checked = 0
    for r in (2, 3):
        for _ in range(samples):
            ts = [TorusPoint([eighths[i] for i in rng.integers(8, size=r)]) for _ in range(3)]
            lag = [unitary_to_lagrangian(embed_torus(Flavor.SYMMETRIC, t).z) for t in ts]
            value = kashiwara_index(*lag)
            additive = sum(table[c] for c in zip(*(t.turns for t in ts)))
            bad += value != additive or value != torus_invariants(*ts).iota
            checked += 1
    return SuiteResult(3, "signature index equals torus index", bad == 0,
                       f"512 single-coordinate cases, {checked} additivity cases, {bad} mismatches")


def g_invariance(seed: int = 0, triples: int = 50, moves: int = 200) -> SuiteResult:
    """Every one of ``moves`` elements is applied to every one of ``triples`` triples."""
    rng = _seed(seed, 4)
    bad = 0
    total = 0
    for flavor in FLAVORS:
        for r in range(1, 5):
            pool = [sampling.synthesize_triple(rng, flavor, r) for _ in range(triples)]
            base = [direct_invariants(flavor, *us) for _, _, us in pool]
            bad += sum(b != torus_invariants(*ts) for b, (ts, _, _) in zip(base, pool))
            for _ in range(moves):
                g = sampling.random_moebius(rng, flavor, r)
                for (_, _, us), expected in zip(pool, base):
                    try:
                        moved = direct_invariants(flavor, *(moebius_apply(g, u) for u in us))
                        bad += moved != expected
                    except Exception:
                        bad += 1
                    total += 1
    return SuiteResult(4, "invariance under the Moebius group", bad == 0,
                       f"{total} moved triples over both flavors and r<=4, {bad} failures")


def reduction_round_trip(seed: int = 0, trials: int = 100, tol: float = 1e-6) -> SuiteResult:
    rng = _seed(seed, 5)
    bad = 0
    worst = 0.0
    for flavor in FLAVORS:
        for k in range(trials):
            r = 1 + k % 4
            ts, _, us = sampling.synthesize_triple(rng, flavor, r)
            try:
                g, *found = reduce_to_torus(flavor, *us)
            except Exception:
                bad += 1
                continue
            back = g.inverse()
            err = max(float(np.linalg.norm(moebius_apply(back, embed_torus(flavor, t).z) - u))
                      for t, u in zip(found, us))
            worst = max(worst, err)
            bad += err > tol or torus_invariants(*found) != torus_invariants(*ts)
    return SuiteResult(5, "reduction witness round trip", bad == 0,
                       f"{2 * trials} triples, worst error {worst:.1e}, {bad} failures")


def pair_orbits(seed: int = 0, pairs: int = 500) -> SuiteResult:
    rng = _seed(seed, 6)
    bad = 0
    seen = {}
    for flavor in FLAVORS:
        for r in range(1, 7):
            eye = np.eye(r)
            for k in range(r + 1):
                eps = embed_torus(flavor, TorusPoint([0] * k + [Fraction(1, 2)] * (r - k)))
                bad += transversality_index(flavor, eye, eps.z) != k
    for p in range(pairs):
        flavor = FLAVORS[p % 2]
        r = 1 + int(rng.integers(6))
        if p % 5 == 0:
            x, y = (sampling.random_boundary(rng, flavor, r) for _ in range(2))
            k = 0
        else:
            k = int(rng.integers(r + 1))
            x, y = sampling.synthesize_pair(rng, flavor, r, k)
        mu = transversality_index(flavor, x, y)
        bad += mu != k
        seen.setdefault(r, set()).add(mu)
        if r <= 2:
            model = TripleModel(flavor, r)
            bad += is_transversal(model, x, y) != (mu == 0)
    classes = all(seen.get(r, set()) <= set(range(r + 1)) for r in seen)
    ok = bad == 0 and classes
    return SuiteResult(6, "pair orbits", ok,
                       f"embedded eps_k for r<=6 and {pairs} sampled pairs, {bad} failures")


def maslov_cocycle(seed: int = 0, quadruples: int = 100) -> SuiteResult:
    rng = _seed(seed, 7)
    pts = sorted({Fraction(int(k), 64) for k in rng.choice(64, size=8, replace=False)})
    bad = 0
    for x, y, z in itertools.product(pts, repeat=3):
        v = circle_maslov(x, y, z)
        bad += circle_maslov(y, x, z) != -v or circle_maslov(y, z, x) != v
    for x, y, z, w in itertools.product(pts, repeat=4):
        bad += circle_maslov(x, y, z) != (circle_maslov(x, y, w) - circle_maslov(x, z, w)
                                          + circle_maslov(y, z, w))
    for q in range(quadruples):
        r = 1 + q % 4
        x, y, z, w = (sampling.random_lagrangian(rng, r) for _ in range(4))
        v = kashiwara_index(x, y, z)
        bad += kashiwara_index(y, x, z) != -v or kashiwara_index(z, x, y) != v
        bad += v != kashiwara_index(x, y, w) - kashiwara_index(x, z, w) + kashiwara_index(y, z, w)
        bad += kashiwara_index(x, x, y) != 0
    return SuiteResult(7, "alternation and cocycle identity", bad == 0,
                       f"8 circle points, {quadruples} Lagrangian quadruples, {bad} failures")


def joint_normal_forms(seed: int = 0, trials: int = 100) -> SuiteResult:
    rng = _seed(seed, 8)
    bad = 0
    worst = 0.0
    for r in range(1, 5):
        for _ in range(trials):
            ts = sampling.random_torus_triple(rng, r)
            _, ls = sampling.lagrangian_images(rng, ts)
            try:
                nf = joint_normal_form(*ls)
            except Exception:
                bad += 1
                continue
            defect = symplectic_defect(nf.g)
            worst = max(worst, defect)
            bad += defect > 1e-8 or nf.invariant() != torus_invariants(*ts)
            back = np.linalg.inv(nf.g)
            bad += any(intersection_dim(l.transform(back), m, 1e-6) != r
                       for l, m in zip(ls, nf.normal_lagrangians()))
    return SuiteResult(8, "joint Lagrangian normal form", bad == 0,
                       f"{4 * trials} triples, worst symplectic defect {worst:.1e}, {bad} failures")


def non_tube_witness(seed: int = 0, moves: int = 100, triples: int = 20) -> SuiteResult:
    rng = _seed(seed, 9)
    fixed = cartan_invariant([1, 1], [1, -1], [1, 1j])
    bad = int(abs(fixed + 1) > 1e-10)
    n = 2
    for _ in range(moves):
        vs = [sampling.random_isotropic(rng, n) for _ in range(3)]
        g = sampling.random_pseudo_unitary(rng, n)
        bad += abs(cartan_invariant(*(g @ v for v in vs)) - cartan_invariant(*vs)) > 1e-8
    values = []
    for _ in range(triples):
        values.append(cartan_invariant(*(sampling.random_isotropic(rng, n) for _ in range(3))))
    distinct = []
    for v in values:
        if all(abs(v - d) >= 1e-3 for d in distinct):
            distinct.append(v)
    ok = bad == 0 and len(distinct) >= 10
    return SuiteResult(9, "Cartan invariant on the complex 2-ball", ok,
                       f"fixed value {fixed.real:+.12f}, {len(distinct)} distinct values, {bad} failures")


SUITES = (
    classification_round_trip,
    maslov_normalization,
    bridge_identity,
    g_invariance,
    reduction_round_trip,
    pair_orbits,
    maslov_cocycle,
    joint_normal_forms,
    non_tube_witness,
)


def run_all(seed: int = 0) -> list:
    return [suite(seed) for suite in SUITES]
