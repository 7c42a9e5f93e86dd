"""Orbits of triples on the Shilov boundary of tube-type bounded symmetric domains.

Exact polydisc classification, numerical matrix models with their Moebius
action, the Lagrangian picture and the Maslov index.
"""

from .errors import NumericalInstability, ParseError, ShilovError, ValidationError
from .invariants import (
    MonotoneTuple,
    OrbitInvariant,
    cartan_invariant,
    enumerate_orbits,
    from_monotone_tuple,
    pair_class,
    same_orbit,
    to_monotone_tuple,
)
from .jts import Flavor, TripleModel, bergman, box, is_transversal, peirce, quadratic
from .polydisc import TorusPoint, circle_maslov, standard_triple, torus_invariants
from .matrices import (
    BoundaryMatrix,
    MoebiusElement,
    cayley_pair_normalize,
    direct_invariants,
    embed_torus,
    moebius_apply,
    reduce_to_torus,
    spectral_decompose,
    transversality_index,
)
from .lagrangian import (
    LagrangianSubspace,
    SymplecticSpace,
    joint_normal_form,
    kashiwara_index,
    lagrangian_to_unitary,
    unitary_to_lagrangian,
)

__version__ = "0.1.0"
