"""Finite groups, groupoids, their maps and 2-limits."""
from .equivalence import enumerate_maps, enumerate_nat_isos, is_equivalence
from .group import (
    FiniteGroup,
    cyclic,
    dihedral,
    direct_product,
    from_permutations,
    klein,
    quaternion,
    symmetric,
    trivial,
)
from .groupoid import (
    FiniteGroupoid,
    GroupGroupoid,
    ValidationReport,
    action_groupoid,
    codiscrete,
    discrete,
    disjoint_union,
    point,
)
from .limits import (
    Equalizer,
    FiberProduct,
    Product,
    check_universal_property,
    diagonal,
    equalizer,
    fiber_product,
    induced_map,
    pairing,
    product,
)
from .maps import GroupoidMap, NatIso
