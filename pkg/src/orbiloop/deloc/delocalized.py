"""Delocalized twisted cohomology of a global quotient [K/Γ].

For a gerbe ``β`` on Γ the sector of ``g`` contributes the ε_g-isotypic part of
``H^*(K^g)`` under the centralizer ``C(g)``, where ε_g is the inner local system
character ``h -> τβ(g, h)``. Its dimension is the projector trace

    dim = 1/|C(g)| Σ_{h ∈ C(g)} conj(ε_g(h)) · tr(h | H^k(K^g))

evaluated exactly in ℚ(ζ_N), N the exponent of Γ. Traces are computed over ℚ from
cohomology bases. With ``β = 0`` the result is cross-checked against the rational
cohomology of the orbit complexes ``K^g / C(g)``.
"""
import logging
from typing import Dict, List, NamedTuple, Optional

from ..cocycles.gerbe import GerbeCocycle, transgression_value
from ..cohomology.qmodz import QmodZ
from ..complexes.linalg import betti_numbers, simplicial_cohomology
from ..exceptions import InternalAssertionError, PreconditionError
from ..utils.parallel import parallel_map
from .cyclotomic import CyclotomicField
from .gamma_complex import BrylinskiSector, GammaComplex, brylinski

__all__ = [
    "SectorRow",
    "DelocalizedResult",
    "sector_characters",
    "delocalized",
    "delocalized_untwisted_rational",
    "delocalized_euler_characteristic",
    "sector_table",
]

_logger = logging.getLogger(__name__)


class SectorRow(NamedTuple):
    """Per-sector data of a delocalized computation."""

    label: str
    class_size: int
    centralizer_order: int
    betti: List[int]
    twisted: List[int]
    epsilon: Dict[str, QmodZ]

    def to_dict(self) -> dict:
        return {
            "sector": self.label,
            "class_size": self.class_size,
            "centralizer_order": self.centralizer_order,
            "betti": list(self.betti),
            "twisted": list(self.twisted),
            "epsilon": {h: v.to_json() for h, v in self.epsilon.items()},
        }


class DelocalizedResult(NamedTuple):
    dims: List[int]
    sectors: List[SectorRow]

    @property
    def total(self) -> int:
        return sum(self.dims)

    def to_dict(self) -> dict:
        return {"dims": list(self.dims), "total": self.total, "sectors": [s.to_dict() for s in self.sectors]}


def sector_characters(space: GammaComplex, gerbe: Optional[GerbeCocycle], g: int) -> Dict[int, QmodZ]:
    """``ε_g`` on the centralizer of ``g`` (trivial without a gerbe).

    Raises:
        PreconditionError: If the gerbe does not live on [*/Γ].
    """
    group = space.group
    centralizer = group.centralizer(g)
    if gerbe is None:
        return {h: QmodZ(0) for h in centralizer}
    base_group = getattr(gerbe.base, "group", None)
    if base_group != group:
        raise PreconditionError("gerbe-group", f"the gerbe must live on the one-object groupoid of {group.name}")
    return {h: transgression_value(gerbe, group.label(g), group.label(h)) for h in centralizer}


def _pad(dims: List[int], length: int) -> List[int]:
    return list(dims) + [0] * (length - len(dims))


def _sector_row(space: GammaComplex, sector: BrylinskiSector, gerbe, field: CyclotomicField) -> SectorRow:
    group = space.group
    epsilon = sector_characters(space, gerbe, sector.representative)
    fixed = sector.fixed
    twisted: List[int] = []
    betti: List[int] = []
    if not fixed.is_empty():
        cohomology = simplicial_cohomology(fixed, with_bases=True)
        betti = cohomology.dims
        for k, basis in enumerate(cohomology.bases):
            if not basis.dim:
                twisted.append(0)
                continue
            total = field.zero()
            for h in sector.centralizer:
                trace = basis.trace(space.cochain_action(h, k, fixed))
                total = total + field.from_qmodz(epsilon[h]).conjugate() * trace
            value = total / len(sector.centralizer)
            if not value.is_rational() or value.rational().q != 1 or value.rational() < 0:
                raise InternalAssertionError(
                    f"projector trace {value} in degree {k} of sector {sector.label} is not a natural number"
                )
            twisted.append(int(value.rational()))
    return SectorRow(
        sector.label,
        sector.class_size,
        len(sector.centralizer),
        betti,
        twisted,
        {group.label(h): v for h, v in epsilon.items()},
    )


def delocalized(
    space: GammaComplex,
    gerbe: Optional[GerbeCocycle] = None,
    subdivide: bool = True,
    num_workers: Optional[int] = None,
) -> DelocalizedResult:
    """Dimensions of ``H^k_deloc`` per degree, summed over sectors.

    Args:
        space (GammaComplex): K with its Γ-action.
        gerbe (GerbeCocycle, optional): A gerbe on [*/Γ]. ``None`` is the trivial gerbe.
        subdivide (bool, optional): Pass to the double barycentric subdivision first
            (skipped if ``space`` is already subdivided twice).
        num_workers (int, optional): Threads for the per-sector work.

    Raises:
        InternalAssertionError: If a projector trace is not a natural number.
    """
    if subdivide and space.subdivisions < 2:
        space = space.subdivided()
    sectors = brylinski(space).sectors
    field = CyclotomicField(space.group.exponent)
    rows = parallel_map(lambda s: _sector_row(space, s, gerbe, field), sectors, num_workers)
    length = space.complex.dim + 1
    dims = [sum(_pad(r.twisted, length)[k] for r in rows) for k in range(length)]
    _logger.debug("delocalized dims of %s: %s", space.complex.name, dims)
    return DelocalizedResult(dims, rows)


def delocalized_untwisted_rational(
    space: GammaComplex, subdivide: bool = True, num_workers: Optional[int] = None
) -> List[int]:
    """``H^*(ΛK/Γ; ℚ)`` from the orbit complexes ``K^g / C(g)``.

    Raises:
        InternalAssertionError: If the result differs from ``delocalized(space)``.
    """
    if subdivide and space.subdivisions < 2:
        space = space.subdivided()
    sectors = brylinski(space).sectors
    length = space.complex.dim + 1

    def quotient_betti(sector: BrylinskiSector) -> List[int]:
        if sector.fixed.is_empty():
            return []
        return betti_numbers(space.quotient(sector.centralizer, sector.fixed))

    per_sector = parallel_map(quotient_betti, sectors, num_workers)
    dims = [sum(_pad(b, length)[k] for b in per_sector) for k in range(length)]
    expected = delocalized(space, None, subdivide=False, num_workers=num_workers).dims
    if dims != expected:
        raise InternalAssertionError(f"orbit complex dims {dims} differ from invariant dims {expected}")
    return dims


def delocalized_euler_characteristic(space: GammaComplex, gerbe: Optional[GerbeCocycle] = None) -> int:
    """Alternating sum of the delocalized dimensions (the orbifold Euler number for ``β = 0``)."""
    return sum((-1) ** k * d for k, d in enumerate(delocalized(space, gerbe).dims))


def sector_table(result: DelocalizedResult) -> List[List[str]]:
    """Rows ``sector, |class|, |C(g)|, betti(K^g), twisted dims, ε_g`` for text reports."""
    return [
        [
            row.label,
            str(row.class_size),
            str(row.centralizer_order),
            " ".join(map(str, row.betti)) or "-",
            " ".join(map(str, row.twisted)) or "-",
            " ".join(f"{h}:{v}" for h, v in row.epsilon.items()),
        ]
        for row in result.sectors
    ]
