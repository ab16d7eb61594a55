"""Flat U(1)-bundles (ℚ/ℤ-valued 1-cocycles) and their transgression to loops.

The transgression of a bundle cocycle ``Φ`` is the function ``h(γ) = Φ(γ)`` on
loop objects. It is constant on twisted sectors and agrees with ``χ̄`` for the
Bockstein ``χ`` of ``Φ``, which is what :func:`check_h_equals_chi_bar` tests.
"""
import logging
from typing import Dict, List, Optional

from ..cohomology.bar import BarCochain
from ..cohomology.bockstein import inverse_bockstein_cyclic
from ..cohomology.qmodz import Coefficients, QmodZ
from ..exceptions import InternalAssertionError, PreconditionError
from ..groupoids.group import cyclic
from ..groupoids.groupoid import FiniteGroupoid
from ..loops.loop_groupoid import LoopGroupoid, Sector, loop_groupoid
from .nerve import NerveCochain

__all__ = [
    "loop_powers",
    "transgress_bundle",
    "chi_bar",
    "check_h_equals_chi_bar",
    "twisted_sectors",
]

_logger = logging.getLogger(__name__)


def _require_cocycle(cochain: NerveCochain, degree: int):
    if cochain.degree != degree:
        raise PreconditionError("degree", f"expected a {degree}-cochain", cochain.degree)
    if not cochain.is_cocycle():
        raise PreconditionError("cocycle", f"expected a {degree}-cocycle on {cochain.groupoid.name}")


def transgress_bundle(phi: NerveCochain, loops: Optional[LoopGroupoid] = None) -> NerveCochain:
    """``h(γ) = Φ(γ)`` as a 0-cochain on LX.

    Raises:
        PreconditionError: If ``phi`` is not a 1-cocycle.
        InternalAssertionError: If ``h`` is not constant on sectors.
    """
    _require_cocycle(phi, 1)
    loops = loops or loop_groupoid(phi.groupoid)
    h = NerveCochain(loops.carrier, 0, {(g,): phi.value(g) for g in loops.carrier.objects}, phi.coefficients)
    if not h.coboundary().is_zero():
        raise InternalAssertionError(f"transgression of the bundle on {phi.groupoid.name} is not sector-constant")
    return h


def loop_powers(base: FiniteGroupoid, loop: str) -> List[str]:
    """``[id, γ, γ^2, ..., γ^(m-1)]`` for a loop of order ``m``."""
    x = base.src(loop)
    powers = [base.identity(x)]
    current = loop
    while current != powers[0]:
        powers.append(current)
        current = base.compose(loop, current)
    return powers


def _restrict_to_cyclic(chi: NerveCochain, powers: List[str]) -> BarCochain:
    group = cyclic(len(powers))
    bar = chi.bar
    if bar is not None:
        return bar.pullback(group, [bar.group.index(p) for p in powers])
    return BarCochain.from_function(group, 2, lambda i, j: chi.value(powers[i], powers[j]), chi.coefficients)


def chi_bar(chi: NerveCochain, loops: Optional[List[str]] = None) -> Dict[str, QmodZ]:
    """``χ̄(γ)`` for every loop ``γ`` (or the given ones).

    ``χ`` is pulled back to the cyclic subgroup generated by ``γ``, where the
    Bockstein is inverted explicitly, and the resulting character is evaluated
    at ``γ``.

    Raises:
        PreconditionError: If ``chi`` is not a ℤ-valued 2-cocycle.
    """
    if chi.coefficients is not Coefficients.Z:
        raise PreconditionError("coefficients", "chi must be Z-valued", chi.coefficients.value)
    _require_cocycle(chi, 2)
    base = chi.groupoid
    result = {}
    for gamma in base.loops() if loops is None else loops:
        powers = loop_powers(base, gamma)
        if len(powers) == 1:
            result[gamma] = QmodZ(0)
            continue
        result[gamma] = inverse_bockstein_cyclic(_restrict_to_cyclic(chi, powers), 1)
    return result


def check_h_equals_chi_bar(phi: NerveCochain, loops: Optional[LoopGroupoid] = None) -> bool:
    """Compare ``h`` of a bundle cocycle with ``χ̄`` of its Bockstein, loop by loop."""
    _require_cocycle(phi, 1)
    if phi.coefficients is not Coefficients.QMODZ:
        raise PreconditionError("coefficients", "bundle cocycles are Q/Z-valued", phi.coefficients.value)
    h = transgress_bundle(phi, loops)
    chi = phi.lift().coboundary().to_integral()
    values = chi_bar(chi, list(h.groupoid.objects))
    mismatches = [g for g in h.groupoid.objects if h.value(g) != values[g]]
    if mismatches:
        _logger.info("h != chi bar on %s at %d loops, first %s", phi.groupoid.name, len(mismatches), mismatches[0])
    else:
        _logger.info("h == chi bar on %s", phi.groupoid.name)
    return not mismatches


def twisted_sectors(phi: NerveCochain, loops: Optional[LoopGroupoid] = None) -> Dict[QmodZ, List[Sector]]:
    """Sectors of LX grouped by the value of ``h``, keys in increasing order.

    The block of ``0`` is the sub loop groupoid of loops with trivial holonomy.
    """
    loops = loops or loop_groupoid(phi.groupoid)
    h = transgress_bundle(phi, loops)
    blocks: Dict[QmodZ, List[Sector]] = {}
    for sector in loops.sectors():
        blocks.setdefault(QmodZ.parse(h.value(sector.representative)), []).append(sector)
    return dict(sorted(blocks.items()))
