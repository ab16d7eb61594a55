"""The 2-periodic complex ``C^ev(K; L) ⇄ C^odd(K; L)`` with ``d = δ_L + λ∪``."""
import logging
from math import factorial
from typing import List, NamedTuple, Optional

from sympy import Rational

from ..complexes.simplicial import SimplicialComplex
from ..deloc.cyclotomic import CycloMatrix
from ..exceptions import InternalAssertionError, PreconditionError
from .cochains import SimplicialCochain, cup
from .local_system import SimplicialLocalSystem
from .twisted import TwistedComplex, cup_powers

__all__ = [
    "PeriodicComplex",
    "PeriodicDims",
    "periodic_cohomology",
    "periodic_gauge_transform",
    "verify_periodic_gauge_transform",
]

_logger = logging.getLogger(__name__)


class PeriodicDims(NamedTuple):
    even: int
    odd: int

    def to_dict(self) -> dict:
        return {"even": self.even, "odd": self.odd}


class PeriodicComplex:
    """``(C^ev ⊕ C^odd, δ_L + λ∪)``.

    The even space is ``C^0 ⊕ C^2 ⊕ ...`` and the odd space ``C^1 ⊕ C^3 ⊕ ...``,
    each in increasing degree.

    Raises:
        PreconditionError: If λ is not a 3-cocycle or ``λ ∪ λ ≠ 0``.
    """

    def __init__(
        self,
        complex: SimplicialComplex,
        lam: Optional[SimplicialCochain] = None,
        local_system: Optional[SimplicialLocalSystem] = None,
        validate: bool = True,
    ):
        self._twisted = TwistedComplex(complex, lam, local_system, validate)
        self.complex = complex
        self.lam = self._twisted.lam
        self.local_system = self._twisted.local_system
        self.field = self._twisted.field

    def degrees(self, parity: int) -> List[int]:
        return list(range(parity, self.complex.dim + 1, 2))

    def offsets(self, parity: int):
        offsets, position = {}, 0
        for p in self.degrees(parity):
            offsets[p] = position
            position += self.complex.count(p)
        return offsets

    def dim(self, parity: int) -> int:
        return sum(self.complex.count(p) for p in self.degrees(parity))

    def differential(self, parity: int) -> CycloMatrix:
        """``d`` from the space of the given parity to the other one."""
        source, target = self.offsets(parity), self.offsets(1 - parity)
        out = CycloMatrix(self.field, (self.dim(1 - parity), self.dim(parity)))
        for p, col in source.items():
            if p + 1 in target:
                out.add_block(self._twisted.delta(p), target[p + 1], col)
            if p + 3 in target:
                out.add_block(self._twisted.lambda_cup(p), target[p + 3], col)
        return out

    def verify_square_zero(self) -> bool:
        return all((self.differential(1 - e) @ self.differential(e)).is_zero() for e in (0, 1))


def periodic_cohomology(
    complex: SimplicialComplex,
    lam: Optional[SimplicialCochain] = None,
    local_system: Optional[SimplicialLocalSystem] = None,
) -> PeriodicDims:
    """``(dim H^ev, dim H^odd)`` of ``(C^ev/odd(K; L), δ_L + λ∪)``.

    Raises:
        PreconditionError: As for :class:`TwistedComplex`.
        InternalAssertionError: If ``d² ≠ 0``.
    """
    periodic = PeriodicComplex(complex, lam, local_system)
    if not periodic.verify_square_zero():
        raise InternalAssertionError("the periodic differential does not square to zero")
    rank_even = periodic.differential(0).rank()
    rank_odd = periodic.differential(1).rank()
    dims = PeriodicDims(periodic.dim(0) - rank_even - rank_odd, periodic.dim(1) - rank_odd - rank_even)
    _logger.debug("periodic dims of %s: %s", complex.name, dims)
    return dims


def periodic_gauge_transform(periodic: PeriodicComplex, mu: SimplicialCochain, parity: int) -> CycloMatrix:
    """``x -> Σ_k (-μ)^{∪k} ∪ x / k!`` on the space of the given parity.

    For ``λ = δμ`` with ``λ ∪ μ = μ ∪ λ`` it carries ``δ_L`` to ``δ_L + λ∪``.
    """
    if mu.degree != 2:
        raise PreconditionError("degree", f"μ must be a 2-cochain, got degree {mu.degree}")
    offsets = periodic.offsets(parity)
    powers = cup_powers(mu, periodic.complex.dim // 2)
    n = periodic.dim(parity)
    out = CycloMatrix(periodic.field, (n, n))
    for p, col in offsets.items():
        for k, power in enumerate(powers):
            if p + 2 * k in offsets:
                block = periodic.local_system.cup_matrix(power, p)
                out.add_block(block, offsets[p + 2 * k], col, Rational(1, factorial(k)))
    return out


def verify_periodic_gauge_transform(periodic: PeriodicComplex, mu: SimplicialCochain) -> bool:
    """Whether ``(δ_L + λ∪) ∘ E = E ∘ δ_L`` in both parities for ``λ = δμ``.

    Raises:
        PreconditionError: If ``λ ≠ δμ`` or ``λ ∪ μ ≠ μ ∪ λ``.
    """
    if mu.coboundary() != periodic.lam:
        raise PreconditionError("coboundary", "λ is not δμ")
    witness = (cup(periodic.lam, mu) - cup(mu, periodic.lam)).nonzero_witness()
    if witness is not None:
        raise PreconditionError("commuting", "λ ∪ μ ≠ μ ∪ λ", witness)
    untwisted = PeriodicComplex(periodic.complex, None, periodic.local_system, validate=False)
    for parity in (0, 1):
        left = periodic.differential(parity) @ periodic_gauge_transform(periodic, mu, parity)
        right = periodic_gauge_transform(periodic, mu, 1 - parity) @ untwisted.differential(parity)
        if left != right:
            return False
    return True
