"""Bockstein maps ℚ/ℤ -> ℤ, characters and the inverse Bockstein on cyclic groups."""
import itertools
import logging
from typing import List, Sequence, Tuple, Union

from sympy import ilcm

from ..exceptions import PreconditionError
from ..groupoids.group import FiniteGroup
from .bar import BarCochain
from .qmodz import Coefficients, QmodZ
from .zxgamma import ZxGammaCochain

__all__ = ["Character", "bockstein", "characters", "inverse_bockstein_cyclic"]

_logger = logging.getLogger(__name__)

Cochain = Union[BarCochain, ZxGammaCochain]


def bockstein(cochain: Cochain) -> Cochain:
    """Connecting map of ``0 -> ℤ -> ℚ -> ℚ/ℤ -> 0`` on a ℚ/ℤ-valued cocycle.

    Lifts ``p/q`` to the rational ``p/q`` in ``[0, 1)``, applies δ and returns
    the result as a ℤ-valued cochain of one degree higher.

    Raises:
        PreconditionError: If ``cochain`` is not a ℚ/ℤ-valued cocycle.
    """
    if cochain.coefficients is not Coefficients.QMODZ:
        raise PreconditionError("coefficients", "bockstein takes Q/Z-valued cochains", cochain.coefficients.value)
    if not cochain.is_cocycle():
        raise PreconditionError("cocycle", "bockstein needs a cocycle")
    return cochain.lift().coboundary().to_integral()


class Character:
    """A homomorphism ``Γ -> ℚ/ℤ`` given by its values in element index order."""

    def __init__(self, group: FiniteGroup, values: Sequence[QmodZ]):
        self.group = group
        self.values: Tuple[QmodZ, ...] = tuple(QmodZ.parse(v) for v in values)

    def __call__(self, g: int) -> QmodZ:
        return self.values[g]

    def value(self, label: str) -> QmodZ:
        return self.values[self.group.index(label)]

    @property
    def order(self) -> int:
        order = 1
        for v in self.values:
            order = ilcm(order, v.order)
        return int(order)

    def cochain(self) -> BarCochain:
        return BarCochain.from_character(self.group, self.values)

    def __add__(self, other: "Character") -> "Character":
        return Character(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __eq__(self, other):
        return isinstance(other, Character) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"Character({', '.join(str(v) for v in self.values)})"


def characters(group: FiniteGroup) -> List[Character]:
    """All homomorphisms ``Γ -> ℚ/ℤ``, the trivial character first.

    Values on a generating set are enumerated and extended along words in the
    generators; inconsistent assignments are dropped.
    """
    gens = group.generators()
    orders = [group.element_order(g) for g in gens]
    result = []
    for numerators in itertools.product(*(range(m) for m in orders)):
        assigned = [QmodZ(k, m) for k, m in zip(numerators, orders)]
        values = {group.identity: QmodZ(0)}
        frontier = [group.identity]
        consistent = True
        while frontier and consistent:
            x = frontier.pop()
            for g, v in zip(gens, assigned):
                y = group.mul(x, g)
                if y not in values:
                    values[y] = values[x] + v
                    frontier.append(y)
                elif values[y] != values[x] + v:
                    consistent = False
                    break
        if consistent:
            result.append(Character(group, [values[g] for g in range(group.order)]))
    _logger.debug("%s: %d characters", group.name, len(result))
    return result


def inverse_bockstein_cyclic(cocycle: BarCochain, generator: int) -> QmodZ:
    """Value at ``γ`` of the character whose Bockstein is ``cocycle`` restricted to ``⟨γ⟩``.

    For ``γ`` of order ``m`` this is ``k/m`` with ``k = Σ_{j<m} χ(γ^j, γ) mod m``;
    the sum telescopes to ``m·φ(γ)`` when ``χ = δφ``.

    Raises:
        PreconditionError: If ``cocycle`` is not a ℤ-valued 2-cochain.
    """
    if cocycle.degree != 2 or cocycle.coefficients is not Coefficients.Z:
        raise PreconditionError("integral-2-cochain", "expected a Z-valued 2-cochain")
    group = cocycle.group
    m = group.element_order(generator)
    k = sum(int(cocycle.numerators[power, generator]) for power in group.cyclic_subgroup(generator))
    return QmodZ(k % m, m)
