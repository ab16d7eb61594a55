"""Flat rank-1 local systems on ordered simplicial complexes.

A local system is given by its holonomy ``ℓ(u, v) ∈ ℚ/ℤ`` on every edge ``u < v``.
Flatness is the cocycle condition ``ℓ(a, b) + ℓ(b, c) = ℓ(a, c)`` on every triangle.
Cochains take values in ℚ(ζ_N), N the least common denominator, and a cochain value
on ``(v0 .. vk)`` lives in the fiber over ``v0``. Transport from ``v`` back to ``u``
multiplies by ``ζ^{ℓ(u, v)}``, so

    (δ_L x)(v0 .. v_{k+1}) = ζ^{ℓ(v0, v1)} x(v1 .. v_{k+1}) + Σ_{i≥1} (-1)^i x(v0 .. v̂_i .. v_{k+1})
"""
import logging
from typing import Callable, Dict, List, Mapping, Optional

from sympy import ilcm

from ..cohomology.qmodz import QmodZ
from ..complexes.simplicial import Simplex, SimplicialComplex
from ..deloc.cyclotomic import CycloMatrix, CyclotomicField, CyclotomicNumber
from ..exceptions import PreconditionError, SchemaError
from .cochains import SimplicialCochain

__all__ = ["SimplicialLocalSystem", "local_system_cohomology"]

_logger = logging.getLogger(__name__)


class SimplicialLocalSystem:
    """A flat ℚ(ζ_N) line bundle on K.

    Args:
        complex (SimplicialComplex): K.
        holonomy (Mapping[Sequence[str], QmodZ], optional): ``ℓ`` on edges; missing
            edges carry 0. Edges may be listed in any order; a reversed edge
            contributes ``-ℓ``.
        validate (bool, optional): Check flatness.

    Raises:
        SchemaError: If a key is not an edge of K.
        PreconditionError: If ``ℓ`` is not flat.
    """

    def __init__(self, complex: SimplicialComplex, holonomy: Optional[Mapping] = None, validate: bool = True):
        self.complex = complex
        self._holonomy: Dict[Simplex, QmodZ] = {}
        for edge, value in (holonomy or {}).items():
            edge = tuple(edge)
            if len(edge) != 2 or edge not in complex:
                raise SchemaError(f"{list(edge)} is not an edge of {complex.name}", "/local_system")
            value = QmodZ.parse(value)
            ordered = complex.order(edge)
            self._holonomy[ordered] = value if ordered == edge else -value
        order = 1
        for value in self._holonomy.values():
            order = ilcm(order, value.denominator)
        self.field = CyclotomicField(int(order))
        if validate:
            self._validate()

    @classmethod
    def trivial(cls, complex: SimplicialComplex) -> "SimplicialLocalSystem":
        return cls(complex, validate=False)

    @classmethod
    def from_function(cls, complex: SimplicialComplex, fn: Callable[[str, str], object]) -> "SimplicialLocalSystem":
        """``fn(u, v)`` for each edge ``u < v``."""
        return cls(complex, {e: fn(*e) for e in complex.simplices(1)})

    def _validate(self):
        for a, b, c in self.complex.simplices(2):
            if self.holonomy(a, b) + self.holonomy(b, c) != self.holonomy(a, c):
                raise PreconditionError("flat", "holonomy is not a cocycle", (a, b, c))

    def holonomy(self, u: str, v: str) -> QmodZ:
        """``ℓ(u, v)`` for an ordered edge (0 for ``u == v``)."""
        if u == v:
            return QmodZ(0)
        return self._holonomy.get((u, v), QmodZ(0))

    def transport(self, u: str, v: str) -> CyclotomicNumber:
        """``ζ^{ℓ(u, v)}``: the identification of the fiber over ``v`` with the one over ``u``."""
        return self.field.from_qmodz(self.holonomy(u, v))

    def is_trivial(self) -> bool:
        return all(v.is_zero() for v in self._holonomy.values())

    # -------------------------------------------------------------- matrices

    def coboundary_matrix(self, degree: int) -> CycloMatrix:
        """``δ_L: C^k -> C^{k+1}`` over ℚ(ζ_N)."""
        complex = self.complex
        rows = complex.simplices(degree + 1)
        out = CycloMatrix(self.field, (len(rows), complex.count(degree)))
        if degree < 0:
            return out
        for r, s in enumerate(rows):
            out[r, complex.index(s[1:])] = self.transport(s[0], s[1])
            for i in range(1, len(s)):
                c = complex.index(s[:i] + s[i + 1 :])
                out[r, c] = out[r, c] + (-1) ** i
        return out

    def cup_matrix(self, cochain: SimplicialCochain, degree: int) -> CycloMatrix:
        """``x -> a ∪ x`` from ``C^k(K; L)`` to ``C^{k+|a|}(K; L)`` for a scalar cochain ``a``.

        ``(a ∪ x)(v0 .. v_{p+k}) = a(v0 .. vp) · ζ^{ℓ(v0, vp)} · x(vp .. v_{p+k})``
        """
        complex = self.complex
        p = cochain.degree
        rows = complex.simplices(p + degree)
        out = CycloMatrix(self.field, (len(rows), complex.count(degree)))
        for r, s in enumerate(rows):
            front = cochain.value(s[: p + 1])
            if front:
                out[r, complex.index(s[p:])] = self.transport(s[0], s[p]) * front
        return out

    def to_dict(self) -> dict:
        edges = sorted(self._holonomy.items(), key=lambda kv: self.complex.index(kv[0]))
        return {
            "order": self.field.order,
            "holonomy": [{"edge": list(e), "value": v.to_json()} for e, v in edges if not v.is_zero()],
        }

    def __repr__(self):
        return f"SimplicialLocalSystem({self.complex.name!r}, N={self.field.order})"


def local_system_cohomology(complex: SimplicialComplex, local_system: Optional[SimplicialLocalSystem] = None) -> List[int]:
    """``dim H^k(K; L)`` over ℚ(ζ_N) for ``k = 0..dim K``."""
    local_system = local_system or SimplicialLocalSystem.trivial(complex)
    ranks = [local_system.coboundary_matrix(k).rank() for k in range(complex.dim + 1)]
    dims = [complex.count(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(complex.dim + 1)]
    _logger.debug("H^*(%s; L) = %s", complex.name, dims)
    return dims
