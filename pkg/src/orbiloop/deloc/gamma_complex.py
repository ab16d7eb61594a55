"""Simplicial complexes with an action of a finite group and their fixed-point sectors."""
import logging
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence

import numpy as np
from scipy import sparse

from ..complexes.simplicial import SimplicialComplex
from ..exceptions import PreconditionError, SchemaError
from ..groupoids.group import FiniteGroup
from ..utils.ids import compound_id

__all__ = ["GammaComplex", "BrylinskiSector", "BrylinskiComplex", "brylinski"]

_logger = logging.getLogger(__name__)


class GammaComplex:
    """A simplicial complex K with a simplicial action of a finite group Γ.

    Args:
        complex (SimplicialComplex): K.
        group (FiniteGroup): Γ.
        action (Mapping[int, Mapping[str, str]]): For each element index, the vertex
            permutation. Every element must be given.
        validate (bool, optional): Check that the action is a simplicial group action.
        subdivisions (int, optional): Number of barycentric subdivisions already applied.

    Raises:
        SchemaError: If a permutation is missing or is not a bijection of the vertices.
        PreconditionError: If the action does not map simplices to simplices or is not
            a homomorphism.
    """

    def __init__(
        self,
        complex: SimplicialComplex,
        group: FiniteGroup,
        action: Mapping[int, Mapping[str, str]],
        validate: bool = True,
        subdivisions: int = 0,
    ):
        self.complex = complex
        self.group = group
        self.subdivisions = subdivisions
        vertices = complex.vertices
        self._action: Dict[int, Dict[str, str]] = {}
        for g in range(group.order):
            if g not in action:
                raise SchemaError(f"no permutation for element {group.label(g)}", f"/action/{group.label(g)}")
            perm = dict(action[g])
            if sorted(perm) != sorted(vertices) or sorted(perm.values()) != sorted(vertices):
                raise SchemaError(f"element {group.label(g)} does not permute the vertices", f"/action/{group.label(g)}")
            self._action[g] = perm
        if validate:
            self._validate()

    def _validate(self):
        group = self.group
        for g, perm in self._action.items():
            for k in range(self.complex.dim + 1):
                for s in self.complex.simplices(k):
                    if [perm[v] for v in s] not in self.complex:
                        raise PreconditionError("simplicial-action", f"{group.label(g)} does not preserve simplices", s)
        for g in range(group.order):
            for h in range(group.order):
                gh = self._action[group.mul(g, h)]
                for v in self.complex.vertices:
                    if gh[v] != self._action[g][self._action[h][v]]:
                        raise PreconditionError(
                            "group-action", "the action is not a homomorphism", group.labels((g, h))
                        )

    # ---------------------------------------------------------------- access

    def act(self, g: int, vertex: str) -> str:
        return self._action[g][vertex]

    def permutation(self, g: int) -> Dict[str, str]:
        return dict(self._action[g])

    def orbit(self, vertex: str, elements: Optional[Sequence[int]] = None) -> List[str]:
        elements = range(self.group.order) if elements is None else elements
        return list(dict.fromkeys(self._action[g][vertex] for g in elements))

    def fixed_vertices(self, g: int) -> List[str]:
        return [v for v in self.complex.vertices if self._action[g][v] == v]

    def is_regular(self) -> bool:
        """Whether every element fixing a simplex setwise fixes it pointwise."""
        for g, perm in self._action.items():
            for k in range(1, self.complex.dim + 1):
                for s in self.complex.simplices(k):
                    image = {perm[v] for v in s}
                    if image == set(s) and any(perm[v] != v for v in s):
                        return False
        return True

    def fixed_complex(self, g: int) -> SimplicialComplex:
        """``K^g``: the simplices fixed pointwise by ``g``, a full subcomplex for regular actions.

        Raises:
            PreconditionError: If the action is not regular.
        """
        if not self.is_regular():
            raise PreconditionError("regular", "fixed complexes need a regular action, subdivide first")
        return self.complex.full_subcomplex(self.fixed_vertices(g), name=f"{self.complex.name}^{self.group.label(g)}")

    def quotient(self, elements: Optional[Sequence[int]] = None, subcomplex: Optional[SimplicialComplex] = None):
        """The orbit complex ``L/H`` of an H-invariant subcomplex L (default K) by ``H = elements``."""
        subcomplex = subcomplex or self.complex
        elements = list(range(self.group.order)) if elements is None else list(elements)
        order = {v: i for i, v in enumerate(subcomplex.vertices)}
        vertex_map = {}
        for v in subcomplex.vertices:
            vertex_map[v] = min(self.orbit(v, elements), key=order.__getitem__)
        return subcomplex.image(vertex_map, name=f"{subcomplex.name}/{len(elements)}")

    def cochain_action(self, g: int, degree: int, subcomplex: Optional[SimplicialComplex] = None) -> sparse.csr_matrix:
        """``g^*`` on ``C^k`` of an invariant subcomplex: ``(g^*c)(σ) = ±c(gσ)``."""
        subcomplex = subcomplex or self.complex
        perm = self._action[g]
        rows, cols, vals = [], [], []
        for r, s in enumerate(subcomplex.simplices(degree)):
            image, sign = subcomplex.map_simplex(s, perm.__getitem__)
            rows.append(r)
            cols.append(subcomplex.index(image))
            vals.append(sign)
        n = subcomplex.count(degree)
        return sparse.csr_matrix((np.array(vals, dtype=np.int64), (rows, cols)), shape=(n, n))

    # --------------------------------------------------------- constructions

    def barycentric_subdivision(self) -> "GammaComplex":
        """``sd K`` with the induced action ``σ -> gσ`` on barycenters."""
        sd = self.complex.barycentric_subdivision()
        action = {}
        for g, perm in self._action.items():
            action[g] = {}
            for k in range(self.complex.dim + 1):
                for s in self.complex.simplices(k):
                    action[g][compound_id(*s)] = compound_id(*self.complex.order(perm[v] for v in s))
        return GammaComplex(sd, self.group, action, validate=False, subdivisions=self.subdivisions + 1)

    def subdivided(self) -> "GammaComplex":
        """The double barycentric subdivision, on which the action is regular."""
        result = self.barycentric_subdivision().barycentric_subdivision()
        if not result.is_regular():
            raise PreconditionError("regular", "action is not regular after two subdivisions")
        return result

    def to_dict(self) -> dict:
        return {
            **self.complex.to_dict(),
            "group": self.group.name,
            "action": {self.group.label(g): dict(perm) for g, perm in self._action.items()},
        }

    def __repr__(self):
        return f"GammaComplex({self.complex.name!r}, {self.group.name}, subdivisions={self.subdivisions})"


class BrylinskiSector(NamedTuple):
    """The sector of a conjugacy class: ``K^g`` with the action of ``C(g)``."""

    representative: int
    label: str
    class_size: int
    fixed: SimplicialComplex
    centralizer: List[int]


class BrylinskiComplex(NamedTuple):
    space: GammaComplex
    sectors: List[BrylinskiSector]


def brylinski(space: GammaComplex) -> BrylinskiComplex:
    """One sector per conjugacy class, represented by its first element.

    Raises:
        PreconditionError: If the action is not regular.
    """
    group = space.group
    sectors = []
    for klass in group.conjugacy_classes():
        g = klass[0]
        sectors.append(BrylinskiSector(g, group.label(g), len(klass), space.fixed_complex(g), group.centralizer(g)))
    _logger.debug("%s: %d sectors", space.complex.name, len(sectors))
    return BrylinskiComplex(space, sectors)
