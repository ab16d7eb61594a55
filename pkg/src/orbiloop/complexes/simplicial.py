"""Finite abstract simplicial complexes with an ordered vertex set.

Simplices are stored as vertex tuples sorted by the vertex order, so every
simplex is an ordered simplex and cochains are alternating by construction.
The coboundary is ``(δc)(v0..v_{k+1}) = Σ_i (-1)^i c(v0..v̂_i..v_{k+1})``.
"""
import itertools
import logging
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from bidict import bidict
from scipy import sparse

from ..exceptions import PreconditionError, SchemaError
from ..utils.ids import compound_id

__all__ = ["Simplex", "SimplicialComplex"]

_logger = logging.getLogger(__name__)

Simplex = Tuple[str, ...]


class SimplicialComplex:
    """The closure of a list of simplices.

    Args:
        vertices (Sequence[str]): Vertex ids; their order is the vertex order.
        simplices (Iterable[Sequence[str]]): Simplices (typically facets). Faces are
            added automatically.
        name (str, optional): Display name.

    Raises:
        SchemaError: If a simplex uses an unknown or repeated vertex.
    """

    def __init__(self, vertices: Sequence[str], simplices: Iterable[Sequence[str]] = (), name: Optional[str] = None):
        self.name = name or "complex"
        self._vertex_index = bidict((v, i) for i, v in enumerate(vertices))
        if len(self._vertex_index) != len(vertices):
            raise SchemaError("duplicate vertex", "/vertices")

        faces = {(v,) for v in vertices}
        for n, simplex in enumerate(simplices):
            if any(v not in self._vertex_index for v in simplex):
                raise SchemaError(f"unknown vertex in simplex {list(simplex)}", f"/simplices/{n}")
            if len(set(simplex)) != len(simplex) or not simplex:
                raise SchemaError(f"degenerate simplex {list(simplex)}", f"/simplices/{n}")
            ordered = self.order(simplex)
            for k in range(1, len(ordered) + 1):
                faces.update(itertools.combinations(ordered, k))

        by_dim: Dict[int, List[Simplex]] = {}
        for s in faces:
            by_dim.setdefault(len(s) - 1, []).append(s)
        self._simplices: List[List[Simplex]] = []
        self._index: List[bidict] = []
        for k in range(max(by_dim) + 1 if by_dim else 0):
            ordered = sorted(by_dim.get(k, []), key=self._key)
            self._simplices.append(ordered)
            self._index.append(bidict((s, i) for i, s in enumerate(ordered)))

    def _key(self, simplex: Sequence[str]) -> Tuple[int, ...]:
        return tuple(self._vertex_index[v] for v in simplex)

    def order(self, simplex: Iterable[str]) -> Simplex:
        """Sort vertices by the vertex order."""
        return tuple(sorted(simplex, key=self._vertex_index.__getitem__))

    # ------------------------------------------------------------------ access

    @property
    def vertices(self) -> Tuple[str, ...]:
        return tuple(self._vertex_index.inverse[i] for i in range(len(self._vertex_index)))

    @property
    def dim(self) -> int:
        return len(self._simplices) - 1

    def simplices(self, k: int) -> List[Simplex]:
        if 0 <= k < len(self._simplices):
            return self._simplices[k]
        return []

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    def index(self, simplex: Sequence[str]) -> int:
        """Position of a simplex among the simplices of its dimension."""
        ordered = self.order(simplex)
        try:
            return self._index[len(ordered) - 1][ordered]
        except (IndexError, KeyError):
            raise PreconditionError("simplex", "not a simplex of the complex", tuple(simplex)) from None

    def __contains__(self, simplex) -> bool:
        if not all(v in self._vertex_index for v in simplex):
            return False
        k = len(simplex) - 1
        return 0 <= k <= self.dim and self.order(simplex) in self._index[k]

    def facets(self) -> List[Simplex]:
        """Simplices that are not a proper face of another simplex."""
        result = []
        for k in range(self.dim + 1):
            upper = set()
            for s in self.simplices(k + 1):
                upper.update(itertools.combinations(s, k + 1))
            result += [s for s in self.simplices(k) if s not in upper]
        return result

    def f_vector(self) -> List[int]:
        return [self.count(k) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    def is_empty(self) -> bool:
        return self.dim < 0

    # ---------------------------------------------------------------- cochains

    def coboundary_matrix(self, k: int) -> sparse.csr_matrix:
        """``δ_k: C^k -> C^{k+1}`` as a ``count(k+1) x count(k)`` integer matrix."""
        rows, cols, vals = [], [], []
        index = self._index[k] if 0 <= k <= self.dim else {}
        for r, s in enumerate(self.simplices(k + 1)):
            for i in range(len(s)):
                rows.append(r)
                cols.append(index[s[:i] + s[i + 1 :]])
                vals.append(-1 if i % 2 else 1)
        return sparse.csr_matrix(
            (np.array(vals, dtype=np.int64), (rows, cols)), shape=(self.count(k + 1), self.count(k))
        )

    # ------------------------------------------------------------ constructions

    def barycentric_subdivision(self, name: Optional[str] = None) -> "SimplicialComplex":
        """Vertices are the simplices of ``self``; simplices are chains under inclusion.

        The vertex for ``σ`` is ``compound_id(*σ)`` and vertices are ordered by
        dimension, then by the order of ``self``.
        """
        labels = {}
        vertices = []
        for k in range(self.dim + 1):
            for s in self.simplices(k):
                labels[s] = compound_id(*s)
                vertices.append(labels[s])

        def chains(top: Simplex):
            if len(top) == 1:
                yield [top]
                return
            for i in range(len(top)):
                for chain in chains(top[:i] + top[i + 1 :]):
                    yield chain + [top]

        simplices = [[labels[s] for s in chain] for top in self.facets() for chain in chains(top)]
        return SimplicialComplex(vertices, simplices, name=name or f"sd({self.name})")

    def full_subcomplex(self, vertices: Iterable[str], name: Optional[str] = None) -> "SimplicialComplex":
        """All simplices spanned by ``vertices``; the vertex order is inherited."""
        keep = set(vertices)
        ordered = [v for v in self.vertices if v in keep]
        simplices = [s for k in range(self.dim + 1) for s in self.simplices(k) if keep.issuperset(s)]
        return SimplicialComplex(ordered, simplices, name=name or f"{self.name}|sub")

    def image(self, vertex_map: Mapping[str, str], name: Optional[str] = None) -> "SimplicialComplex":
        """The complex spanned by the images of all simplices under a vertex map.

        Image vertices are ordered by the first preimage.
        """
        ordered = list(dict.fromkeys(vertex_map[v] for v in self.vertices))
        simplices = {
            tuple(sorted({vertex_map[v] for v in s})) for k in range(self.dim + 1) for s in self.simplices(k)
        }
        return SimplicialComplex(ordered, sorted(simplices), name=name or f"{self.name}/~")

    def map_simplex(self, simplex: Simplex, vertex_map: Callable[[str], str]) -> Tuple[Simplex, int]:
        """Image of an ordered simplex under an injective vertex map, reordered, with the sign of the reordering."""
        image = [vertex_map(v) for v in simplex]
        keys = [self._vertex_index[v] for v in image]
        perm = np.argsort(keys)
        sign = 1
        seen = [False] * len(perm)
        for i in range(len(perm)):
            if not seen[i]:
                j, length = i, 0
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    length += 1
                if length % 2 == 0:
                    sign = -sign
        return tuple(image[p] for p in perm), sign

    # -------------------------------------------------------------- documents

    def to_dict(self) -> dict:
        return {"vertices": list(self.vertices), "simplices": [list(s) for s in self.facets()]}

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self._simplices == other._simplices

    __hash__ = None

    def __repr__(self):
        return f"SimplicialComplex({self.name!r}, f={self.f_vector()})"
