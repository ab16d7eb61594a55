"""Exact rational linear algebra on cochain complexes.

Ranks of integer matrices go through :func:`orbiloop.cohomology.smith.sparse_rank`.
Bases, kernels and coordinates use sparse ``DomainMatrix`` row reduction over
``QQ``. Sparse vectors are dicts ``{index: QQ element}``.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from scipy import sparse
from sympy import Matrix, Rational
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ..cohomology.smith import sparse_rank
from ..exceptions import InternalAssertionError
from .simplicial import SimplicialComplex

__all__ = [
    "SparseVector",
    "CohomologyBasis",
    "SimplicialCohomology",
    "apply",
    "betti_numbers",
    "domain_matrix",
    "from_columns",
    "nullspace",
    "qq_rank",
    "rref_rows",
    "simplicial_cohomology",
]

_logger = logging.getLogger(__name__)

SparseVector = Dict[int, object]


def domain_matrix(matrix, shape: Optional[Tuple[int, int]] = None) -> DomainMatrix:
    """A sparse ``DomainMatrix`` over ``QQ`` from a scipy matrix or a ``{row: {col: value}}`` dict."""
    if isinstance(matrix, dict):
        rows = {i: {j: QQ.convert(v) for j, v in row.items() if v} for i, row in matrix.items()}
    else:
        m = sparse.coo_matrix(matrix)
        shape = m.shape
        rows = {}
        for i, j, v in zip(m.row, m.col, m.data):
            if v:
                rows.setdefault(int(i), {})[int(j)] = QQ(int(v))
    return DomainMatrix({i: r for i, r in rows.items() if r}, shape, QQ)


def from_columns(columns: Sequence[SparseVector], nrows: int) -> DomainMatrix:
    rows: Dict[int, Dict[int, object]] = {}
    for c, column in enumerate(columns):
        for i, v in column.items():
            rows.setdefault(i, {})[c] = v
    return domain_matrix(rows, (nrows, len(columns)))


def rref_rows(dm: DomainMatrix) -> Tuple[Dict[int, Dict[int, object]], Tuple[int, ...]]:
    """Reduced row echelon form as ``{row: {col: value}}`` and the pivot columns."""
    if 0 in dm.shape:
        return {}, ()
    reduced, pivots = dm.rref()
    return dict(reduced.to_sparse().rep), tuple(pivots)


def qq_rank(matrix) -> int:
    if isinstance(matrix, DomainMatrix):
        return 0 if 0 in matrix.shape else int(matrix.rank())
    return sparse_rank(matrix)


def nullspace(matrix, ncols: Optional[int] = None) -> List[SparseVector]:
    """Basis of the kernel of ``matrix`` as sparse vectors."""
    dm = matrix if isinstance(matrix, DomainMatrix) else domain_matrix(matrix)
    ncols = dm.shape[1] if ncols is None else ncols
    rows, pivots = rref_rows(dm)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = {f: QQ(1)}
        for i, p in enumerate(pivots):
            entry = rows.get(i, {}).get(f)
            if entry:
                v[p] = -entry
        basis.append(v)
    return basis


def apply(matrix: sparse.spmatrix, vector: SparseVector) -> SparseVector:
    """``matrix · vector`` for an integer scipy matrix."""
    m = sparse.csc_matrix(matrix)
    out: SparseVector = {}
    for j, v in vector.items():
        for p in range(m.indptr[j], m.indptr[j + 1]):
            i = int(m.indices[p])
            out[i] = out.get(i, QQ(0)) + QQ(int(m.data[p])) * v
    return {i: v for i, v in out.items() if v}


class CohomologyBasis:
    """Representative cocycles of a basis of ``H^k`` and coordinates of classes in it.

    A basis of ``B^k`` is extended by cocycles to a basis of ``Z^k``; the cocycles
    added are the representatives.

    Args:
        complex (SimplicialComplex): K.
        degree (int): k.
    """

    def __init__(self, complex: SimplicialComplex, degree: int):
        self.complex = complex
        self.degree = degree
        n = complex.count(degree)
        self._size = n
        cocycles = nullspace(complex.coboundary_matrix(degree), n)
        coboundary = sparse.csc_matrix(complex.coboundary_matrix(degree - 1)) if degree > 0 else None
        boundaries: List[SparseVector] = []
        if coboundary is not None:
            for j in range(coboundary.shape[1]):
                start, stop = coboundary.indptr[j], coboundary.indptr[j + 1]
                column = {int(i): QQ(int(v)) for i, v in zip(coboundary.indices[start:stop], coboundary.data[start:stop])}
                if column:
                    boundaries.append(column)

        _, pivots = rref_rows(from_columns(boundaries + cocycles, n))
        split = len(boundaries)
        self._boundaries = [boundaries[p] for p in pivots if p < split]
        self.cocycles: List[SparseVector] = [cocycles[p - split] for p in pivots if p >= split]
        _logger.debug("H^%d(%s): dim %d", degree, complex.name, len(self.cocycles))

    @property
    def dim(self) -> int:
        return len(self.cocycles)

    def coordinates(self, targets: Sequence[SparseVector]) -> List[List[Rational]]:
        """Coordinates of the classes of cocycles ``targets``, one list per target.

        Raises:
            InternalAssertionError: If a target is not a cocycle.
        """
        if not targets:
            return []
        basis = self._boundaries + self.cocycles
        rows, pivots = rref_rows(from_columns(basis + list(targets), self._size))
        if any(p >= len(basis) for p in pivots):
            raise InternalAssertionError(f"a target is not a cocycle in degree {self.degree}")
        offset = len(self._boundaries)
        return [
            [QQ.to_sympy(rows.get(offset + i, {}).get(len(basis) + t, QQ(0))) for i in range(self.dim)]
            for t in range(len(targets))
        ]

    def induced(self, cochain_map: sparse.spmatrix) -> Matrix:
        """Matrix of the map induced on ``H^k`` by a chain map ``C^k -> C^k``."""
        columns = self.coordinates([apply(cochain_map, c) for c in self.cocycles])
        return Matrix(self.dim, self.dim, lambda i, j: columns[j][i])

    def trace(self, cochain_map: sparse.spmatrix) -> Rational:
        return self.induced(cochain_map).trace() if self.dim else Rational(0)


class SimplicialCohomology(NamedTuple):
    """Rational cohomology dims of a complex, with bases when requested."""

    dims: List[int]
    bases: Optional[List[CohomologyBasis]] = None


def betti_numbers(complex: SimplicialComplex) -> List[int]:
    """``dim H^k(K; ℚ)`` for ``k = 0..dim K``."""
    if complex.is_empty():
        return []
    ranks = [sparse_rank(complex.coboundary_matrix(k)) for k in range(complex.dim + 1)]
    return [complex.count(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(complex.dim + 1)]


def simplicial_cohomology(complex: SimplicialComplex, with_bases: bool = False) -> SimplicialCohomology:
    dims = betti_numbers(complex)
    if not with_bases:
        return SimplicialCohomology(dims)
    bases = [CohomologyBasis(complex, k) for k in range(complex.dim + 1)]
    if [b.dim for b in bases] != dims:
        raise InternalAssertionError(f"cohomology bases of {complex.name} disagree with the ranks")
    return SimplicialCohomology(dims, bases)
