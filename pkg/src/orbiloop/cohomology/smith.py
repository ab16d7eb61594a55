"""Smith normal form of sparse integer matrices and finitely generated abelian groups.

The matrices that come out of bar and simplicial complexes are large, very sparse
and mostly have entries ``0, ±1``. Elimination first removes every unit pivot
(each contributes an invariant factor 1) and hands the small dense residue to
``sympy``.
"""
import logging
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse
from sympy import igcd, ilcm
from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from .qmodz import Coefficients

__all__ = [
    "FinAbPresentation",
    "sparse_invariant_factors",
    "sparse_rank",
    "in_column_span",
    "in_rational_span",
    "in_column_span_mod",
]

_logger = logging.getLogger(__name__)

MatrixLike = Union[sparse.spmatrix, np.ndarray, Sequence[Sequence[int]]]


def _to_rows(matrix: MatrixLike) -> Tuple[Dict[int, Dict[int, int]], int]:
    m = sparse.csr_matrix(matrix, dtype=np.int64)
    m.sum_duplicates()
    m.eliminate_zeros()
    rows: Dict[int, Dict[int, int]] = {}
    for i in range(m.shape[0]):
        start, stop = m.indptr[i], m.indptr[i + 1]
        if start < stop:
            rows[i] = {int(j): int(v) for j, v in zip(m.indices[start:stop], m.data[start:stop])}
    return rows, m.shape[1]


def _eliminate_unit_pivots(rows: Dict[int, Dict[int, int]]) -> int:
    """Pivot on ``±1`` entries until none is left; returns the number of pivots.

    ``rows`` is reduced in place to the residue matrix.
    """
    cols: Dict[int, set] = defaultdict(set)
    for i, row in rows.items():
        for j in row:
            cols[j].add(i)

    eliminated = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda r: len(rows[r])):
            row = rows.get(i)
            if row is None:
                continue
            units = [j for j, v in row.items() if v in (1, -1)]
            if not units:
                continue
            j = min(units, key=lambda c: len(cols[c]))
            pivot = row[j]
            for r in list(cols[j]):
                if r == i:
                    continue
                other = rows[r]
                factor = other[j] * pivot
                for c, v in row.items():
                    new = other.get(c, 0) - factor * v
                    if new:
                        if c not in other:
                            cols[c].add(r)
                        other[c] = new
                    elif c in other:
                        del other[c]
                        cols[c].discard(r)
                if not other:
                    del rows[r]
            for c in row:
                cols[c].discard(i)
            del rows[i]
            cols.pop(j, None)
            eliminated += 1
            progress = True
    return eliminated


def _dense_residue(rows: Dict[int, Dict[int, int]]) -> List[List[int]]:
    columns = sorted({j for row in rows.values() for j in row})
    position = {j: k for k, j in enumerate(columns)}
    dense = []
    for row in rows.values():
        line = [0] * len(columns)
        for j, v in row.items():
            line[position[j]] = v
        dense.append(line)
    return dense


def _divisibility_chain(values: Iterable[int]) -> List[int]:
    """Invariant factors ``d1 | d2 | ...`` of ``diag(values)`` (nonzero values)."""
    chain = sorted(abs(int(v)) for v in values if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(chain)):
            for k in range(i + 1, len(chain)):
                a, b = chain[i], chain[k]
                if b % a:
                    chain[i], chain[k] = igcd(a, b), ilcm(a, b)
                    changed = True
        chain.sort()
    return [int(v) for v in chain]


def sparse_invariant_factors(matrix: MatrixLike) -> List[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order.

    The length of the result is the rank.
    """
    rows, _ = _to_rows(matrix)
    units = _eliminate_unit_pivots(rows)
    residue = _dense_residue(rows)
    _logger.debug(
        "SNF: %d unit pivots eliminated, dense residue %dx%d",
        units,
        len(residue),
        len(residue[0]) if residue else 0,
    )
    factors = [1] * units
    if residue:
        dm = DomainMatrix([[ZZ(v) for v in row] for row in residue], (len(residue), len(residue[0])), ZZ)
        factors += _divisibility_chain(int(d) for d in invariant_factors(dm))
    return _divisibility_chain(factors)


def sparse_rank(matrix: MatrixLike) -> int:
    """Rank over ℚ."""
    rows, _ = _to_rows(matrix)
    units = _eliminate_unit_pivots(rows)
    residue = _dense_residue(rows)
    if not residue:
        return units
    dm = DomainMatrix([[QQ(v) for v in row] for row in residue], (len(residue), len(residue[0])), QQ)
    return units + int(dm.rank())


def _with_column(matrix: MatrixLike, column: Sequence[int]) -> sparse.csr_matrix:
    a = sparse.csr_matrix(matrix, dtype=np.int64)
    c = sparse.csr_matrix(np.asarray(column, dtype=np.int64).reshape(-1, 1))
    return sparse.hstack([a, c], format="csr")


def _index_data(factors: List[int]) -> Tuple[int, int]:
    product = 1
    for d in factors:
        product *= d
    return len(factors), product


def in_column_span(matrix: MatrixLike, column: Sequence[int]) -> bool:
    """Whether the integer vector ``column`` lies in the ℤ-span of the columns of ``matrix``.

    Appending a vector from the span changes neither the rank nor the product of
    the invariant factors; any other vector changes one of them.
    """
    if not np.any(np.asarray(column)):
        return True
    return _index_data(sparse_invariant_factors(matrix)) == _index_data(
        sparse_invariant_factors(_with_column(matrix, column))
    )


def in_rational_span(matrix: MatrixLike, column: Sequence[int]) -> bool:
    """Whether ``column`` lies in the ℚ-span of the columns of ``matrix``."""
    if not np.any(np.asarray(column)):
        return True
    return sparse_rank(matrix) == sparse_rank(_with_column(matrix, column))


def in_column_span_mod(matrix: MatrixLike, numerators: Sequence[int], modulus: int) -> bool:
    """Whether ``numerators / modulus`` lies in the span of ``matrix`` over ℚ/ℤ.

    That is the case iff the numerators lie in the saturation of the column
    lattice plus ``modulus·ℤ^N``. Scaling by the largest invariant factor ``d``
    of ``matrix`` reduces this to integer membership in ``[matrix | d·modulus·I]``.
    """
    numerators = np.asarray(numerators, dtype=np.int64) % modulus
    if not np.any(numerators):
        return True
    factors = sparse_invariant_factors(matrix)
    d = factors[-1] if factors else 1
    n = len(numerators)
    extended = sparse.hstack(
        [sparse.csr_matrix(matrix, dtype=np.int64), sparse.identity(n, dtype=np.int64, format="csr") * (d * modulus)],
        format="csr",
    )
    return in_column_span(extended, numerators * d)


class FinAbPresentation:
    """A finitely generated abelian group by its invariant factors.

    ``factors`` is the divisibility chain ``d1 | d2 | ... | dk`` with ``di > 1``
    followed by one ``0`` per free summand. A free summand is a copy of the
    coefficient group (ℤ, ℚ or ℚ/ℤ).

    Args:
        free_rank (int): Number of free summands.
        torsion (Iterable[int]): Torsion orders, not necessarily a chain.
        coefficients (Coefficients, optional): Group of the free summands.
    """

    def __init__(
        self, free_rank: int = 0, torsion: Iterable[int] = (), coefficients: Coefficients = Coefficients.Z
    ):
        self.coefficients = coefficients
        self._torsion = tuple(d for d in _divisibility_chain(torsion) if d > 1)
        self._free_rank = int(free_rank)

    @classmethod
    def from_factors(
        cls, factors: Sequence[int], coefficients: Coefficients = Coefficients.Z
    ) -> "FinAbPresentation":
        free = sum(1 for d in factors if d == 0)
        return cls(free, [d for d in factors if d], coefficients)

    @property
    def factors(self) -> Tuple[int, ...]:
        return self._torsion + (0,) * self._free_rank

    @property
    def free_rank(self) -> int:
        return self._free_rank

    @property
    def torsion(self) -> Tuple[int, ...]:
        return self._torsion

    @property
    def order(self) -> Optional[int]:
        """Group order, ``None`` when infinite."""
        if self._free_rank:
            return None
        order = 1
        for d in self._torsion:
            order *= d
        return order

    def is_trivial(self) -> bool:
        return not self._free_rank and not self._torsion

    def __eq__(self, other):
        if not isinstance(other, FinAbPresentation):
            return NotImplemented
        return self.factors == other.factors and self.coefficients is other.coefficients

    def __hash__(self):
        return hash((self.factors, self.coefficients))

    def __str__(self):
        parts = []
        if self._free_rank == 1:
            parts.append(self.coefficients.symbol)
        elif self._free_rank > 1:
            parts.append(f"{self.coefficients.symbol}^{self._free_rank}")
        parts += [f"Z/{d}" for d in self._torsion]
        return " + ".join(parts) or "0"

    def __repr__(self):
        return f"FinAbPresentation({self})"

    def to_dict(self) -> dict:
        return {
            "invariant_factors": list(self.factors),
            "free_rank": self._free_rank,
            "torsion": list(self._torsion),
            "coefficients": self.coefficients.value,
            "group": str(self),
        }
