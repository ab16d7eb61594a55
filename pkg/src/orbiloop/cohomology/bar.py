"""Bar cochains of finite groups and group cohomology.

A degree-n cochain on Γ is stored as an ``(|Γ|,)*n`` integer array of numerators
over one common denominator. The differential is that of the nerve of [*/Γ]::

    (δc)(g1, ..., g_{n+1}) = c(g2, ..., g_{n+1})
                             + Σ_{i=1..n} (-1)^i c(..., g_i g_{i+1}, ...)
                             + (-1)^{n+1} c(g1, ..., gn)
"""
import itertools
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from sympy import Rational, ilcm

from .. import defaults
from ..exceptions import CostGuardError, PreconditionError
from ..groupoids.group import FiniteGroup
from ..utils.parallel import parallel_map
from .qmodz import Coefficients, QmodZ
from .smith import (
    FinAbPresentation,
    in_column_span,
    in_column_span_mod,
    in_rational_span,
    sparse_invariant_factors,
)

__all__ = [
    "BarCochain",
    "coboundary_tables",
    "coboundary_slice",
    "normalized_coboundary_matrix",
    "coboundary_matrix",
    "cohomology",
    "integral_cohomology_data",
    "is_coboundary",
    "cohomologous",
    "check_table_size",
]

_logger = logging.getLogger(__name__)


def coboundary_tables(group: FiniteGroup, table: np.ndarray, degree: int) -> np.ndarray:
    """δ of a raw numerator table of the given degree (no denominator handling)."""
    k = group.order
    n = degree
    shape = (k,) * (n + 1)
    if n == 0:
        return np.zeros(shape, dtype=np.int64)
    idx = np.indices(shape, dtype=np.int64)
    result = np.broadcast_to(table[None, ...], shape).astype(np.int64)
    for i in range(1, n + 1):
        merged = group.table[idx[i - 1], idx[i]]
        args = tuple(idx[: i - 1]) + (merged,) + tuple(idx[i + 1 :])
        result = result + (-1) ** i * table[args]
    result = result + (-1) ** (n + 1) * np.broadcast_to(table[..., None], shape)
    return result


def coboundary_slice(group: FiniteGroup, table: np.ndarray, degree: int, first: int) -> np.ndarray:
    """``(δc)(first, g2, ..., g_{n+1})`` as an ``(|Γ|,)*n`` array.

    Memory stays at one slice, so large groups can be checked slice by slice.
    """
    k = group.order
    n = degree
    shape = (k,) * n
    if n == 0:
        return np.zeros(shape, dtype=np.int64)
    result = table.astype(np.int64) - table[group.table[first]]
    if n > 1:
        idx = np.indices(shape, dtype=np.int64)
        for i in range(2, n + 1):
            merged = group.table[idx[i - 2], idx[i - 1]]
            args = (first,) + tuple(idx[: i - 2]) + (merged,) + tuple(idx[i:])
            result = result + (-1) ** i * table[args]
    result = result + (-1) ** (n + 1) * np.broadcast_to(table[first][..., None], shape)
    return result


class BarCochain:
    """A cochain on the bar complex of a finite group.

    Args:
        group (FiniteGroup): Γ.
        numerators (np.ndarray): ``(|Γ|,)*degree`` integer array (a 0-d array for degree 0).
        denominator (int, optional): Common denominator. Must be 1 for ℤ.
        coefficients (Coefficients, optional): ℤ, ℚ or ℚ/ℤ.
    """

    def __init__(
        self,
        group: FiniteGroup,
        numerators,
        denominator: int = 1,
        coefficients: Coefficients = Coefficients.Z,
    ):
        numerators = np.array(numerators, dtype=np.int64)
        if any(s != group.order for s in numerators.shape):
            raise PreconditionError("cochain-shape", f"expected axes of length {group.order}", numerators.shape)
        if denominator < 1:
            raise PreconditionError("denominator", "denominator must be positive", denominator)
        if coefficients is Coefficients.Z and denominator != 1:
            raise PreconditionError("integral", "ℤ-valued cochains have denominator 1", denominator)
        if coefficients is Coefficients.QMODZ:
            numerators = numerators % denominator
        divisor = int(np.gcd.reduce(numerators.ravel(), initial=denominator))
        self.group = group
        self.coefficients = coefficients
        self.degree = numerators.ndim
        self.denominator = denominator // divisor
        self.numerators = numerators // divisor
        self.numerators.setflags(write=False)

    # ----------------------------------------------------------- constructors

    @classmethod
    def zero(cls, group: FiniteGroup, degree: int, coefficients: Coefficients = Coefficients.Z) -> "BarCochain":
        return cls(group, np.zeros((group.order,) * degree, dtype=np.int64), 1, coefficients)

    @classmethod
    def from_function(
        cls,
        group: FiniteGroup,
        degree: int,
        fn: Callable[..., object],
        coefficients: Coefficients = Coefficients.Z,
    ) -> "BarCochain":
        """Tabulate ``fn(*element_indices)``; values are parsed with ``coefficients``."""
        shape = (group.order,) * degree
        values = {}
        for args in itertools.product(range(group.order), repeat=degree):
            value = coefficients.coerce(fn(*args))
            values[args] = value.lift() if isinstance(value, QmodZ) else Rational(value)
        return cls.from_rationals(group, degree, values, coefficients, shape)

    @classmethod
    def from_rationals(cls, group, degree, values, coefficients, shape=None) -> "BarCochain":
        shape = shape or (group.order,) * degree
        denominator = 1
        for v in values.values():
            denominator = ilcm(denominator, int(v.q))
        table = np.zeros(shape, dtype=np.int64)
        for args, v in values.items():
            table[args] = int(v * denominator)
        return cls(group, table, int(denominator), coefficients)

    @classmethod
    def from_character(cls, group: FiniteGroup, values: Sequence[QmodZ]) -> "BarCochain":
        """A ℚ/ℤ-valued 1-cochain from its values on the elements (in index order)."""
        return cls.from_function(group, 1, lambda g: values[g], Coefficients.QMODZ)

    # ----------------------------------------------------------------- values

    def at(self, *indices: int):
        """Value at element indices."""
        num = int(self.numerators[tuple(indices)])
        if self.coefficients is Coefficients.QMODZ:
            return QmodZ(num, self.denominator)
        return Rational(num, self.denominator)

    def value(self, *labels: str):
        return self.at(*(self.group.index(x) for x in labels))

    # ------------------------------------------------------------- arithmetic

    def _aligned(self, other: "BarCochain") -> Tuple[np.ndarray, np.ndarray, int]:
        if other.group is not self.group and other.group != self.group:
            raise PreconditionError("same-group", "cochains live on different groups")
        if other.degree != self.degree or other.coefficients is not self.coefficients:
            raise PreconditionError("same-degree", "cochains differ in degree or coefficients")
        d = int(ilcm(self.denominator, other.denominator))
        return self.numerators * (d // self.denominator), other.numerators * (d // other.denominator), d

    def __add__(self, other: "BarCochain") -> "BarCochain":
        a, b, d = self._aligned(other)
        return BarCochain(self.group, a + b, d, self.coefficients)

    def __sub__(self, other: "BarCochain") -> "BarCochain":
        a, b, d = self._aligned(other)
        return BarCochain(self.group, a - b, d, self.coefficients)

    def __neg__(self) -> "BarCochain":
        return BarCochain(self.group, -self.numerators, self.denominator, self.coefficients)

    def __mul__(self, k: int) -> "BarCochain":
        return BarCochain(self.group, self.numerators * int(k), self.denominator, self.coefficients)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BarCochain):
            return NotImplemented
        try:
            a, b, _ = self._aligned(other)
        except PreconditionError:
            return False
        return bool(np.array_equal(a, b))

    def __hash__(self):
        return hash((self.degree, self.denominator, self.numerators.tobytes()))

    def is_zero(self) -> bool:
        return not np.any(self.numerators)

    # -------------------------------------------------------------- structure

    def coboundary(self) -> "BarCochain":
        return BarCochain(
            self.group,
            coboundary_tables(self.group, self.numerators, self.degree),
            self.denominator,
            self.coefficients,
        )

    def is_cocycle(self) -> bool:
        for first in range(self.group.order):
            values = coboundary_slice(self.group, self.numerators, self.degree, first)
            if self.coefficients is Coefficients.QMODZ:
                values = values % self.denominator
            if np.any(values):
                return False
        return True

    def is_normalized(self) -> bool:
        e = self.group.identity
        for axis in range(self.degree):
            if np.any(np.take(self.numerators, e, axis=axis)):
                return False
        return True

    def lift(self) -> "BarCochain":
        """The same numerators read as a ℚ-valued cochain (``p/q`` with ``0 <= p < q``)."""
        return BarCochain(self.group, self.numerators, self.denominator, Coefficients.Q)

    def to_integral(self) -> "BarCochain":
        if self.denominator != 1:
            raise PreconditionError("integral", "cochain has non-integral values")
        return BarCochain(self.group, self.numerators, 1, Coefficients.Z)

    def reduce(self) -> "BarCochain":
        """Image in ℚ/ℤ."""
        return BarCochain(self.group, self.numerators, self.denominator, Coefficients.QMODZ)

    def pullback(self, group: FiniteGroup, homomorphism: Sequence[int]) -> "BarCochain":
        """Pullback along ``group -> self.group`` given as an array of image indices."""
        h = np.asarray(homomorphism, dtype=np.int64)
        table = self.numerators[np.ix_(*([h] * self.degree))] if self.degree else self.numerators
        return BarCochain(group, table, self.denominator, self.coefficients)

    def __repr__(self):
        return (
            f"BarCochain({self.group.name}, degree={self.degree}, "
            f"coefficients={self.coefficients.value}, denominator={self.denominator})"
        )


# ------------------------------------------------------------- matrices


def check_table_size(group: FiniteGroup, nmax: int, allow_large: bool = False):
    """Guard against bar complexes that do not fit in memory.

    Raises:
        CostGuardError: If ``nmax`` exceeds the default or the table would be too big.
    """
    if nmax > defaults.NMAX_DEFAULT and not allow_large:
        raise CostGuardError("nmax", f"nmax={nmax} exceeds {defaults.NMAX_DEFAULT}; pass allow_large", nmax)
    cells = max(group.order - 1, 1) ** (nmax + 1)
    if cells > defaults.MAX_TABLE_SIZE:
        if not allow_large:
            raise CostGuardError(
                "table-size", f"(|Γ|-1)^{nmax + 1} = {cells} exceeds {defaults.MAX_TABLE_SIZE}", cells
            )
        _logger.warning("cost guard overridden: %d normalized cochain cells", cells)


def _tuple_codes(tuples: np.ndarray, base: int) -> np.ndarray:
    codes = np.zeros(len(tuples), dtype=np.int64)
    for col in range(tuples.shape[1]):
        codes = codes * base + tuples[:, col]
    return codes


def _coboundary_coo(group: FiniteGroup, degree: int, normalized: bool) -> sparse.csr_matrix:
    e = group.identity
    basis = np.array([g for g in range(group.order) if not (normalized and g == e)], dtype=np.int64)
    b = len(basis)
    position = np.full(group.order, -1, dtype=np.int64)
    position[basis] = np.arange(b)
    n = degree
    n_rows, n_cols = b ** (n + 1), b ** n
    if n_rows == 0 or n_cols == 0 or n == 0:
        # δ vanishes on 0-cochains
        return sparse.csr_matrix((n_rows, n_cols), dtype=np.int64)

    rows = np.array(list(itertools.product(range(b), repeat=n + 1)), dtype=np.int64).reshape(-1, n + 1)
    elements = basis[rows]
    row_ids = np.arange(n_rows)
    entries_r, entries_c, entries_v = [], [], []

    def add(mask, faces, sign):
        entries_r.append(row_ids[mask])
        entries_c.append(_tuple_codes(faces[mask], b))
        entries_v.append(np.full(int(mask.sum()), sign, dtype=np.int64))

    everything = np.ones(n_rows, dtype=bool)
    add(everything, rows[:, 1:], 1)
    for i in range(1, n + 1):
        merged = group.table[elements[:, i - 1], elements[:, i]]
        # normalized cochains vanish on tuples containing the identity
        mask = position[merged] >= 0
        faces = np.concatenate([rows[:, : i - 1], position[merged][:, None], rows[:, i + 1 :]], axis=1)
        add(mask, faces, (-1) ** i)
    add(everything, rows[:, :-1], (-1) ** (n + 1))

    matrix = sparse.coo_matrix(
        (np.concatenate(entries_v), (np.concatenate(entries_r), np.concatenate(entries_c))),
        shape=(n_rows, n_cols),
    )
    return matrix.tocsr()


def normalized_coboundary_matrix(group: FiniteGroup, degree: int) -> sparse.csr_matrix:
    """Matrix of δ: normalized C^n -> normalized C^{n+1} (rows index (n+1)-tuples).

    Basis tuples use the non-identity elements in index order, encoded in
    lexicographic order.
    """
    return _coboundary_coo(group, degree, normalized=True)


def coboundary_matrix(group: FiniteGroup, degree: int) -> sparse.csr_matrix:
    """Matrix of δ on the full bar complex: C^n -> C^{n+1}.

    Columns follow ``numerators.ravel()`` of a degree-n cochain, rows that of its δ.
    """
    return _coboundary_coo(group, degree, normalized=False)


def integral_cohomology_data(
    group: FiniteGroup, nmax: int, allow_large: bool = False, num_workers: Optional[int] = None
) -> Tuple[List[int], List[List[int]]]:
    """Dimensions of normalized C^n and invariant factors of δ_n for ``0 <= n <= nmax``."""
    check_table_size(group, nmax, allow_large)
    b = group.order - 1
    dims = [b ** n for n in range(nmax + 2)]

    def factors(n):
        matrix = normalized_coboundary_matrix(group, n)
        _logger.debug("δ_%d on %s: %dx%d", n, group.name, *matrix.shape)
        return sparse_invariant_factors(matrix)

    return dims, parallel_map(factors, range(nmax + 1), num_workers=num_workers)


def cohomology(
    group: FiniteGroup,
    coefficients: Coefficients = Coefficients.Z,
    nmax: int = defaults.NMAX_DEFAULT,
    allow_large: bool = False,
    num_workers: Optional[int] = None,
) -> List[FinAbPresentation]:
    """``H^n(Γ; coefficients)`` for ``0 <= n <= nmax``.

    Over ℤ: ``H^n = ℤ^{c_n - r_n - r_{n-1}} ⊕ Tors coker δ_{n-1}``. Over ℚ only the
    free part survives. Over ℚ/ℤ: ``H^0 = ℚ/ℤ`` and for ``n >= 1`` the universal
    coefficient sequence splits as ``H^n(ℤ) ⊗ ℚ/ℤ ⊕ Tors H^{n+1}(ℤ)``.

    Raises:
        CostGuardError: If the bar complex exceeds the table guard.
    """
    dims, factors = integral_cohomology_data(group, nmax, allow_large, num_workers)
    ranks = [len(f) for f in factors]

    def free_rank(n):
        return dims[n] - ranks[n] - (ranks[n - 1] if n > 0 else 0)

    def torsion(n):
        return [d for d in factors[n - 1] if d > 1] if n > 0 else []

    result = []
    for n in range(nmax + 1):
        if coefficients is Coefficients.Z:
            result.append(FinAbPresentation(free_rank(n), torsion(n), coefficients))
        elif coefficients is Coefficients.Q:
            result.append(FinAbPresentation(free_rank(n), (), coefficients))
        else:
            next_torsion = [d for d in factors[n] if d > 1]
            result.append(FinAbPresentation(free_rank(n), next_torsion, coefficients))
    return result


def is_coboundary(cochain: BarCochain) -> bool:
    """SNF membership test for ``cochain ∈ im δ`` in the full bar complex.

    Over ℤ and ℚ this is integer and rational span membership. Over ℚ/ℤ a cochain
    with denominator ``m`` is a coboundary iff its numerators lie in the saturated
    image of δ plus ``mℤ^N``.
    """
    n = cochain.degree
    if n == 0:
        return cochain.is_zero()
    if cochain.group.order ** n > defaults.MAX_TABLE_SIZE:
        raise CostGuardError("table-size", "cochain too large for a membership test", cochain.group.order ** n)
    matrix = coboundary_matrix(cochain.group, n - 1)
    vector = cochain.numerators.ravel()
    if cochain.coefficients is Coefficients.Z:
        return in_column_span(matrix, vector)
    if cochain.coefficients is Coefficients.Q:
        return in_rational_span(matrix, vector)
    return in_column_span_mod(matrix, vector, cochain.denominator)


def cohomologous(a: BarCochain, b: BarCochain) -> bool:
    return is_coboundary(a - b)
