"""Exact arithmetic in the cyclotomic field ℚ(ζ_N) = ℚ[t]/Φ_N(t).

Elements are coefficient vectors in the basis ``1, t, ..., t^(φ(N)-1)``. A value
``p/q`` of ℚ/ℤ is embedded as ``ζ^(pN/q)``, which requires ``q | N``. Matrices
over the field are sparse and are ranked through their regular representation
over ℚ.
"""
from functools import lru_cache
from typing import Dict, Iterable, Optional, Tuple

from sympy import Poly, Rational, cyclotomic_poly, symbols, totient
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from ..cohomology.qmodz import QmodZ
from ..complexes.linalg import qq_rank
from ..exceptions import InternalAssertionError, PreconditionError

__all__ = ["CyclotomicField", "CyclotomicNumber", "CycloMatrix"]

_t = symbols("t")


class CyclotomicField:
    """ℚ(ζ_N).

    Args:
        order (int): N >= 1. ``N = 1`` gives ℚ itself.
    """

    def __init__(self, order: int):
        if order < 1:
            raise PreconditionError("cyclotomic-order", "N must be positive", order)
        self.order = order
        self.degree = int(totient(order))
        # monic, so t^d = -Σ c_i t^i
        coeffs = Poly(cyclotomic_poly(order, _t), _t).all_coeffs()[::-1]
        self._reduction = tuple(-Rational(c) for c in coeffs[: self.degree])
        self._powers = tuple(self._power(k) for k in range(order))

    def _power(self, k: int) -> Tuple[Rational, ...]:
        vec = [Rational(0)] * self.degree
        vec[0] = Rational(1)
        for _ in range(k):
            top = vec[-1]
            vec = [Rational(0)] + vec[:-1]
            if top:
                vec = [a + top * r for a, r in zip(vec, self._reduction)]
        return tuple(vec)

    def __eq__(self, other):
        return isinstance(other, CyclotomicField) and other.order == self.order

    def __hash__(self):
        return hash(("CyclotomicField", self.order))

    def __repr__(self):
        return f"CyclotomicField({self.order})"

    # -------------------------------------------------------------- elements

    def element(self, coeffs: Iterable) -> "CyclotomicNumber":
        return CyclotomicNumber(self, coeffs)

    def zero(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self, ())

    def one(self) -> "CyclotomicNumber":
        return self.rational(1)

    def rational(self, value) -> "CyclotomicNumber":
        return CyclotomicNumber(self, (Rational(value),))

    def zeta(self, k: int = 1) -> "CyclotomicNumber":
        """``ζ^k``."""
        return CyclotomicNumber(self, self._powers[k % self.order])

    def from_qmodz(self, value) -> "CyclotomicNumber":
        """``exp(2πi·value)`` for ``value = p/q`` with ``q | N``.

        Raises:
            InternalAssertionError: If the denominator does not divide N.
        """
        value = QmodZ.parse(value)
        if self.order % value.denominator:
            raise InternalAssertionError(f"{value} is not an {self.order}-th root of unity")
        return self.zeta(value.numerator * (self.order // value.denominator))

    def _reduce(self, coeffs) -> Tuple[Rational, ...]:
        coeffs = list(coeffs)
        d = self.degree
        for i in range(len(coeffs) - 1, d - 1, -1):
            top = coeffs[i]
            if top:
                # t^i = t^(i-d) * Σ r_j t^j
                for j, r in enumerate(self._reduction):
                    coeffs[i - d + j] += top * r
        coeffs = coeffs[:d] + [Rational(0)] * (d - len(coeffs))
        return tuple(Rational(c) for c in coeffs)

    @lru_cache(maxsize=None)
    def regular_matrix(self, element: "CyclotomicNumber") -> Tuple[Tuple[Rational, ...], ...]:
        """Matrix of multiplication by ``element`` in the power basis, as rows."""
        columns = [(element * CyclotomicNumber(self, self._powers[i])).coeffs for i in range(self.degree)]
        return tuple(tuple(columns[j][i] for j in range(self.degree)) for i in range(self.degree))


class CyclotomicNumber:
    """An element of ℚ(ζ_N)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Iterable):
        self.field = field
        self.coeffs = field._reduce(Rational(c) for c in coeffs)

    def _lift(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.field != self.field:
                raise PreconditionError("same-field", "elements of different cyclotomic fields")
            return other
        return self.field.rational(other)

    def __add__(self, other):
        other = self._lift(other)
        return CyclotomicNumber(self.field, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        product = [Rational(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    product[i + j] += a * b
        return CyclotomicNumber(self.field, product)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return CyclotomicNumber(self.field, [a / Rational(k) for a in self.coeffs])

    def conjugate(self) -> "CyclotomicNumber":
        """Image under ``ζ -> ζ^-1``."""
        total = self.field.zero()
        for i, a in enumerate(self.coeffs):
            if a:
                total = total + self.field.zeta(-i) * a
        return total

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational(self) -> Rational:
        if not self.is_rational():
            raise InternalAssertionError(f"{self} is not rational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = self.field.rational(other)
        return isinstance(other, CyclotomicNumber) and other.field == self.field and other.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.field.order, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) or "0"


class CycloMatrix:
    """A sparse matrix over ℚ(ζ_N).

    Args:
        field (CyclotomicField): The coefficient field.
        shape (Tuple[int, int]): Rows and columns.
        entries (Dict[Tuple[int, int], CyclotomicNumber], optional): Nonzero entries.
    """

    def __init__(
        self, field: CyclotomicField, shape: Tuple[int, int], entries: Optional[Dict[Tuple[int, int], object]] = None
    ):
        self.field = field
        self.shape = tuple(shape)
        self.entries: Dict[Tuple[int, int], CyclotomicNumber] = {}
        for (i, j), v in (entries or {}).items():
            self[i, j] = v

    def __getitem__(self, key) -> CyclotomicNumber:
        return self.entries.get(key, self.field.zero())

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.shape[0] and 0 <= j < self.shape[1]):
            raise IndexError(f"entry {key} outside of shape {self.shape}")
        value = value if isinstance(value, CyclotomicNumber) else self.field.rational(value)
        if value.is_zero():
            self.entries.pop((i, j), None)
        else:
            self.entries[(i, j)] = value

    def add_block(self, block: "CycloMatrix", row: int, col: int, scale=1):
        """Add ``scale · block`` with its top left corner at ``(row, col)``."""
        for (i, j), v in block.entries.items():
            self[row + i, col + j] = self[row + i, col + j] + v * scale

    def __matmul__(self, other: "CycloMatrix") -> "CycloMatrix":
        if self.shape[1] != other.shape[0]:
            raise PreconditionError("shape", f"cannot multiply {self.shape} by {other.shape}")
        by_row: Dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out = CycloMatrix(self.field, (self.shape[0], other.shape[1]))
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[i, j] = out[i, j] + a * b
        return out

    def __add__(self, other: "CycloMatrix") -> "CycloMatrix":
        out = CycloMatrix(self.field, self.shape, self.entries)
        out.add_block(other, 0, 0)
        return out

    def __sub__(self, other: "CycloMatrix") -> "CycloMatrix":
        out = CycloMatrix(self.field, self.shape, self.entries)
        out.add_block(other, 0, 0, -1)
        return out

    def __eq__(self, other):
        return (
            isinstance(other, CycloMatrix) and self.shape == other.shape and (self - other).is_zero()
        )

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.entries

    def regular_representation(self) -> DomainMatrix:
        """The ``(d·rows) x (d·cols)`` rational matrix with ``d = φ(N)``."""
        d = self.field.degree
        rows: Dict[int, Dict[int, object]] = {}
        for (i, j), v in self.entries.items():
            block = self.field.regular_matrix(v)
            for a in range(d):
                for b in range(d):
                    if block[a][b]:
                        rows.setdefault(i * d + a, {})[j * d + b] = QQ.convert(block[a][b])
        return DomainMatrix(rows, (self.shape[0] * d, self.shape[1] * d), QQ)

    def rank(self) -> int:
        """Rank over ℚ(ζ_N)."""
        if 0 in self.shape or not self.entries:
            return 0
        rank = qq_rank(self.regular_representation())
        if rank % self.field.degree:
            raise InternalAssertionError("regular representation rank is not a multiple of the field degree")
        return rank // self.field.degree

    def __repr__(self):
        return f"CycloMatrix(Q(zeta_{self.field.order}), shape={self.shape}, nnz={len(self.entries)})"
