"""Rational cochains on ordered simplicial complexes.

A k-cochain assigns a rational number to every k-simplex ``(v0, ..., vk)`` listed in
vertex order. Products are Alexander–Whitney:

    (a ∪ b)(v0 .. v_{p+q}) = a(v0 .. vp) · b(vp .. v_{p+q})
"""
from typing import Callable, Dict, Iterator, Mapping, Optional, Sequence, Tuple

from sympy import Rational
from sympy.polys.domains import QQ

from ..cohomology.qmodz import format_rational, parse_rational
from ..complexes.linalg import nullspace
from ..complexes.simplicial import Simplex, SimplicialComplex
from ..exceptions import PreconditionError, SchemaError

__all__ = [
    "SimplicialCochain",
    "cup",
    "fundamental_cycle",
    "fundamental_cocycle",
    "top_cocycle",
]


class SimplicialCochain:
    """A rational k-cochain on K.

    Args:
        complex (SimplicialComplex): K.
        degree (int): k.
        values (Mapping[Sequence[str], value], optional): Values on simplices;
            missing simplices are zero. Vertices may be given in any order.

    Raises:
        SchemaError: If a key is not a k-simplex of K.
    """

    def __init__(self, complex: SimplicialComplex, degree: int, values: Optional[Mapping] = None):
        self.complex = complex
        self.degree = degree
        self._values: Dict[Simplex, Rational] = {}
        for simplex, value in (values or {}).items():
            simplex = tuple(simplex)
            if len(simplex) != degree + 1 or simplex not in complex:
                raise SchemaError(f"{list(simplex)} is not a {degree}-simplex of {complex.name}", "/entries")
            value = parse_rational(value)
            if value:
                self._values[complex.order(simplex)] = value

    @classmethod
    def zero(cls, complex: SimplicialComplex, degree: int) -> "SimplicialCochain":
        return cls(complex, degree)

    @classmethod
    def from_function(cls, complex: SimplicialComplex, degree: int, fn: Callable[[Simplex], object]):
        return cls(complex, degree, {s: fn(s) for s in complex.simplices(degree)})

    @classmethod
    def from_vector(cls, complex: SimplicialComplex, degree: int, vector: Sequence) -> "SimplicialCochain":
        """Values listed in the simplex order of ``complex.simplices(degree)``."""
        simplices = complex.simplices(degree)
        if len(vector) != len(simplices):
            raise PreconditionError("length", f"expected {len(simplices)} values, got {len(vector)}")
        return cls(complex, degree, dict(zip(simplices, vector)))

    # ---------------------------------------------------------------- access

    def value(self, simplex: Sequence[str]) -> Rational:
        return self._values.get(tuple(simplex), Rational(0))

    __call__ = value

    def items(self) -> Iterator[Tuple[Simplex, Rational]]:
        return iter(sorted(self._values.items(), key=lambda kv: self.complex.index(kv[0])))

    def vector(self):
        return [self.value(s) for s in self.complex.simplices(self.degree)]

    def is_zero(self) -> bool:
        return not self._values

    # ------------------------------------------------------------ arithmetic

    def _check(self, other: "SimplicialCochain"):
        if other.complex is not self.complex and other.complex != self.complex:
            raise PreconditionError("same-complex", "cochains live on different complexes")
        if other.degree != self.degree:
            raise PreconditionError("same-degree", f"degrees {self.degree} and {other.degree}")

    def __add__(self, other: "SimplicialCochain") -> "SimplicialCochain":
        self._check(other)
        values = dict(self._values)
        for s, v in other._values.items():
            values[s] = values.get(s, 0) + v
        return SimplicialCochain(self.complex, self.degree, values)

    def __neg__(self) -> "SimplicialCochain":
        return SimplicialCochain(self.complex, self.degree, {s: -v for s, v in self._values.items()})

    def __sub__(self, other: "SimplicialCochain") -> "SimplicialCochain":
        return self + (-other)

    def __mul__(self, scalar) -> "SimplicialCochain":
        scalar = parse_rational(scalar)
        return SimplicialCochain(self.complex, self.degree, {s: scalar * v for s, v in self._values.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SimplicialCochain):
            return NotImplemented
        return self.degree == other.degree and self.complex == other.complex and self._values == other._values

    __hash__ = None

    # ------------------------------------------------------------- operators

    def coboundary(self) -> "SimplicialCochain":
        """``(δc)(v0 .. v_{k+1}) = Σ_i (-1)^i c(v0 .. v̂_i .. v_{k+1})``."""
        values = {}
        for s in self.complex.simplices(self.degree + 1):
            total = sum(((-1) ** i * self.value(s[:i] + s[i + 1 :]) for i in range(len(s))), Rational(0))
            if total:
                values[s] = total
        return SimplicialCochain(self.complex, self.degree + 1, values)

    def is_cocycle(self) -> bool:
        return self.coboundary().is_zero()

    def cup(self, other: "SimplicialCochain") -> "SimplicialCochain":
        return cup(self, other)

    def evaluate(self, cycle: Mapping[Simplex, int]) -> Rational:
        """``⟨c, z⟩`` for a chain ``z`` given by its coefficients."""
        return sum((v * cycle.get(s, 0) for s, v in self._values.items()), Rational(0))

    def nonzero_witness(self) -> Optional[Tuple[Simplex, Rational]]:
        """The first simplex with a nonzero value, or ``None``."""
        return next(self.items(), None)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "entries": [{"simplex": list(s), "value": format_rational(v)} for s, v in self.items()],
        }

    def __repr__(self):
        return f"SimplicialCochain({self.complex.name!r}, degree={self.degree}, nnz={len(self._values)})"


def cup(a: SimplicialCochain, b: SimplicialCochain) -> SimplicialCochain:
    """Alexander–Whitney cup product ``a ∪ b``."""
    if a.complex is not b.complex and a.complex != b.complex:
        raise PreconditionError("same-complex", "cochains live on different complexes")
    p, q = a.degree, b.degree
    values = {}
    for s in a.complex.simplices(p + q):
        front = a.value(s[: p + 1])
        if front:
            back = b.value(s[p:])
            if back:
                values[s] = front * back
    return SimplicialCochain(a.complex, p + q, values)


def fundamental_cycle(complex: SimplicialComplex) -> Dict[Simplex, int]:
    """The top-dimensional cycle ``[K]``, normalized to ``+1`` on the first top simplex.

    Raises:
        PreconditionError: If the top cycles are not one dimensional (K is not an
            orientable pseudomanifold) or the coefficients are not ``±1``.
    """
    n = complex.dim
    if n < 0:
        raise PreconditionError("orientation", f"{complex.name} is empty")
    top = complex.simplices(n)
    if n == 0:
        cycles = [{i: QQ(1)} for i in range(len(top))]
    else:
        # the boundary C_n -> C_{n-1} is the transpose of δ_{n-1}
        cycles = nullspace(complex.coboundary_matrix(n - 1).T, len(top))
    if len(cycles) != 1:
        raise PreconditionError("orientation", f"{complex.name} has {len(cycles)} independent top cycles")
    cycle = cycles[0]
    scale = cycle.get(0)
    if not scale or len(cycle) != len(top):
        raise PreconditionError("orientation", f"the top cycle of {complex.name} does not cover every top simplex")
    coefficients = {top[i]: QQ.to_sympy(v / scale) for i, v in cycle.items()}
    if any(abs(v) != 1 for v in coefficients.values()):
        raise PreconditionError("orientation", f"the top cycle of {complex.name} is not a ±1 chain")
    return {s: int(v) for s, v in coefficients.items()}


def fundamental_cocycle(complex: SimplicialComplex) -> SimplicialCochain:
    """A top cocycle evaluating to 1 on ``[K]``: ``+1`` on the first top simplex."""
    fundamental_cycle(complex)
    return SimplicialCochain(complex, complex.dim, {complex.simplices(complex.dim)[0]: 1})


def top_cocycle(complex: SimplicialComplex, multiple=1) -> SimplicialCochain:
    """``multiple`` times the fundamental cocycle."""
    return fundamental_cocycle(complex) * multiple
