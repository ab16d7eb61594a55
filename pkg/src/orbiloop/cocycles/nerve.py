"""Cochains on the nerve of a finite groupoid.

A degree-n cochain assigns a coefficient to every composable tuple
``(g1, ..., gn)`` (``g1∘...∘gn`` defined) and, in degree 0, to every object.
The differential is

    (δc)(g1..g_{n+1}) = c(g2..g_{n+1}) + Σ_{i=1..n} (-1)^i c(..g_i∘g_{i+1}..) + (-1)^{n+1} c(g1..gn)

and on 0-cochains ``(δa)(f) = a(src f) - a(dst f)``.

Cochains on a one-object groupoid [*/Γ] can be backed by a :class:`BarCochain`
table instead of a dict, which keeps large groups cheap to evaluate.
"""
from typing import Callable, Dict, Iterator, Mapping, Optional, Tuple

from sympy import Rational

from ..cohomology.bar import BarCochain
from ..cohomology.qmodz import Coefficients, QmodZ
from ..exceptions import PreconditionError
from ..groupoids.groupoid import FiniteGroupoid, GroupGroupoid
from ..groupoids.maps import GroupoidMap
from ..loops.loop_groupoid import LoopGroupoid

__all__ = ["NerveCochain", "restrict_to_loops"]

Simplex = Tuple[str, ...]


class NerveCochain:
    """A cochain on the nerve of ``groupoid``.

    Args:
        groupoid (FiniteGroupoid): The groupoid.
        degree (int): Cochain degree.
        values (Mapping[tuple, value]): Composable tuples (1-tuples of objects in
            degree 0) to values. Omitted tuples are zero.
        coefficients (Coefficients, optional): ℤ, ℚ or ℚ/ℤ.

    Raises:
        PreconditionError: If a key is not a composable tuple of the right length.
    """

    def __init__(
        self,
        groupoid: FiniteGroupoid,
        degree: int,
        values: Optional[Mapping[Simplex, object]] = None,
        coefficients: Coefficients = Coefficients.Z,
    ):
        self.groupoid = groupoid
        self.degree = degree
        self.coefficients = coefficients
        self._bar: Optional[BarCochain] = None
        self._values: Dict[Simplex, object] = {}
        for args, value in (values or {}).items():
            args = tuple(args)
            if not self._is_simplex(args):
                raise PreconditionError("composable", "not a simplex of the nerve", args)
            value = coefficients.coerce(value)
            if value != 0:
                self._values[args] = value

    @classmethod
    def from_bar(cls, groupoid: GroupGroupoid, cochain: BarCochain) -> "NerveCochain":
        """A cochain on [*/Γ] read from a bar cochain on Γ."""
        if not isinstance(groupoid, GroupGroupoid) or groupoid.group != cochain.group:
            raise PreconditionError("group-groupoid", "bar cochains live on the one-object groupoid of their group")
        result = cls(groupoid, cochain.degree, coefficients=cochain.coefficients)
        result._bar = cochain
        return result

    @classmethod
    def from_function(
        cls,
        groupoid: FiniteGroupoid,
        degree: int,
        fn: Callable[..., object],
        coefficients: Coefficients = Coefficients.Z,
    ) -> "NerveCochain":
        """Tabulate ``fn(*simplex)`` over every simplex of the given degree."""
        return cls(
            groupoid,
            degree,
            {args: fn(*args) for args in groupoid.composable_tuples(degree)},
            coefficients,
        )

    @classmethod
    def zero(cls, groupoid: FiniteGroupoid, degree: int, coefficients: Coefficients = Coefficients.Z):
        return cls(groupoid, degree, {}, coefficients)

    def _is_simplex(self, args: Simplex) -> bool:
        g = self.groupoid
        if self.degree == 0:
            return len(args) == 1 and args[0] in g._obj_index
        if len(args) != self.degree or any(m not in g._src for m in args):
            return False
        return all(g.dst(args[i + 1]) == g.src(args[i]) for i in range(len(args) - 1))

    # ----------------------------------------------------------------- values

    @property
    def bar(self) -> Optional[BarCochain]:
        return self._bar

    def value(self, *args: str):
        """Value on a simplex; zero when omitted."""
        if self._bar is not None:
            return self._bar.at() if self.degree == 0 else self._bar.value(*args)
        return self._values.get(tuple(args), self.coefficients.zero())

    __call__ = value

    def items(self) -> Iterator[Tuple[Simplex, object]]:
        """Nonzero entries."""
        if self._bar is not None:
            for args in self.groupoid.composable_tuples(self.degree):
                value = self.value(*args)
                if value != 0:
                    yield args, value
        else:
            yield from self._values.items()

    def simplices(self) -> Iterator[Simplex]:
        return self.groupoid.composable_tuples(self.degree)

    def is_zero(self) -> bool:
        if self._bar is not None:
            return self._bar.is_zero()
        return not self._values

    def is_normalized(self) -> bool:
        if self._bar is not None:
            return self._bar.is_normalized()
        if self.degree == 0:
            return True
        return not any(any(self.groupoid.is_identity(m) for m in args) for args in self._values)

    # -------------------------------------------------------------- structure

    def _same_shape(self, other: "NerveCochain"):
        if other.groupoid is not self.groupoid or other.degree != self.degree:
            raise PreconditionError("same-groupoid", "cochains differ in groupoid or degree")
        if other.coefficients is not self.coefficients:
            raise PreconditionError("same-coefficients", "cochains differ in coefficients")

    def _combine(self, other: "NerveCochain", sign: int) -> "NerveCochain":
        self._same_shape(other)
        if self._bar is not None and other._bar is not None:
            bar = self._bar + other._bar if sign > 0 else self._bar - other._bar
            return NerveCochain.from_bar(self.groupoid, bar)
        values = dict(self.items())
        zero = self.coefficients.zero()
        for args, value in other.items():
            values[args] = values.get(args, zero) + sign * value
        return NerveCochain(self.groupoid, self.degree, values, self.coefficients)

    def __add__(self, other: "NerveCochain") -> "NerveCochain":
        return self._combine(other, 1)

    def __sub__(self, other: "NerveCochain") -> "NerveCochain":
        return self._combine(other, -1)

    def __neg__(self) -> "NerveCochain":
        if self._bar is not None:
            return NerveCochain.from_bar(self.groupoid, -self._bar)
        return NerveCochain(self.groupoid, self.degree, {a: -v for a, v in self._values.items()}, self.coefficients)

    def __eq__(self, other):
        if not isinstance(other, NerveCochain):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except PreconditionError:
            return False

    __hash__ = None

    def coboundary(self) -> "NerveCochain":
        if self._bar is not None:
            return NerveCochain.from_bar(self.groupoid, self._bar.coboundary())
        g = self.groupoid
        zero = self.coefficients.zero()
        values = {}
        if self.degree == 0:
            for f in g.morphisms:
                values[(f,)] = self.value(g.src(f)) - self.value(g.dst(f))
            return NerveCochain(g, 1, values, self.coefficients)

        n = self.degree
        for args in g.composable_tuples(n + 1):
            total = zero + self.value(*args[1:])
            for i in range(1, n + 1):
                merged = args[: i - 1] + (g.compose(args[i - 1], args[i]),) + args[i + 1 :]
                total = total + (-1) ** i * self.value(*merged)
            total = total + (-1) ** (n + 1) * self.value(*args[:-1])
            values[args] = total
        return NerveCochain(g, n + 1, values, self.coefficients)

    def is_cocycle(self) -> bool:
        if self._bar is not None:
            return self._bar.is_cocycle()
        return self.coboundary().is_zero()

    def lift(self) -> "NerveCochain":
        """ℚ/ℤ values read as rationals in ``[0, 1)``."""
        if self._bar is not None:
            return NerveCochain.from_bar(self.groupoid, self._bar.lift())
        lifted = {a: (v.lift() if isinstance(v, QmodZ) else Rational(v)) for a, v in self._values.items()}
        return NerveCochain(self.groupoid, self.degree, lifted, Coefficients.Q)

    def to_integral(self) -> "NerveCochain":
        if self._bar is not None:
            return NerveCochain.from_bar(self.groupoid, self._bar.to_integral())
        return NerveCochain(self.groupoid, self.degree, self._values, Coefficients.Z)

    def reduce(self) -> "NerveCochain":
        """Image in ℚ/ℤ."""
        if self._bar is not None:
            return NerveCochain.from_bar(self.groupoid, self._bar.reduce())
        values = {a: QmodZ(v) for a, v in self._values.items()}
        return NerveCochain(self.groupoid, self.degree, values, Coefficients.QMODZ)

    def pullback(self, functor: GroupoidMap) -> "NerveCochain":
        """``F^*c`` on the domain of ``functor``."""
        if functor.codomain is not self.groupoid:
            raise PreconditionError("pullback", "map does not land in the cochain's groupoid")
        domain = functor.domain
        if self.degree == 0:
            values = {(x,): self.value(functor.obj(x)) for x in domain.objects}
        else:
            values = {
                args: self.value(*(functor.mor(m) for m in args)) for args in domain.composable_tuples(self.degree)
            }
        return NerveCochain(domain, self.degree, values, self.coefficients)

    def to_dict(self) -> dict:
        """Entries in the ``cochain.v1`` layout (without schema and groupoid keys)."""
        return {
            "degree": self.degree,
            "coefficients": self.coefficients.value,
            "entries": [{"args": list(a), "value": self.coefficients.to_json(v)} for a, v in self.items()],
        }

    def __repr__(self):
        backing = "bar" if self._bar is not None else f"{len(self._values)} entries"
        return f"NerveCochain({self.groupoid.name}, degree={self.degree}, {self.coefficients.value}, {backing})"


def restrict_to_loops(cochain: NerveCochain, loops: LoopGroupoid) -> NerveCochain:
    """A 1-cochain on X read as a 0-cochain on LX: ``γ -> c(γ)``."""
    if cochain.degree != 1 or loops.base is not cochain.groupoid:
        raise PreconditionError("restrict-to-loops", "expected a 1-cochain on the base of the loop groupoid")
    values = {(g,): cochain.value(g) for g in loops.carrier.objects}
    return NerveCochain(loops.carrier, 0, values, cochain.coefficients)
