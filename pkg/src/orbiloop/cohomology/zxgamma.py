"""Cochains on ℤ×Γ that are affine in each integer argument.

A degree-k cochain is a finite sum::

    c((n1, γ1), ..., (nk, γk)) = Σ_S (Π_{i∈S} n_i) · a_S(γ1, ..., γk)

over subsets ``S`` of the positions ``1..k``. Each ``a_S`` is a numpy table over
``Γ^k`` and all components share one denominator. The Künneth image of
``H^1(ℤ) ⊗ H^*(Γ)`` and the classes built from it have representatives of this
shape, and the shape is closed under δ.
"""
from typing import Dict, Iterable, Optional, Tuple

import numpy as np
from sympy import Rational, ilcm

from ..exceptions import PreconditionError
from ..groupoids.group import FiniteGroup
from .bar import BarCochain
from .qmodz import Coefficients, QmodZ

__all__ = ["ZxGamma", "ZxGammaCochain", "integrate", "cross_with_identity"]

Positions = Tuple[int, ...]


class ZxGamma:
    """The group ℤ×Γ for a finite group Γ; elements are pairs ``(n, γ_index)``."""

    def __init__(self, finite: FiniteGroup):
        self.finite = finite

    @property
    def name(self) -> str:
        return f"Zx{self.finite.name}"

    def mul(self, x: Tuple[int, int], y: Tuple[int, int]) -> Tuple[int, int]:
        return x[0] + y[0], self.finite.mul(x[1], y[1])

    def identity(self) -> Tuple[int, int]:
        return 0, self.finite.identity

    def __eq__(self, other):
        return isinstance(other, ZxGamma) and other.finite == self.finite

    def __hash__(self):
        return hash(("ZxGamma", self.finite))

    def __repr__(self):
        return f"ZxGamma({self.finite.name})"


def _shift(positions: Iterable[int], at: int) -> list:
    return [j if j < at else j + 1 for j in positions]


class ZxGammaCochain:
    """A cochain on ℤ×Γ of the affine shape described in the module docstring.

    Args:
        space (ZxGamma): ℤ×Γ.
        degree (int): Number of arguments.
        components (Dict[tuple, array-like]): Sorted 1-based position tuples ``S``
            to numerator tables of shape ``(|Γ|,)*degree``.
        denominator (int, optional): Common denominator.
        coefficients (Coefficients, optional): ℤ, ℚ or ℚ/ℤ.
    """

    def __init__(
        self,
        space: ZxGamma,
        degree: int,
        components: Dict[Positions, np.ndarray],
        denominator: int = 1,
        coefficients: Coefficients = Coefficients.Z,
    ):
        k = space.finite.order
        shape = (k,) * degree
        cleaned: Dict[Positions, np.ndarray] = {}
        for positions, table in components.items():
            positions = tuple(positions)
            if list(positions) != sorted(set(positions)) or any(p < 1 or p > degree for p in positions):
                raise PreconditionError("affine-shape", "positions must be distinct and in 1..degree", positions)
            table = np.array(np.broadcast_to(table, shape), dtype=np.int64)
            if coefficients is Coefficients.QMODZ:
                table = table % denominator
            if positions in cleaned:
                table = table + cleaned[positions]
            cleaned[positions] = table
        if coefficients is Coefficients.Z and denominator != 1:
            raise PreconditionError("integral", "ℤ-valued cochains have denominator 1", denominator)

        divisor = denominator
        for table in cleaned.values():
            divisor = int(np.gcd.reduce(table.ravel(), initial=divisor))
        self.space = space
        self.degree = degree
        self.coefficients = coefficients
        self.denominator = denominator // divisor
        self.components = {s: t // divisor for s, t in sorted(cleaned.items()) if np.any(t)}
        for table in self.components.values():
            table.setflags(write=False)

    @classmethod
    def from_bar(cls, space: ZxGamma, cochain: BarCochain) -> "ZxGammaCochain":
        """Pullback along the projection ``ℤ×Γ -> Γ``."""
        return cls(space, cochain.degree, {(): cochain.numerators}, cochain.denominator, cochain.coefficients)

    def value(self, *args: Tuple[int, int]):
        """Evaluate at pairs ``(n, γ_index)``."""
        if len(args) != self.degree:
            raise PreconditionError("arity", f"expected {self.degree} arguments", len(args))
        gammas = tuple(g for _, g in args)
        total = 0
        for positions, table in self.components.items():
            weight = 1
            for p in positions:
                weight *= int(args[p - 1][0])
            total += weight * int(table[gammas])
        if self.coefficients is Coefficients.QMODZ:
            return QmodZ(total, self.denominator)
        return Rational(total, self.denominator)

    def is_zero(self) -> bool:
        return not self.components

    def _rebuild(self, components, denominator=None, coefficients=None) -> "ZxGammaCochain":
        return ZxGammaCochain(
            self.space,
            self.degree,
            components,
            self.denominator if denominator is None else denominator,
            coefficients or self.coefficients,
        )

    def lift(self) -> "ZxGammaCochain":
        return self._rebuild(self.components, coefficients=Coefficients.Q)

    def reduce(self) -> "ZxGammaCochain":
        return self._rebuild(self.components, coefficients=Coefficients.QMODZ)

    def to_integral(self) -> "ZxGammaCochain":
        if self.denominator != 1:
            raise PreconditionError("integral", "cochain has non-integral values")
        return self._rebuild(self.components, coefficients=Coefficients.Z)

    def _aligned(self, other: "ZxGammaCochain"):
        if other.space != self.space or other.degree != self.degree or other.coefficients is not self.coefficients:
            raise PreconditionError("same-space", "cochains differ in group, degree or coefficients")
        d = int(ilcm(self.denominator, other.denominator))
        return d // self.denominator, d // other.denominator, d

    def __add__(self, other: "ZxGammaCochain") -> "ZxGammaCochain":
        a, b, d = self._aligned(other)
        merged = {s: t * a for s, t in self.components.items()}
        for s, t in other.components.items():
            merged[s] = merged.get(s, 0) + t * b
        return self._rebuild(merged, denominator=d)

    def __neg__(self) -> "ZxGammaCochain":
        return self._rebuild({s: -t for s, t in self.components.items()})

    def __sub__(self, other: "ZxGammaCochain") -> "ZxGammaCochain":
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, ZxGammaCochain):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except PreconditionError:
            return False

    __hash__ = None

    def coboundary(self) -> "ZxGammaCochain":
        """δ with the bar-complex sign convention, computed componentwise.

        The face that multiplies slots ``i`` and ``i+1`` turns a factor ``n_i``
        into ``n_i + n_{i+1}``, so the component splits in two.
        """
        finite = self.space.finite
        k, deg = finite.order, self.degree
        shape = (k,) * (deg + 1)
        idx = np.indices(shape, dtype=np.int64) if deg else None
        out: Dict[Positions, np.ndarray] = {}

        def add(positions, table):
            key = tuple(sorted(positions))
            out[key] = out.get(key, 0) + table

        for positions, table in self.components.items():
            add([p + 1 for p in positions], np.broadcast_to(table[None, ...], shape))
            for i in range(1, deg + 1):
                merged = finite.table[idx[i - 1], idx[i]]
                args = tuple(idx[: i - 1]) + (merged,) + tuple(idx[i + 1 :])
                term = (-1) ** i * table[args]
                rest = _shift([p for p in positions if p != i], i)
                if i in positions:
                    add(rest + [i], term)
                    add(rest + [i + 1], term)
                else:
                    add(rest, term)
            add(list(positions), (-1) ** (deg + 1) * np.broadcast_to(table[..., None], shape))

        return ZxGammaCochain(self.space, deg + 1, out, self.denominator, self.coefficients)

    def is_cocycle(self) -> bool:
        return self.coboundary().is_zero()

    def __repr__(self):
        return (
            f"ZxGammaCochain({self.space.name}, degree={self.degree}, "
            f"components={list(self.components)}, denominator={self.denominator})"
        )


def integrate(cochain: ZxGammaCochain) -> BarCochain:
    """Fiber integration ``π_!`` along ``ℤ×Γ -> Γ``: the slant with the generator of H^1(ℤ).

    ``(π_!c)(γ1..γ_{k-1}) = Σ_{i=0}^{k-1} (-1)^i c(γ1..γi, (1, e), γ_{i+1}..γ_{k-1})``
    with the Γ entries embedded as ``(0, γ)``. Only the components ``∅`` and
    ``{i+1}`` contribute to the i-th term. It satisfies ``π_!∘δ = -δ∘π_!``.

    Raises:
        PreconditionError: On a degree-0 cochain.
    """
    k = cochain.degree
    if k < 1:
        raise PreconditionError("degree", "integration needs degree >= 1", k)
    finite = cochain.space.finite
    order = finite.order
    e = finite.identity
    result = np.zeros((order,) * (k - 1), dtype=np.int64)
    for i in range(k):
        total = np.zeros((order,) * k, dtype=np.int64)
        for positions in ((), (i + 1,)):
            if positions in cochain.components:
                total = total + cochain.components[positions]
        result = result + (-1) ** i * np.take(total, e, axis=i)
    return BarCochain(finite, result, cochain.denominator, cochain.coefficients)


def cross_with_identity(cochain: BarCochain, space: Optional[ZxGamma] = None) -> ZxGammaCochain:
    """The cross product ``id_ℤ × b``: ``((n1, γ1), ..., (n_{k+1}, γ_{k+1})) -> n1·b(γ2, ..., γ_{k+1})``."""
    space = space or ZxGamma(cochain.group)
    order = cochain.group.order
    shape = (order,) * (cochain.degree + 1)
    table = np.broadcast_to(cochain.numerators[None, ...], shape)
    return ZxGammaCochain(space, cochain.degree + 1, {(1,): table}, cochain.denominator, cochain.coefficients)

