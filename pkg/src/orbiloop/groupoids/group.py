"""Finite groups given by a Cayley table.

Elements are opaque labels; internally they are indexed ``0..n-1`` and the
multiplication table is an ``(n, n)`` integer array with ``table[a, b] = a*b``.
"""
import itertools
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from bidict import bidict

from ..exceptions import PreconditionError

__all__ = [
    "FiniteGroup",
    "cyclic",
    "direct_product",
    "from_permutations",
    "symmetric",
    "dihedral",
    "quaternion",
    "klein",
    "trivial",
]


class FiniteGroup:
    """A finite group.

    Args:
        elements (Sequence[str]): Distinct element labels.
        table (array-like): ``(n, n)`` array of element indices, ``table[a, b]`` is
            the index of ``elements[a] * elements[b]``.
        name (str, optional): Display name.
        validate (bool, optional): If ``True``, check the group axioms and raise
            :class:`PreconditionError` on failure.
    """

    def __init__(
        self,
        elements: Sequence[str],
        table,
        name: Optional[str] = None,
        validate: bool = True,
    ):
        self._elements = tuple(str(e) for e in elements)
        if len(set(self._elements)) != len(self._elements):
            raise PreconditionError("distinct-elements", "duplicate element label")
        self._index = bidict((e, i) for i, e in enumerate(self._elements))
        self._table = np.asarray(table, dtype=np.int64)
        self.name = name or f"group of order {len(self._elements)}"

        n = len(self._elements)
        if n == 0 or self._table.shape != (n, n):
            raise PreconditionError("cayley-table", f"expected a {n}x{n} table")
        if self._table.min() < 0 or self._table.max() >= n:
            raise PreconditionError("cayley-table", "entry out of range")

        self._identity = self._find_identity()
        self._inverse = self._find_inverses()
        self._table.setflags(write=False)
        self._inverse.setflags(write=False)

        if validate:
            failure = self.associativity_failure()
            if failure is not None:
                raise PreconditionError(
                    "associativity", "group table is not associative", self.labels(failure)
                )

    def _find_identity(self) -> int:
        n = self.order
        arange = np.arange(n)
        for e in range(n):
            if np.array_equal(self._table[e], arange) and np.array_equal(self._table[:, e], arange):
                return e
        raise PreconditionError("identity", "no two-sided identity in the table")

    def _find_inverses(self) -> np.ndarray:
        hits = self._table == self._identity
        inverse = np.argmax(hits, axis=1)
        ok = hits[np.arange(self.order), inverse] & (
            self._table[inverse, np.arange(self.order)] == self._identity
        )
        if not ok.all():
            bad = int(np.flatnonzero(~ok)[0])
            raise PreconditionError("inverse", "element without two-sided inverse", self._elements[bad])
        return inverse.astype(np.int64)

    def associativity_failure(self) -> Optional[Tuple[int, int, int]]:
        """First triple ``(a, b, c)`` with ``(ab)c != a(bc)``, or ``None``."""
        t = self._table
        for a in range(self.order):
            left = t[t[a]]  # left[b, c] = (ab)c
            right = t[a][t]  # right[b, c] = a(bc)
            diff = np.argwhere(left != right)
            if len(diff):
                b, c = diff[0]
                return a, int(b), int(c)
        return None

    # ------------------------------------------------------------------ access

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def elements(self) -> Tuple[str, ...]:
        return self._elements

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def identity(self) -> int:
        return self._identity

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise PreconditionError("element", f"'{label}' is not an element of {self.name}") from None

    def label(self, index: int) -> str:
        return self._index.inverse[int(index)]

    def labels(self, indices: Iterable[int]) -> Tuple[str, ...]:
        return tuple(self.label(i) for i in indices)

    def mul(self, a: int, b: int) -> int:
        return int(self._table[a, b])

    def inv(self, a: int) -> int:
        return int(self._inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        result = self._identity
        for _ in range(k):
            result = self.mul(result, a)
        return result

    def conjugate(self, h: int, g: int) -> int:
        """``h g h^-1``."""
        return self.mul(self.mul(h, g), self.inv(h))

    # --------------------------------------------------------------- structure

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self._identity:
            x = self.mul(x, a)
            k += 1
        return k

    @property
    def exponent(self) -> int:
        return int(np.lcm.reduce([self.element_order(a) for a in range(self.order)]))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._table, self._table.T))

    def cyclic_subgroup(self, a: int) -> List[int]:
        """``[e, a, a^2, ...]`` up to the order of ``a``."""
        powers = [self._identity]
        x = a
        while x != self._identity:
            powers.append(x)
            x = self.mul(x, a)
        return powers

    def generated_subgroup(self, generators: Iterable[int]) -> List[int]:
        members = {self._identity}
        frontier = [self._identity]
        generators = list(generators)
        while frontier:
            x = frontier.pop()
            for g in generators:
                y = self.mul(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return sorted(members)

    def centralizer(self, a: int) -> List[int]:
        return [h for h in range(self.order) if self.mul(h, a) == self.mul(a, h)]

    def conjugacy_classes(self) -> List[List[int]]:
        """Conjugacy classes, each sorted, ordered by their smallest element."""
        seen = set()
        classes = []
        for g in range(self.order):
            if g in seen:
                continue
            cls = sorted({self.conjugate(h, g) for h in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def commutator_subgroup(self) -> List[int]:
        commutators = {
            self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
            for a in range(self.order)
            for b in range(self.order)
        }
        return self.generated_subgroup(commutators)

    def abelianization_order(self) -> int:
        return self.order // len(self.commutator_subgroup())

    def generators(self) -> List[int]:
        """A small generating set, chosen greedily by element order."""
        candidates = sorted(range(self.order), key=lambda a: (-self.element_order(a), a))
        gens: List[int] = []
        span = {self._identity}
        for a in candidates:
            if len(span) == self.order:
                break
            if a not in span:
                gens.append(a)
                span = set(self.generated_subgroup(gens))
        return gens

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._elements == other._elements and np.array_equal(self._table, other._table)

    def __hash__(self):
        return hash((self._elements, self._table.tobytes()))

    def __repr__(self):
        return f"FiniteGroup({self.name!r}, order={self.order})"


def _product_label(a: str, b: str) -> str:
    return f"({a},{b})"


def trivial() -> FiniteGroup:
    return cyclic(1)


def cyclic(n: int) -> FiniteGroup:
    """ℤ/n with elements ``"0" .. "n-1"``."""
    if n < 1:
        raise PreconditionError("cyclic-order", "n must be positive", n)
    idx = np.arange(n)
    return FiniteGroup(
        [str(i) for i in range(n)], (idx[:, None] + idx[None, :]) % n, name=f"Z{n}", validate=False
    )


def direct_product(g: FiniteGroup, h: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """``g × h`` with elements ``"(a,b)"`` ordered lexicographically (g-index major)."""
    m = h.order
    labels = [_product_label(a, b) for a, b in itertools.product(g.elements, h.elements)]
    gi = np.arange(g.order * m) // m
    hi = np.arange(g.order * m) % m
    table = g.table[gi[:, None], gi[None, :]] * m + h.table[hi[:, None], hi[None, :]]
    return FiniteGroup(labels, table, name=name or f"{g.name}x{h.name}", validate=False)


def _cycle_notation(perm: Tuple[int, ...]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        x = perm[start]
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = perm[x]
        cycles.append("(" + "".join(str(c) for c in cycle) + ")")
    return "".join(cycles) or "e"


def from_permutations(generators: Sequence[Sequence[int]], name: Optional[str] = None) -> FiniteGroup:
    """Permutation group generated by ``generators`` (one-line notation).

    The product ``p*q`` is the composite ``x -> p(q(x))``. Elements are labelled in
    cycle notation, ``"e"`` for the identity.
    """
    generators = [tuple(int(x) for x in g) for g in generators]
    degree = len(generators[0])
    identity = tuple(range(degree))

    def compose(p, q):
        return tuple(p[q[x]] for x in range(degree))

    elements = [identity]
    index: Dict[Tuple[int, ...], int] = {identity: 0}
    frontier = [identity]
    while frontier:
        new = []
        for x in frontier:
            for g in generators:
                y = compose(x, g)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    new.append(y)
        frontier = new

    table = [[index[compose(p, q)] for q in elements] for p in elements]
    return FiniteGroup([_cycle_notation(p) for p in elements], table, name=name, validate=False)


def symmetric(n: int = 3) -> FiniteGroup:
    swap = [1, 0] + list(range(2, n))
    rotate = list(range(1, n)) + [0]
    return from_permutations([swap, rotate], name=f"S{n}")


def dihedral(n: int = 4) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n."""
    rotation = [(i + 1) % n for i in range(n)]
    reflection = [(-i) % n for i in range(n)]
    return from_permutations([rotation, reflection], name=f"D{n}")


_QUATERNION_UNITS = ("1", "i", "j", "k")
# unit products as (sign, unit index)
_QUATERNION_RULES = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def quaternion() -> FiniteGroup:
    """The quaternion group Q8 with elements ``1, -1, i, -i, j, -j, k, -k``."""
    elements = [(s, u) for u in range(4) for s in (1, -1)]
    index = {e: i for i, e in enumerate(elements)}
    table = []
    for s1, u1 in elements:
        row = []
        for s2, u2 in elements:
            s, u = _QUATERNION_RULES[(u1, u2)]
            row.append(index[(s * s1 * s2, u)])
        table.append(row)
    labels = [("" if s > 0 else "-") + _QUATERNION_UNITS[u] for s, u in elements]
    return FiniteGroup(labels, table, name="Q8", validate=False)


def klein() -> FiniteGroup:
    """(ℤ/2)²."""
    return direct_product(cyclic(2), cyclic(2), name="V4")
