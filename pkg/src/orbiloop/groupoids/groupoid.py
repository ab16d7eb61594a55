"""Finite groupoids.

Conventions:
    A morphism ``f`` goes from ``src(f)`` to ``dst(f)``. The composite ``g∘f`` is
    defined exactly when ``dst(f) == src(g)`` and then goes from ``src(f)`` to
    ``dst(g)``. Composable n-tuples of the nerve are written ``(g1, ..., gn)``
    with ``g1∘...∘gn`` defined, matching the product order ``g1 g2 ... gn`` of a
    group. An action ``γ·x`` gives a morphism ``(x, γ)`` from ``x`` to ``γx``.
"""
import itertools
from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from bidict import bidict
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..exceptions import PreconditionError
from ..utils.ids import compound_id
from .group import FiniteGroup

__all__ = [
    "FiniteGroupoid",
    "GroupGroupoid",
    "ValidationReport",
    "point",
    "discrete",
    "codiscrete",
    "disjoint_union",
    "action_groupoid",
]


class ValidationReport:
    """Outcome of an exhaustive axiom check.

    Attributes:
        failures (list[tuple[str, tuple]]): ``(axiom, witness)`` pairs in the order found.
    """

    def __init__(self, failures: Optional[List[Tuple[str, tuple]]] = None):
        self.failures = list(failures or [])

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Optional[Tuple[str, tuple]]:
        return self.failures[0] if self.failures else None

    def add(self, axiom: str, *witness):
        self.failures.append((axiom, tuple(witness)))

    def __bool__(self):
        return self.valid

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "failures": [{"axiom": a, "witness": list(w)} for a, w in self.failures],
        }

    def __repr__(self):
        return f"ValidationReport(valid={self.valid}, failures={self.failures[:3]})"


class FiniteGroupoid:
    """A finite groupoid with explicit tables.

    Args:
        objects (Sequence[str]): Object identifiers.
        morphisms (Sequence[tuple[str, str, str]]): ``(id, src, dst)`` records.
        compose (Mapping[tuple[str, str], str]): ``(g, f) -> g∘f`` for composable pairs.
        ident (Mapping[str, str]): Object to identity morphism.
        inv (Mapping[str, str]): Morphism to inverse.
        tags (Mapping[str, tuple], optional): Structured origin of constructed ids
            (for example the triple behind a fiber-product object).
        name (str, optional): Display name.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        compose: Mapping[Tuple[str, str], str],
        ident: Mapping[str, str],
        inv: Mapping[str, str],
        tags: Optional[Mapping[str, tuple]] = None,
        name: Optional[str] = None,
    ):
        self._objects = tuple(objects)
        self._morphisms = tuple(m for m, _, _ in morphisms)
        self._src = {m: s for m, s, _ in morphisms}
        self._dst = {m: d for m, _, d in morphisms}
        self._compose = dict(compose)
        self._ident = dict(ident)
        self._inv = dict(inv)
        self.tags = dict(tags or {})
        self.name = name or "groupoid"

        if len(set(self._objects)) != len(self._objects):
            raise PreconditionError("distinct-ids", "duplicate object id")
        if len(self._src) != len(self._morphisms):
            raise PreconditionError("distinct-ids", "duplicate morphism id")
        object_set = set(self._objects)
        unknown = [m for m in self._morphisms if self._src[m] not in object_set or self._dst[m] not in object_set]
        if unknown:
            raise PreconditionError("morphism-endpoints", "endpoint is not an object", unknown[0])

        self._obj_index = bidict((x, i) for i, x in enumerate(self._objects))
        self._out: Dict[str, List[str]] = {x: [] for x in self._objects}
        self._in: Dict[str, List[str]] = {x: [] for x in self._objects}
        self._hom: Dict[Tuple[str, str], List[str]] = {}
        for m in self._morphisms:
            self._out[self._src[m]].append(m)
            self._in[self._dst[m]].append(m)
            self._hom.setdefault((self._src[m], self._dst[m]), []).append(m)

    @classmethod
    def from_structure(
        cls,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        compose: Callable[[str, str], str],
        ident: Mapping[str, str],
        inv: Mapping[str, str],
        tags: Optional[Mapping[str, tuple]] = None,
        name: Optional[str] = None,
    ) -> "FiniteGroupoid":
        """Build the composition table by calling ``compose(g, f)`` on every composable pair."""
        out: Dict[str, List[str]] = {x: [] for x in objects}
        incoming: Dict[str, List[str]] = {x: [] for x in objects}
        for m, s, d in morphisms:
            out[s].append(m)
            incoming[d].append(m)
        table = {}
        for x in objects:
            for f in incoming[x]:
                for g in out[x]:
                    table[(g, f)] = compose(g, f)
        return cls(objects, morphisms, table, ident, inv, tags=tags, name=name)

    @staticmethod
    def from_group(group: FiniteGroup, name: Optional[str] = None) -> "GroupGroupoid":
        """The one-object groupoid [*/Γ]."""
        return GroupGroupoid(group, name=name)

    # ------------------------------------------------------------------ access

    @property
    def objects(self) -> Tuple[str, ...]:
        return self._objects

    @property
    def morphisms(self) -> Tuple[str, ...]:
        return self._morphisms

    @property
    def num_objects(self) -> int:
        return len(self._objects)

    @property
    def num_morphisms(self) -> int:
        return len(self._morphisms)

    def src(self, f: str) -> str:
        return self._src[f]

    def dst(self, f: str) -> str:
        return self._dst[f]

    def identity(self, x: str) -> str:
        return self._ident[x]

    def inverse(self, f: str) -> str:
        return self._inv[f]

    def is_identity(self, f: str) -> bool:
        return self.identity(self.src(f)) == f

    def composable(self, g: str, f: str) -> bool:
        return self.dst(f) == self.src(g)

    def compose(self, g: str, f: str) -> str:
        """``g∘f``.

        Raises:
            PreconditionError: If ``dst(f) != src(g)``.
        """
        try:
            return self._compose[(g, f)]
        except KeyError:
            raise PreconditionError("composable", "dst(f) != src(g)", (g, f)) from None

    def compose_many(self, *ms: str) -> str:
        """``m1∘m2∘...∘mk`` (at least one morphism)."""
        result = ms[-1]
        for g in reversed(ms[:-1]):
            result = self.compose(g, result)
        return result

    def out_morphisms(self, x: str) -> List[str]:
        return self._out[x]

    def hom(self, x: str, y: str) -> List[str]:
        return self._hom.get((x, y), [])

    def automorphisms(self, x: str) -> List[str]:
        return self.hom(x, x)

    def loops(self) -> List[str]:
        """All endomorphisms ``γ`` with ``src(γ) == dst(γ)``, in morphism order."""
        return [m for m in self._morphisms if self._src[m] == self._dst[m]]

    def composable_tuples(self, n: int) -> Iterator[Tuple[str, ...]]:
        """Nerve simplices of dimension ``n``: objects for ``n = 0``, else composable n-tuples."""
        if n == 0:
            for x in self._objects:
                yield (x,)
            return

        def extend(prefix):
            if len(prefix) == n:
                yield tuple(prefix)
                return
            # the next entry must land in src(prefix[-1])
            for m in self._in[self.src(prefix[-1])]:
                yield from extend(prefix + [m])

        for m in self._morphisms:
            yield from extend([m])

    def connected_components(self) -> List[List[str]]:
        """Components as lists of objects (object order), ordered by first object."""
        n = self.num_objects
        rows = [self._obj_index[self._src[m]] for m in self._morphisms]
        cols = [self._obj_index[self._dst[m]] for m in self._morphisms]
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        components: Dict[int, List[str]] = {}
        for i, label in enumerate(labels):
            components.setdefault(int(label), []).append(self._objects[i])
        return sorted(components.values(), key=lambda c: self._obj_index[c[0]])

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    # -------------------------------------------------------------- validation

    def validate(self, max_failures: int = 1) -> ValidationReport:
        """Check every groupoid axiom exhaustively.

        Args:
            max_failures (int, optional): Stop after this many violations.

        Returns:
            ValidationReport: Empty when all axioms hold.
        """
        report = ValidationReport()

        def done():
            return len(report.failures) >= max_failures

        for x in self._objects:
            if x not in self._ident:
                report.add("identity-defined", x)
            else:
                e = self._ident[x]
                if self._src.get(e) != x or self._dst.get(e) != x:
                    report.add("identity-endpoints", x, e)
            if done():
                return report

        for f in self._morphisms:
            for g in self._morphisms:
                composable = self._dst[f] == self._src[g]
                if composable and (g, f) not in self._compose:
                    report.add("composition-defined", g, f)
                elif not composable and (g, f) in self._compose:
                    report.add("composition-undefined", g, f)
                elif composable:
                    gf = self._compose[(g, f)]
                    if gf not in self._src or self._src[gf] != self._src[f] or self._dst[gf] != self._dst[g]:
                        report.add("composition-endpoints", g, f)
                if done():
                    return report

        for f in self._morphisms:
            s, d = self._src[f], self._dst[f]
            if self._compose.get((f, self._ident[s])) != f or self._compose.get((self._ident[d], f)) != f:
                report.add("unit", f)
            fi = self._inv.get(f)
            if fi is None or self._compose.get((fi, f)) != self._ident[s] or self._compose.get((f, fi)) != self._ident[d]:
                report.add("inverse", f)
            if done():
                return report

        for h, g, f in self.composable_tuples(3):
            try:
                left = self._compose[(self._compose[(h, g)], f)]
                right = self._compose[(h, self._compose[(g, f)])]
            except KeyError:
                continue
            if left != right:
                report.add("associativity", h, g, f)
                if done():
                    return report
        return report

    # -------------------------------------------------------------- conversion

    def to_dict(self) -> dict:
        """Plain data in the ``groupoid.v1`` layout (without the schema key)."""
        return {
            "objects": list(self._objects),
            "morphisms": [{"id": m, "src": self._src[m], "dst": self._dst[m]} for m in self._morphisms],
            "compose": [
                [g, f, self.compose(g, f)]
                for f in self._morphisms
                for g in self._out[self._dst[f]]
            ],
            "ident": {x: self.identity(x) for x in self._objects},
            "inv": {m: self.inverse(m) for m in self._morphisms},
        }

    def __repr__(self):
        return f"FiniteGroupoid({self.name!r}, objects={self.num_objects}, morphisms={self.num_morphisms})"


class GroupGroupoid(FiniteGroupoid):
    """The one-object groupoid [*/Γ]; composition reads the Cayley table.

    Morphism ids are the element labels of ``group``.
    """

    OBJECT = "*"

    def __init__(self, group: FiniteGroup, name: Optional[str] = None):
        self.group = group
        x = self.OBJECT
        e = group.label(group.identity)
        morphisms = [(m, x, x) for m in group.elements]
        inv = {group.label(a): group.label(group.inv(a)) for a in range(group.order)}
        super().__init__([x], morphisms, {}, {x: e}, inv, name=name or f"B{group.name}")

    def compose(self, g: str, f: str) -> str:
        group = self.group
        return group.label(group.mul(group.index(g), group.index(f)))

    def validate(self, max_failures: int = 1) -> ValidationReport:
        report = ValidationReport()
        failure = self.group.associativity_failure()
        if failure is not None:
            report.add("associativity", *self.group.labels(failure))
        return report


def point(name: str = "point") -> FiniteGroupoid:
    return discrete(["*"], name=name)


def discrete(objects: Sequence[str], name: str = "discrete") -> FiniteGroupoid:
    objects = [str(x) for x in objects]
    ids = {x: compound_id("id", x) for x in objects}
    return FiniteGroupoid(
        objects,
        [(ids[x], x, x) for x in objects],
        {(ids[x], ids[x]): ids[x] for x in objects},
        ids,
        {ids[x]: ids[x] for x in objects},
        tags={ids[x]: (x, x) for x in objects},
        name=name,
    )


def codiscrete(objects: Sequence[str], name: str = "codiscrete") -> FiniteGroupoid:
    """Exactly one morphism ``(x, y)`` between any two objects."""
    objects = [str(x) for x in objects]
    mor = {(x, y): compound_id(x, y) for x in objects for y in objects}
    tags = {m: pair for pair, m in mor.items()}
    return FiniteGroupoid.from_structure(
        objects,
        [(m, x, y) for (x, y), m in mor.items()],
        lambda g, f: mor[(tags[f][0], tags[g][1])],
        {x: mor[(x, x)] for x in objects},
        {m: mor[(y, x)] for (x, y), m in mor.items()},
        tags=tags,
        name=name,
    )


def disjoint_union(a: FiniteGroupoid, b: FiniteGroupoid, name: Optional[str] = None) -> FiniteGroupoid:
    """``a ⊔ b``; ids are prefixed by ``0`` / ``1``."""

    def left(i):
        return compound_id("0", i)

    def right(i):
        return compound_id("1", i)

    objects = [left(x) for x in a.objects] + [right(x) for x in b.objects]
    morphisms = [(left(m), left(a.src(m)), left(a.dst(m))) for m in a.morphisms]
    morphisms += [(right(m), right(b.src(m)), right(b.dst(m))) for m in b.morphisms]
    compose = {}
    for side, wrap in ((a, left), (b, right)):
        for f in side.morphisms:
            for g in side.out_morphisms(side.dst(f)):
                compose[(wrap(g), wrap(f))] = wrap(side.compose(g, f))
    ident = {left(x): left(a.identity(x)) for x in a.objects}
    ident.update({right(x): right(b.identity(x)) for x in b.objects})
    inv = {left(m): left(a.inverse(m)) for m in a.morphisms}
    inv.update({right(m): right(b.inverse(m)) for m in b.morphisms})
    tags = {left(i): ("0", i) for i in list(a.objects) + list(a.morphisms)}
    tags.update({right(i): ("1", i) for i in list(b.objects) + list(b.morphisms)})
    return FiniteGroupoid(objects, morphisms, compose, ident, inv, tags=tags, name=name or f"{a.name}+{b.name}")


def action_groupoid(
    group: FiniteGroup,
    points: Sequence[Hashable],
    act: Callable[[int, Hashable], Hashable],
    name: Optional[str] = None,
) -> FiniteGroupoid:
    """Action groupoid of a left action.

    Args:
        group (FiniteGroup): Acting group Γ.
        points (Sequence): The finite set X (labels are converted with ``str``).
        act (Callable): ``act(γ_index, x) -> γx``.
        name (str, optional): Display name.

    Returns:
        FiniteGroupoid: Objects ``X``, morphisms ``(x, γ): x -> γx``.

    Raises:
        PreconditionError: If ``act`` is not a left action; the witness is the
            violating pair.
    """
    points = list(points)
    labels = [str(x) for x in points]
    lookup = {x: i for i, x in enumerate(points)}
    action = np.empty((group.order, len(points)), dtype=np.int64)
    for g in range(group.order):
        for i, x in enumerate(points):
            y = act(g, x)
            if y not in lookup:
                raise PreconditionError("action", "image outside X", (group.label(g), labels[i]))
            action[g, i] = lookup[y]

    for i in range(len(points)):
        if action[group.identity, i] != i:
            raise PreconditionError("action", "identity moves a point", (group.label(group.identity), labels[i]))
    for g, h in itertools.product(range(group.order), repeat=2):
        gh = group.mul(g, h)
        if not np.array_equal(action[gh], action[g][action[h]]):
            raise PreconditionError("action", "(gh)x != g(hx)", (group.label(g), group.label(h)))

    mor = {(i, g): compound_id(labels[i], group.label(g)) for i in range(len(points)) for g in range(group.order)}
    tags = {m: (labels[i], group.label(g)) for (i, g), m in mor.items()}
    back = {m: key for key, m in mor.items()}

    def compose(gm, fm):
        i, f = back[fm]
        _, g = back[gm]
        return mor[(i, group.mul(g, f))]

    morphisms = [(m, labels[i], labels[action[g, i]]) for (i, g), m in mor.items()]
    ident = {labels[i]: mor[(i, group.identity)] for i in range(len(points))}
    inv = {m: mor[(int(action[g, i]), group.inv(g))] for (i, g), m in mor.items()}
    return FiniteGroupoid.from_structure(
        labels, morphisms, compose, ident, inv, tags=tags, name=name or f"[X/{group.name}]"
    )
