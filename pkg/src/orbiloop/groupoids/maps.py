"""Groupoid maps (functors) and natural isomorphisms between them."""
from typing import Dict, Mapping, Optional

from ..exceptions import PreconditionError
from .groupoid import FiniteGroupoid, ValidationReport

__all__ = ["GroupoidMap", "NatIso"]


class GroupoidMap:
    """A functor between finite groupoids given by its object and morphism tables.

    Args:
        domain (FiniteGroupoid): Source groupoid.
        codomain (FiniteGroupoid): Target groupoid.
        obj_map (Mapping[str, str]): Object table.
        mor_map (Mapping[str, str]): Morphism table.
        name (str, optional): Display name.
    """

    def __init__(
        self,
        domain: FiniteGroupoid,
        codomain: FiniteGroupoid,
        obj_map: Mapping[str, str],
        mor_map: Mapping[str, str],
        name: Optional[str] = None,
    ):
        self.domain = domain
        self.codomain = codomain
        self._obj_map: Dict[str, str] = dict(obj_map)
        self._mor_map: Dict[str, str] = dict(mor_map)
        self.name = name or "map"

    @classmethod
    def identity(cls, groupoid: FiniteGroupoid) -> "GroupoidMap":
        return cls(
            groupoid,
            groupoid,
            {x: x for x in groupoid.objects},
            {m: m for m in groupoid.morphisms},
            name=f"id_{groupoid.name}",
        )

    @staticmethod
    def compose(second: "GroupoidMap", first: "GroupoidMap") -> "GroupoidMap":
        """``second∘first``.

        Raises:
            PreconditionError: If ``first.codomain is not second.domain``.
        """
        if first.codomain is not second.domain:
            raise PreconditionError("composable-maps", "codomain of first is not domain of second")
        return GroupoidMap(
            first.domain,
            second.codomain,
            {x: second.obj(first.obj(x)) for x in first.domain.objects},
            {m: second.mor(first.mor(m)) for m in first.domain.morphisms},
            name=f"{second.name}∘{first.name}",
        )

    def obj(self, x: str) -> str:
        return self._obj_map[x]

    def mor(self, f: str) -> str:
        return self._mor_map[f]

    @property
    def obj_map(self) -> Dict[str, str]:
        return dict(self._obj_map)

    @property
    def mor_map(self) -> Dict[str, str]:
        return dict(self._mor_map)

    def validate(self, max_failures: int = 1) -> ValidationReport:
        """Check that the tables are total and preserve endpoints, identities and composition."""
        report = ValidationReport()
        dom, cod = self.domain, self.codomain
        cod_objects = set(cod.objects)

        for x in dom.objects:
            if self._obj_map.get(x) not in cod_objects:
                report.add("object-map", x)
            elif self._mor_map.get(dom.identity(x)) != cod.identity(self._obj_map[x]):
                report.add("identities", x)
            if len(report.failures) >= max_failures:
                return report

        for f in dom.morphisms:
            image = self._mor_map.get(f)
            if image is None or image not in cod._src:
                report.add("morphism-map", f)
            elif cod.src(image) != self._obj_map.get(dom.src(f)) or cod.dst(image) != self._obj_map.get(dom.dst(f)):
                report.add("endpoints", f)
            if len(report.failures) >= max_failures:
                return report
        if not report.valid:
            return report

        for f in dom.morphisms:
            for g in dom.out_morphisms(dom.dst(f)):
                if self._mor_map[dom.compose(g, f)] != cod.compose(self._mor_map[g], self._mor_map[f]):
                    report.add("composition", g, f)
                    if len(report.failures) >= max_failures:
                        return report
        return report

    def is_isomorphism(self) -> bool:
        """Functor that is bijective on objects and morphisms."""
        if not self.validate():
            return False
        return (
            len(set(self._obj_map.values())) == self.domain.num_objects == self.codomain.num_objects
            and len(set(self._mor_map.values())) == self.domain.num_morphisms == self.codomain.num_morphisms
        )

    def inverse(self) -> "GroupoidMap":
        if not self.is_isomorphism():
            raise PreconditionError("isomorphism", "map is not invertible", self.name)
        return GroupoidMap(
            self.codomain,
            self.domain,
            {v: k for k, v in self._obj_map.items()},
            {v: k for k, v in self._mor_map.items()},
            name=f"{self.name}^-1",
        )

    def __eq__(self, other):
        if not isinstance(other, GroupoidMap):
            return NotImplemented
        return (
            self.domain is other.domain
            and self.codomain is other.codomain
            and self._obj_map == other._obj_map
            and self._mor_map == other._mor_map
        )

    def __hash__(self):
        return hash((id(self.domain), id(self.codomain), tuple(sorted(self._mor_map.items()))))

    def __repr__(self):
        return f"GroupoidMap({self.name!r}: {self.domain.name} -> {self.codomain.name})"


class NatIso:
    """A natural isomorphism ``source ⇒ target`` between parallel groupoid maps.

    Args:
        source (GroupoidMap): ``F: A -> B``.
        target (GroupoidMap): ``G: A -> B``.
        components (Mapping[str, str]): Object ``x`` of ``A`` to a morphism
            ``F x -> G x`` of ``B``.
    """

    def __init__(self, source: GroupoidMap, target: GroupoidMap, components: Mapping[str, str]):
        if source.domain is not target.domain or source.codomain is not target.codomain:
            raise PreconditionError("parallel-maps", "natural isomorphism needs parallel maps")
        self.source = source
        self.target = target
        self._components = dict(components)

    def component(self, x: str) -> str:
        return self._components[x]

    @property
    def components(self) -> Dict[str, str]:
        return dict(self._components)

    def validate(self, max_failures: int = 1) -> ValidationReport:
        """Check endpoints of every component and every naturality square."""
        report = ValidationReport()
        dom, cod = self.source.domain, self.source.codomain
        for x in dom.objects:
            theta = self._components.get(x)
            if theta is None or cod.src(theta) != self.source.obj(x) or cod.dst(theta) != self.target.obj(x):
                report.add("component", x)
                if len(report.failures) >= max_failures:
                    return report
        if not report.valid:
            return report
        for phi in dom.morphisms:
            x, y = dom.src(phi), dom.dst(phi)
            left = cod.compose(self.target.mor(phi), self._components[x])
            right = cod.compose(self._components[y], self.source.mor(phi))
            if left != right:
                report.add("naturality", phi)
                if len(report.failures) >= max_failures:
                    return report
        return report

    def __repr__(self):
        return f"NatIso({self.source.name} => {self.target.name})"
