"""Named built-in groups, groupoids, complexes and gerbes.

Builders are registered per kind and run on first use; the instance is cached so
that every lookup of the same name returns the same object (cochains compare
their groupoids by identity).

Names:

* groups: ``Z1`` .. ``Z12``, ``S3``, ``D4``, ``Q8``, ``V4``
* groupoids: ``B<group>``, ``pt``, ``swap2``, ``conj-<group>``, ``regular-<group>``
* complexes: ``point``, ``interval``, ``S2``, ``S3-sphere``, ``torus``
* gcomplexes: ``point-<group>``, ``interval-swap``, ``S2-rot2``, ``S2-rot3``
* gerbes: ``discrete-torsion-V4``
"""
import itertools
import logging
from typing import Callable, Dict, List, Optional

from bidict import bidict

from ..cocycles.gerbe import GerbeCocycle, pairing_cocycle
from ..complexes.simplicial import SimplicialComplex
from ..defaults import MAX_BUILTIN_CYCLIC_ORDER
from ..deloc.gamma_complex import GammaComplex
from ..exceptions import PreconditionError, SchemaError
from ..groupoids.group import FiniteGroup, cyclic, dihedral, klein, quaternion, symmetric
from ..groupoids.groupoid import FiniteGroupoid, GroupGroupoid, ValidationReport, action_groupoid, point
from ..utils.ids import sorted_ids

__all__ = ["Catalog", "KINDS", "default_catalog", "get_catalog", "seven_vertex_torus"]

_logger = logging.getLogger(__name__)

KINDS = ("group", "groupoid", "complex", "gcomplex", "gerbe")


class Catalog:
    """Registry of named built-ins.

    Attributes:
        aliases (bidict): Alternative name to canonical name; ``aliases.inverse``
            gives the alias shown next to a canonical name.
    """

    def __init__(self):
        self._builders: Dict[str, Dict[str, Callable[[], object]]] = {kind: {} for kind in KINDS}
        self._cache: Dict[tuple, object] = {}
        self.aliases = bidict()

    def register(self, kind: str, name: str, builder: Callable[[], object], alias: Optional[str] = None):
        if kind not in self._builders:
            raise ValueError(f"unknown catalog kind '{kind}'")
        self._builders[kind][name] = builder
        if alias is not None:
            self.aliases[alias] = name

    def resolve(self, name: str) -> str:
        return self.aliases.get(name, name)

    def names(self, kind: str) -> List[str]:
        return sorted_ids(self._builders[kind])

    def __contains__(self, item) -> bool:
        kind, name = item
        return self.resolve(name) in self._builders.get(kind, {})

    def get(self, kind: str, name: str, path: str = "/"):
        """The built-in ``name`` of the given kind.

        Raises:
            SchemaError: If there is no such built-in.
        """
        name = self.resolve(name)
        builders = self._builders[kind]
        if name not in builders:
            raise SchemaError(f"unknown builtin {kind} '{name}'", path)
        key = (kind, name)
        if key not in self._cache:
            self._cache[key] = builders[name]()
        return self._cache[key]

    def group(self, name: str, path: str = "/") -> FiniteGroup:
        return self.get("group", name, path)

    def groupoid(self, name: str, path: str = "/") -> FiniteGroupoid:
        return self.get("groupoid", name, path)

    def complex(self, name: str, path: str = "/") -> SimplicialComplex:
        return self.get("complex", name, path)

    def gcomplex(self, name: str, path: str = "/") -> GammaComplex:
        return self.get("gcomplex", name, path)

    def gerbe(self, name: str, path: str = "/") -> GerbeCocycle:
        return self.get("gerbe", name, path)

    def listing(self) -> Dict[str, List[str]]:
        return {kind: self.names(kind) for kind in KINDS}

    # ------------------------------------------------------------- validation

    def validate(self, kind: str, name: str) -> ValidationReport:
        """Run the validator of the built-in's module.

        Construction already checks complexes with an action, so a gcomplex that
        builds is valid.
        """
        report = ValidationReport()
        try:
            item = self.get(kind, name)
        except PreconditionError as e:
            report.add(e.precondition, name)
            return report
        if kind == "group":
            failure = item.associativity_failure()
            if failure is not None:
                report.add("associativity", *item.labels(failure))
        elif kind == "groupoid":
            report = item.validate()
        elif kind == "complex":
            for k in range(item.dim):
                if (item.coboundary_matrix(k + 1) @ item.coboundary_matrix(k)).count_nonzero():
                    report.add("coboundary-squares-to-zero", name, k)
        elif kind == "gerbe":
            if not item.beta.is_cocycle():
                report.add("cocycle", name)
            if not item.beta.is_normalized():
                report.add("normalized", name)
        return report

    def validate_all(self) -> Dict[str, ValidationReport]:
        """Validate every built-in; keys are ``"<kind>:<name>"``."""
        reports = {}
        for kind in KINDS:
            for name in self.names(kind):
                reports[f"{kind}:{name}"] = self.validate(kind, name)
        failed = [k for k, r in reports.items() if not r.valid]
        _logger.info("catalog validation: %d built-ins, %d failed", len(reports), len(failed))
        return reports


# ---------------------------------------------------------------- complexes


def _boundary_of_simplex(n: int, name: str) -> SimplicialComplex:
    vertices = [str(i) for i in range(n + 1)]
    return SimplicialComplex(vertices, itertools.combinations(vertices, n), name=name)


def seven_vertex_torus() -> SimplicialComplex:
    """The minimal triangulation with triangles ``{i, i+1, i+3}`` and ``{i, i+2, i+3}`` mod 7."""
    vertices = [str(i) for i in range(7)]
    triangles = []
    for i in range(7):
        triangles.append([str(i), str((i + 1) % 7), str((i + 3) % 7)])
        triangles.append([str(i), str((i + 2) % 7), str((i + 3) % 7)])
    return SimplicialComplex(vertices, triangles, name="torus")


def _permutation_action(group: FiniteGroup, complex: SimplicialComplex, generator: Dict[str, str]):
    """Action of a cyclic group whose element ``k`` acts by ``generator^k``."""
    action = {}
    for g in range(group.order):
        perm = {v: v for v in complex.vertices}
        for _ in range(int(group.label(g))):
            perm = {v: generator[w] for v, w in perm.items()}
        action[g] = perm
    return action


# ------------------------------------------------------------------ catalog


def _register_group_family(catalog: Catalog, name: str):
    def group():
        return catalog.group(name)

    def conjugation():
        g = group()
        return action_groupoid(
            g, g.elements, lambda h, x: g.label(g.conjugate(h, g.index(x))), name=f"conj-{name}"
        )

    def regular():
        g = group()
        return action_groupoid(g, g.elements, lambda h, x: g.label(g.mul(h, g.index(x))), name=f"regular-{name}")

    def trivial_action():
        g = group()
        return GammaComplex(catalog.complex("point"), g, {k: {"0": "0"} for k in range(g.order)})

    catalog.register("groupoid", f"B{name}", lambda: GroupGroupoid(group()))
    catalog.register("groupoid", f"conj-{name}", conjugation)
    catalog.register("groupoid", f"regular-{name}", regular)
    catalog.register("gcomplex", f"point-{name}", trivial_action)


def default_catalog() -> Catalog:
    catalog = Catalog()

    for n in range(1, MAX_BUILTIN_CYCLIC_ORDER + 1):
        catalog.register("group", f"Z{n}", lambda n=n: cyclic(n))
    catalog.register("group", "S3", lambda: symmetric(3))
    catalog.register("group", "D4", lambda: dihedral(4))
    catalog.register("group", "Q8", quaternion)
    catalog.register("group", "V4", klein, alias="Z2xZ2")
    for name in catalog.names("group"):
        _register_group_family(catalog, name)

    catalog.register("groupoid", "pt", lambda: point("pt"))
    catalog.register(
        "groupoid",
        "swap2",
        lambda: action_groupoid(catalog.group("Z2"), ["0", "1"], lambda g, x: x if g == 0 else str(1 - int(x)), "swap2"),
    )

    catalog.register("complex", "point", lambda: SimplicialComplex(["0"], [["0"]], name="point"))
    catalog.register("complex", "interval", lambda: SimplicialComplex(["0", "1"], [["0", "1"]], name="interval"))
    catalog.register("complex", "S2", lambda: _boundary_of_simplex(3, "S2"), alias="boundary-3-simplex")
    catalog.register("complex", "S3-sphere", lambda: _boundary_of_simplex(4, "S3-sphere"), alias="boundary-4-simplex")
    catalog.register("complex", "torus", seven_vertex_torus)

    def interval_swap():
        group, complex = catalog.group("Z2"), catalog.complex("interval")
        return GammaComplex(complex, group, _permutation_action(group, complex, {"0": "1", "1": "0"}))

    def sphere_rotation(order: int, generator: Dict[str, str]):
        def build():
            group, complex = catalog.group(f"Z{order}"), catalog.complex("S2")
            return GammaComplex(complex, group, _permutation_action(group, complex, generator))

        return build

    catalog.register("gcomplex", "interval-swap", interval_swap)
    catalog.register("gcomplex", "S2-rot2", sphere_rotation(2, {"0": "1", "1": "0", "2": "3", "3": "2"}))
    catalog.register("gcomplex", "S2-rot3", sphere_rotation(3, {"0": "0", "1": "2", "2": "3", "3": "1"}))

    catalog.register("gerbe", "discrete-torsion-V4", lambda: pairing_cocycle(catalog.groupoid("BV4"), 2))
    return catalog


_DEFAULT_CATALOG: Optional[Catalog] = None


def get_catalog() -> Catalog:
    """The shared default catalog, built on first use."""
    global _DEFAULT_CATALOG
    if _DEFAULT_CATALOG is None:
        _DEFAULT_CATALOG = default_catalog()
    return _DEFAULT_CATALOG
