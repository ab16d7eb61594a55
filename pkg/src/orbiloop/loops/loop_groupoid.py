"""The loop groupoid LX of a finite groupoid X and its relatives.

Objects of LX are the loops ``γ`` of X (endomorphisms, ``src(γ) == dst(γ)``);
the object id is the id of ``γ``. A morphism is a pair ``(γ, μ)`` with
``src(μ)`` the base point of ``γ``; it goes from ``γ`` to ``μ∘γ∘μ^-1`` and has the
id ``[γ, μ]``. Composition is ``(γ', ν)∘(γ, μ) = (γ, ν∘μ)``.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

from ..groupoids.groupoid import FiniteGroupoid, ValidationReport
from ..groupoids.limits import Equalizer, FiberProduct, equalizer, fiber_product
from ..groupoids.maps import GroupoidMap
from ..utils.ids import compound_id

__all__ = [
    "LoopGroupoid",
    "Sector",
    "LoopMultiplication",
    "loop_groupoid",
    "inertia_via_equalizer",
    "loop_of_map",
    "loop_of_map_on_pairs",
    "check_loop_of_map_multiplicative",
    "loop_multiply",
    "unit_loops",
    "inverse_loops",
    "loop_groupoid_via_pullback",
    "pullback_comparison",
    "check_loop_preserves_pullback",
]

_logger = logging.getLogger(__name__)


class Sector(NamedTuple):
    """A connected component of LX: a twisted sector."""

    representative: str
    base_object: str
    centralizer_order: int
    size: int
    loops: Tuple[str, ...]


class LoopGroupoid:
    """LX together with its projection to X.

    Attributes:
        carrier (FiniteGroupoid): The groupoid LX.
        base (FiniteGroupoid): X.
        proj (GroupoidMap): ``LX -> X``, ``(x, γ) -> x`` and ``(γ, μ) -> μ``.
    """

    def __init__(self, base: FiniteGroupoid, name: Optional[str] = None):
        self.base = base
        loops = base.loops()
        self._obj_tag: Dict[str, Tuple[str, str]] = {g: (base.src(g), g) for g in loops}
        self._mor_tag: Dict[str, Tuple[str, str]] = {}

        morphisms = []
        for gamma in loops:
            for mu in base.out_morphisms(base.src(gamma)):
                m = compound_id(gamma, mu)
                self._mor_tag[m] = (gamma, mu)
                morphisms.append((m, gamma, base.compose_many(mu, gamma, base.inverse(mu))))

        tags = self._mor_tag

        def compose(gm, fm):
            gamma, mu = tags[fm]
            return compound_id(gamma, base.compose(tags[gm][1], mu))

        dst = {m: d for m, _, d in morphisms}
        ident = {g: compound_id(g, base.identity(base.src(g))) for g in loops}
        inv = {m: compound_id(dst[m], base.inverse(tags[m][1])) for m, _, _ in morphisms}
        self.carrier = FiniteGroupoid.from_structure(
            loops,
            morphisms,
            compose,
            ident,
            inv,
            tags={**self._obj_tag, **self._mor_tag},
            name=name or f"L{base.name}",
        )
        self.proj = GroupoidMap(
            self.carrier,
            base,
            {g: base.src(g) for g in loops},
            {m: mu for m, (_, mu) in self._mor_tag.items()},
            name="proj",
        )
        _logger.debug("loop groupoid %s: %d loops, %d morphisms", self.carrier.name, len(loops), len(morphisms))

    @property
    def name(self) -> str:
        return self.carrier.name

    def obj_tag(self, loop: str) -> Tuple[str, str]:
        """``(x, γ)`` for a loop object."""
        return self._obj_tag[loop]

    def mor_tag(self, morphism: str) -> Tuple[str, str]:
        """``(γ, μ)`` for a morphism of LX."""
        return self._mor_tag[morphism]

    def morphism(self, loop: str, mu: str) -> str:
        return compound_id(loop, mu)

    def sectors(self) -> List[Sector]:
        """Connected components with a representative loop, its centralizer order and size."""
        sectors = []
        for component in self.carrier.connected_components():
            rep = component[0]
            sectors.append(
                Sector(
                    representative=rep,
                    base_object=self.base.src(rep),
                    centralizer_order=len(self.carrier.automorphisms(rep)),
                    size=len(component),
                    loops=tuple(component),
                )
            )
        _logger.debug("%s: %d sectors", self.name, len(sectors))
        return sectors

    def __repr__(self):
        return f"LoopGroupoid({self.name!r}, loops={self.carrier.num_objects})"


def loop_groupoid(base: FiniteGroupoid, name: Optional[str] = None) -> LoopGroupoid:
    """LX by the explicit formulas for its objects, morphisms and range map."""
    return LoopGroupoid(base, name=name)


def inertia_via_equalizer(
    base: FiniteGroupoid, loops: Optional[LoopGroupoid] = None
) -> Tuple[Equalizer, GroupoidMap]:
    """The inertia groupoid ``IX = E(id, id)`` and its comparison map ``IX -> LX``.

    An object ``(x, y, [γ1, γ2])`` goes to the loop ``γ2^-1∘γ1`` at ``x`` and a
    morphism ``(φ, ψ)`` to ``(γ2^-1∘γ1, φ)``.
    """
    loops = loops or loop_groupoid(base)
    ident = GroupoidMap.identity(base)
    eq = equalizer(ident, ident, name=f"I{base.name}")
    obj_map = {o: eq.filler.component(o) for o in eq.groupoid.objects}
    mor_map = {
        m: compound_id(obj_map[eq.groupoid.src(m)], eq.projection.mor(m)) for m in eq.groupoid.morphisms
    }
    comparison = GroupoidMap(eq.groupoid, loops.carrier, obj_map, mor_map, name="I->L")
    return eq, comparison


def loop_of_map(functor: GroupoidMap, source: LoopGroupoid = None, target: LoopGroupoid = None) -> GroupoidMap:
    """``Lf: LX -> LY``, ``γ -> f(γ)`` and ``(γ, μ) -> (f γ, f μ)``.

    Pass ``source``/``target`` to reuse loop groupoids (needed to compose the results).
    """
    source = source or loop_groupoid(functor.domain)
    target = target or loop_groupoid(functor.codomain)
    obj_map = {g: functor.mor(g) for g in source.carrier.objects}
    mor_map = {}
    for m in source.carrier.morphisms:
        gamma, mu = source.mor_tag(m)
        mor_map[m] = target.morphism(functor.mor(gamma), functor.mor(mu))
    return GroupoidMap(source.carrier, target.carrier, obj_map, mor_map, name=f"L{functor.name}")


class LoopMultiplication(NamedTuple):
    """Fiberwise group structure of LX over X."""

    loops: LoopGroupoid
    pairs: FiberProduct  # LX ×_X LX
    multiply: GroupoidMap  # LX ×_X LX -> LX
    unit: GroupoidMap  # X -> LX
    inverse: GroupoidMap  # LX -> LX

    def product(self, first: str, second: str) -> str:
        """``γ1∘γ2`` for two loops at the same object."""
        return self.loops.base.compose(first, second)

    def times(self, first: str, second: str, theta: str) -> str:
        """``multiply`` on the pair object ``(γ1, γ2, θ)``."""
        return self.multiply.obj(compound_id(first, second, theta))

    def check_axioms(self, max_failures: int = 1) -> ValidationReport:
        """Group axioms of ``multiply`` over LX ×_X LX ×_X LX.

        Associativity is checked on every triple ``(a, b, c)`` of loops at
        ``x1, x2, x3`` joined by ``θ1: x1 -> x2`` and ``θ2: x2 -> x3``; the unit
        and inverse laws on every loop with ``θ`` the identity.

        Returns:
            ValidationReport: Failures are ``(axiom, *loops)``.
        """
        base = self.loops.base
        loops = self.loops.carrier.objects
        report = ValidationReport()
        for a in loops:
            x1 = base.src(a)
            ident = base.identity(x1)
            e = self.unit.obj(x1)
            if self.times(e, a, ident) != a or self.times(a, e, ident) != a:
                report.add("unit", a)
            inv = self.inverse.obj(a)
            if self.times(a, inv, ident) != e or self.times(inv, a, ident) != e:
                report.add("inverse", a)
            for theta1 in base.out_morphisms(x1):
                x2 = base.dst(theta1)
                for theta2 in base.out_morphisms(x2):
                    x3 = base.dst(theta2)
                    for b in base.hom(x2, x2):
                        for c in base.hom(x3, x3):
                            left = self.times(self.times(a, b, theta1), c, base.compose(theta2, theta1))
                            right = self.times(a, self.times(b, c, theta2), theta1)
                            if left != right:
                                report.add("associativity", a, b, c)
                    if len(report.failures) >= max_failures:
                        return report
            if len(report.failures) >= max_failures:
                return report
        _logger.debug("multiplication on %s satisfies the group axioms", self.loops.name)
        return report


def unit_loops(loops: LoopGroupoid) -> GroupoidMap:
    """``X -> LX``, ``x -> id_x``."""
    base = loops.base
    return GroupoidMap(
        base,
        loops.carrier,
        {x: base.identity(x) for x in base.objects},
        {f: loops.morphism(base.identity(base.src(f)), f) for f in base.morphisms},
        name="unit",
    )


def inverse_loops(loops: LoopGroupoid) -> GroupoidMap:
    """``LX -> LX``, ``γ -> γ^-1``."""
    base = loops.base
    mor_map = {}
    for m in loops.carrier.morphisms:
        gamma, mu = loops.mor_tag(m)
        mor_map[m] = loops.morphism(base.inverse(gamma), mu)
    return GroupoidMap(
        loops.carrier,
        loops.carrier,
        {g: base.inverse(g) for g in loops.carrier.objects},
        mor_map,
        name="inverse",
    )


def loop_multiply(base: FiniteGroupoid, loops: Optional[LoopGroupoid] = None) -> LoopMultiplication:
    """Multiplication ``LX ×_X LX -> LX`` on the standard fiber product.

    An object ``(γ1, γ2, θ)`` with ``θ: x1 -> x2`` goes to the loop
    ``γ1∘θ^-1∘γ2∘θ`` at ``x1``; a morphism ``((γ1, μ1), (γ2, μ2))`` goes to
    ``(γ1∘θ^-1∘γ2∘θ, μ1)``.
    """
    loops = loops or loop_groupoid(base)
    pairs = fiber_product(loops.proj, loops.proj, name=f"{loops.name}x_{base.name}{loops.name}")

    obj_map = {}
    for o in pairs.groupoid.objects:
        gamma1, gamma2 = pairs.first.obj(o), pairs.second.obj(o)
        theta = pairs.filler.component(o)
        obj_map[o] = base.compose_many(gamma1, base.inverse(theta), gamma2, theta)
    mor_map = {}
    for m in pairs.groupoid.morphisms:
        _, mu1 = loops.mor_tag(pairs.first.mor(m))
        mor_map[m] = loops.morphism(obj_map[pairs.groupoid.src(m)], mu1)
    multiply = GroupoidMap(pairs.groupoid, loops.carrier, obj_map, mor_map, name="multiply")
    return LoopMultiplication(loops, pairs, multiply, unit_loops(loops), inverse_loops(loops))


def loop_of_map_on_pairs(
    functor: GroupoidMap, source: LoopMultiplication, target: LoopMultiplication
) -> GroupoidMap:
    """``Lf ×_f Lf: LX ×_X LX -> LY ×_Y LY``."""
    lf = loop_of_map(functor, source.loops, target.loops)
    pairs = source.pairs
    obj_map = {
        o: compound_id(lf.obj(pairs.first.obj(o)), lf.obj(pairs.second.obj(o)), functor.mor(pairs.filler.component(o)))
        for o in pairs.groupoid.objects
    }
    mor_map = {
        m: compound_id(
            functor.mor(pairs.filler.component(pairs.groupoid.src(m))),
            lf.mor(pairs.first.mor(m)),
            lf.mor(pairs.second.mor(m)),
        )
        for m in pairs.groupoid.morphisms
    }
    return GroupoidMap(pairs.groupoid, target.pairs.groupoid, obj_map, mor_map, name=f"L{functor.name}^2")


def check_loop_of_map_multiplicative(
    functor: GroupoidMap, source: LoopMultiplication = None, target: LoopMultiplication = None
) -> bool:
    """Whether ``Lf`` commutes with the multiplication and the unit."""
    source = source or loop_multiply(functor.domain)
    target = target or loop_multiply(functor.codomain)
    lf = loop_of_map(functor, source.loops, target.loops)
    on_pairs = loop_of_map_on_pairs(functor, source, target)
    multiplicative = GroupoidMap.compose(target.multiply, on_pairs) == GroupoidMap.compose(lf, source.multiply)
    unital = GroupoidMap.compose(lf, source.unit) == GroupoidMap.compose(target.unit, functor)
    _logger.debug("L%s multiplicative: %s, unital: %s", functor.name, multiplicative, unital)
    return multiplicative and unital


def loop_groupoid_via_pullback(base: FiniteGroupoid) -> List[Tuple[str, str, str]]:
    """Morphisms of LX recomputed as the fibre of ``m`` over the identities.

    ``P`` consists of triples ``(γ0, μ, γ1)`` of loops ``γ0`` at ``src(μ)`` and ``γ1``
    at ``dst(μ)``; ``m(γ0, μ, γ1) = γ1^-1∘μ∘γ0∘μ^-1``.

    Returns:
        list: ``(id, src, dst)`` records in the id scheme of :class:`LoopGroupoid`.
    """
    loops_at: Dict[str, List[str]] = {x: [] for x in base.objects}
    for g in base.loops():
        loops_at[base.src(g)].append(g)

    records = []
    for mu in base.morphisms:
        x, y = base.src(mu), base.dst(mu)
        for gamma0 in loops_at[x]:
            for gamma1 in loops_at[y]:
                m = base.compose_many(base.inverse(gamma1), mu, gamma0, base.inverse(mu))
                if base.is_identity(m):
                    records.append((compound_id(gamma0, mu), gamma0, gamma1))
    return records


def pullback_comparison(f: GroupoidMap, g: GroupoidMap) -> GroupoidMap:
    """Canonical map ``L(A ×_C B) -> LA ×_{LC} LB``.

    A loop ``(φ, ψ)`` at ``(a, b, γ)`` goes to ``(φ, ψ, (f φ, γ))``; a morphism
    ``((φ, ψ), (φ', ψ'))`` goes to the pair ``((φ, φ'), (ψ, ψ'))``.
    """
    fp = fiber_product(f, g)
    lp = loop_groupoid(fp.groupoid)
    la, lb, lc = loop_groupoid(f.domain), loop_groupoid(g.domain), loop_groupoid(f.codomain)
    target = fiber_product(loop_of_map(f, la, lc), loop_of_map(g, lb, lc))

    def image(loop):
        phi, psi = fp.first.mor(loop), fp.second.mor(loop)
        gamma = fp.filler.component(fp.groupoid.src(loop))
        return phi, psi, lc.morphism(f.mor(phi), gamma)

    obj_map = {}
    for loop in lp.carrier.objects:
        obj_map[loop] = compound_id(*image(loop))
    mor_map = {}
    for m in lp.carrier.morphisms:
        loop, nu = lp.mor_tag(m)
        phi, psi, gamma = image(loop)
        mor_map[m] = compound_id(
            gamma, la.morphism(phi, fp.first.mor(nu)), lb.morphism(psi, fp.second.mor(nu))
        )
    return GroupoidMap(lp.carrier, target.groupoid, obj_map, mor_map, name="comparison")


def check_loop_preserves_pullback(f: GroupoidMap, g: GroupoidMap) -> bool:
    """Whether ``L(A ×_C B) -> LA ×_{LC} LB`` is an isomorphism of groupoids."""
    comparison = pullback_comparison(f, g)
    verdict = comparison.is_isomorphism()
    _logger.debug("loop of %s x %s preserves the pullback: %s", f.name, g.name, verdict)
    return verdict
