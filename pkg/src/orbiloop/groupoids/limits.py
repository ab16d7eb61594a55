"""Products, standard fiber products and equalizers of finite groupoids.

The fiber product of ``f: A -> C`` and ``g: B -> C`` is the standard model:
objects are triples ``(a, b, γ)`` with ``γ: f(a) -> g(b)`` in ``C`` and a morphism
``(a, b, γ) -> (a', b', γ')`` is a pair ``(φ, ψ)`` with ``γ'∘f(φ) = g(ψ)∘γ``.
"""
import logging
from typing import NamedTuple

from ..exceptions import PreconditionError
from ..utils.ids import compound_id
from .equivalence import enumerate_maps, enumerate_nat_isos
from .groupoid import FiniteGroupoid, ValidationReport
from .maps import GroupoidMap, NatIso

__all__ = [
    "Product",
    "FiberProduct",
    "Equalizer",
    "product",
    "pairing",
    "diagonal",
    "fiber_product",
    "equalizer",
    "induced_map",
    "check_universal_property",
]

_logger = logging.getLogger(__name__)


class Product(NamedTuple):
    groupoid: FiniteGroupoid
    first: GroupoidMap
    second: GroupoidMap


class FiberProduct(NamedTuple):
    groupoid: FiniteGroupoid
    first: GroupoidMap
    second: GroupoidMap
    filler: NatIso  # f∘first => g∘second


class Equalizer(NamedTuple):
    groupoid: FiniteGroupoid
    projection: GroupoidMap
    filler: NatIso  # f∘projection => g∘projection


def product(a: FiniteGroupoid, b: FiniteGroupoid, name: str = None) -> Product:
    """``a × b`` with objects ``[x, y]`` and morphisms ``[φ, ψ]`` (compound ids)."""
    objects = [compound_id(x, y) for x in a.objects for y in b.objects]
    obj_tags = {compound_id(x, y): (x, y) for x in a.objects for y in b.objects}
    mor_tags = {}
    morphisms = []
    for f in a.morphisms:
        for g in b.morphisms:
            m = compound_id(f, g)
            mor_tags[m] = (f, g)
            morphisms.append((m, compound_id(a.src(f), b.src(g)), compound_id(a.dst(f), b.dst(g))))

    def compose(gm, fm):
        g1, g2 = mor_tags[gm]
        f1, f2 = mor_tags[fm]
        return compound_id(a.compose(g1, f1), b.compose(g2, f2))

    ident = {compound_id(x, y): compound_id(a.identity(x), b.identity(y)) for x in a.objects for y in b.objects}
    inv = {m: compound_id(a.inverse(mor_tags[m][0]), b.inverse(mor_tags[m][1])) for m, _, _ in morphisms}
    groupoid = FiniteGroupoid.from_structure(
        objects, morphisms, compose, ident, inv, tags={**obj_tags, **mor_tags}, name=name or f"{a.name}x{b.name}"
    )
    first = GroupoidMap(
        groupoid,
        a,
        {o: obj_tags[o][0] for o in objects},
        {m: mor_tags[m][0] for m, _, _ in morphisms},
        name="pr1",
    )
    second = GroupoidMap(
        groupoid,
        b,
        {o: obj_tags[o][1] for o in objects},
        {m: mor_tags[m][1] for m, _, _ in morphisms},
        name="pr2",
    )
    return Product(groupoid, first, second)


def pairing(f: GroupoidMap, g: GroupoidMap, target: Product) -> GroupoidMap:
    """``(f, g): X -> Y × Y'`` into an existing product."""
    if f.domain is not g.domain:
        raise PreconditionError("common-domain", "pairing needs maps with a common domain")
    if target.first.codomain is not f.codomain or target.second.codomain is not g.codomain:
        raise PreconditionError("common-codomain", "product factors do not match the maps")
    x = f.domain
    return GroupoidMap(
        x,
        target.groupoid,
        {o: compound_id(f.obj(o), g.obj(o)) for o in x.objects},
        {m: compound_id(f.mor(m), g.mor(m)) for m in x.morphisms},
        name=f"({f.name},{g.name})",
    )


def diagonal(y: FiniteGroupoid, square: Product = None) -> GroupoidMap:
    """``Y -> Y × Y``."""
    square = square or product(y, y)
    ident = GroupoidMap.identity(y)
    return pairing(ident, ident, square)


def fiber_product(f: GroupoidMap, g: GroupoidMap, name: str = None) -> FiberProduct:
    """Standard model of ``A ×_C B``.

    Args:
        f (GroupoidMap): ``A -> C``.
        g (GroupoidMap): ``B -> C``.
        name (str, optional): Display name.

    Returns:
        FiberProduct: The groupoid, both projections and the filling natural
        isomorphism ``f∘first => g∘second`` whose component at ``(a, b, γ)`` is ``γ``.

    Raises:
        PreconditionError: If ``f`` and ``g`` have different codomains.
    """
    if f.codomain is not g.codomain:
        raise PreconditionError("common-codomain", "fiber product needs maps with a common codomain")
    a, b, c = f.domain, g.domain, f.codomain

    objects = []
    obj_tags, mor_tags = {}, {}
    for x in a.objects:
        for y in b.objects:
            for gamma in c.hom(f.obj(x), g.obj(y)):
                o = compound_id(x, y, gamma)
                objects.append(o)
                obj_tags[o] = (x, y, gamma)

    def target_of(o, phi, psi):
        _, _, gamma = obj_tags[o]
        moved = c.compose_many(g.mor(psi), gamma, c.inverse(f.mor(phi)))
        return compound_id(a.dst(phi), b.dst(psi), moved)

    morphisms = []
    for o in objects:
        x, y, gamma = obj_tags[o]
        for phi in a.out_morphisms(x):
            for psi in b.out_morphisms(y):
                m = compound_id(gamma, phi, psi)
                mor_tags[m] = (o, phi, psi)
                morphisms.append((m, o, target_of(o, phi, psi)))
    dst = {m: d for m, _, d in morphisms}

    def compose(gm, fm):
        o, phi, psi = mor_tags[fm]
        _, phi2, psi2 = mor_tags[gm]
        return compound_id(obj_tags[o][2], a.compose(phi2, phi), b.compose(psi2, psi))

    ident = {}
    for o in objects:
        x, y, gamma = obj_tags[o]
        ident[o] = compound_id(gamma, a.identity(x), b.identity(y))
    inv = {}
    for m, _, _ in morphisms:
        _, phi, psi = mor_tags[m]
        inv[m] = compound_id(obj_tags[dst[m]][2], a.inverse(phi), b.inverse(psi))

    groupoid = FiniteGroupoid.from_structure(
        objects,
        morphisms,
        compose,
        ident,
        inv,
        tags={**obj_tags, **mor_tags},
        name=name or f"{a.name}x_{c.name}{b.name}",
    )
    _logger.debug("fiber product %s: %d objects, %d morphisms", groupoid.name, len(objects), len(morphisms))

    first = GroupoidMap(
        groupoid, a, {o: obj_tags[o][0] for o in objects}, {m: mor_tags[m][1] for m, _, _ in morphisms}, name="pr1"
    )
    second = GroupoidMap(
        groupoid, b, {o: obj_tags[o][1] for o in objects}, {m: mor_tags[m][2] for m, _, _ in morphisms}, name="pr2"
    )
    filler = NatIso(
        GroupoidMap.compose(f, first),
        GroupoidMap.compose(g, second),
        {o: obj_tags[o][2] for o in objects},
    )
    return FiberProduct(groupoid, first, second, filler)


def induced_map(fp: FiberProduct, u: GroupoidMap, v: GroupoidMap, theta: NatIso) -> GroupoidMap:
    """The map ``T -> A ×_C B`` of a cone ``(u, v, θ: f∘u => g∘v)``.

    Objects go to ``(u t, v t, θ_t)``; morphisms to ``(u φ, v φ)``.
    """
    t = u.domain
    obj_map = {x: compound_id(u.obj(x), v.obj(x), theta.component(x)) for x in t.objects}
    mor_map = {m: compound_id(theta.component(t.src(m)), u.mor(m), v.mor(m)) for m in t.morphisms}
    return GroupoidMap(t, fp.groupoid, obj_map, mor_map, name="cone")


def _factors(fp: FiberProduct, k: GroupoidMap, u: GroupoidMap, v: GroupoidMap, theta: NatIso) -> bool:
    return (
        GroupoidMap.compose(fp.first, k) == u
        and GroupoidMap.compose(fp.second, k) == v
        and all(fp.filler.component(k.obj(x)) == theta.component(x) for x in k.domain.objects)
    )


def check_universal_property(
    f: GroupoidMap, g: GroupoidMap, test: FiniteGroupoid, fp: FiberProduct = None, max_failures: int = 1
) -> ValidationReport:
    """Check the universal property of ``A ×_C B`` against every cone from ``test``.

    Cones ``(u, v, θ)`` are enumerated exhaustively. For each one the induced map
    must be a groupoid map, factor the cone (``first∘k = u``, ``second∘k = v`` and
    ``filler∘k = θ``) and be the only map ``test -> A ×_C B`` that does so.

    Returns:
        ValidationReport: Failures are ``("induced-map" | "factorization" |
        "uniqueness", cone_index)``.
    """
    fp = fp or fiber_product(f, g)
    candidates = list(enumerate_maps(test, fp.groupoid))
    report = ValidationReport()
    cones = 0
    for u in enumerate_maps(test, f.domain):
        fu = GroupoidMap.compose(f, u)
        for v in enumerate_maps(test, g.domain):
            for theta in enumerate_nat_isos(fu, GroupoidMap.compose(g, v)):
                k = induced_map(fp, u, v, theta)
                if not k.validate():
                    report.add("induced-map", cones)
                elif not _factors(fp, k, u, v, theta):
                    report.add("factorization", cones)
                elif [c for c in candidates if _factors(fp, c, u, v, theta)] != [k]:
                    report.add("uniqueness", cones)
                cones += 1
                if len(report.failures) >= max_failures:
                    return report
    _logger.debug("universal property of %s against %s: %d cones", fp.groupoid.name, test.name, cones)
    return report


def equalizer(f: GroupoidMap, g: GroupoidMap, name: str = None) -> Equalizer:
    """Equalizer ``E(f, g)`` as the fiber product of ``(f, g): X -> Y×Y`` with the diagonal.

    Objects are ``(x, y, [γ1, γ2])`` with ``γ1: f x -> y`` and ``γ2: g x -> y``.

    Returns:
        Equalizer: The groupoid, its projection to ``X`` and the natural
        isomorphism ``f∘p => g∘p`` with component ``γ2^-1∘γ1``.

    Raises:
        PreconditionError: If ``f`` and ``g`` are not parallel.
    """
    if f.domain is not g.domain or f.codomain is not g.codomain:
        raise PreconditionError("parallel-maps", "equalizer needs parallel maps")
    y = f.codomain
    square = product(y, y)
    fp = fiber_product(pairing(f, g, square), diagonal(y, square), name=name or f"E({f.name},{g.name})")

    components = {}
    for o in fp.groupoid.objects:
        gamma = fp.filler.component(o)
        gamma1, gamma2 = square.first.mor(gamma), square.second.mor(gamma)
        components[o] = y.compose(y.inverse(gamma2), gamma1)
    filler = NatIso(GroupoidMap.compose(f, fp.first), GroupoidMap.compose(g, fp.first), components)
    return Equalizer(fp.groupoid, fp.first, filler)
