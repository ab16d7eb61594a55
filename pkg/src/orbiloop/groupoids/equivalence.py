"""Equivalence testing and exhaustive enumeration of maps between small groupoids."""
import itertools
from typing import Dict, Iterator, List, Tuple

from .groupoid import FiniteGroupoid, ValidationReport
from .maps import GroupoidMap, NatIso

__all__ = ["is_equivalence", "enumerate_maps", "enumerate_nat_isos"]


def is_equivalence(functor: GroupoidMap) -> ValidationReport:
    """Decide whether ``functor`` is essentially surjective and fully faithful.

    Both conditions are checked exhaustively. The report is empty for an
    equivalence; otherwise its first failure is one of

    * ``("essentially-surjective", y)``: no object in the image is isomorphic to ``y``;
    * ``("faithful", x, x2)``: two morphisms ``x -> x2`` have the same image;
    * ``("full", x, x2)``: some morphism ``F x -> F x2`` is not hit.
    """
    report = ValidationReport()
    dom, cod = functor.domain, functor.codomain

    reached = {functor.obj(x) for x in dom.objects}
    for component in cod.connected_components():
        if reached.isdisjoint(component):
            report.add("essentially-surjective", component[0])
            return report

    for x in dom.objects:
        for x2 in dom.objects:
            source_hom = dom.hom(x, x2)
            images = {functor.mor(m) for m in source_hom}
            if len(images) != len(source_hom):
                report.add("faithful", x, x2)
                return report
            if len(images) != len(cod.hom(functor.obj(x), functor.obj(x2))):
                report.add("full", x, x2)
                return report
    return report


def _spanning_data(groupoid: FiniteGroupoid) -> List[Tuple[str, Dict[str, str]]]:
    """Per component: the root object and a chosen morphism ``root -> x`` for every member."""
    data = []
    for component in groupoid.connected_components():
        root = component[0]
        paths = {x: groupoid.hom(root, x)[0] for x in component[1:]}
        paths[root] = groupoid.identity(root)
        data.append((root, paths))
    return data


def _generators(groupoid: FiniteGroupoid, root: str) -> List[str]:
    autos = groupoid.automorphisms(root)
    gens: List[str] = []
    span = {groupoid.identity(root)}
    for a in autos:
        if a in span:
            continue
        gens.append(a)
        frontier = list(span)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = groupoid.compose(g, x)
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return gens


def _homomorphisms(
    source: FiniteGroupoid, root: str, target: FiniteGroupoid, image_root: str
) -> Iterator[Dict[str, str]]:
    """All homomorphisms ``Aut(root) -> Aut(image_root)`` as element tables."""
    gens = _generators(source, root)
    candidates = target.automorphisms(image_root)
    for images in itertools.product(candidates, repeat=len(gens)):
        table = {source.identity(root): target.identity(image_root)}
        frontier = [source.identity(root)]
        consistent = True
        while frontier and consistent:
            x = frontier.pop()
            for g, hg in zip(gens, images):
                y = source.compose(g, x)
                hy = target.compose(hg, table[x])
                if y not in table:
                    table[y] = hy
                    frontier.append(y)
                elif table[y] != hy:
                    consistent = False
                    break
        if consistent:
            yield table


def enumerate_maps(source: FiniteGroupoid, target: FiniteGroupoid) -> Iterator[GroupoidMap]:
    """Every groupoid map ``source -> target``.

    A map is fixed by, per component of ``source``, the image of a root object,
    the images of chosen morphisms out of the root and a homomorphism on the
    root automorphism group. Only maps that validate are yielded.
    """
    spanning = _spanning_data(source)

    def component_choices(root, paths):
        others = [x for x in paths if x != root]
        for image_root in target.objects:
            for path_images in itertools.product(target.out_morphisms(image_root), repeat=len(others)):
                lifted = dict(zip(others, path_images))
                lifted[root] = target.identity(image_root)
                for hom in _homomorphisms(source, root, target, image_root):
                    yield lifted, hom

    for choice in itertools.product(*(list(component_choices(r, p)) for r, p in spanning)):
        obj_map, mor_map = {}, {}
        for (root, paths), (lifted, hom) in zip(spanning, choice):
            for x in paths:
                obj_map[x] = target.dst(lifted[x])
            for x, path in paths.items():
                for m in source.out_morphisms(x):
                    y = source.dst(m)
                    loop = source.compose_many(source.inverse(paths[y]), m, path)
                    mor_map[m] = target.compose_many(lifted[y], hom[loop], target.inverse(lifted[x]))
        candidate = GroupoidMap(source, target, obj_map, mor_map)
        if candidate.validate():
            yield candidate


def enumerate_nat_isos(source: GroupoidMap, target: GroupoidMap) -> Iterator[NatIso]:
    """Every natural isomorphism ``source => target``.

    A component at a root object determines the others along the chosen paths.
    """
    dom, cod = source.domain, source.codomain
    spanning = _spanning_data(dom)
    root_choices = [cod.hom(source.obj(root), target.obj(root)) for root, _ in spanning]
    for roots in itertools.product(*root_choices):
        components = {}
        for (root, paths), theta_root in zip(spanning, roots):
            for x, path in paths.items():
                components[x] = cod.compose_many(target.mor(path), theta_root, cod.inverse(source.mor(path)))
        candidate = NatIso(source, target, components)
        if candidate.validate():
            yield candidate
