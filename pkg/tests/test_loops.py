import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiloop.groupoids import GroupoidMap, codiscrete, disjoint_union, enumerate_maps, is_equivalence, product
from orbiloop.loops import (
    check_loop_of_map_multiplicative,
    check_loop_preserves_pullback,
    inertia_via_equalizer,
    inverse_loops,
    loop_groupoid,
    loop_groupoid_via_pullback,
    loop_multiply,
    loop_of_map,
    loop_of_map_on_pairs,
    unit_loops,
)

GROUPS = ["Z1", "Z2", "Z3", "Z4", "Z6", "S3", "D4", "Q8", "V4"]


def test_loops_of_bz3(catalog):
    loops = loop_groupoid(catalog.groupoid("BZ3"))
    assert loops.carrier.num_objects == 3
    assert loops.carrier.num_morphisms == 9
    sectors = loops.sectors()
    assert len(sectors) == 3
    assert all(s.size == 1 and s.centralizer_order == 3 for s in sectors)
    assert loops.name == "LBZ3"


def test_sectors_of_bs3(catalog):
    loops = loop_groupoid(catalog.groupoid("BS3"))
    assert loops.carrier.num_objects == 6
    assert loops.carrier.num_morphisms == 36
    sectors = loops.sectors()
    assert sorted(s.size for s in sectors) == [1, 2, 3]
    for s in sectors:
        assert s.size * s.centralizer_order == 6
        assert s.base_object == "*"
        assert s.representative in s.loops
    assert sectors[0].representative == "e"


@pytest.mark.parametrize("name", GROUPS)
def test_loops_of_group_are_conjugation(catalog, name):
    group = catalog.group(name)
    loops = loop_groupoid(catalog.groupoid(f"B{name}"))
    conj = catalog.groupoid(f"conj-{name}")
    iso = GroupoidMap(
        loops.carrier,
        conj,
        {g: g for g in loops.carrier.objects},
        {m: m for m in loops.carrier.morphisms},
    )
    assert iso.is_isomorphism()
    assert len(loops.sectors()) == len(group.conjugacy_classes())
    for s in loops.sectors():
        assert s.centralizer_order == len(group.centralizer(group.index(s.representative)))


@settings(max_examples=8, deadline=None)
@given(n=st.integers(min_value=1, max_value=8))
def test_cyclic_groups_have_one_sector_per_element(catalog, n):
    sectors = loop_groupoid(catalog.groupoid(f"BZ{n}")).sectors()
    assert len(sectors) == n
    assert {s.representative for s in sectors} == {str(k) for k in range(n)}


def test_loops_of_free_action(catalog):
    loops = loop_groupoid(catalog.groupoid("swap2"))
    assert loops.carrier.num_objects == 2
    assert loops.carrier.num_morphisms == 4
    (sector,) = loops.sectors()
    assert sector.size == 2 and sector.centralizer_order == 1


def test_morphism_ids_and_projection(catalog):
    base = catalog.groupoid("BS3")
    loops = loop_groupoid(base)
    gamma, mu = "(01)", "(012)"
    m = loops.morphism(gamma, mu)
    assert loops.mor_tag(m) == (gamma, mu)
    assert loops.carrier.src(m) == gamma
    assert loops.carrier.dst(m) == base.compose_many(mu, gamma, base.inverse(mu))
    assert loops.proj.mor(m) == mu
    assert loops.proj.validate().valid
    assert loops.obj_tag(gamma) == ("*", gamma)


def _groupoids(catalog):
    names = ["pt", "swap2", "BZ2", "BZ3", "BS3", "BV4", "conj-Z3", "regular-S3"]
    groupoids = [catalog.groupoid(n) for n in names]
    groupoids.append(codiscrete(["a", "b", "c"]))
    groupoids.append(disjoint_union(catalog.groupoid("swap2"), catalog.groupoid("BZ2")))
    groupoids.append(product(catalog.groupoid("BZ2"), catalog.groupoid("swap2")).groupoid)
    return groupoids


def test_inertia_is_equivalent_to_loops(catalog):
    for x in _groupoids(catalog):
        loops = loop_groupoid(x)
        eq, comparison = inertia_via_equalizer(x, loops)
        assert eq.groupoid.validate().valid, x.name
        assert comparison.validate().valid, x.name
        report = is_equivalence(comparison)
        assert report.valid, (x.name, report.first_failure)


def test_pullback_model_agrees(catalog):
    for x in _groupoids(catalog):
        loops = loop_groupoid(x)
        direct = {(m, loops.carrier.src(m), loops.carrier.dst(m)) for m in loops.carrier.morphisms}
        assert set(loop_groupoid_via_pullback(x)) == direct, x.name


def test_unit_and_inverse(catalog):
    for x in _groupoids(catalog):
        loops = loop_groupoid(x)
        unit = unit_loops(loops)
        assert unit.validate().valid
        assert inverse_loops(loops).validate().valid
        assert GroupoidMap.compose(loops.proj, unit) == GroupoidMap.identity(x)
        twice = GroupoidMap.compose(inverse_loops(loops), inverse_loops(loops))
        assert twice == GroupoidMap.identity(loops.carrier)


@pytest.mark.parametrize("name", ["BZ3", "swap2", "BZ2"])
def test_fiberwise_multiplication(catalog, name):
    base = catalog.groupoid(name)
    mult = loop_multiply(base)
    assert mult.pairs.groupoid.validate().valid
    assert mult.multiply.validate().valid
    for gamma in base.loops():
        identity = base.identity(base.src(gamma))
        assert mult.product(gamma, identity) == gamma


@pytest.mark.parametrize("name", ["BS3", "BZ4", "BV4", "swap2", "conj-S3", "regular-Z3"])
def test_multiplication_group_axioms(catalog, name):
    report = loop_multiply(catalog.groupoid(name)).check_axioms()
    assert report.valid, report.first_failure


def test_multiplication_on_bs3(catalog):
    bs3 = catalog.groupoid("BS3")
    mult = loop_multiply(bs3)
    e = bs3.identity("*")
    for a, b, c in itertools.product(bs3.morphisms, repeat=3):
        assert mult.times(mult.times(a, b, e), c, e) == mult.times(a, mult.times(b, c, e), e)
    assert any(mult.times(a, b, e) != mult.times(b, a, e) for a, b in itertools.product(bs3.morphisms, repeat=2))
    # θ twists the second factor: (γ1, γ2, θ) -> γ1∘θ^-1∘γ2∘θ
    for a, b, theta in itertools.product(bs3.morphisms, repeat=3):
        assert mult.times(a, b, theta) == bs3.compose_many(a, bs3.inverse(theta), b, theta)


def test_check_axioms_reports_a_broken_inverse(catalog):
    mult = loop_multiply(catalog.groupoid("BZ3"))
    broken = mult._replace(inverse=GroupoidMap.identity(mult.loops.carrier))
    assert broken.check_axioms().first_failure == ("inverse", ("1",))


@pytest.mark.parametrize("source, target", [("BZ2", "BZ4"), ("BZ4", "BS3"), ("swap2", "BS3"), ("pt", "BZ2")])
def test_loop_of_map_is_multiplicative(catalog, source, target):
    a, b = catalog.groupoid(source), catalog.groupoid(target)
    ma, mb = loop_multiply(a), loop_multiply(b)
    for f in enumerate_maps(a, b):
        on_pairs = loop_of_map_on_pairs(f, ma, mb)
        assert on_pairs.validate().valid
        assert check_loop_of_map_multiplicative(f, ma, mb)


def test_loop_of_map_is_functorial(catalog):
    bz2, bz4, bs3 = (catalog.groupoid(n) for n in ("BZ2", "BZ4", "BS3"))
    l2, l4, l6 = loop_groupoid(bz2), loop_groupoid(bz4), loop_groupoid(bs3)
    for f, g in itertools.product(enumerate_maps(bz2, bz4), enumerate_maps(bz4, bs3)):
        lf, lg = loop_of_map(f, l2, l4), loop_of_map(g, l4, l6)
        assert lf.validate().valid and lg.validate().valid
        assert loop_of_map(GroupoidMap.compose(g, f), l2, l6) == GroupoidMap.compose(lg, lf)


def test_loop_preserves_pullbacks(catalog, rng):
    sources = [catalog.groupoid(n) for n in ("pt", "swap2", "BZ2", "BZ3")]
    targets = [catalog.groupoid(n) for n in ("BZ2", "BZ4", "swap2", "BS3")]
    maps = {(a.name, c.name): list(enumerate_maps(a, c)) for a in sources for c in targets}
    for _ in range(12):
        c = targets[rng.integers(len(targets))]
        a, b = sources[rng.integers(len(sources))], sources[rng.integers(len(sources))]
        fs, gs = maps[(a.name, c.name)], maps[(b.name, c.name)]
        f, g = fs[rng.integers(len(fs))], gs[rng.integers(len(gs))]
        assert check_loop_preserves_pullback(f, g), (a.name, b.name, c.name)


def test_loop_preserves_homotopy_fiber(point_into_bz2):
    assert check_loop_preserves_pullback(point_into_bz2, point_into_bz2)
