import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiloop.exceptions import PreconditionError
from orbiloop.groupoids import (
    FiniteGroup,
    FiniteGroupoid,
    GroupGroupoid,
    GroupoidMap,
    action_groupoid,
    check_universal_property,
    codiscrete,
    cyclic,
    dihedral,
    direct_product,
    discrete,
    disjoint_union,
    enumerate_maps,
    enumerate_nat_isos,
    equalizer,
    fiber_product,
    induced_map,
    is_equivalence,
    klein,
    product,
    quaternion,
    symmetric,
)

st_order = st.integers(min_value=1, max_value=12)


# ------------------------------------------------------------------- groups


def test_cyclic_labels_and_structure():
    z5 = cyclic(5)
    assert z5.elements == ("0", "1", "2", "3", "4")
    assert z5.name == "Z5"
    assert z5.mul(z5.index("3"), z5.index("4")) == z5.index("2")
    assert z5.is_abelian()
    assert z5.exponent == 5


def test_small_nonabelian_groups():
    s3, d4, q8 = symmetric(3), dihedral(4), quaternion()
    assert (s3.order, d4.order, q8.order) == (6, 8, 8)
    assert not s3.is_abelian() and not d4.is_abelian() and not q8.is_abelian()
    assert len(s3.conjugacy_classes()) == 3
    assert len(d4.conjugacy_classes()) == 5
    assert len(q8.conjugacy_classes()) == 5
    assert s3.abelianization_order() == 2
    assert d4.abelianization_order() == 4
    assert q8.abelianization_order() == 4
    assert s3.label(s3.identity) == "e"


def test_quaternion_relations():
    q8 = quaternion()
    i, j, k = q8.index("i"), q8.index("j"), q8.index("k")
    assert q8.mul(i, j) == k
    assert q8.mul(j, i) == q8.index("-k")
    assert q8.power(i, 2) == q8.index("-1")
    assert q8.element_order(i) == 4


def test_direct_product_labels():
    v4 = klein()
    assert v4.name == "V4"
    assert v4.elements == ("(0,0)", "(0,1)", "(1,0)", "(1,1)")
    assert v4.exponent == 2
    z6 = direct_product(cyclic(2), cyclic(3))
    assert z6.is_abelian() and z6.exponent == 6


def test_group_rejects_bad_tables():
    with pytest.raises(PreconditionError):
        FiniteGroup(["a", "a"], [[0, 1], [1, 0]])
    with pytest.raises(PreconditionError):
        FiniteGroup(["a", "b"], [[0, 2], [1, 0]])


@settings(max_examples=30, deadline=None)
@given(n=st_order, a=st.integers(min_value=0, max_value=11), b=st.integers(min_value=0, max_value=11))
def test_cyclic_arithmetic(n, a, b):
    group = cyclic(n)
    a, b = a % n, b % n
    assert group.mul(a, b) == (a + b) % n
    assert group.power(a, n) == group.identity
    assert group.mul(a, group.inv(a)) == group.identity
    assert n % group.element_order(a) == 0
    assert group.centralizer(a) == list(range(n))


# ---------------------------------------------------------------- groupoids


def test_catalog_groupoids_validate(catalog):
    for name in ("pt", "swap2", "BZ4", "BS3", "BQ8", "conj-S3", "regular-D4"):
        assert catalog.groupoid(name).validate().valid, name


def test_validate_reports_first_failure():
    broken = FiniteGroupoid(
        ["a"],
        [("e", "a", "a"), ("f", "a", "a")],
        {("e", "e"): "e", ("f", "e"): "f", ("e", "f"): "f", ("f", "f"): "f"},
        {"a": "e"},
        {"e": "e", "f": "f"},
    )
    report = broken.validate()
    assert not report
    assert report.first_failure == ("inverse", ("f",))
    assert report.to_dict()["failures"][0]["axiom"] == "inverse"


def test_groupoid_rejects_unknown_endpoints():
    with pytest.raises(PreconditionError):
        FiniteGroupoid(["a"], [("e", "a", "b")], {}, {"a": "e"}, {"e": "e"})


def test_discrete_and_codiscrete():
    two = discrete(["a", "b"])
    assert two.num_morphisms == 2
    assert len(two.connected_components()) == 2
    three = codiscrete(["a", "b", "c"])
    assert three.num_morphisms == 9
    assert three.is_connected()
    assert three.validate().valid
    assert len(three.hom("a", "c")) == 1


def test_disjoint_union(catalog):
    union = disjoint_union(catalog.groupoid("swap2"), catalog.groupoid("BZ2"))
    assert union.num_objects == 3
    assert union.num_morphisms == 4 + 2
    assert len(union.connected_components()) == 2
    assert union.validate().valid


@settings(max_examples=20, deadline=None)
@given(n=st_order)
def test_regular_action_groupoid_is_codiscrete(n):
    group = cyclic(n)
    groupoid = action_groupoid(group, range(n), lambda g, x: (x + g) % n)
    assert groupoid.validate().valid
    assert groupoid.is_connected()
    assert groupoid.loops() == [groupoid.identity(x) for x in groupoid.objects]


def test_action_groupoid_rejects_non_actions():
    with pytest.raises(PreconditionError) as info:
        action_groupoid(cyclic(3), range(3), lambda g, x: (x + 1) % 3)
    assert info.value.precondition == "action"


def test_composition_follows_group_table(catalog):
    bs3 = catalog.groupoid("BS3")
    group = bs3.group
    for a in group.elements:
        for b in group.elements:
            assert bs3.compose(a, b) == group.label(group.mul(group.index(a), group.index(b)))
    assert bs3.num_morphisms == len(list(bs3.composable_tuples(1)))


def test_composable_tuples_count(catalog):
    swap2 = catalog.groupoid("swap2")
    # two objects, every object has two outgoing morphisms
    assert len(list(swap2.composable_tuples(2))) == 4 * 2
    assert len(list(swap2.composable_tuples(3))) == 4 * 2 * 2


# --------------------------------------------------------------------- maps


def test_identity_and_composition(catalog):
    bz4 = catalog.groupoid("BZ4")
    identity = GroupoidMap.identity(bz4)
    assert identity.validate().valid
    assert identity.is_isomorphism()
    assert GroupoidMap.compose(identity, identity) == identity
    assert identity.inverse() == identity


def test_composition_requires_matching_groupoids(catalog, point_into_bz2):
    with pytest.raises(PreconditionError):
        GroupoidMap.compose(point_into_bz2, point_into_bz2)


def test_enumerate_maps_counts_homomorphisms(catalog):
    bz2, bz3, bs3 = catalog.groupoid("BZ2"), catalog.groupoid("BZ3"), catalog.groupoid("BS3")
    assert len(list(enumerate_maps(bz2, bz2))) == 2
    assert len(list(enumerate_maps(bz2, bs3))) == 4
    assert len(list(enumerate_maps(bz3, bs3))) == 3
    assert len(list(enumerate_maps(bz3, bz2))) == 1
    assert all(f.validate().valid for f in enumerate_maps(catalog.groupoid("swap2"), bz2))


def test_nat_isos_of_abelian_target(catalog):
    bz2 = catalog.groupoid("BZ2")
    for f in enumerate_maps(bz2, bz2):
        isos = list(enumerate_nat_isos(f, f))
        assert len(isos) == 2
        assert all(theta.validate().valid for theta in isos)


def test_is_equivalence(catalog, point_into_bz2):
    assert is_equivalence(GroupoidMap.identity(catalog.groupoid("BS3"))).valid
    report = is_equivalence(point_into_bz2)
    assert report.first_failure[0] == "full"

    swap2, pt = catalog.groupoid("swap2"), catalog.groupoid("pt")
    # swap2 is connected with trivial automorphism groups
    collapse = GroupoidMap(
        swap2, pt, {x: "*" for x in swap2.objects}, {m: pt.identity("*") for m in swap2.morphisms}
    )
    assert collapse.validate().valid
    assert is_equivalence(collapse).valid
    assert not collapse.is_isomorphism()


# ------------------------------------------------------------------- limits


def test_product_of_groups(catalog):
    square = product(catalog.groupoid("BZ2"), catalog.groupoid("BZ3"))
    assert square.groupoid.num_objects == 1
    assert square.groupoid.num_morphisms == 6
    assert square.groupoid.validate().valid
    assert square.first.validate().valid and square.second.validate().valid


def test_homotopy_fiber_of_base_point(point_into_bz2):
    fp = fiber_product(point_into_bz2, point_into_bz2)
    # the homotopy fiber of pt -> BZ2 is Z2 as a discrete groupoid
    assert fp.groupoid.num_objects == 2
    assert fp.groupoid.num_morphisms == 2
    assert not fp.groupoid.is_connected()
    assert fp.groupoid.validate().valid
    assert fp.filler.validate().valid


def test_fiber_product_needs_common_codomain(catalog, point_into_bz2):
    identity = GroupoidMap.identity(catalog.groupoid("BZ3"))
    with pytest.raises(PreconditionError):
        fiber_product(point_into_bz2, identity)


@pytest.mark.parametrize("name", ["pt", "swap2", "BZ3", "BS3"])
def test_equalizer_of_identity(catalog, name):
    x = catalog.groupoid(name)
    identity = GroupoidMap.identity(x)
    eq = equalizer(identity, identity)
    assert eq.groupoid.validate().valid
    assert eq.projection.validate().valid
    assert eq.filler.validate().valid


def test_equalizer_filler_of_distinct_maps(catalog):
    bz2, bs3 = catalog.groupoid("BZ2"), catalog.groupoid("BS3")
    f, g = [m for m in enumerate_maps(bz2, bs3) if m.mor("1") != "e"][:2]
    assert f != g
    eq = equalizer(f, g)
    assert eq.groupoid.validate().valid
    assert eq.filler.source == GroupoidMap.compose(f, eq.projection)
    assert eq.filler.target == GroupoidMap.compose(g, eq.projection)
    assert eq.filler.validate().valid
    # one object per pair (γ1, γ2) of morphisms into the single object
    assert eq.groupoid.num_objects == 36
    assert {eq.filler.component(o) for o in eq.groupoid.objects} == set(bs3.morphisms)


def test_induced_map_factors_the_cone(catalog, point_into_bz2):
    fp = fiber_product(point_into_bz2, point_into_bz2)
    bz2, pt = catalog.groupoid("BZ2"), catalog.groupoid("pt")
    (u,) = enumerate_maps(bz2, pt)
    v = u
    thetas = list(enumerate_nat_isos(GroupoidMap.compose(point_into_bz2, u), GroupoidMap.compose(point_into_bz2, v)))
    assert len(thetas) == 2
    for theta in thetas:
        cone = induced_map(fp, u, v, theta)
        assert cone.validate().valid
        assert GroupoidMap.compose(fp.first, cone) == u
        assert GroupoidMap.compose(fp.second, cone) == v
        assert fp.filler.component(cone.obj("*")) == theta.component("*")
        factoring = [
            k
            for k in enumerate_maps(bz2, fp.groupoid)
            if GroupoidMap.compose(fp.first, k) == u
            and GroupoidMap.compose(fp.second, k) == v
            and fp.filler.component(k.obj("*")) == theta.component("*")
        ]
        assert factoring == [cone]


@pytest.mark.parametrize("test_name", ["pt", "BZ2", "swap2"])
def test_fiber_product_universal_property(catalog, point_into_bz2, test_name):
    report = check_universal_property(point_into_bz2, point_into_bz2, catalog.groupoid(test_name))
    assert report.valid, report.first_failure


@pytest.mark.parametrize("test_name", ["pt", "BZ2"])
def test_universal_property_over_bs3(catalog, test_name):
    bs3 = catalog.groupoid("BS3")
    f = [m for m in enumerate_maps(catalog.groupoid("BZ2"), bs3) if m.mor("1") != "e"][0]
    g = [m for m in enumerate_maps(catalog.groupoid("BZ3"), bs3) if m.mor("1") != "e"][0]
    report = check_universal_property(f, g, catalog.groupoid(test_name))
    assert report.valid, report.first_failure


def test_group_groupoid_reports_group(catalog):
    bz6 = catalog.groupoid("BZ6")
    assert isinstance(bz6, GroupGroupoid)
    assert bz6.group == catalog.group("Z6")
    assert bz6.objects == ("*",)
    assert bz6.identity("*") == "0"
    assert bz6.inverse("2") == "4"


def test_from_group_is_lazy():
    bz5 = FiniteGroupoid.from_group(cyclic(5))
    assert isinstance(bz5, GroupGroupoid)
    assert bz5.name == "BZ5"
    assert bz5.num_morphisms == 5
    assert bz5.compose("3", "4") == "2"
    assert FiniteGroupoid.from_group(cyclic(2), name="sign").name == "sign"
