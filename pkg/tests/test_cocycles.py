import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiloop.cocycles import (
    GerbeCocycle,
    NerveCochain,
    build_e_phi,
    check_h_equals_chi_bar,
    chi_bar,
    dixmier_douady,
    extension_groupoid,
    fiber_holonomy,
    inner_local_system,
    loop_powers,
    normalize_gerbe,
    pairing_cocycle,
    restrict_to_loops,
    transgress_bundle,
    transgress_gerbe,
    transgression_value,
    twisted_sectors,
    verify_holonomy_theorem,
)
from orbiloop.cohomology import BarCochain, Character, Coefficients, QmodZ, characters
from orbiloop.exceptions import PreconditionError
from orbiloop.groupoids import GroupGroupoid, GroupoidMap, cyclic, direct_product, enumerate_maps
from orbiloop.loops import loop_groupoid, loop_of_map

Z, QMODZ = Coefficients.Z, Coefficients.QMODZ


def _bundle(catalog, name, index):
    groupoid = catalog.groupoid(f"B{name}")
    return NerveCochain.from_bar(groupoid, characters(catalog.group(name))[index].cochain())


# ------------------------------------------------------------------ nerve


def test_bar_and_dict_backed_cochains_agree(catalog):
    bz3, z3 = catalog.groupoid("BZ3"), catalog.group("Z3")
    by_table = NerveCochain.from_bar(bz3, Character(z3, [QmodZ(k, 3) for k in range(3)]).cochain())
    by_dict = NerveCochain.from_function(bz3, 1, lambda g: QmodZ(int(g), 3), QMODZ)
    assert by_table == by_dict
    assert by_dict.is_cocycle()
    assert by_table.coboundary() == by_dict.coboundary()


def test_from_bar_needs_the_matching_group(catalog):
    with pytest.raises(PreconditionError):
        NerveCochain.from_bar(catalog.groupoid("BZ2"), characters(catalog.group("Z3"))[1].cochain())


def test_rejects_non_composable_keys(catalog):
    swap2 = catalog.groupoid("swap2")
    flips = [m for m in swap2.morphisms if not swap2.is_identity(m)]
    f = flips[0]
    with pytest.raises(PreconditionError):
        NerveCochain(swap2, 2, {(f, f, f): 1})
    with pytest.raises(PreconditionError):
        NerveCochain(swap2, 0, {("nowhere",): 1})


def test_degree_zero_coboundary(catalog):
    swap2 = catalog.groupoid("swap2")
    a = NerveCochain(swap2, 0, {("0",): 2, ("1",): 5})
    da = a.coboundary()
    for f in swap2.morphisms:
        assert da.value(f) == a.value(swap2.src(f)) - a.value(swap2.dst(f))
    assert da.is_cocycle()


@settings(max_examples=20, deadline=None)
@given(values=st.lists(st.integers(min_value=-4, max_value=4), min_size=9, max_size=9))
def test_square_of_nerve_coboundary_vanishes(catalog, values):
    three = catalog.groupoid("regular-S3")
    morphisms = list(three.morphisms)[: len(values)]
    c = NerveCochain(three, 1, dict(zip(((m,) for m in morphisms), values)))
    assert c.coboundary().coboundary().is_zero()


def test_pullback_along_base_point(catalog, point_into_bz2):
    sign = _bundle(catalog, "Z2", 1)
    pulled = sign.pullback(point_into_bz2)
    assert pulled.groupoid is point_into_bz2.domain
    assert pulled.is_zero()
    with pytest.raises(PreconditionError):
        _bundle(catalog, "Z3", 1).pullback(point_into_bz2)


def test_restrict_to_loops_is_the_bundle_transgression(catalog):
    phi = _bundle(catalog, "Z3", 1)
    loops = loop_groupoid(phi.groupoid)
    assert restrict_to_loops(phi, loops) == transgress_bundle(phi, loops)


# ---------------------------------------------------------------- bundles


def test_loop_powers(catalog):
    bz6 = catalog.groupoid("BZ6")
    assert loop_powers(bz6, "2") == ["0", "2", "4"]
    assert loop_powers(bz6, "0") == ["0"]


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_h_equals_chi_bar_on_cyclic_groups(catalog, n):
    for phi in characters(catalog.group(f"Z{n}")):
        assert check_h_equals_chi_bar(NerveCochain.from_bar(catalog.groupoid(f"BZ{n}"), phi.cochain()))


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "V4"])
def test_h_equals_chi_bar_on_nonabelian_groups(catalog, name):
    group = catalog.group(name)
    for phi in characters(group):
        assert check_h_equals_chi_bar(NerveCochain.from_bar(catalog.groupoid(f"B{name}"), phi.cochain()))


def test_chi_bar_inverts_the_bockstein(catalog):
    phi = _bundle(catalog, "Z4", 1)
    chi = phi.lift().coboundary().to_integral()
    values = chi_bar(chi)
    assert values == {g: phi.value(g) for g in phi.groupoid.loops()}
    with pytest.raises(PreconditionError):
        chi_bar(phi)


def test_bundle_must_be_a_cocycle(catalog):
    bz3 = catalog.groupoid("BZ3")
    broken = NerveCochain(bz3, 1, {("1",): QmodZ(1, 3)}, QMODZ)
    with pytest.raises(PreconditionError):
        transgress_bundle(broken)
    with pytest.raises(PreconditionError):
        check_h_equals_chi_bar(NerveCochain(bz3, 1, {}, Z))


def test_twisted_sectors_of_sign(catalog):
    blocks = twisted_sectors(_bundle(catalog, "S3", 1))
    assert list(blocks) == [QmodZ(0), QmodZ(1, 2)]
    assert sorted(s.size for s in blocks[QmodZ(0)]) == [1, 2]
    assert [s.size for s in blocks[QmodZ(1, 2)]] == [3]


def test_twisted_sectors_of_cyclic_character(catalog):
    blocks = twisted_sectors(_bundle(catalog, "Z3", 1))
    assert list(blocks) == [QmodZ(0), QmodZ(1, 3), QmodZ(2, 3)]
    assert all(len(sectors) == 1 for sectors in blocks.values())


# ----------------------------------------------------------------- gerbes


@pytest.mark.parametrize("n", [2, 3])
def test_pairing_transgression_is_a_commutator(n):
    group = direct_product(cyclic(n), cyclic(n))
    gerbe = pairing_cocycle(GroupGroupoid(group), n)
    for h, gamma in itertools.product(group.elements, repeat=2):
        expected = gerbe(h, gamma) - gerbe(gamma, h)
        assert transgression_value(gerbe, gamma, h) == expected
    tau = transgress_gerbe(gerbe)
    assert tau.is_cocycle()


def test_discrete_torsion_local_system(catalog):
    gerbe = catalog.gerbe("discrete-torsion-V4")
    assert gerbe.denominator() == 2
    local = inner_local_system(gerbe)
    assert not local.is_trivial()
    assert sorted(local.nontrivial_sectors()) == ["(0,1)", "(1,0)", "(1,1)"]
    assert all(v == 0 for v in local.character("(0,0)").values())
    assert local.character("(1,0)")["(0,1)"] == QmodZ(1, 2)
    assert set(local.to_dict()) == {"(0,0)", "(0,1)", "(1,0)", "(1,1)"}


def test_untwisted_gerbe_has_trivial_local_system(catalog):
    bs3 = catalog.groupoid("BS3")
    zero = GerbeCocycle(NerveCochain.zero(bs3, 2, QMODZ))
    assert inner_local_system(zero).is_trivial()
    assert transgress_gerbe(zero).is_zero()


def test_normalize_gerbe_removes_constant_shift(catalog):
    bz3 = catalog.groupoid("BZ3")
    constant = NerveCochain.from_function(bz3, 2, lambda g, h: QmodZ(1, 3), QMODZ)
    assert constant.is_cocycle()
    assert not constant.is_normalized()
    with pytest.raises(PreconditionError):
        GerbeCocycle(constant)
    gerbe, shift = normalize_gerbe(constant)
    assert gerbe.beta.is_zero()
    assert shift.value("1") == QmodZ(1, 3)
    assert gerbe.beta == constant - shift.coboundary()


def test_normalize_keeps_normal_cocycles(catalog):
    gerbe = catalog.gerbe("discrete-torsion-V4")
    normalized, shift = normalize_gerbe(gerbe.beta)
    assert shift.is_zero()
    assert normalized.beta == gerbe.beta


def test_extension_groupoid_of_discrete_torsion(catalog):
    gerbe = catalog.gerbe("discrete-torsion-V4")
    extension, projection = extension_groupoid(gerbe, 2)
    assert extension.num_objects == 1
    assert extension.num_morphisms == 8
    assert extension.validate().valid
    assert projection.validate().valid
    # the commutator pairing makes the extension non-abelian
    assert any(extension.compose(a, b) != extension.compose(b, a) for a, b in itertools.product(extension.morphisms, repeat=2))
    with pytest.raises(PreconditionError):
        extension_groupoid(gerbe, 3)


def test_dixmier_douady_is_integral_cocycle(catalog):
    dd = dixmier_douady(catalog.gerbe("discrete-torsion-V4"))
    assert dd.degree == 3
    assert dd.coefficients is Z
    assert dd.is_cocycle()


# --------------------------------------------------------------- holonomy


def test_holonomy_theorem_on_z4(catalog):
    z4 = catalog.group("Z4")
    phi = characters(z4)[1]
    report = verify_holonomy_theorem(z4, phi, 16)
    assert report.verdict
    assert report.transgression == report.phi == report.chi_bar
    assert report.phi["1"] == QmodZ(1, 4)
    assert len(report.rows()) == 4
    assert report.to_dict()["verdict"] is True


@pytest.mark.parametrize("name", ["Z2", "Z3", "Z5"])
def test_holonomy_theorem_for_every_character(catalog, name):
    group = catalog.group(name)
    for phi in characters(group):
        assert verify_holonomy_theorem(group, phi).verdict


def test_fiber_holonomy_reads_the_character(catalog):
    z3 = catalog.group("Z3")
    phi = characters(z3)[2]
    gerbe = build_e_phi(z3, phi, 9)
    product = gerbe.base.group
    for s in range(3):
        assert fiber_holonomy(gerbe, product.label(s), 9) == phi(s)


def test_holonomy_preconditions(catalog):
    z4, s3 = catalog.group("Z4"), catalog.group("S3")
    with pytest.raises(PreconditionError):
        verify_holonomy_theorem(z4, characters(z4)[1], 6)
    with pytest.raises(PreconditionError):
        verify_holonomy_theorem(s3, characters(s3)[1])
    with pytest.raises(PreconditionError):
        build_e_phi(z4, characters(catalog.group("Z2"))[1], 8)


@pytest.mark.slow
@pytest.mark.parametrize("m", range(2, 7))
def test_holonomy_theorem_with_extended_truncation(catalog, m):
    gamma = catalog.group(f"Z{m}")
    for phi in characters(gamma):
        report = verify_holonomy_theorem(gamma, phi, 4 * m * phi.order, num_workers=1)
        assert report.verdict, report.mismatches
        assert report.n == 4 * m * phi.order


# --------------------------------------------------------- functoriality


def test_extension_of_z2_by_carry_cocycle_is_z4(catalog):
    bz2 = catalog.groupoid("BZ2")
    carry = GerbeCocycle.from_bar(bz2, BarCochain(bz2.group, [[0, 0], [0, 1]], 2, QMODZ))
    extension, projection = extension_groupoid(carry, 2)
    assert extension.num_morphisms == 4
    assert extension.validate().valid and projection.validate().valid
    # either lift of the generator has order 4
    lift = [m for m in extension.morphisms if projection.mor(m) == "1"][0]
    powers = [extension.identity("*")]
    for _ in range(3):
        powers.append(extension.compose(lift, powers[-1]))
    assert len(set(powers)) == 4
    assert extension.compose(lift, powers[-1]) == powers[0]
    bz4 = catalog.groupoid("BZ4")
    iso = GroupoidMap(bz4, extension, {"*": "*"}, {str(k): powers[k] for k in range(4)})
    assert iso.is_isomorphism()


def _normalized_cochain(rng, groupoid, denominator=6):
    def value(f):
        if groupoid.is_identity(f):
            return QmodZ(0)
        return QmodZ(int(rng.integers(denominator)), denominator)

    return NerveCochain.from_function(groupoid, 1, value, QMODZ)


@pytest.mark.parametrize("name", ["BZ3", "BS3", "swap2", "conj-Z3"])
def test_transgression_of_coboundary(catalog, rng, name):
    groupoid = catalog.groupoid(name)
    loops = loop_groupoid(groupoid)
    c = _normalized_cochain(rng, groupoid)
    tau = transgress_gerbe(GerbeCocycle(c.coboundary()), loops)
    assert tau == restrict_to_loops(c, loops).coboundary()


@pytest.mark.parametrize("name", ["pt", "BZ2", "BZ4", "swap2", "BV4"])
def test_transgression_commutes_with_pullback(catalog, name):
    gerbe = catalog.gerbe("discrete-torsion-V4")
    source, target = loop_groupoid(catalog.groupoid(name)), loop_groupoid(gerbe.base)
    tau = transgress_gerbe(gerbe, target)
    for f in enumerate_maps(source.base, gerbe.base):
        pulled = transgress_gerbe(GerbeCocycle(gerbe.beta.pullback(f)), source)
        assert pulled == tau.pullback(loop_of_map(f, source, target))


@pytest.mark.parametrize("name", ["BZ2", "BZ4", "swap2"])
def test_bundle_transgression_commutes_with_pullback(catalog, name):
    bs3 = catalog.groupoid("BS3")
    sign = NerveCochain.from_bar(bs3, characters(bs3.group)[1].cochain())
    source, target = loop_groupoid(catalog.groupoid(name)), loop_groupoid(bs3)
    h = transgress_bundle(sign, target)
    for f in enumerate_maps(source.base, bs3):
        assert transgress_bundle(sign.pullback(f), source) == h.pullback(loop_of_map(f, source, target))
