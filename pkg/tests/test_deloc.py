import pytest

from orbiloop.cocycles import GerbeCocycle, NerveCochain
from orbiloop.cohomology import BarCochain, Coefficients, QmodZ
from orbiloop.deloc import (
    CycloMatrix,
    CyclotomicField,
    GammaComplex,
    brylinski,
    delocalized,
    delocalized_euler_characteristic,
    delocalized_untwisted_rational,
    sector_characters,
    sector_table,
)
from orbiloop.exceptions import InternalAssertionError, PreconditionError, SchemaError
from orbiloop.groupoids import GroupGroupoid


# ------------------------------------------------------------- cyclotomic


def test_roots_of_unity():
    field = CyclotomicField(4)
    i = field.zeta()
    assert field.degree == 2
    assert i * i == -1
    assert field.zeta(4) == 1
    assert field.from_qmodz("1/2") == -1
    assert field.from_qmodz(QmodZ(3, 4)) == field.zeta(-1)
    assert i.conjugate() == field.zeta(3)
    assert i * i.conjugate() == 1
    assert not i.is_rational()


@pytest.mark.parametrize("n", [1, 2, 3, 5, 6, 8, 12])
def test_sum_of_roots_vanishes(n):
    field = CyclotomicField(n)
    total = field.zero()
    for k in range(n):
        total = total + field.zeta(k)
    assert total == (1 if n == 1 else 0)


def test_field_preconditions():
    with pytest.raises(PreconditionError):
        CyclotomicField(0)
    with pytest.raises(InternalAssertionError):
        CyclotomicField(4).from_qmodz("1/3")
    with pytest.raises(PreconditionError):
        CyclotomicField(3).one() + CyclotomicField(4).one()
    with pytest.raises(InternalAssertionError):
        CyclotomicField(3).zeta().rational()


def test_cyclotomic_matrix_rank():
    field = CyclotomicField(4)
    i = field.zeta()
    hermitian = CycloMatrix(field, (2, 2), {(0, 0): 1, (0, 1): i, (1, 0): i.conjugate(), (1, 1): 1})
    assert hermitian.rank() == 1
    rotation = CycloMatrix(field, (2, 2), {(0, 0): 1, (0, 1): i, (1, 0): i, (1, 1): 1})
    assert rotation.rank() == 2
    assert (hermitian @ hermitian) == hermitian + hermitian
    assert CycloMatrix(field, (3, 0)).rank() == 0


# ---------------------------------------------------------- gamma complex


def test_rotation_action_needs_subdivision(catalog):
    space = catalog.gcomplex("S2-rot2")
    assert not space.is_regular()
    with pytest.raises(PreconditionError):
        space.fixed_complex(1)
    subdivided = space.subdivided()
    assert subdivided.subdivisions == 2
    assert subdivided.is_regular()
    # the rotation axis meets the sphere in two points
    assert subdivided.fixed_complex(1).f_vector() == [2]
    assert subdivided.fixed_complex(0) == subdivided.complex


def test_three_fold_rotation_fixes_two_points(catalog):
    space = catalog.gcomplex("S2-rot3").subdivided()
    assert space.fixed_complex(1).f_vector() == [2]
    assert space.fixed_complex(2).f_vector() == [2]
    assert catalog.gcomplex("S2-rot3").orbit("1") == ["1", "2", "3"]


def test_action_validation(catalog):
    group, interval = catalog.group("Z2"), catalog.complex("interval")
    swap = {"0": "1", "1": "0"}
    with pytest.raises(SchemaError):
        GammaComplex(interval, group, {0: {"0": "0", "1": "1"}})
    with pytest.raises(SchemaError):
        GammaComplex(interval, group, {0: {"0": "0", "1": "0"}, 1: swap})
    with pytest.raises(PreconditionError) as info:
        GammaComplex(interval, group, {0: swap, 1: swap})
    assert info.value.precondition == "group-action"


def test_cochain_action_is_signed_permutation(catalog):
    space = catalog.gcomplex("interval-swap")
    edge = space.cochain_action(1, 1).toarray()
    assert edge.tolist() == [[-1]]
    vertices = space.cochain_action(1, 0).toarray()
    assert vertices.tolist() == [[0, 1], [1, 0]]


def test_brylinski_sectors(catalog):
    sectors = brylinski(catalog.gcomplex("point-S3")).sectors
    assert sorted(s.class_size for s in sectors) == [1, 2, 3]
    assert sectors[0].label == "e"
    assert all(s.fixed.f_vector() == [1] for s in sectors)
    assert sum(s.class_size * len(s.centralizer) for s in sectors) == 3 * 6


# ------------------------------------------------------------ delocalized


@pytest.mark.parametrize(
    "name, gerbe, dims",
    [
        ("point-S3", None, [3]),
        ("point-Z4", None, [4]),
        ("point-V4", None, [4]),
        ("point-V4", "discrete-torsion-V4", [1]),
        ("S2-rot2", None, [3, 0, 1]),
        ("S2-rot3", None, [5, 0, 1]),
    ],
)
def test_delocalized_dims(catalog, name, gerbe, dims):
    result = delocalized(catalog.gcomplex(name), catalog.gerbe(gerbe) if gerbe else None)
    assert result.dims == dims
    assert result.total == sum(dims)
    assert result.to_dict()["total"] == sum(dims)


def test_discrete_torsion_kills_twisted_sectors(catalog):
    result = delocalized(catalog.gcomplex("point-V4"), catalog.gerbe("discrete-torsion-V4"))
    twisted = {row.label: row.twisted for row in result.sectors}
    assert twisted == {"(0,0)": [1], "(0,1)": [0], "(1,0)": [0], "(1,1)": [0]}
    assert result.sectors[1].epsilon["(1,0)"] == QmodZ(1, 2)
    assert len(sector_table(result)) == 4


@pytest.mark.parametrize("name", ["point-S3", "interval-swap", "S2-rot2", "S2-rot3"])
def test_untwisted_paths_agree(catalog, name):
    space = catalog.gcomplex(name)
    assert delocalized_untwisted_rational(space) == delocalized(space).dims


def test_orbifold_euler_characteristic(catalog):
    assert delocalized_euler_characteristic(catalog.gcomplex("point-S3")) == 3
    assert delocalized_euler_characteristic(catalog.gcomplex("S2-rot2")) == 4
    assert delocalized_euler_characteristic(catalog.gcomplex("S2-rot3")) == 6


def test_gerbe_must_live_on_the_acting_group(catalog):
    space = catalog.gcomplex("point-Z4")
    with pytest.raises(PreconditionError):
        sector_characters(space, catalog.gerbe("discrete-torsion-V4"), 1)
    assert set(sector_characters(space, None, 1).values()) == {QmodZ(0)}


def _gauge_shift(gerbe, values, denominator):
    group = gerbe.base.group
    shift = BarCochain.from_function(
        group, 1, lambda g: QmodZ(0 if g == group.identity else values[g], denominator), Coefficients.QMODZ
    )
    return GerbeCocycle(gerbe.beta + NerveCochain.from_bar(gerbe.base, shift).coboundary())


@pytest.mark.parametrize("values", [[0, 1, 2, 3], [0, 3, 3, 1], [0, 2, 1, 0]])
def test_delocalized_is_gauge_invariant(catalog, values):
    gerbe = catalog.gerbe("discrete-torsion-V4")
    space = catalog.gcomplex("point-V4")
    shifted = _gauge_shift(gerbe, values, 4)
    assert shifted.beta != gerbe.beta
    result = delocalized(space, shifted)
    assert result.dims == [1]
    assert [row.epsilon for row in result.sectors] == [row.epsilon for row in delocalized(space, gerbe).sectors]


def test_coboundary_gerbe_leaves_rotation_untwisted(catalog):
    space = catalog.gcomplex("S2-rot2")
    trivial = GerbeCocycle(NerveCochain.zero(GroupGroupoid(space.group), 2, Coefficients.QMODZ))
    shifted = _gauge_shift(trivial, [0, 1], 3)
    assert not shifted.beta.is_zero()
    assert delocalized(space, shifted).dims == [3, 0, 1]
