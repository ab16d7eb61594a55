import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbiloop.cohomology import (
    BarCochain,
    Character,
    Coefficients,
    FinAbPresentation,
    QmodZ,
    ZxGamma,
    ZxGammaCochain,
    bockstein,
    characters,
    cohomologous,
    cohomology,
    cross_with_identity,
    integrate,
    inverse_bockstein_cyclic,
    is_coboundary,
    sparse_invariant_factors,
)
from orbiloop.cocycles import e_phi_on_zxgamma
from orbiloop.cohomology.bar import check_table_size
from orbiloop.cohomology.smith import in_column_span, in_column_span_mod, in_rational_span
from orbiloop.exceptions import CostGuardError, PreconditionError, SchemaError

Z, Q, QMODZ = Coefficients.Z, Coefficients.Q, Coefficients.QMODZ

st_small = st.integers(min_value=-3, max_value=3)


# -------------------------------------------------------------------- Q/Z


def test_qmodz_reduces_mod_one():
    assert QmodZ(5, 3) == QmodZ(2, 3)
    assert QmodZ(-1, 3) == QmodZ(2, 3)
    assert QmodZ(3, 4) + QmodZ(1, 2) == QmodZ(1, 4)
    assert QmodZ(1, 3) - QmodZ(2, 3) == QmodZ(2, 3)
    assert 3 * QmodZ(1, 3) == 0
    assert QmodZ(4, 6).order == 3
    assert (QmodZ(4, 6).numerator, QmodZ(4, 6).denominator) == (2, 3)


def test_qmodz_text():
    assert QmodZ.parse("3/4") == QmodZ(3, 4)
    assert QmodZ.parse(2) == 0
    assert str(QmodZ(1, 2)) == "1/2"
    assert str(QmodZ(0)) == "0"
    assert QmodZ(3, 2).to_json() == "1/2"
    assert QmodZ(0).to_json() == 0


def test_coefficients_parse_and_coerce():
    assert Coefficients.parse("QmodZ") is QMODZ
    assert QMODZ.symbol == "Q/Z"
    with pytest.raises(SchemaError):
        Coefficients.parse("R")
    with pytest.raises(SchemaError):
        Z.coerce("1/2")
    assert Q.coerce("1/2") * 2 == 1
    assert QMODZ.coerce("5/4") == QmodZ(1, 4)


# ------------------------------------------------------------------ smith


def test_invariant_factors():
    assert sparse_invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert sparse_invariant_factors([[2, 4], [4, 8]]) == [2]
    assert sparse_invariant_factors([[1, 1, 0], [0, 1, 1], [1, 0, 1]]) == [1, 1, 2]


def test_span_membership():
    matrix = [[2], [0]]
    assert in_column_span(matrix, [4, 0])
    assert not in_column_span(matrix, [1, 0])
    assert in_rational_span(matrix, [1, 0])
    assert not in_rational_span(matrix, [0, 1])
    # 1/2 * (2, 0) = (1, 0), so (1/2, 0) is in the Q/Z span
    assert in_column_span_mod(matrix, [1, 0], 2)
    assert not in_column_span_mod(matrix, [0, 1], 2)


def test_presentation():
    h = FinAbPresentation(1, [2, 3])
    assert h.torsion == (6,)
    assert h.factors == (6, 0)
    assert h.order is None
    assert str(h) == "Z + Z/6"
    assert FinAbPresentation(0, [2, 2]).order == 4
    assert FinAbPresentation().is_trivial()
    assert str(FinAbPresentation()) == "0"
    assert FinAbPresentation.from_factors([2, 0]) == FinAbPresentation(1, [2])
    assert FinAbPresentation(1, [], Q) != FinAbPresentation(1, [], Z)


# ------------------------------------------------------------- cohomology


@pytest.mark.parametrize("n", range(1, 9))
def test_integral_cohomology_of_cyclic_groups(catalog, n):
    groups = cohomology(catalog.group(f"Z{n}"), Z, 4)
    cyclic_part = FinAbPresentation(0, [n])
    assert groups == [FinAbPresentation(1), FinAbPresentation(), cyclic_part, FinAbPresentation(), cyclic_part]
    if n == 1:
        assert all(h.is_trivial() for h in groups[1:])


def test_integral_cohomology_of_s3(catalog):
    groups = cohomology(catalog.group("S3"), Z, 4)
    assert [str(h) for h in groups] == ["Z", "0", "Z/2", "0", "Z/6"]


def test_integral_cohomology_of_klein_group(catalog):
    groups = cohomology(catalog.group("V4"), Z, 4)
    assert groups[2] == FinAbPresentation(0, [2, 2])
    assert groups[3] == FinAbPresentation(0, [2])
    assert groups[4] == FinAbPresentation(0, [2, 2, 2])


def test_second_cohomology_of_quaternions(catalog):
    groups = cohomology(catalog.group("Q8"), Z, 2)
    assert groups[1].is_trivial()
    assert groups[2] == FinAbPresentation(0, [2, 2])


def test_rational_cohomology_is_concentrated_in_degree_zero(catalog):
    groups = cohomology(catalog.group("S3"), Q, 3)
    assert groups[0] == FinAbPresentation(1, [], Q)
    assert all(h.is_trivial() for h in groups[1:])


@pytest.mark.parametrize("name", ["Z2", "Z5", "S3", "D4", "Q8", "V4"])
def test_h1_with_qmodz_coefficients(catalog, name):
    group = catalog.group(name)
    groups = cohomology(group, QMODZ, 1)
    assert groups[0] == FinAbPresentation(1, [], QMODZ)
    assert groups[1].order == group.abelianization_order() == len(characters(group))


def test_qmodz_cohomology_of_cyclic_group(catalog):
    groups = cohomology(catalog.group("Z4"), QMODZ, 3)
    assert groups[1] == FinAbPresentation(0, [4], QMODZ)
    assert groups[2].is_trivial()
    assert groups[3] == FinAbPresentation(0, [4], QMODZ)


def test_cost_guard(catalog):
    with pytest.raises(CostGuardError):
        check_table_size(catalog.group("Q8"), 6)
    with pytest.raises(CostGuardError):
        cohomology(catalog.group("Z12"), Z, 5)
    check_table_size(catalog.group("Z2"), 6, allow_large=True)


# --------------------------------------------------------------- cochains


def test_cochain_normal_form(catalog):
    z2 = catalog.group("Z2")
    c = BarCochain(z2, [1, 3], 2, QMODZ)
    assert c.denominator == 2
    assert list(c.numerators) == [1, 1]
    assert c.at(1) == QmodZ(1, 2)
    with pytest.raises(PreconditionError):
        BarCochain(z2, [1, 0], 2, Z)
    with pytest.raises(PreconditionError):
        BarCochain(z2, [1, 0, 0], 1, Z)


@settings(max_examples=25, deadline=None)
@given(values=st.lists(st_small, min_size=6, max_size=6))
def test_coboundaries_are_cocycles(catalog, values):
    c = BarCochain(catalog.group("S3"), values)
    dc = c.coboundary()
    assert dc.is_cocycle()
    assert dc.coboundary().is_zero()
    assert is_coboundary(dc)


@settings(max_examples=15, deadline=None)
@given(values=st.lists(st_small, min_size=16, max_size=16))
def test_square_of_coboundary_vanishes_in_degree_two(catalog, values):
    c = BarCochain(catalog.group("Z4"), np.array(values).reshape(4, 4))
    assert c.coboundary().coboundary().is_zero()
    assert is_coboundary(c.coboundary())


def test_from_function_and_values(catalog):
    s3 = catalog.group("S3")
    sign = BarCochain.from_function(s3, 1, lambda g: "1/2" if s3.element_order(g) == 2 else 0, QMODZ)
    assert sign.is_cocycle()
    assert sign.is_normalized()
    assert sign.value("(01)") == QmodZ(1, 2)
    assert sign.value("(012)") == 0
    assert not is_coboundary(sign)


def test_pullback_of_character(catalog):
    z4, z8 = catalog.group("Z4"), catalog.group("Z8")
    quarter = Character(z4, [QmodZ(k, 4) for k in range(4)]).cochain()
    pulled = quarter.pullback(z8, [k % 4 for k in range(8)])
    assert pulled.is_cocycle()
    assert pulled.value("5") == QmodZ(1, 4)


# -------------------------------------------------------------- bockstein


def test_characters(catalog):
    assert len(characters(catalog.group("S3"))) == 2
    assert len(characters(catalog.group("V4"))) == 4
    assert len(characters(catalog.group("Q8"))) == 4
    chars = characters(catalog.group("Z6"))
    assert len(chars) == 6
    assert all(v == 0 for v in chars[0].values)
    assert sorted(c.order for c in chars) == [1, 2, 3, 3, 6, 6]


@pytest.mark.parametrize("n", range(2, 7))
def test_bockstein_is_bijective_on_cyclic_groups(catalog, n):
    group = catalog.group(f"Z{n}")
    chars = characters(group)
    images = [bockstein(phi.cochain()) for phi in chars]
    for phi, chi in zip(chars, images):
        assert chi.coefficients is Z and chi.degree == 2
        assert chi.is_cocycle()
        assert inverse_bockstein_cyclic(chi, group.index("1")) == phi.value("1")
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            assert not cohomologous(images[i], images[j])


def test_bockstein_is_additive_up_to_coboundaries(catalog):
    group = catalog.group("Z4")
    phi, psi = characters(group)[1], characters(group)[3]
    total = bockstein((phi + psi).cochain())
    assert cohomologous(total, bockstein(phi.cochain()) + bockstein(psi.cochain()))


def test_bockstein_needs_qmodz_cocycles(catalog):
    group = catalog.group("Z3")
    with pytest.raises(PreconditionError):
        bockstein(BarCochain(group, [0, 1, 2]))
    not_a_cocycle = BarCochain(group, [0, 1, 1], 3, QMODZ)
    with pytest.raises(PreconditionError):
        bockstein(not_a_cocycle)


# ------------------------------------------------------------------ Z x Γ


def test_cross_product_integrates_back(catalog):
    group = catalog.group("Z3")
    phi = characters(group)[1].cochain()
    cross = cross_with_identity(phi)
    assert cross.degree == 2
    assert cross.is_cocycle()
    assert cross.value((2, 0), (5, 1)) == 2 * phi.at(1)
    assert integrate(cross) == phi


def test_pullback_to_zxgamma(catalog):
    group = catalog.group("S3")
    space = ZxGamma(group)
    sign = characters(group)[1].cochain()
    lifted = ZxGammaCochain.from_bar(space, sign)
    assert lifted.is_cocycle()
    assert lifted.value((7, group.index("(01)"))) == QmodZ(1, 2)
    assert space.mul((1, 1), (2, group.identity)) == (3, 1)
    with pytest.raises(PreconditionError):
        integrate(ZxGammaCochain(space, 0, {}))


def _random_affine_cochain(rng, space, degree):
    shape = (space.finite.order,) * degree
    components = {
        positions: rng.integers(-3, 4, size=shape)
        for r in range(degree + 1)
        for positions in itertools.combinations(range(1, degree + 1), r)
    }
    return ZxGammaCochain(space, degree, components)


@pytest.mark.parametrize("name", ["Z3", "V4", "S3"])
@pytest.mark.parametrize("degree", [1, 2, 3])
def test_integration_anticommutes_with_coboundary(catalog, rng, name, degree):
    space = ZxGamma(catalog.group(name))
    for _ in range(5):
        c = _random_affine_cochain(rng, space, degree)
        assert integrate(c.coboundary()) == -integrate(c).coboundary()


def test_integration_of_mixed_component(catalog):
    space = ZxGamma(catalog.group("Z3"))
    # c((n1, γ1), (n2, γ2)) = n1·n2 has no ∅ or single-position part
    c = ZxGammaCochain(space, 2, {(1, 2): 1})
    assert integrate(c).is_zero()
    assert integrate(c.coboundary()) == -integrate(c).coboundary()


@pytest.mark.parametrize("m", range(2, 7))
def test_integrated_gerbe_class_is_bockstein(catalog, m):
    gamma = catalog.group(f"Z{m}")
    for phi in characters(gamma):
        dd = integrate(bockstein(e_phi_on_zxgamma(gamma, phi)))
        assert dd.degree == 2
        assert dd.is_cocycle()
        assert cohomologous(dd, bockstein(phi.cochain()))
