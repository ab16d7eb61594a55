import pytest
from scipy import sparse

from orbiloop.complexes import CohomologyBasis, SimplicialComplex, betti_numbers, simplicial_cohomology
from orbiloop.exceptions import PreconditionError, SchemaError


@pytest.mark.parametrize(
    "name, f_vector, betti",
    [
        ("point", [1], [1]),
        ("interval", [2, 1], [1, 0]),
        ("S2", [4, 6, 4], [1, 0, 1]),
        ("S3-sphere", [5, 10, 10, 5], [1, 0, 0, 1]),
        ("torus", [7, 21, 14], [1, 2, 1]),
    ],
)
def test_builtin_complexes(catalog, name, f_vector, betti):
    complex = catalog.complex(name)
    assert complex.f_vector() == f_vector
    assert betti_numbers(complex) == betti
    assert complex.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(betti))


def test_closure_adds_faces():
    triangle = SimplicialComplex(["a", "b", "c"], [["c", "a", "b"]])
    assert triangle.f_vector() == [3, 3, 1]
    assert triangle.simplices(2) == [("a", "b", "c")]
    assert ("b", "a") in triangle
    assert ("a", "d") not in triangle
    assert triangle.index(("c", "b")) == 2
    with pytest.raises(PreconditionError):
        triangle.index(("a", "d"))


def test_rejects_bad_simplices():
    with pytest.raises(SchemaError) as info:
        SimplicialComplex(["a", "b"], [["a", "c"]])
    assert info.value.path == "/simplices/0"
    with pytest.raises(SchemaError):
        SimplicialComplex(["a", "b"], [["a", "a"]])
    with pytest.raises(SchemaError):
        SimplicialComplex(["a", "a"])


@pytest.mark.parametrize("name", ["S2", "S3-sphere", "torus"])
def test_coboundary_squares_to_zero(catalog, name):
    complex = catalog.complex(name)
    for k in range(complex.dim - 1):
        product = complex.coboundary_matrix(k + 1) @ complex.coboundary_matrix(k)
        assert sparse.csr_matrix(product).count_nonzero() == 0


def test_facets(catalog):
    assert catalog.complex("interval").facets() == [("0", "1")]
    assert len(catalog.complex("S2").facets()) == 4
    mixed = SimplicialComplex(["a", "b", "c"], [["a", "b"], ["c"]])
    assert mixed.facets() == [("c",), ("a", "b")]


def test_barycentric_subdivision(catalog):
    sd = catalog.complex("S2").barycentric_subdivision()
    assert sd.f_vector() == [14, 36, 24]
    assert betti_numbers(sd) == [1, 0, 1]
    assert sd.name == "sd(S2)"


def test_subcomplexes_and_images(catalog):
    s2 = catalog.complex("S2")
    face = s2.full_subcomplex(["0", "2", "3"])
    assert face.f_vector() == [3, 3, 1]
    assert betti_numbers(face) == [1, 0, 0]
    collapsed = catalog.complex("interval").image({"0": "0", "1": "0"})
    assert collapsed.f_vector() == [1]


def test_map_simplex_sign(catalog):
    s2 = catalog.complex("S2")
    swap = {"0": "1", "1": "0", "2": "2", "3": "3"}
    assert s2.map_simplex(("0", "1"), swap.__getitem__) == (("0", "1"), -1)
    assert s2.map_simplex(("0", "2"), swap.__getitem__) == (("1", "2"), 1)


def test_cohomology_bases(catalog):
    torus = catalog.complex("torus")
    result = simplicial_cohomology(torus, with_bases=True)
    assert result.dims == [1, 2, 1]
    basis = result.bases[1]
    assert basis.dim == 2
    identity = sparse.identity(torus.count(1), dtype=int, format="csr")
    assert basis.trace(identity) == 2
    assert basis.coordinates(basis.cocycles) == [[1, 0], [0, 1]]
    assert CohomologyBasis(catalog.complex("S2"), 1).dim == 0
