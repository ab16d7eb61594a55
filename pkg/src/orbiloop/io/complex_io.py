"""Readers and writers for ``scomplex.v1``, ``gcomplex.v1`` and ``cochain3.v1``."""
from typing import Mapping, NamedTuple, Optional

from ..cohomology.qmodz import parse_rational
from ..complexes.simplicial import SimplicialComplex
from ..config.catalog import Catalog, get_catalog
from ..deloc.gamma_complex import GammaComplex
from ..exceptions import SchemaError
from ..zcomplex.cochains import SimplicialCochain
from ..zcomplex.local_system import SimplicialLocalSystem
from .format_io import DataReader, DataWriter, SchemaFormat, require, require_list, require_mapping
from .groupoid_io import GroupReader, GroupWriter

__all__ = [
    "SComplexReader",
    "SComplexWriter",
    "GComplexReader",
    "GComplexWriter",
    "TwistingData",
    "Cochain3Reader",
    "Cochain3Writer",
]


def _prefixed(error: SchemaError, path: str) -> SchemaError:
    return SchemaError(error.message, path + (error.path if error.path != "/" else ""))


def _complex(document: Mapping, path: str) -> SimplicialComplex:
    vertices = require_list(document["vertices"], f"{path}/vertices")
    for i, v in enumerate(vertices):
        if not isinstance(v, str):
            raise SchemaError("expected a string vertex id", f"{path}/vertices/{i}")
    simplices = require_list(document["simplices"], f"{path}/simplices")
    for i, s in enumerate(simplices):
        require_list(s, f"{path}/simplices/{i}")
    try:
        return SimplicialComplex(vertices, simplices, name=document.get("name"))
    except SchemaError as e:
        raise _prefixed(e, path) from None


class SComplexReader(DataReader):
    """Reads ``{vertices, simplices}``; the vertex order of the document orders every simplex."""

    data_format_code = SchemaFormat.scomplex

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def load(self, document, path: str = "") -> SimplicialComplex:
        if isinstance(document, str):
            return self.catalog.complex(document, path or "/")
        self.data_format_code.check(document, path)
        return _complex(document, path)


class SComplexWriter(DataWriter):
    data_format_code = SchemaFormat.scomplex

    def save(self, complex: SimplicialComplex) -> dict:
        return {"schema": self.data_format_code.schema, "name": complex.name, **complex.to_dict()}


class GComplexReader(DataReader):
    """Reads ``{vertices, simplices, group, action: {element: {vertex: vertex}}}``."""

    data_format_code = SchemaFormat.gcomplex

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def load(self, document, path: str = "") -> GammaComplex:
        if isinstance(document, str):
            return self.catalog.gcomplex(document, path or "/")
        self.data_format_code.check(document, path)
        complex = _complex(document, path)
        group = GroupReader(self.catalog).load(document["group"], f"{path}/group")
        action = {}
        for label, perm in require_mapping(document["action"], f"{path}/action").items():
            at = f"{path}/action/{label}"
            if label not in group.elements:
                raise SchemaError(f"unknown element '{label}'", at)
            action[group.index(label)] = require_mapping(perm, at)
        try:
            return GammaComplex(complex, group, action)
        except SchemaError as e:
            raise _prefixed(e, path) from None


class GComplexWriter(DataWriter):
    data_format_code = SchemaFormat.gcomplex

    def save(self, space: GammaComplex) -> dict:
        return {
            **space.to_dict(),
            "schema": self.data_format_code.schema,
            "name": space.complex.name,
            "group": GroupWriter().save(space.group),
        }


class TwistingData(NamedTuple):
    """A ``cochain3.v1`` document: the complex, λ and the optional local system."""

    complex: SimplicialComplex
    lam: SimplicialCochain
    local_system: Optional[SimplicialLocalSystem]


class Cochain3Reader(DataReader):
    """Reads ``{complex, degree: 3, entries: [{simplex, value}], local_system?}``.

    ``local_system`` lists ``{edge: [u, v], value: "p/q"}`` holonomies; omitted
    edges carry 0.
    """

    data_format_code = SchemaFormat.cochain3

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def load(self, document, path: str = "") -> TwistingData:
        self.data_format_code.check(document, path)
        complex = SComplexReader(self.catalog).load(document["complex"], f"{path}/complex")
        degree = document.get("degree", 3)
        if degree != 3 or isinstance(degree, bool):
            raise SchemaError("a twisting class has degree 3", f"{path}/degree")

        values = {}
        for i, entry in enumerate(require_list(document["entries"], f"{path}/entries")):
            at = f"{path}/entries/{i}"
            require_mapping(entry, at)
            simplex = require_list(require(entry, "simplex", at), f"{at}/simplex")
            if len(simplex) != 4 or simplex not in complex:
                raise SchemaError(f"{simplex} is not a 3-simplex of {complex.name}", f"{at}/simplex")
            try:
                values[tuple(simplex)] = parse_rational(require(entry, "value", at))
            except SchemaError as e:
                if e.path.startswith(at):
                    raise
                raise SchemaError(e.message, f"{at}/value") from None
        lam = SimplicialCochain(complex, 3, values)

        local_system = None
        if "local_system" in document:
            holonomy = {}
            for i, entry in enumerate(require_list(document["local_system"], f"{path}/local_system")):
                at = f"{path}/local_system/{i}"
                require_mapping(entry, at)
                holonomy[tuple(require_list(require(entry, "edge", at), f"{at}/edge"))] = require(entry, "value", at)
            try:
                local_system = SimplicialLocalSystem(complex, holonomy)
            except SchemaError as e:
                raise _prefixed(e, path) from None
        return TwistingData(complex, lam, local_system)


class Cochain3Writer(DataWriter):
    data_format_code = SchemaFormat.cochain3

    def save(self, data: TwistingData) -> dict:
        document = {
            "schema": self.data_format_code.schema,
            "complex": SComplexWriter().save(data.complex),
            **data.lam.to_dict(),
        }
        if data.local_system is not None:
            document["local_system"] = data.local_system.to_dict()["holonomy"]
        return document
