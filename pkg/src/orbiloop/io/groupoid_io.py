"""Readers and writers for ``group.v1``, ``groupoid.v1`` and ``cochain.v1``.

A group or groupoid reference inside a document is either an inline document or
the name of a built-in.
"""
from typing import Dict, Mapping, Optional

from ..cocycles.nerve import NerveCochain
from ..cohomology.qmodz import Coefficients
from ..config.catalog import Catalog, get_catalog
from ..exceptions import PreconditionError, SchemaError
from ..groupoids.group import FiniteGroup
from ..groupoids.groupoid import FiniteGroupoid, GroupGroupoid
from .format_io import DataReader, DataWriter, SchemaFormat, require, require_list, require_mapping

__all__ = [
    "GroupReader",
    "GroupWriter",
    "GroupoidReader",
    "GroupoidWriter",
    "CochainReader",
    "CochainWriter",
]


def _string(value, path: str) -> str:
    if not isinstance(value, str):
        raise SchemaError("expected a string id", path)
    return value


def _string_list(value, path: str):
    return [_string(v, f"{path}/{i}") for i, v in enumerate(require_list(value, path))]


class GroupReader(DataReader):
    """Reads ``{elements: [str], table: [[str]]}``; row ``a``, column ``b`` holds ``a·b``."""

    data_format_code = SchemaFormat.group

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def load(self, document, path: str = "") -> FiniteGroup:
        if isinstance(document, str):
            return self.catalog.group(document, path or "/")
        self.data_format_code.check(document, path)
        elements = _string_list(document["elements"], f"{path}/elements")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise SchemaError("duplicate element label", f"{path}/elements")
        rows = require_list(document["table"], f"{path}/table")
        if len(rows) != len(elements):
            raise SchemaError(f"expected {len(elements)} rows", f"{path}/table")
        table = []
        for a, row in enumerate(rows):
            row = require_list(row, f"{path}/table/{a}")
            if len(row) != len(elements):
                raise SchemaError(f"expected {len(elements)} entries", f"{path}/table/{a}")
            entries = []
            for b, label in enumerate(row):
                if label not in index:
                    raise SchemaError(f"unknown element '{label}'", f"{path}/table/{a}/{b}")
                entries.append(index[label])
            table.append(entries)
        return FiniteGroup(elements, table, name=document.get("name"))


class GroupWriter(DataWriter):
    data_format_code = SchemaFormat.group

    def save(self, group: FiniteGroup) -> dict:
        return {
            "schema": self.data_format_code.schema,
            "name": group.name,
            "elements": list(group.elements),
            "table": [[group.label(int(c)) for c in row] for row in group.table],
        }


class GroupoidReader(DataReader):
    """Reads ``groupoid.v1``; a ``group.v1`` document is read as its one-object groupoid.

    The reader checks the document shape only. The groupoid axioms are checked by
    :meth:`FiniteGroupoid.validate`.
    """

    data_format_code = SchemaFormat.groupoid

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def load(self, document, path: str = "") -> FiniteGroupoid:
        if isinstance(document, str):
            return self.catalog.groupoid(document, path or "/")
        if isinstance(document, Mapping) and document.get("schema") == SchemaFormat.group.schema:
            return GroupGroupoid(GroupReader(self.catalog).load(document, path))
        self.data_format_code.check(document, path)
        objects = _string_list(document["objects"], f"{path}/objects")

        morphisms = []
        for i, record in enumerate(require_list(document["morphisms"], f"{path}/morphisms")):
            at = f"{path}/morphisms/{i}"
            require_mapping(record, at)
            morphisms.append(tuple(_string(require(record, key, at), f"{at}/{key}") for key in ("id", "src", "dst")))

        compose: Dict[tuple, str] = {}
        for i, triple in enumerate(require_list(document["compose"], f"{path}/compose")):
            at = f"{path}/compose/{i}"
            triple = _string_list(triple, at)
            if len(triple) != 3:
                raise SchemaError("expected [g, f, g∘f]", at)
            g, f, gf = triple
            if (g, f) in compose:
                raise SchemaError(f"composite of ({g}, {f}) given twice", at)
            compose[(g, f)] = gf

        ident = {
            _string(x, f"{path}/ident"): _string(e, f"{path}/ident/{x}")
            for x, e in require_mapping(document["ident"], f"{path}/ident").items()
        }
        inv = {
            _string(m, f"{path}/inv"): _string(mi, f"{path}/inv/{m}")
            for m, mi in require_mapping(document["inv"], f"{path}/inv").items()
        }
        try:
            return FiniteGroupoid(objects, morphisms, compose, ident, inv, name=document.get("name"))
        except PreconditionError as e:
            raise SchemaError(str(e), f"{path}/morphisms") from None


class GroupoidWriter(DataWriter):
    data_format_code = SchemaFormat.groupoid

    def save(self, groupoid: FiniteGroupoid) -> dict:
        return {"schema": self.data_format_code.schema, "name": groupoid.name, **groupoid.to_dict()}


class CochainReader(DataReader):
    """Reads ``cochain.v1`` into a :class:`NerveCochain`.

    The base is given by a ``groupoid`` key or, for one-object groupoids, a
    ``group`` key. Omitted entries are zero.
    """

    data_format_code = SchemaFormat.cochain

    def __init__(self, catalog: Optional[Catalog] = None):
        self.catalog = catalog or get_catalog()

    def _base(self, document, path: str) -> FiniteGroupoid:
        if "groupoid" in document:
            return GroupoidReader(self.catalog).load(document["groupoid"], f"{path}/groupoid")
        if "group" in document:
            ref = document["group"]
            if isinstance(ref, str):
                self.catalog.group(ref, f"{path}/group")
                return self.catalog.groupoid(f"B{self.catalog.resolve(ref)}")
            return GroupGroupoid(GroupReader(self.catalog).load(ref, f"{path}/group"))
        raise SchemaError("missing key 'groupoid' (or 'group')", f"{path}/groupoid")

    def load(self, document, path: str = "") -> NerveCochain:
        self.data_format_code.check(document, path)
        groupoid = self._base(document, path)
        degree = require(document, "degree", path, int)
        if degree < 0:
            raise SchemaError("degree must be nonnegative", f"{path}/degree")
        try:
            coefficients = Coefficients.parse(document.get("coefficients", "Z"))
        except SchemaError as e:
            raise SchemaError(e.message, f"{path}/coefficients") from None

        values = {}
        positions = {}
        for i, entry in enumerate(require_list(document["entries"], f"{path}/entries")):
            at = f"{path}/entries/{i}"
            require_mapping(entry, at)
            args = tuple(_string_list(require(entry, "args", at), f"{at}/args"))
            if args in values:
                raise SchemaError(f"entry for {list(args)} given twice", f"{at}/args")
            try:
                values[args] = coefficients.coerce(require(entry, "value", at))
            except SchemaError as e:
                if e.path.startswith(at):
                    raise
                raise SchemaError(e.message, f"{at}/value") from None
            positions[args] = i

        try:
            return NerveCochain(groupoid, degree, values, coefficients)
        except PreconditionError as e:
            at = positions.get(tuple(e.witness or ()), 0)
            raise SchemaError(f"{list(e.witness or ())} is not a {degree}-simplex of the nerve", f"{path}/entries/{at}/args") from None


class CochainWriter(DataWriter):
    """Writes a nerve cochain with its base inline."""

    data_format_code = SchemaFormat.cochain

    def save(self, cochain: NerveCochain) -> dict:
        groupoid = cochain.groupoid
        if isinstance(groupoid, GroupGroupoid):
            base = {"group": GroupWriter().save(groupoid.group)}
        else:
            base = {"groupoid": GroupoidWriter().save(groupoid)}
        return {"schema": self.data_format_code.schema, **base, **cochain.to_dict()}
