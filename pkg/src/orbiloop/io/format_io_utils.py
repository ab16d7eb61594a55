"""Utils for schema document I/O.
"""
import os
from pathlib import Path
from typing import Any, Optional, Union

from ..config.catalog import Catalog
from ..utils.io import load_json, save_json
from .complex_io import (
    Cochain3Reader,
    Cochain3Writer,
    GComplexReader,
    GComplexWriter,
    SComplexReader,
    SComplexWriter,
)
from .format_io import DataReader, DataWriter, SchemaFormat
from .groupoid_io import CochainReader, CochainWriter, GroupoidReader, GroupoidWriter, GroupReader, GroupWriter

__all__ = ["get_reader", "get_writer", "generic_load", "load_document", "save_document"]

_READERS = {
    SchemaFormat.group: GroupReader,
    SchemaFormat.groupoid: GroupoidReader,
    SchemaFormat.cochain: CochainReader,
    SchemaFormat.cochain3: Cochain3Reader,
    SchemaFormat.gcomplex: GComplexReader,
    SchemaFormat.scomplex: SComplexReader,
}
_WRITERS = {
    SchemaFormat.group: GroupWriter,
    SchemaFormat.groupoid: GroupoidWriter,
    SchemaFormat.cochain: CochainWriter,
    SchemaFormat.cochain3: Cochain3Writer,
    SchemaFormat.gcomplex: GComplexWriter,
    SchemaFormat.scomplex: SComplexWriter,
}


def get_reader(data_format: SchemaFormat, catalog: Optional[Catalog] = None) -> DataReader:
    """Return a DataReader corresponding to the given schema.

    Args:
        data_format (SchemaFormat): Schema to read.
        catalog (Catalog, optional): Resolves built-in names inside documents.

    Returns:
        DataReader: Reader for given schema.
    """
    return _READERS[data_format](catalog)


def get_writer(data_format: SchemaFormat) -> DataWriter:
    """Return a DataWriter corresponding to given schema.

    Args:
        data_format (SchemaFormat): Schema to write.

    Returns:
        DataWriter: Writer for given schema.
    """
    return _WRITERS[data_format]()


def generic_load(document: Any, expected: Optional[SchemaFormat] = None, catalog: Optional[Catalog] = None):
    """Read a parsed document of any schema, dispatching on its ``"schema"`` key.

    Args:
        document (Mapping): Parsed JSON document.
        expected (SchemaFormat, optional): If given, the document must carry this schema.
        catalog (Catalog, optional): Resolves built-in names inside the document.

    Raises:
        SchemaError: If the schema is missing, unknown or not the expected one.
    """
    data_format = SchemaFormat.get_schema_format(document)
    if expected is not None and data_format is not expected:
        expected.check(document)
    return get_reader(data_format, catalog).load(document)


def load_document(
    path: Union[str, Path, os.PathLike], expected: Optional[SchemaFormat] = None, catalog: Optional[Catalog] = None
):
    """Read a schema document from a JSON file."""
    return generic_load(load_json(path), expected, catalog)


def save_document(obj, data_format: SchemaFormat, path: Union[str, Path, os.PathLike]) -> dict:
    """Write ``obj`` as a document of the given schema and return the document."""
    document = get_writer(data_format).save(obj)
    save_json(document, path)
    return document
