"""I/O templates for schema documents.

Every document is a JSON object with a ``"schema"`` key naming one of the
:class:`SchemaFormat` members. Readers turn a parsed document into library
objects; writers do the reverse and always emit the ``"schema"`` key.
"""
import enum
from abc import ABC, abstractmethod
from typing import Any, Mapping, Optional, Sequence

from ..exceptions import SchemaError

__all__ = ["SchemaFormat", "DataReader", "DataWriter", "require", "require_list", "require_mapping"]


class SchemaFormat(enum.Enum):
    """Enum describing the supported document schemas."""

    group = "group.v1", ("elements", "table")
    groupoid = "groupoid.v1", ("objects", "morphisms", "compose", "ident", "inv")
    cochain = "cochain.v1", ("degree", "entries")
    cochain3 = "cochain3.v1", ("complex", "entries")
    gcomplex = "gcomplex.v1", ("vertices", "simplices", "group", "action")
    scomplex = "scomplex.v1", ("vertices", "simplices")

    def __new__(cls, schema, required_keys):
        """
        Args:
            schema (str): Value of the ``"schema"`` key.
            required_keys (tuple[str]): Keys every document of this schema has.
        """
        obj = object.__new__(cls)
        obj._value_ = schema
        obj.required_keys = required_keys
        return obj

    @property
    def schema(self) -> str:
        return self.value

    def check(self, document: Any, path: str = ""):
        """Verify the ``"schema"`` tag and the required keys.

        Raises:
            SchemaError: With the pointer of the first offending key.
        """
        require_mapping(document, path or "/")
        tag = document.get("schema")
        if tag is not None and tag != self.schema:
            raise SchemaError(f"expected schema '{self.schema}', got '{tag}'", f"{path}/schema")
        for key in self.required_keys:
            require(document, key, path)

    @classmethod
    def get_schema_format(cls, document: Any, path: str = "") -> "SchemaFormat":
        """The format named by ``document["schema"]``.

        Raises:
            SchemaError: If the tag is missing or unknown.
        """
        require_mapping(document, path or "/")
        tag = require(document, "schema", path)
        for fmt in cls:
            if fmt.schema == tag:
                return fmt
        raise SchemaError(f"unknown schema '{tag}'", f"{path}/schema")


def require_mapping(value: Any, path: str) -> Mapping:
    if not isinstance(value, Mapping):
        raise SchemaError("expected an object", path)
    return value


def require_list(value: Any, path: str) -> Sequence:
    if not isinstance(value, list):
        raise SchemaError("expected an array", path)
    return value


def require(document: Mapping, key: str, path: str = "", kind: Optional[type] = None):
    """``document[key]``, raising a :class:`SchemaError` that points at the key."""
    if key not in document:
        raise SchemaError(f"missing key '{key}'", f"{path}/{key}")
    value = document[key]
    if kind is not None and (not isinstance(value, kind) or isinstance(value, bool) and kind is not bool):
        raise SchemaError(f"expected {kind.__name__}", f"{path}/{key}")
    return value


class DataReader(ABC):
    """Abstract class for reading schema documents.

    Attributes:
        data_format_code (SchemaFormat): Should be defined by subclasses.
    """

    data_format_code = None

    @abstractmethod
    def load(self, document: Mapping, path: str = ""):
        """Build the object described by ``document``.

        Args:
            document (Mapping): Parsed JSON document.
            path (str, optional): JSON pointer of ``document`` inside its file,
                used as prefix in error paths.
        """
        pass  # pragma: no cover

    def __call__(self, *args, **kwargs):
        """Alias for :meth:`self.load`."""
        return self.load(*args, **kwargs)


class DataWriter(ABC):
    """Abstract class for writing schema documents.

    Attributes:
        data_format_code (SchemaFormat): Should be defined by subclasses.
    """

    data_format_code = None

    @abstractmethod
    def save(self, obj) -> dict:
        """The document describing ``obj``, including its ``"schema"`` key."""
        pass  # pragma: no cover

    def __call__(self, *args, **kwargs):
        """Alias for :meth:`self.save`."""
        return self.save(*args, **kwargs)
