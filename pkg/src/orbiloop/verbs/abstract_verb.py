import argparse
from abc import ABC, abstractmethod
from typing import NamedTuple, Optional

from ..config.catalog import Catalog, get_catalog
from ..exceptions import PreconditionError, SchemaError
from ..groupoids.groupoid import ValidationReport
from ..io.format_io import SchemaFormat
from ..io.format_io_utils import load_document


class Report(NamedTuple):
    """What a verb produces: a JSON document, its text rendering and the verdict."""

    document: dict
    text: str
    ok: bool = True


class Verb(ABC):
    """One subcommand of the ``orbiloop`` command line."""

    # catalog kind and schema read by ``--builtin`` / ``--input``
    source_kind: Optional[str] = None
    source_format: Optional[SchemaFormat] = None

    @classmethod
    @abstractmethod
    def get_name(cls) -> str:
        return "abstract verb"

    @classmethod
    @abstractmethod
    def get_help(cls) -> str:
        pass

    @classmethod
    @abstractmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        pass

    @classmethod
    @abstractmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        pass

    @classmethod
    def add_source_arguments(cls, parser: argparse.ArgumentParser, required: bool = True):
        source = parser.add_mutually_exclusive_group(required=required)
        source.add_argument("--builtin", metavar="NAME", help=f"built-in {cls.source_kind} (see 'orbiloop catalog')")
        source.add_argument("--input", metavar="PATH", help=f"{cls.source_format.schema} document")

    @classmethod
    def load_source(cls, args: argparse.Namespace, catalog: Optional[Catalog] = None):
        catalog = catalog or get_catalog()
        if args.builtin is not None:
            return catalog.get(cls.source_kind, args.builtin)
        if args.input is not None:
            return load_document(args.input, cls.source_format, catalog)
        raise SchemaError(f"expected --builtin or --input for {cls.get_name()}")


def require_valid(report: ValidationReport, what: str):
    """Raise the first failure of ``report`` as a :class:`PreconditionError`."""
    if not report.valid:
        axiom, witness = report.first_failure
        raise PreconditionError(axiom, f"{what} fails the {axiom} axiom", witness)
