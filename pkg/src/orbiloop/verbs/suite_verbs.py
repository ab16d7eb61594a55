import argparse

from .. import defaults
from ..config.catalog import KINDS, Catalog
from ..selftest import run_selftest
from ..utils.tables import format_table
from .abstract_verb import Report, Verb

__all__ = ["SelftestVerb", "CatalogVerb"]

_MODULES = ["gpd-core", "loop", "grp-cohom", "coc", "deloc", "zcomplex", "cli"]


class SelftestVerb(Verb):
    @classmethod
    def get_name(cls):
        return "selftest"

    @classmethod
    def get_help(cls):
        return "run the seeded invariant suite"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument("--seed", type=int, default=defaults.SEED_DEFAULT, help="random seed (default: %(default)s)")
        parser.add_argument(
            "--samples",
            type=int,
            default=defaults.TEST_SAMPLE_COUNT,
            help="random instances per sampled check (default: %(default)s)",
        )
        parser.add_argument("--module", action="append", choices=_MODULES, help="restrict to a module (repeatable)")

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        report = run_selftest(args.seed, args.samples, args.module, catalog=catalog)
        failed = len(report.failures())
        summary = f"{len(report.results) - failed} passed, {failed} failed"
        return Report(report.to_dict(), f"{report.table()}\n{summary}", report.passed)


class CatalogVerb(Verb):
    @classmethod
    def get_name(cls):
        return "catalog"

    @classmethod
    def get_help(cls):
        return "list the built-in groups, groupoids, complexes and gerbes"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument("--kind", choices=KINDS, help="list one kind only")
        parser.add_argument("--validate", action="store_true", help="build and validate every entry")

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        kinds = [args.kind] if args.kind else list(KINDS)
        listing = {kind: catalog.names(kind) for kind in kinds}
        document = {"catalog": listing, "aliases": dict(catalog.aliases)}
        rows = [[kind, " ".join(names)] for kind, names in listing.items()]
        ok = True
        if args.validate:
            reports = {f"{kind}:{name}": catalog.validate(kind, name) for kind in kinds for name in listing[kind]}
            document["validation"] = {key: report.to_dict() for key, report in reports.items()}
            invalid = [key for key, report in reports.items() if not report.valid]
            ok = not invalid
            rows.append(["invalid", " ".join(invalid) or "-"])
        return Report(document, format_table(["kind", "names"], rows), ok)
