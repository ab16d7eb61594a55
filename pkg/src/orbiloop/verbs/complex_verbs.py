import argparse

from ..cocycles.gerbe import GerbeCocycle
from ..config.catalog import Catalog
from ..deloc.delocalized import delocalized, delocalized_untwisted_rational, sector_table
from ..exceptions import PreconditionError
from ..io.complex_io import TwistingData
from ..io.format_io import SchemaFormat
from ..io.format_io_utils import load_document
from ..utils.tables import format_table
from ..zcomplex.cochains import top_cocycle
from ..zcomplex.periodic import periodic_cohomology
from ..zcomplex.twisted import build_twisted, default_mmax, spectral_sequence_e2, twisted_cohomology
from .abstract_verb import Report, Verb

__all__ = ["DelocVerb", "ZCohomVerb"]


class DelocVerb(Verb):
    source_kind = "gcomplex"
    source_format = SchemaFormat.gcomplex

    @classmethod
    def get_name(cls):
        return "deloc"

    @classmethod
    def get_help(cls):
        return "delocalized cohomology of a complex with a finite group action, twisted by a gerbe"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        cls.add_source_arguments(parser)
        gerbe = parser.add_mutually_exclusive_group()
        gerbe.add_argument("--gerbe", metavar="PATH", help="cochain.v1 document of a 2-cocycle on the group")
        gerbe.add_argument("--gerbe-builtin", metavar="NAME", help="built-in gerbe")
        parser.add_argument("--no-subdivide", action="store_true", help="use the complex as given (must be regular)")
        parser.add_argument(
            "--check-untwisted", action="store_true", help="recompute the untwisted dims from orbit complexes"
        )

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        space = cls.load_source(args, catalog)
        gerbe = None
        if args.gerbe is not None:
            gerbe = GerbeCocycle(load_document(args.gerbe, SchemaFormat.cochain, catalog))
        elif args.gerbe_builtin is not None:
            gerbe = catalog.gerbe(args.gerbe_builtin)
        if args.check_untwisted and gerbe is not None:
            raise PreconditionError("untwisted", "--check-untwisted compares the trivial gerbe only")

        result = delocalized(space, gerbe, subdivide=not args.no_subdivide)
        euler = sum((-1) ** k * d for k, d in enumerate(result.dims))
        document = {
            "complex": space.complex.name,
            "group": space.group.name,
            "gerbe": None if gerbe is None else gerbe.base.name,
            "euler_characteristic": euler,
            **result.to_dict(),
        }
        lines = [f"H_deloc of {space.complex.name} / {space.group.name}: {result.dims} (total {result.total})"]
        if args.check_untwisted:
            document["untwisted_rational"] = delocalized_untwisted_rational(space, subdivide=not args.no_subdivide)
            lines.append("orbit complexes agree")
        headers = ["sector", "|class|", "|C(g)|", "betti(K^g)", "twisted", "epsilon"]
        lines.append(format_table(headers, sector_table(result)))
        return Report(document, "\n".join(lines))


class ZCohomVerb(Verb):
    source_kind = "complex"
    source_format = SchemaFormat.cochain3

    @classmethod
    def get_name(cls):
        return "zcohom"

    @classmethod
    def get_help(cls):
        return "cohomology of the z-complex (C*(K; L)[[z]], δ + λ ∂/∂z) and of the periodic complex"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--builtin", metavar="NAME", help="built-in complex (see 'orbiloop catalog')")
        source.add_argument("--input", metavar="PATH", help="cochain3.v1 document (complex, λ, local system)")
        parser.add_argument(
            "--lambda-multiple", type=int, default=0, metavar="K", help="with --builtin: λ = K times the top class"
        )
        parser.add_argument("--mmax", type=int, default=None, help="largest total degree (default: dim K + 6)")
        parser.add_argument("--periodic", action="store_true", help="also compute the 2-periodic cohomology")

    @classmethod
    def _twisting_data(cls, args: argparse.Namespace, catalog: Catalog) -> TwistingData:
        if args.input is not None:
            return load_document(args.input, SchemaFormat.cochain3, catalog)
        complex = catalog.complex(args.builtin)
        lam = top_cocycle(complex, args.lambda_multiple) if args.lambda_multiple else None
        return TwistingData(complex, lam, None)

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        complex, lam, local_system = cls._twisting_data(args, catalog)
        mmax = default_mmax(complex) if args.mmax is None else args.mmax
        if mmax < 0:
            raise PreconditionError("mmax", "must be nonnegative", mmax)
        twisted = build_twisted(complex, lam, local_system, mmax)
        dims = twisted_cohomology(twisted, mmax)

        document = {
            "complex": complex.name,
            "mmax": mmax,
            "dims": dims,
            "lambda": twisted.lam.to_dict(),
            "local_system": twisted.local_system.to_dict(),
        }
        columns = [list(range(mmax + 1)), dims]
        headers = ["m", "dim H^m"]
        if twisted.local_system.is_trivial():
            e2 = spectral_sequence_e2(twisted, mmax)
            document["e2"] = {"betti": e2.betti, "cup_ranks": e2.cup_ranks, "dims": e2.dims}
            columns.append(e2.dims)
            headers.append("E2")
        lines = [format_table(headers, list(zip(*columns)))]
        if args.periodic:
            periodic = periodic_cohomology(complex, lam, local_system)
            document["periodic"] = periodic.to_dict()
            lines.append(f"periodic: even {periodic.even}, odd {periodic.odd}")
        return Report(document, "\n".join(lines))
