import argparse

from .. import defaults
from ..cocycles.bundle import check_h_equals_chi_bar, transgress_bundle, twisted_sectors
from ..cocycles.gerbe import dixmier_douady, inner_local_system, normalize_gerbe, transgress_gerbe
from ..cocycles.holonomy import verify_holonomy_theorem
from ..cohomology.bar import cohomology
from ..cohomology.bockstein import Character
from ..cohomology.qmodz import Coefficients, QmodZ
from ..config.catalog import Catalog
from ..exceptions import PreconditionError
from ..groupoids.group import cyclic
from ..io.format_io import SchemaFormat
from ..io.format_io_utils import load_document
from ..loops.loop_groupoid import loop_groupoid
from ..utils.tables import format_table
from .abstract_verb import Report, Verb

__all__ = ["GroupCohomologyVerb", "TransgressVerb", "HolonomyTheoremVerb"]


class GroupCohomologyVerb(Verb):
    source_kind = "group"
    source_format = SchemaFormat.group

    @classmethod
    def get_name(cls):
        return "gcohom"

    @classmethod
    def get_help(cls):
        return "group cohomology H^n(Γ; Z | Q | Q/Z) from the normalized bar complex"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        cls.add_source_arguments(parser)
        parser.add_argument("--coeff", choices=[c.value for c in Coefficients], default="Z", help="coefficients")
        parser.add_argument("--nmax", type=int, default=defaults.NMAX_DEFAULT, help="largest degree (default: %(default)s)")
        parser.add_argument("--allow-large", action="store_true", help="override the cochain table size guard")

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        group = cls.load_source(args, catalog)
        if args.nmax < 0:
            raise PreconditionError("nmax", "must be nonnegative", args.nmax)
        coefficients = Coefficients.parse(args.coeff)
        groups = cohomology(group, coefficients, args.nmax, args.allow_large)
        document = {
            "group": group.name,
            "order": group.order,
            "coefficients": coefficients.value,
            "degrees": [{"degree": n, **h.to_dict()} for n, h in enumerate(groups)],
        }
        table = format_table(["n", f"H^n({group.name}; {coefficients.symbol})"], [[n, h] for n, h in enumerate(groups)])
        return Report(document, table)


class TransgressVerb(Verb):
    @classmethod
    def get_name(cls):
        return "transgress"

    @classmethod
    def get_help(cls):
        return "transgress a bundle (1-cocycle) or a gerbe (2-cocycle) to the loop groupoid"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        source = parser.add_mutually_exclusive_group(required=True)
        source.add_argument("--bundle", metavar="PATH", help="cochain.v1 document of a Q/Z-valued 1-cocycle")
        source.add_argument("--gerbe", metavar="PATH", help="cochain.v1 document of a Q/Z-valued 2-cocycle")
        source.add_argument("--gerbe-builtin", metavar="NAME", help="built-in gerbe")

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        if args.bundle is not None:
            return cls._bundle(load_document(args.bundle, SchemaFormat.cochain, catalog))
        if args.gerbe is not None:
            beta = load_document(args.gerbe, SchemaFormat.cochain, catalog)
        else:
            beta = catalog.gerbe(args.gerbe_builtin).beta
        return cls._gerbe(beta)

    @staticmethod
    def _bundle(phi) -> Report:
        if phi.coefficients is not Coefficients.QMODZ:
            raise PreconditionError("coefficients", "bundle cocycles are Q/Z-valued", phi.coefficients.value)
        loops = loop_groupoid(phi.groupoid)
        h = transgress_bundle(phi, loops)
        blocks = twisted_sectors(phi, loops)
        agrees = check_h_equals_chi_bar(phi, loops)
        document = {
            "kind": "bundle",
            "base": phi.groupoid.name,
            "h": {loop: phi.coefficients.to_json(h.value(loop)) for loop in loops.carrier.objects},
            "twisted_sectors": {str(value): [s.representative for s in sectors] for value, sectors in blocks.items()},
            "h_equals_chi_bar": agrees,
        }
        rows = [[str(value), " ".join(s.representative for s in sectors)] for value, sectors in blocks.items()]
        text = format_table(["h", "sectors"], rows) + f"\nh = chi bar: {agrees}"
        return Report(document, text, agrees)

    @staticmethod
    def _gerbe(beta) -> Report:
        gerbe, shift = normalize_gerbe(beta)
        loops = loop_groupoid(gerbe.base)
        tau = transgress_gerbe(gerbe, loops)
        local_system = inner_local_system(gerbe, loops)
        document = {
            "kind": "gerbe",
            "base": gerbe.base.name,
            "gauge_shift": shift.to_dict(),
            "dixmier_douady": dixmier_douady(gerbe).to_dict(),
            "transgression": tau.to_dict(),
            "local_system": local_system.to_dict(),
            "nontrivial_sectors": local_system.nontrivial_sectors(),
        }
        rows = [
            [rep, " ".join(f"{mu}:{value}" for mu, value in eps.items())]
            for rep, eps in local_system.characters.items()
        ]
        return Report(document, format_table(["sector", "epsilon"], rows))


class HolonomyTheoremVerb(Verb):
    @classmethod
    def get_name(cls):
        return "holonomy-theorem"

    @classmethod
    def get_help(cls):
        return "compare the holonomy of the transgressed gerbe e_φ on Z/N x Z/m with φ and with χ̄"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        parser.add_argument("--gamma", type=int, required=True, metavar="M", help="order m of the cyclic group")
        parser.add_argument("--phi", type=int, default=1, metavar="K", help="character 1 -> K/m (default: %(default)s)")
        parser.add_argument("--N", type=int, default=None, dest="n", help="truncation (default: ord φ · m)")

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        m = args.gamma
        if m < 1:
            raise PreconditionError("gamma", "the cyclic order must be positive", m)
        gamma = catalog.group(f"Z{m}") if ("group", f"Z{m}") in catalog else cyclic(m)
        phi = Character(gamma, [QmodZ(args.phi * s, m) for s in range(m)])
        report = verify_holonomy_theorem(gamma, phi, args.n)
        table = format_table(["sigma", "holonomy", "phi", "chi_bar"], report.rows())
        return Report(report.to_dict(), f"{table}\nverdict: {report.verdict}", report.verdict)
