import argparse

from ..config.catalog import Catalog
from ..groupoids.equivalence import is_equivalence
from ..io.format_io import SchemaFormat
from ..io.groupoid_io import GroupoidWriter
from ..loops.loop_groupoid import inertia_via_equalizer, loop_groupoid, loop_groupoid_via_pullback
from ..utils.tables import format_table
from .abstract_verb import Report, Verb, require_valid

__all__ = ["LoopVerb", "InertiaCheckVerb"]


class LoopVerb(Verb):
    source_kind = "groupoid"
    source_format = SchemaFormat.groupoid

    @classmethod
    def get_name(cls):
        return "loop"

    @classmethod
    def get_help(cls):
        return "loop groupoid LX with its sectors"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        cls.add_source_arguments(parser)

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        base = cls.load_source(args, catalog)
        require_valid(base.validate(), base.name)
        loops = loop_groupoid(base)
        sectors = loops.sectors()

        document = GroupoidWriter().save(loops.carrier)
        document["loop-meta.v1"] = {
            "base": base.name,
            "sectors": [
                {
                    "representative": s.representative,
                    "base_object": s.base_object,
                    "centralizer_order": s.centralizer_order,
                    "size": s.size,
                }
                for s in sectors
            ],
        }
        carrier = loops.carrier
        header = f"{loops.name}: {carrier.num_objects} objects, {carrier.num_morphisms} morphisms, {len(sectors)} sectors"
        table = format_table(
            ["representative", "object", "|C|", "size"],
            [[s.representative, s.base_object, s.centralizer_order, s.size] for s in sectors],
        )
        return Report(document, f"{header}\n{table}")


class InertiaCheckVerb(Verb):
    source_kind = "groupoid"
    source_format = SchemaFormat.groupoid

    @classmethod
    def get_name(cls):
        return "inertia-check"

    @classmethod
    def get_help(cls):
        return "compare the inertia groupoid E(id, id) and the pullback model with LX"

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser):
        cls.add_source_arguments(parser)

    @classmethod
    def run(cls, args: argparse.Namespace, catalog: Catalog) -> Report:
        base = cls.load_source(args, catalog)
        require_valid(base.validate(), base.name)
        loops = loop_groupoid(base)
        inertia, comparison = inertia_via_equalizer(base, loops)
        equivalence = is_equivalence(comparison)

        carrier = loops.carrier
        direct = {(m, carrier.src(m), carrier.dst(m)) for m in carrier.morphisms}
        pullback_agrees = set(loop_groupoid_via_pullback(base)) == direct

        document = {
            "groupoid": base.name,
            "inertia": {"objects": inertia.groupoid.num_objects, "morphisms": inertia.groupoid.num_morphisms},
            "loops": {"objects": carrier.num_objects, "morphisms": carrier.num_morphisms},
            "equivalence": equivalence.to_dict(),
            "pullback_model_agrees": pullback_agrees,
        }
        ok = equivalence.valid and pullback_agrees
        text = format_table(
            ["check", "result"],
            [
                ["I -> L is an equivalence", equivalence.valid],
                ["pullback model equals LX", pullback_agrees],
            ],
        )
        return Report(document, f"inertia of {base.name}\n{text}", ok)
