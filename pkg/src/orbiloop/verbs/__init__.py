from .abstract_verb import Report, Verb, require_valid
from .cohomology_verbs import GroupCohomologyVerb, HolonomyTheoremVerb, TransgressVerb
from .complex_verbs import DelocVerb, ZCohomVerb
from .groupoid_verbs import InertiaCheckVerb, LoopVerb
from .suite_verbs import CatalogVerb, SelftestVerb

verb_list = [
    LoopVerb,
    InertiaCheckVerb,
    GroupCohomologyVerb,
    TransgressVerb,
    HolonomyTheoremVerb,
    DelocVerb,
    ZCohomVerb,
    SelftestVerb,
    CatalogVerb,
]
