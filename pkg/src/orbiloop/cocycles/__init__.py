"""Nerve cochains, bundles and gerbes on finite groupoids and their transgression to loops."""
from .bundle import check_h_equals_chi_bar, chi_bar, loop_powers, transgress_bundle, twisted_sectors
from .gerbe import (
    GerbeCocycle,
    LocalSystemSpec,
    dixmier_douady,
    extension_groupoid,
    inner_local_system,
    normalize_gerbe,
    pairing_cocycle,
    transgress_gerbe,
    transgression_value,
)
from .holonomy import HolonomyReport, build_e_phi, e_phi_on_zxgamma, fiber_holonomy, verify_holonomy_theorem
from .nerve import NerveCochain, restrict_to_loops
