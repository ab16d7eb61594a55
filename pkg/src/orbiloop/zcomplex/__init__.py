"""Cochain models of the twisted complex with a formal variable and of its periodic companion."""
from .cochains import SimplicialCochain, cup, fundamental_cocycle, fundamental_cycle, top_cocycle
from .local_system import SimplicialLocalSystem, local_system_cohomology
from .pairing import PairingRank, d_lambda, d_prime, duality_pairing, integrate, pairing_rank
from .periodic import (
    PeriodicComplex,
    PeriodicDims,
    periodic_cohomology,
    periodic_gauge_transform,
    verify_periodic_gauge_transform,
)
from .twisted import (
    E2Page,
    TwistedComplex,
    build_twisted,
    check_twisting_cocycle,
    default_mmax,
    gauge_transform,
    spectral_sequence_e2,
    twisted_cohomology,
    verify_gauge_transform,
)
