"""The gerbe ``e_φ`` on ℤ/N × Γ and the holonomy of its transgression.

For an abelian group Γ and a character ``φ`` the 2-cocycle

    β((n, γ), (n', γ')) = n'·φ(γ)

describes the central extension ``(n, γ, z)(n', γ', z') = (n + n', γγ', φ(γ)^n' z z')``.
On ℤ × Γ it is kept in affine form (:class:`ZxGammaCochain`); its finite
surrogate lives on ℤ/N × Γ, where N is a multiple of ``ord φ · |Γ|``.

The holonomy of the transgressed gerbe along the ℤ/N direction at a loop ``σ`` of
[*/Γ] is compared with ``φ(σ)`` and with ``χ̄`` of the fiber integral of the
Dixmier-Douady class of ``e_φ``.
"""
import logging
from typing import Dict, List, NamedTuple, Optional

import numpy as np

from ..cohomology.bar import BarCochain
from ..cohomology.bockstein import Character, bockstein
from ..cohomology.qmodz import Coefficients, QmodZ
from ..cohomology.zxgamma import ZxGamma, ZxGammaCochain, integrate
from ..exceptions import PreconditionError
from ..groupoids.group import FiniteGroup, cyclic, direct_product
from ..groupoids.groupoid import GroupGroupoid
from ..utils.parallel import parallel_map
from .bundle import chi_bar
from .gerbe import GerbeCocycle, transgression_value
from .nerve import NerveCochain

__all__ = [
    "HolonomyReport",
    "build_e_phi",
    "e_phi_on_zxgamma",
    "fiber_holonomy",
    "verify_holonomy_theorem",
]

_logger = logging.getLogger(__name__)


def _phi_numerators(phi: Character):
    d = phi.order
    return np.array([int(v.lift() * d) for v in phi.values], dtype=np.int64), d


def build_e_phi(gamma: FiniteGroup, phi: Character, n: int) -> GerbeCocycle:
    """``e_φ`` on the one-object groupoid of ℤ/N × Γ.

    Elements of the product are ``"(k,γ)"``; index ``i`` is ``(i // |Γ|, i % |Γ|)``.

    Raises:
        PreconditionError: If Γ is not abelian, ``φ`` is not a character of Γ or N
            is not a multiple of ``ord φ · |Γ|``.
    """
    if not gamma.is_abelian():
        raise PreconditionError("abelian", f"{gamma.name} is not abelian")
    if phi.group != gamma:
        raise PreconditionError("character", "phi is not a character of the given group")
    step = phi.order * gamma.order
    if n < 1 or n % step:
        raise PreconditionError("truncation", f"N must be a positive multiple of ord(phi)*|Gamma| = {step}", n)
    numerators, d = _phi_numerators(phi)
    product = direct_product(cyclic(n), gamma, name=f"Z{n}x{gamma.name}")
    k = gamma.order
    idx = np.arange(product.order)
    table = (idx[None, :] // k) * numerators[idx % k][:, None]
    return GerbeCocycle.from_bar(GroupGroupoid(product), BarCochain(product, table, d, Coefficients.QMODZ))


def e_phi_on_zxgamma(gamma: FiniteGroup, phi: Character) -> ZxGammaCochain:
    """``e_φ`` on ℤ × Γ: the component linear in the second integer argument."""
    numerators, d = _phi_numerators(phi)
    k = gamma.order
    table = np.broadcast_to(numerators[:, None], (k, k))
    return ZxGammaCochain(ZxGamma(gamma), 2, {(2,): table}, d, Coefficients.QMODZ)


def fiber_holonomy(gerbe: GerbeCocycle, sigma: str, n: int) -> QmodZ:
    """Holonomy of the transgressed gerbe along the ℤ/N fiber loop at ``σ``.

    Transport against the generator ``(1, e)`` gives ``τβ((0, σ), (-1, e))``.
    The fiber loop is oriented by ``(-1, e)``: with this orientation the holonomy
    is ``φ(σ)``, and transport along ``(1, e)`` would give ``-φ(σ)``.
    """
    group = gerbe.base.group
    gamma_order = group.order // n
    s = group.index(sigma)
    if s >= gamma_order:
        raise PreconditionError("fiber-loop", "sigma must lie in {0} x Gamma", sigma)
    back = (n - 1) * gamma_order + group.identity
    return transgression_value(gerbe, sigma, group.label(back))


class HolonomyReport(NamedTuple):
    """Three value tables over the elements of Γ and whether they agree."""

    gamma: str
    phi: Dict[str, QmodZ]
    n: int
    transgression: Dict[str, QmodZ]
    chi_bar: Dict[str, QmodZ]
    mismatches: List[str]

    @property
    def verdict(self) -> bool:
        return not self.mismatches

    def rows(self) -> List[List[str]]:
        return [
            [sigma, str(self.transgression[sigma]), str(self.phi[sigma]), str(self.chi_bar[sigma])]
            for sigma in self.phi
        ]

    def to_dict(self) -> dict:
        def column(values):
            return {k: v.to_json() for k, v in values.items()}

        return {
            "gamma": self.gamma,
            "N": self.n,
            "holonomy": column(self.transgression),
            "phi": column(self.phi),
            "chi_bar": column(self.chi_bar),
            "mismatches": list(self.mismatches),
            "verdict": self.verdict,
        }


def verify_holonomy_theorem(
    gamma: FiniteGroup, phi: Character, n: Optional[int] = None, num_workers: Optional[int] = None
) -> HolonomyReport:
    """Compare the fiber holonomy of ``τ(e_φ)``, ``φ`` itself and ``χ̄(π_!(d))`` on every loop of [*/Γ].

    Args:
        gamma (FiniteGroup): An abelian group Γ.
        phi (Character): A character of Γ.
        n (int, optional): Truncation N. Defaults to ``ord φ · |Γ|``.
        num_workers (int, optional): Threads for the per-loop holonomies.

    Raises:
        PreconditionError: If the preconditions of :func:`build_e_phi` fail.
    """
    n = n or phi.order * gamma.order
    gerbe = build_e_phi(gamma, phi, n)
    product = gerbe.base.group
    k = gamma.order

    # (0, σ) has index σ in the product
    labels = list(gamma.elements)
    holonomy = parallel_map(lambda s: fiber_holonomy(gerbe, product.label(s), n), range(k), num_workers)
    transgression = dict(zip(labels, holonomy))
    direct = {labels[s]: phi(s) for s in range(k)}

    dd = integrate(bockstein(e_phi_on_zxgamma(gamma, phi)))
    base = GroupGroupoid(gamma)
    chi = chi_bar(NerveCochain.from_bar(base, dd))

    mismatches = [s for s in labels if not transgression[s] == direct[s] == chi[s]]
    _logger.info(
        "holonomy check on %s with N=%d: %s", gamma.name, n, "agree" if not mismatches else f"{len(mismatches)} mismatches"
    )
    return HolonomyReport(gamma.name, direct, n, transgression, chi, mismatches)
