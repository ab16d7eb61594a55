"""Gerbes on finite groupoids as normalized ℚ/ℤ-valued 2-cocycles.

A gerbe is given by ``β`` with ``β(h, g) + β(h∘g, f) = β(g, f) + β(h, g∘f)`` and
``β(id, f) = β(f, id) = 0``. Its transgression to the loop groupoid is the
1-cochain

    τβ((x, γ), μ) = β(μ, γ) + β(μ∘γ, μ^-1) - β(μ, μ^-1)

which is the holonomy cocycle of the line bundle of the gerbe over LX.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

import numpy as np
from sympy import ilcm

from ..cohomology.bar import BarCochain
from ..cohomology.qmodz import Coefficients, QmodZ
from ..exceptions import InternalAssertionError, PreconditionError
from ..groupoids.groupoid import FiniteGroupoid
from ..groupoids.maps import GroupoidMap
from ..loops.loop_groupoid import LoopGroupoid, loop_groupoid
from ..utils.ids import compound_id
from .nerve import NerveCochain

__all__ = [
    "GerbeCocycle",
    "LocalSystemSpec",
    "normalize_gerbe",
    "extension_groupoid",
    "dixmier_douady",
    "transgression_value",
    "transgress_gerbe",
    "inner_local_system",
    "pairing_cocycle",
]

_logger = logging.getLogger(__name__)


class GerbeCocycle:
    """A normalized ℚ/ℤ-valued 2-cocycle on ``beta.groupoid``.

    Args:
        beta (NerveCochain): Degree 2, ℚ/ℤ coefficients.
        validate (bool, optional): If ``True``, check the cocycle identity and the
            normalization.

    Raises:
        PreconditionError: If ``beta`` has the wrong degree or coefficients, is not
            a cocycle or is not normalized (see :func:`normalize_gerbe`).
    """

    def __init__(self, beta: NerveCochain, validate: bool = True):
        if beta.degree != 2 or beta.coefficients is not Coefficients.QMODZ:
            raise PreconditionError("gerbe-cocycle", "expected a Q/Z-valued 2-cochain")
        if validate:
            if not beta.is_cocycle():
                raise PreconditionError("cocycle", "beta is not a cocycle")
            if not beta.is_normalized():
                raise PreconditionError("normalized", "beta is not normalized, use normalize_gerbe first")
        self.beta = beta

    @classmethod
    def from_bar(cls, groupoid, cochain: BarCochain, validate: bool = True) -> "GerbeCocycle":
        return cls(NerveCochain.from_bar(groupoid, cochain), validate)

    @property
    def base(self) -> FiniteGroupoid:
        return self.beta.groupoid

    def __call__(self, g: str, f: str) -> QmodZ:
        return self.beta.value(g, f)

    def denominator(self) -> int:
        """Least common denominator of all values."""
        if self.beta.bar is not None:
            return self.beta.bar.denominator
        d = 1
        for _, v in self.beta.items():
            d = ilcm(d, v.denominator)
        return int(d)

    def __repr__(self):
        return f"GerbeCocycle({self.base.name}, denominator={self.denominator()})"


def normalize_gerbe(beta: NerveCochain) -> Tuple[GerbeCocycle, NerveCochain]:
    """Gauge a 2-cocycle into normal form.

    Returns ``(β - δc, c)`` with ``c(f) = β(id_y, id_y)`` for ``f: x -> y``.

    Raises:
        PreconditionError: If ``beta`` is not a ℚ/ℤ-valued 2-cocycle.
    """
    if beta.degree != 2 or beta.coefficients is not Coefficients.QMODZ:
        raise PreconditionError("gerbe-cocycle", "expected a Q/Z-valued 2-cochain")
    if not beta.is_cocycle():
        raise PreconditionError("cocycle", "beta is not a cocycle")
    g = beta.groupoid
    if beta.bar is not None:
        group = beta.bar.group
        e = group.identity
        shift = beta.bar.at(e, e)
        c = NerveCochain.from_bar(
            g, BarCochain.from_function(group, 1, lambda _: shift, Coefficients.QMODZ)
        )
    else:
        c = NerveCochain.from_function(
            g, 1, lambda f: beta.value(g.identity(g.dst(f)), g.identity(g.dst(f))), Coefficients.QMODZ
        )
    if c.is_zero():
        return GerbeCocycle(beta), c
    _logger.info("%s: gerbe cocycle normalized by a gauge shift", g.name)
    return GerbeCocycle(beta - c.coboundary()), c


def extension_groupoid(gerbe: GerbeCocycle, modulus: int) -> Tuple[FiniteGroupoid, GroupoidMap]:
    """The central extension of the base by ℤ/m defined by ``β``.

    Morphisms are ``(f, k)`` standing for ``(f, k/m)``; composition is
    ``(g, w)∘(f, z) = (g∘f, w + z + β(g, f))``.

    Returns:
        Tuple[FiniteGroupoid, GroupoidMap]: The extension and its projection to the base.

    Raises:
        PreconditionError: If a value of ``β`` has a denominator not dividing ``modulus``.
    """
    denominator = gerbe.denominator()
    if modulus < 1 or modulus % denominator:
        raise PreconditionError("denominator", f"values of beta need denominator dividing {modulus}", denominator)
    base = gerbe.base
    ids: Dict[Tuple[str, int], str] = {}
    tags = {}
    morphisms = []
    for f in base.morphisms:
        for k in range(modulus):
            m = compound_id(f, str(k))
            ids[(f, k)] = m
            tags[m] = (f, k)
            morphisms.append((m, base.src(f), base.dst(f)))

    def numerator(value: QmodZ) -> int:
        return int(value.lift() * modulus)

    def compose(gm, fm):
        g, w = tags[gm]
        f, z = tags[fm]
        return ids[(base.compose(g, f), (w + z + numerator(gerbe(g, f))) % modulus)]

    ident = {x: ids[(base.identity(x), 0)] for x in base.objects}
    inv = {}
    for m, (f, z) in tags.items():
        f_inv = base.inverse(f)
        inv[m] = ids[(f_inv, (-z - numerator(gerbe(f_inv, f))) % modulus)]

    extension = FiniteGroupoid.from_structure(
        base.objects, morphisms, compose, ident, inv, tags=tags, name=f"{base.name}~{modulus}"
    )
    projection = GroupoidMap(
        extension, base, {x: x for x in base.objects}, {m: f for m, (f, _) in tags.items()}, name="proj"
    )
    return extension, projection


def dixmier_douady(gerbe: GerbeCocycle) -> NerveCochain:
    """The integral 3-cocycle of the gerbe: the Bockstein of ``β``."""
    return gerbe.beta.lift().coboundary().to_integral()


def transgression_value(gerbe: GerbeCocycle, loop: str, mu: str) -> QmodZ:
    """``τβ`` at the morphism ``(γ, μ)`` of LX, computed from ``β`` alone.

    Raises:
        PreconditionError: If ``loop`` is not a loop or ``μ`` does not start at its base point.
    """
    base = gerbe.base
    x = base.src(loop)
    if base.dst(loop) != x or base.src(mu) != x:
        raise PreconditionError("loop-morphism", "expected a loop and a morphism out of its base point", (loop, mu))
    mu_inv = base.inverse(mu)
    return gerbe(mu, loop) + gerbe(base.compose(mu, loop), mu_inv) - gerbe(mu, mu_inv)


def _as_gerbe(gerbe: Union[GerbeCocycle, NerveCochain]) -> GerbeCocycle:
    return gerbe if isinstance(gerbe, GerbeCocycle) else GerbeCocycle(gerbe)


def transgress_gerbe(
    gerbe: Union[GerbeCocycle, NerveCochain], loops: Optional[LoopGroupoid] = None
) -> NerveCochain:
    """The ℚ/ℤ-valued 1-cocycle ``τβ`` on the loop groupoid.

    Raises:
        PreconditionError: If ``gerbe`` is not a normalized cocycle.
        InternalAssertionError: If ``δτβ`` does not vanish.
    """
    gerbe = _as_gerbe(gerbe)
    loops = loops or loop_groupoid(gerbe.base)
    values = {}
    for m in loops.carrier.morphisms:
        gamma, mu = loops.mor_tag(m)
        values[(m,)] = transgression_value(gerbe, gamma, mu)
    tau = NerveCochain(loops.carrier, 1, values, Coefficients.QMODZ)
    if not tau.is_cocycle():
        raise InternalAssertionError(f"transgression of the gerbe on {gerbe.base.name} is not a cocycle")
    return tau


class LocalSystemSpec(NamedTuple):
    """Characters ``ε_γ`` of the automorphism groups of the sector representatives.

    ``characters[γ][μ]`` is the value of ``ε_γ`` on the automorphism ``(γ, μ)``.
    """

    loops: LoopGroupoid
    characters: Dict[str, Dict[str, QmodZ]]

    def character(self, representative: str) -> Dict[str, QmodZ]:
        return self.characters[representative]

    def nontrivial_sectors(self) -> List[str]:
        return [rep for rep, eps in self.characters.items() if any(v != 0 for v in eps.values())]

    def is_trivial(self) -> bool:
        return not self.nontrivial_sectors()

    def to_dict(self) -> dict:
        return {
            rep: {mu: v.to_json() for mu, v in eps.items()} for rep, eps in self.characters.items()
        }


def inner_local_system(
    gerbe: Union[GerbeCocycle, NerveCochain], loops: Optional[LoopGroupoid] = None
) -> LocalSystemSpec:
    """Restrict ``τβ`` to the automorphism group of every sector representative.

    Raises:
        InternalAssertionError: If some ``ε_γ`` is not a character.
    """
    gerbe = _as_gerbe(gerbe)
    loops = loops or loop_groupoid(gerbe.base)
    base = gerbe.base
    characters = {}
    for sector in loops.sectors():
        gamma = sector.representative
        centralizer = [loops.mor_tag(m)[1] for m in loops.carrier.automorphisms(gamma)]
        eps = {mu: transgression_value(gerbe, gamma, mu) for mu in centralizer}
        for mu in centralizer:
            for nu in centralizer:
                if eps[base.compose(nu, mu)] != eps[nu] + eps[mu]:
                    raise InternalAssertionError(f"inner local system at {gamma} is not a character at ({nu}, {mu})")
        characters[gamma] = eps
    _logger.debug("%s: inner local system on %d sectors", base.name, len(characters))
    return LocalSystemSpec(loops, characters)


def pairing_cocycle(groupoid, n: int) -> GerbeCocycle:
    """``β((a, b), (a', b')) = a·b'/n`` on the one-object groupoid of ``ℤ/n × ℤ/n``."""
    group = groupoid.group
    idx = np.arange(group.order)
    a, b = idx // n, idx % n
    table = a[:, None] * b[None, :]
    return GerbeCocycle.from_bar(groupoid, BarCochain(group, table, n, Coefficients.QMODZ))


