"""The twisted complex ``C^*(K; L)[[z]]`` with ``d_λ = δ_L + (λ∪)·d/dz``.

``z`` has degree 2 and ``λ`` is a rational 3-cocycle, so the slice of total degree
``m`` is the finite sum ``V_m = ⊕_j z^j C^{m-2j}`` over ``0 <= m - 2j <= dim K``
and

    d_λ(z^j x) = z^j δ_L x + j z^{j-1} λ ∪ x

``d_λ² = 0`` needs ``δλ = 0`` and ``λ ∪ λ = 0`` as cochains.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

from sympy import Matrix, binomial
from sympy.polys.domains import QQ

from ..complexes.linalg import CohomologyBasis
from ..complexes.simplicial import SimplicialComplex
from ..defaults import ZCAP_DEFAULT
from ..deloc.cyclotomic import CycloMatrix
from ..exceptions import InternalAssertionError, PreconditionError
from ..utils.parallel import parallel_map
from .cochains import SimplicialCochain, cup
from .local_system import SimplicialLocalSystem

__all__ = [
    "TwistedComplex",
    "build_twisted",
    "twisted_cohomology",
    "gauge_transform",
    "verify_gauge_transform",
    "spectral_sequence_e2",
    "E2Page",
    "check_twisting_cocycle",
    "default_mmax",
    "cup_powers",
]

_logger = logging.getLogger(__name__)

Block = Tuple[int, int]


def check_twisting_cocycle(lam: SimplicialCochain, complex: SimplicialComplex):
    """Raise unless ``λ`` is a 3-cocycle on ``complex`` with ``λ ∪ λ = 0``.

    Raises:
        PreconditionError: ``"degree"``, ``"cocycle"`` (witness: a 4-simplex with
            ``δλ ≠ 0``) or ``"cup-square"`` (witness: a 6-simplex and the value of
            ``λ ∪ λ`` on it).
    """
    if lam.degree != 3:
        raise PreconditionError("degree", f"λ must be a 3-cochain, got degree {lam.degree}")
    if lam.complex != complex:
        raise PreconditionError("same-complex", "λ lives on another complex")
    witness = lam.coboundary().nonzero_witness()
    if witness is not None:
        raise PreconditionError("cocycle", "δλ ≠ 0", witness)
    # C^6 = 0 when dim K <= 5
    if complex.dim >= 6:
        witness = cup(lam, lam).nonzero_witness()
        if witness is not None:
            raise PreconditionError("cup-square", "λ ∪ λ ≠ 0", witness)


class TwistedComplex:
    """``(C^*(K; L)[[z]], d_λ)`` sliced by total degree.

    Args:
        complex (SimplicialComplex): K with its vertex order.
        lam (SimplicialCochain): λ, a rational 3-cocycle with ``λ ∪ λ = 0``.
        local_system (SimplicialLocalSystem, optional): Coefficients. Defaults to ℚ.
        validate (bool, optional): Check the conditions on λ.

    Raises:
        PreconditionError: If λ is not a 3-cocycle or ``λ ∪ λ ≠ 0``.
    """

    def __init__(
        self,
        complex: SimplicialComplex,
        lam: Optional[SimplicialCochain] = None,
        local_system: Optional[SimplicialLocalSystem] = None,
        validate: bool = True,
    ):
        self.complex = complex
        self.lam = lam if lam is not None else SimplicialCochain.zero(complex, 3)
        self.local_system = local_system or SimplicialLocalSystem.trivial(complex)
        if self.local_system.complex != complex:
            raise PreconditionError("same-complex", "the local system lives on another complex")
        self.field = self.local_system.field
        if validate:
            check_twisting_cocycle(self.lam, complex)
        self._delta: Dict[int, CycloMatrix] = {}
        self._cup: Dict[int, CycloMatrix] = {}

    # ---------------------------------------------------------------- slices

    def blocks(self, m: int) -> List[Block]:
        """``(j, p)`` with ``p = m - 2j`` in ``0..dim K``, by increasing ``j``."""
        if m < 0:
            return []
        return [(j, m - 2 * j) for j in range(m // 2 + 1) if 0 <= m - 2 * j <= self.complex.dim]

    def offsets(self, m: int) -> Dict[Block, int]:
        offsets, position = {}, 0
        for block in self.blocks(m):
            offsets[block] = position
            position += self.complex.count(block[1])
        return offsets

    def slice_dim(self, m: int) -> int:
        return sum(self.complex.count(p) for _, p in self.blocks(m))

    def delta(self, p: int) -> CycloMatrix:
        """``δ_L: C^p -> C^{p+1}``."""
        if p not in self._delta:
            self._delta[p] = self.local_system.coboundary_matrix(p)
        return self._delta[p]

    def lambda_cup(self, p: int) -> CycloMatrix:
        """``λ∪: C^p -> C^{p+3}``."""
        if p not in self._cup:
            self._cup[p] = self.local_system.cup_matrix(self.lam, p)
        return self._cup[p]

    # ---------------------------------------------------------- differential

    def differential(self, m: int) -> CycloMatrix:
        """``d_λ: V_m -> V_{m+1}``."""
        source, target = self.offsets(m), self.offsets(m + 1)
        out = CycloMatrix(self.field, (self.slice_dim(m + 1), self.slice_dim(m)))
        for (j, p), col in source.items():
            if (j, p + 1) in target:
                out.add_block(self.delta(p), target[(j, p + 1)], col)
            if j >= 1 and (j - 1, p + 3) in target:
                out.add_block(self.lambda_cup(p), target[(j - 1, p + 3)], col, j)
        return out

    def verify_square_zero(self, m: int) -> bool:
        """``d_λ ∘ d_λ = 0`` on ``V_m``."""
        return (self.differential(m + 1) @ self.differential(m)).is_zero()

    def __repr__(self):
        return f"TwistedComplex({self.complex.name!r}, nnz(λ)={len(list(self.lam.items()))}, N={self.field.order})"


def build_twisted(
    complex: SimplicialComplex,
    lam: Optional[SimplicialCochain] = None,
    local_system: Optional[SimplicialLocalSystem] = None,
    mmax: Optional[int] = None,
) -> TwistedComplex:
    """Assemble ``(C^*(K; L)[[z]], d_λ)`` and verify ``d_λ² = 0`` up to total degree ``mmax``.

    Raises:
        PreconditionError: If λ is not a 3-cocycle or ``λ ∪ λ ≠ 0``.
        InternalAssertionError: If ``d_λ² ≠ 0`` on a slice.
    """
    twisted = TwistedComplex(complex, lam, local_system)
    mmax = default_mmax(complex) if mmax is None else mmax
    for m in range(mmax + 1):
        if not twisted.verify_square_zero(m):
            raise InternalAssertionError(f"d_λ² ≠ 0 on total degree {m}")
    return twisted


def default_mmax(complex: SimplicialComplex) -> int:
    return complex.dim + 2 * ZCAP_DEFAULT


def twisted_cohomology(
    twisted: TwistedComplex, mmax: Optional[int] = None, num_workers: Optional[int] = None
) -> List[int]:
    """``dim H^m(C^*(K; L)[[z]], d_λ)`` for ``m = 0..mmax`` (default ``dim K + 2·ZCAP_DEFAULT``)."""
    mmax = default_mmax(twisted.complex) if mmax is None else mmax
    ranks = parallel_map(lambda m: twisted.differential(m).rank(), range(mmax + 1), num_workers)
    dims = [twisted.slice_dim(m) - ranks[m] - (ranks[m - 1] if m else 0) for m in range(mmax + 1)]
    _logger.debug("twisted dims of %s: %s", twisted.complex.name, dims)
    return dims


# ------------------------------------------------------------------ gauge


def cup_powers(mu: SimplicialCochain, count: int) -> List[SimplicialCochain]:
    """``(-μ)^{∪k}`` for ``k = 0..count``."""
    complex = mu.complex
    powers = [SimplicialCochain(complex, 0, {(v,): 1 for v in complex.vertices})]
    for _ in range(count):
        powers.append(cup(powers[-1], -mu))
    return powers


def gauge_transform(twisted: TwistedComplex, mu: SimplicialCochain, m: int) -> CycloMatrix:
    """``G(z^j x) = Σ_k C(j, k) (-μ)^{∪k} ∪ x · z^{j-k}`` on ``V_m``.

    For ``λ = δμ`` with ``λ ∪ μ = μ ∪ λ`` this intertwines ``d_0`` and ``d_λ``. It is
    unipotent, so ``d_λ`` and ``d_0`` have the same cohomology.
    """
    if mu.degree != 2:
        raise PreconditionError("degree", f"μ must be a 2-cochain, got degree {mu.degree}")
    offsets = twisted.offsets(m)
    blocks = twisted.blocks(m)
    powers = cup_powers(mu, max((j for j, _ in blocks), default=0))
    n = twisted.slice_dim(m)
    out = CycloMatrix(twisted.field, (n, n))
    for (j, p), col in offsets.items():
        for k in range(j + 1):
            target = (j - k, p + 2 * k)
            if target in offsets:
                block = twisted.local_system.cup_matrix(powers[k], p)
                out.add_block(block, offsets[target], col, binomial(j, k))
    return out


def verify_gauge_transform(twisted: TwistedComplex, mu: SimplicialCochain, mmax: Optional[int] = None) -> bool:
    """Whether ``d_λ ∘ G = G ∘ d_0`` on every slice up to ``mmax`` for ``λ = δμ``.

    Raises:
        PreconditionError: If ``λ ≠ δμ``, ``μ ∪ μ ≠ 0`` or ``λ ∪ μ ≠ μ ∪ λ``.
    """
    complex = twisted.complex
    if mu.coboundary() != twisted.lam:
        raise PreconditionError("coboundary", "λ is not δμ")
    witness = cup(mu, mu).nonzero_witness()
    if witness is not None:
        raise PreconditionError("cup-square", "μ ∪ μ ≠ 0", witness)
    witness = (cup(twisted.lam, mu) - cup(mu, twisted.lam)).nonzero_witness()
    if witness is not None:
        raise PreconditionError("commuting", "λ ∪ μ ≠ μ ∪ λ", witness)

    untwisted = TwistedComplex(complex, None, twisted.local_system, validate=False)
    mmax = default_mmax(complex) if mmax is None else mmax
    for m in range(mmax + 1):
        left = twisted.differential(m) @ gauge_transform(twisted, mu, m)
        right = gauge_transform(twisted, mu, m + 1) @ untwisted.differential(m)
        if left != right:
            _logger.info("gauge transform fails to intertwine on total degree %d", m)
            return False
    _logger.info("gauge transform intertwines d_0 and d_λ up to total degree %d", mmax)
    return True


# -------------------------------------------------------- spectral sequence


def _cup_vector(lam: SimplicialCochain, p: int, vector: Dict[int, object]) -> Dict[int, object]:
    """``λ ∪ x`` for ``x ∈ C^p`` given as a sparse vector over ``QQ``."""
    complex = lam.complex
    out = {}
    for r, s in enumerate(complex.simplices(p + 3)):
        front = lam.value(s[:4])
        if front:
            value = vector.get(complex.index(s[3:]))
            if value:
                out[r] = QQ.from_sympy(front) * value
    return out


class E2Page(NamedTuple):
    """Ranks of ``[λ]∪: H^p -> H^{p+3}`` and the resulting ``E_2`` dims per total degree."""

    betti: List[int]
    cup_ranks: List[int]
    dims: List[int]


def spectral_sequence_e2(twisted: TwistedComplex, mmax: Optional[int] = None) -> E2Page:
    """``E_2`` of the z-filtration: ``E_1 = H^*(K)[z]`` with ``d_1(z^j x) = j z^{j-1} [λ] ∪ x``.

    Raises:
        PreconditionError: If the local system is not trivial.
    """
    if not twisted.local_system.is_trivial():
        raise PreconditionError("trivial-local-system", "the E_2 page is computed with rational coefficients")
    complex = twisted.complex
    mmax = default_mmax(complex) if mmax is None else mmax
    bases = [CohomologyBasis(complex, p) for p in range(complex.dim + 1)]
    betti = [b.dim for b in bases]
    cup_ranks = []
    for p in range(complex.dim + 1):
        if p + 3 > complex.dim or not bases[p].dim or not bases[p + 3].dim:
            cup_ranks.append(0)
            continue
        images = [_cup_vector(twisted.lam, p, c) for c in bases[p].cocycles]
        coordinates = bases[p + 3].coordinates(images)
        matrix = [[coordinates[i][r] for i in range(len(images))] for r in range(bases[p + 3].dim)]
        cup_ranks.append(Matrix(matrix).rank())

    def rank(p: int) -> int:
        return cup_ranks[p] if 0 <= p < len(cup_ranks) else 0

    dims = []
    for m in range(mmax + 1):
        total = 0
        for j, p in twisted.blocks(m):
            outgoing = rank(p) if j >= 1 else 0
            incoming = rank(p - 3)
            total += betti[p] - outgoing - incoming
        dims.append(total)
    return E2Page(betti, cup_ranks, dims)
