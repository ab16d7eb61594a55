"""The pairing between ``u``-elements and ``z``-elements.

A ``z``-element is ``Σ_j z^j α_j`` and a ``u``-element is ``Σ_n u^n ω_n``, both given
as ``{power: SimplicialCochain}``. With ``[K]`` the fundamental cycle,

    ⟨u^n ω, z^m α⟩ = δ_{mn} · m! · ⟨ω ∪ α, [K]⟩

On the ``u`` side the dual differential is

    d'(u^n ω) = u^n δω + (-1)^{|ω|+1} u^{n+1} ω ∪ λ

which makes ``⟨d'ω, α⟩ = (-1)^{|ω|+1} ⟨ω, d_λ α⟩`` for homogeneous ``ω``.
"""
import logging
from math import factorial
from typing import Dict, Mapping, NamedTuple, Optional

from sympy import Rational
from sympy.polys.domains import QQ

from ..complexes.linalg import domain_matrix, from_columns, nullspace, qq_rank
from ..complexes.simplicial import Simplex, SimplicialComplex
from ..exceptions import PreconditionError
from .cochains import SimplicialCochain, cup, fundamental_cycle
from .twisted import TwistedComplex

__all__ = [
    "Element",
    "PairingRank",
    "d_lambda",
    "d_prime",
    "duality_pairing",
    "integrate",
    "pairing_rank",
]

_logger = logging.getLogger(__name__)

Element = Mapping[int, SimplicialCochain]


def integrate(cochain: SimplicialCochain, cycle: Optional[Mapping[Simplex, int]] = None) -> Rational:
    """``⟨c, [K]⟩`` (zero unless ``c`` is a top cochain)."""
    if cochain.degree != cochain.complex.dim:
        return Rational(0)
    return cochain.evaluate(cycle if cycle is not None else fundamental_cycle(cochain.complex))


def duality_pairing(omega: Element, alpha: Element, cycle: Optional[Mapping[Simplex, int]] = None) -> Rational:
    """``Σ_n n! ⟨ω_n ∪ α_n, [K]⟩``.

    Raises:
        PreconditionError: ``"orientation"`` if K has no fundamental cycle.
    """
    total = Rational(0)
    for n, part in omega.items():
        if n in alpha:
            if cycle is None:
                cycle = fundamental_cycle(part.complex)
            total += factorial(n) * integrate(cup(part, alpha[n]), cycle)
    return total


def _accumulate(out: Dict[int, SimplicialCochain], power: int, cochain: SimplicialCochain):
    if power in out:
        out[power] = out[power] + cochain
    else:
        out[power] = cochain


def d_lambda(lam: SimplicialCochain, alpha: Element) -> Dict[int, SimplicialCochain]:
    """``d_λ(Σ z^j α_j) = Σ z^j δα_j + j z^{j-1} λ ∪ α_j``."""
    out: Dict[int, SimplicialCochain] = {}
    for j, part in sorted(alpha.items()):
        _accumulate(out, j, part.coboundary())
        if j >= 1:
            _accumulate(out, j - 1, cup(lam, part) * j)
    return out


def d_prime(lam: SimplicialCochain, omega: Element) -> Dict[int, SimplicialCochain]:
    """``d'(Σ u^n ω_n) = Σ u^n δω_n + (-1)^{|ω_n|+1} u^{n+1} ω_n ∪ λ``."""
    out: Dict[int, SimplicialCochain] = {}
    for n, part in sorted(omega.items()):
        if n < 0:
            raise PreconditionError("u-power", "u-elements have nonnegative powers", n)
        _accumulate(out, n, part.coboundary())
        _accumulate(out, n + 1, cup(part, lam) * (-1) ** (part.degree + 1))
    return out


# ------------------------------------------------------------ pairing rank


class PairingRank(NamedTuple):
    """Rank of the pairing between cocycles of total degrees ``dim K - m`` (u) and ``m`` (z)."""

    m: int
    u_cocycles: int
    z_cocycles: int
    rank: int

    def to_dict(self) -> dict:
        return dict(self._asdict())


def _u_blocks(complex: SimplicialComplex, t: int):
    """``(n, q)`` with ``q = t + 2n`` in ``0..dim K`` and ``n >= 0``."""
    return [(n, t + 2 * n) for n in range(complex.dim + 1) if 0 <= t + 2 * n <= complex.dim]


def _offsets(complex: SimplicialComplex, blocks):
    offsets, position = {}, 0
    for block in blocks:
        offsets[block] = position
        position += complex.count(block[1])
    return offsets, position


def _d_prime_rows(lam: SimplicialCochain, t: int) -> Dict[int, Dict[int, object]]:
    """``d': U_t -> U_{t+1}`` as ``{row: {col: value}}``."""
    complex = lam.complex
    source, _ = _offsets(complex, _u_blocks(complex, t))
    target, _ = _offsets(complex, _u_blocks(complex, t + 1))
    rows: Dict[int, Dict[int, object]] = {}

    def add(r, c, v):
        row = rows.setdefault(r, {})
        row[c] = row.get(c, QQ(0)) + QQ.from_sympy(Rational(v))

    for (n, q), col in source.items():
        if (n, q + 1) in target:
            base = target[(n, q + 1)]
            for r, s in enumerate(complex.simplices(q + 1)):
                for i in range(len(s)):
                    add(base + r, col + complex.index(s[:i] + s[i + 1 :]), (-1) ** i)
        if (n + 1, q + 3) in target:
            base = target[(n + 1, q + 3)]
            sign = (-1) ** (q + 1)
            for r, s in enumerate(complex.simplices(q + 3)):
                back = lam.value(s[q:])
                if back:
                    add(base + r, col + complex.index(s[: q + 1]), sign * back)
    return rows


def pairing_rank(twisted: TwistedComplex, m: int) -> PairingRank:
    """Rank of ``⟨ , ⟩`` on ``ker d' ⊂ U_{dim K - m}`` against ``ker d_λ ⊂ V_m``.

    This is measured, not asserted: perfectness is not claimed in general.

    Raises:
        PreconditionError: If the local system is not trivial or K has no fundamental cycle.
    """
    if not twisted.local_system.is_trivial():
        raise PreconditionError("trivial-local-system", "the pairing is defined for rational coefficients")
    complex = twisted.complex
    cycle = fundamental_cycle(complex)
    t = complex.dim - m

    z_offsets = twisted.offsets(m)
    z_size = twisted.slice_dim(m)
    z_kernel = nullspace(twisted.differential(m).regular_representation(), z_size)

    u_offsets, u_size = _offsets(complex, _u_blocks(complex, t))
    _, u_target_size = _offsets(complex, _u_blocks(complex, t + 1))
    u_kernel = nullspace(domain_matrix(_d_prime_rows(twisted.lam, t), (u_target_size, u_size)), u_size)

    form: Dict[int, Dict[int, object]] = {}
    for (n, q), row_offset in u_offsets.items():
        p = complex.dim - q
        if (n, p) not in z_offsets:
            continue
        col_offset = z_offsets[(n, p)]
        for top, sign in cycle.items():
            r = row_offset + complex.index(top[: q + 1])
            c = col_offset + complex.index(top[q:])
            row = form.setdefault(r, {})
            row[c] = row.get(c, QQ(0)) + QQ(factorial(n) * sign)

    rank = 0
    if u_kernel and z_kernel:
        restricted = from_columns(u_kernel, u_size).transpose().matmul(domain_matrix(form, (u_size, z_size)))
        rank = qq_rank(restricted.matmul(from_columns(z_kernel, z_size)))
    result = PairingRank(m, len(u_kernel), len(z_kernel), rank)
    _logger.debug("pairing on total degree %d of %s: %s", m, complex.name, result)
    return result
