import pytest

from orbiloop.exceptions import PreconditionError
from orbiloop.zcomplex import (
    SimplicialCochain,
    TwistedComplex,
    d_lambda,
    d_prime,
    duality_pairing,
    fundamental_cocycle,
    integrate,
    pairing_rank,
    top_cocycle,
    twisted_cohomology,
)


def _random_cochain(rng, complex, degree):
    values = rng.integers(-2, 3, size=complex.count(degree))
    return SimplicialCochain.from_vector(complex, degree, [int(v) for v in values])


@pytest.fixture
def sphere(catalog):
    return catalog.complex("S3-sphere")


def test_integrate_top_cochains(catalog, sphere):
    assert integrate(fundamental_cocycle(sphere)) == 1
    assert integrate(top_cocycle(sphere, 5)) == 5
    assert integrate(SimplicialCochain(sphere, 2, {("0", "1", "2"): 1})) == 0
    assert integrate(fundamental_cocycle(catalog.complex("torus"))) == 1


def test_pairing_weights_by_factorial(sphere):
    unit = SimplicialCochain(sphere, 0, {(v,): 1 for v in sphere.vertices})
    top = fundamental_cocycle(sphere)
    assert duality_pairing({0: unit}, {0: top}) == 1
    assert duality_pairing({3: unit}, {3: top}) == 6
    assert duality_pairing({2: unit}, {1: top}) == 0


def test_d_lambda_and_d_prime_square_to_zero(sphere, rng):
    lam = top_cocycle(sphere, 2)
    alpha = {1: _random_cochain(rng, sphere, 2), 2: _random_cochain(rng, sphere, 0)}
    twice = d_lambda(lam, d_lambda(lam, alpha))
    assert all(part.is_zero() for part in twice.values())
    omega = {0: _random_cochain(rng, sphere, 0), 1: _random_cochain(rng, sphere, 2)}
    twice = d_prime(lam, d_prime(lam, omega))
    assert all(part.is_zero() for part in twice.values())


def test_adjunction_on_random_pairs(sphere, rng):
    for _ in range(40):
        lam = top_cocycle(sphere, int(rng.integers(0, 4)))
        n, q = int(rng.integers(0, 3)), int(rng.integers(0, 4))
        omega = {n: _random_cochain(rng, sphere, q)}
        m = max(0, sphere.dim - 1 - q + 2 * n)
        alpha = {j: _random_cochain(rng, sphere, m - 2 * j) for j in range(m // 2 + 1) if m - 2 * j <= sphere.dim}
        left = duality_pairing(d_prime(lam, omega), alpha)
        right = (-1) ** (q + 1) * duality_pairing(omega, d_lambda(lam, alpha))
        assert left == right


def test_d_prime_rejects_negative_powers(sphere):
    with pytest.raises(PreconditionError):
        d_prime(top_cocycle(sphere), {-1: fundamental_cocycle(sphere)})


def test_pairing_rank_matches_untwisted_dims(sphere):
    twisted = TwistedComplex(sphere)
    dims = twisted_cohomology(twisted, 3)
    ranks = [pairing_rank(twisted, m) for m in range(4)]
    assert [r.rank for r in ranks] == dims == [1, 0, 1, 1]
    assert ranks[0].to_dict() == {"m": 0, "u_cocycles": 5, "z_cocycles": 1, "rank": 1}


def test_pairing_rank_preconditions(catalog):
    with pytest.raises(PreconditionError):
        pairing_rank(TwistedComplex(catalog.complex("interval")), 0)
