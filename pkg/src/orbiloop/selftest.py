"""Invariant suite run by ``orbiloop selftest``.

Each check raises :class:`CheckFailure` (or any other exception) when an invariant
does not hold. Random instances come from ``numpy.random.default_rng`` seeded with
the suite seed plus the position of the check, so results do not depend on the
order in which worker threads pick the checks up.
"""
import itertools
import logging
from typing import Callable, List, NamedTuple, Optional, Sequence

import numpy as np

from . import defaults
from .cocycles.bundle import check_h_equals_chi_bar
from .cocycles.gerbe import GerbeCocycle, pairing_cocycle, transgress_gerbe, transgression_value
from .cocycles.holonomy import e_phi_on_zxgamma, verify_holonomy_theorem
from .cocycles.nerve import NerveCochain, restrict_to_loops
from .cohomology.bar import BarCochain, cohomologous, cohomology
from .cohomology.bockstein import bockstein, characters, inverse_bockstein_cyclic
from .cohomology.qmodz import Coefficients, QmodZ
from .cohomology.smith import FinAbPresentation
from .cohomology.zxgamma import ZxGamma, ZxGammaCochain, integrate
from .complexes.linalg import betti_numbers
from .config.catalog import Catalog, get_catalog
from .deloc.delocalized import delocalized, delocalized_untwisted_rational
from .groupoids.equivalence import enumerate_maps, is_equivalence
from .groupoids.group import cyclic, direct_product
from .groupoids.groupoid import GroupGroupoid, codiscrete, discrete, disjoint_union
from .groupoids.limits import check_universal_property, equalizer, fiber_product, product
from .groupoids.maps import GroupoidMap
from .loops.loop_groupoid import (
    check_loop_of_map_multiplicative,
    check_loop_preserves_pullback,
    inertia_via_equalizer,
    inverse_loops,
    loop_groupoid,
    loop_groupoid_via_pullback,
    loop_multiply,
    loop_of_map,
    unit_loops,
)
from .utils.parallel import parallel_map
from .utils.tables import format_table
from .zcomplex.cochains import SimplicialCochain, top_cocycle
from .zcomplex.local_system import SimplicialLocalSystem, local_system_cohomology
from .zcomplex.pairing import d_lambda, d_prime, duality_pairing
from .zcomplex.periodic import PeriodicComplex, periodic_cohomology, verify_periodic_gauge_transform
from .zcomplex.twisted import (
    TwistedComplex,
    build_twisted,
    spectral_sequence_e2,
    twisted_cohomology,
    verify_gauge_transform,
)

__all__ = ["CheckFailure", "CheckResult", "SelftestReport", "run_selftest", "check_names"]

_logger = logging.getLogger(__name__)


class CheckFailure(AssertionError):
    pass


def expect(condition: bool, message: str):
    if not condition:
        raise CheckFailure(message)


class Context(NamedTuple):
    catalog: Catalog
    rng: np.random.Generator
    samples: int


class CheckResult(NamedTuple):
    module: str
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return dict(self._asdict())


class SelftestReport(NamedTuple):
    seed: int
    samples: int
    results: List[CheckResult]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }

    def table(self) -> str:
        return format_table(
            ["module", "check", "result", "detail"],
            [[r.module, r.name, "ok" if r.passed else "FAIL", r.detail] for r in self.results],
        )


_CHECKS: List[tuple] = []


def _check(module: str, name: str):
    def register(fn: Callable[[Context], str]):
        _CHECKS.append((module, name, fn))
        return fn

    return register


def check_names() -> List[str]:
    return [f"{module}:{name}" for module, name, _ in _CHECKS]


# ------------------------------------------------------------------ gpd-core


@_check("cli", "catalog-validates")
def _catalog_validates(ctx: Context) -> str:
    reports = ctx.catalog.validate_all()
    failed = [name for name, report in reports.items() if not report.valid]
    expect(not failed, f"invalid built-ins: {failed}")
    return f"{len(reports)} built-ins"


def _small_groupoids(catalog: Catalog):
    names = ["pt", "swap2", "BZ2", "BZ3", "BZ4", "BS3", "BV4", "conj-Z3", "conj-S3", "regular-Z3", "regular-S3"]
    groupoids = [catalog.groupoid(n) for n in names]
    groupoids += [
        discrete(["a", "b"]),
        codiscrete(["a", "b", "c"]),
        disjoint_union(catalog.groupoid("swap2"), catalog.groupoid("BZ2")),
        product(catalog.groupoid("BZ2"), catalog.groupoid("swap2")).groupoid,
    ]
    return groupoids


@_check("gpd-core", "limits-validate")
def _limits_validate(ctx: Context) -> str:
    count = 0
    for x in _small_groupoids(ctx.catalog)[:8]:
        square = product(x, ctx.catalog.groupoid("BZ2"))
        expect(square.groupoid.validate().valid, f"{square.groupoid.name} is not a groupoid")
        expect(square.first.validate().valid and square.second.validate().valid, "product projections")
        fp = fiber_product(square.first, square.first)
        expect(fp.groupoid.validate().valid, f"{fp.groupoid.name} is not a groupoid")
        expect(fp.filler.validate().valid, f"{fp.groupoid.name}: filler is not natural")
        identity = GroupoidMap.identity(x)
        eq = equalizer(identity, identity)
        expect(eq.groupoid.validate().valid and eq.filler.validate().valid, f"equalizer of {x.name}")
        expect(GroupoidMap.compose(identity, identity) == identity, "id∘id != id")
        count += 1
    return f"{count} groupoids"


def _pick(ctx: Context, items: list):
    return items[ctx.rng.integers(len(items))]


@_check("gpd-core", "fiber-product-universal-property")
def _universal_property(ctx: Context) -> str:
    catalog = ctx.catalog
    sources = [catalog.groupoid(n) for n in ("pt", "BZ2", "swap2")]
    targets = [catalog.groupoid(n) for n in ("BZ2", "BZ3", "swap2")]
    count = max(1, min(ctx.samples, 6))
    for _ in range(count):
        c = _pick(ctx, targets)
        f = _pick(ctx, list(enumerate_maps(_pick(ctx, sources), c)))
        g = _pick(ctx, list(enumerate_maps(_pick(ctx, sources), c)))
        fp = fiber_product(f, g)
        for test in sources:
            report = check_universal_property(f, g, test, fp)
            expect(report.valid, f"{fp.groupoid.name} against {test.name}: {report.first_failure}")
    return f"{count} random cospans"


@_check("gpd-core", "equalizer-two-isomorphism")
def _equalizer_filler(ctx: Context) -> str:
    catalog = ctx.catalog
    count = 0
    for a, b in (("BZ2", "BS3"), ("swap2", "BZ4"), ("BZ3", "BS3")):
        maps = list(enumerate_maps(catalog.groupoid(a), catalog.groupoid(b)))
        for f, g in itertools.combinations(maps[:6], 2):
            eq = equalizer(f, g)
            expect(eq.groupoid.validate().valid, f"E({a} -> {b}) is not a groupoid")
            expect(eq.filler.source == GroupoidMap.compose(f, eq.projection), "filler does not start at f∘p")
            expect(eq.filler.target == GroupoidMap.compose(g, eq.projection), "filler does not end at g∘p")
            expect(eq.filler.validate().valid, f"E({a} -> {b}): filler is not natural")
            count += 1
    return f"{count} parallel pairs"


# ---------------------------------------------------------------------- loop


@_check("loop", "loops-of-groups-are-conjugation")
def _loops_of_groups(ctx: Context) -> str:
    names = [f"Z{n}" for n in range(1, 9)] + ["S3", "D4", "Q8"]
    for name in names:
        group = ctx.catalog.group(name)
        loops = loop_groupoid(ctx.catalog.groupoid(f"B{name}"))
        conj = ctx.catalog.groupoid(f"conj-{name}")
        ids = {m: m for m in loops.carrier.morphisms}
        iso = GroupoidMap(loops.carrier, conj, {g: g for g in loops.carrier.objects}, ids)
        expect(iso.is_isomorphism(), f"L B{name} is not the conjugation groupoid")
        sectors = loops.sectors()
        expect(len(sectors) == len(group.conjugacy_classes()), f"{name}: sector count")
        for s in sectors:
            expect(s.centralizer_order == len(group.centralizer(group.index(s.representative))), f"{name}: centralizer")
    return f"{len(names)} groups"


@_check("loop", "inertia-equivalence")
def _inertia_equivalence(ctx: Context) -> str:
    groupoids = _small_groupoids(ctx.catalog)
    for x in groupoids:
        loops = loop_groupoid(x)
        _, comparison = inertia_via_equalizer(x, loops)
        report = is_equivalence(comparison)
        expect(report.valid, f"{x.name}: {report.first_failure}")
        direct = {(m, loops.carrier.src(m), loops.carrier.dst(m)) for m in loops.carrier.morphisms}
        expect(set(loop_groupoid_via_pullback(x)) == direct, f"{x.name}: pullback model differs")
        unit = unit_loops(loops)
        expect(unit.validate().valid and inverse_loops(loops).validate().valid, f"{x.name}: unit or inverse")
        expect(GroupoidMap.compose(loops.proj, unit) == GroupoidMap.identity(x), f"{x.name}: proj∘unit != id")
    return f"{len(groupoids)} groupoids"


@_check("loop", "loop-preserves-pullback")
def _loop_preserves_pullback(ctx: Context) -> str:
    catalog = ctx.catalog
    sources = [catalog.groupoid(n) for n in ("pt", "swap2", "BZ2", "BZ3", "BZ4")]
    targets = [catalog.groupoid(n) for n in ("BZ2", "BZ4", "swap2", "BS3")]
    maps = {}
    for s, t in itertools.product(sources, targets):
        maps[(s.name, t.name)] = list(enumerate_maps(s, t))
    for _ in range(ctx.samples):
        c = targets[ctx.rng.integers(len(targets))]
        a = sources[ctx.rng.integers(len(sources))]
        b = sources[ctx.rng.integers(len(sources))]
        fs, gs = maps[(a.name, c.name)], maps[(b.name, c.name)]
        f = fs[ctx.rng.integers(len(fs))]
        g = gs[ctx.rng.integers(len(gs))]
        expect(check_loop_preserves_pullback(f, g), f"L does not preserve {a.name} x_{c.name} {b.name}")
    return f"{ctx.samples} random squares"


@_check("loop", "multiplication-axioms")
def _multiplication_axioms(ctx: Context) -> str:
    groupoids = _small_groupoids(ctx.catalog)
    for x in groupoids:
        mult = loop_multiply(x)
        expect(mult.multiply.validate().valid, f"{x.name}: multiply is not a groupoid map")
        report = mult.check_axioms()
        expect(report.valid, f"{x.name}: {report.first_failure}")
    return f"{len(groupoids)} groupoids"


@_check("loop", "loop-of-map-multiplicative")
def _loop_of_map_multiplicative(ctx: Context) -> str:
    catalog = ctx.catalog
    names = ("pt", "swap2", "BZ2", "BZ4", "BS3")
    mults = {n: loop_multiply(catalog.groupoid(n)) for n in names}
    count = 0
    for a, b in itertools.product(names[:4], names[1:]):
        for f in enumerate_maps(catalog.groupoid(a), catalog.groupoid(b)):
            expect(check_loop_of_map_multiplicative(f, mults[a], mults[b]), f"L{f.name}: {a} -> {b}")
            count += 1
    return f"{count} maps"


# ----------------------------------------------------------------- grp-cohom


@_check("grp-cohom", "cyclic-integral-cohomology")
def _cyclic_cohomology(ctx: Context) -> str:
    for n in range(1, 9):
        groups = cohomology(ctx.catalog.group(f"Z{n}"), Coefficients.Z, 4)
        expected = [FinAbPresentation(1), FinAbPresentation(), FinAbPresentation(0, [n])]
        expected += [FinAbPresentation(), FinAbPresentation(0, [n])]
        expect(groups == expected, f"H*(Z{n}; Z) = {[str(h) for h in groups]}")
    return "n = 1..8"


@_check("grp-cohom", "h1-qmodz-is-abelianization-dual")
def _h1_qmodz(ctx: Context) -> str:
    names = ["Z2", "Z3", "Z4", "Z6", "S3", "D4", "Q8", "V4"]
    for name in names:
        group = ctx.catalog.group(name)
        order = group.abelianization_order()
        expect(len(characters(group)) == order, f"{name}: character count")
        expect(cohomology(group, Coefficients.QMODZ, 1)[1].order == order, f"{name}: |H^1(Q/Z)|")
    return f"{len(names)} groups"


@_check("grp-cohom", "bockstein-bijective-on-cyclic")
def _bockstein_cyclic(ctx: Context) -> str:
    for n in range(2, 9):
        group = ctx.catalog.group(f"Z{n}")
        chars = characters(group)
        images = [bockstein(phi.cochain()) for phi in chars]
        for phi, chi in zip(chars, images):
            expect(chi.is_cocycle(), f"Z{n}: Bockstein is not a cocycle")
            expect(inverse_bockstein_cyclic(chi, group.index("1")) == phi.value("1"), f"Z{n}: inverse Bockstein")
        for i, j in itertools.combinations(range(len(images)), 2):
            expect(not cohomologous(images[i], images[j]), f"Z{n}: Bockstein is not injective")
    return "n = 2..8"


def _random_zxgamma(ctx: Context, space: ZxGamma, degree: int) -> ZxGammaCochain:
    shape = (space.finite.order,) * degree
    components = {
        positions: ctx.rng.integers(-2, 3, size=shape)
        for r in range(degree + 1)
        for positions in itertools.combinations(range(1, degree + 1), r)
    }
    return ZxGammaCochain(space, degree, components)


@_check("grp-cohom", "integration-anticommutes-with-coboundary")
def _integration_sign(ctx: Context) -> str:
    names = ["Z3", "V4", "S3"]
    count = max(1, min(ctx.samples, 10))
    for name in names:
        space = ZxGamma(ctx.catalog.group(name))
        for degree in (1, 2, 3):
            for _ in range(count):
                c = _random_zxgamma(ctx, space, degree)
                expect(integrate(c.coboundary()) == -integrate(c).coboundary(), f"{name}, degree {degree}")
    return f"{count} cochains per group and degree"


@_check("grp-cohom", "integrated-gerbe-class-is-bockstein")
def _integrated_gerbe_class(ctx: Context) -> str:
    count = 0
    for m in range(2, 7):
        gamma = ctx.catalog.group(f"Z{m}")
        for phi in characters(gamma):
            dd = integrate(bockstein(e_phi_on_zxgamma(gamma, phi)))
            expect(cohomologous(dd, bockstein(phi.cochain())), f"Z{m}, {phi}")
            count += 1
    return f"{count} characters"


# ----------------------------------------------------------------------- coc


@_check("coc", "h-equals-chi-bar")
def _h_equals_chi_bar(ctx: Context) -> str:
    names = [f"Z{n}" for n in range(1, 9)] + ["S3"]
    count = 0
    for name in names:
        base = ctx.catalog.groupoid(f"B{name}")
        loops = loop_groupoid(base)
        for phi in characters(ctx.catalog.group(name)):
            expect(check_h_equals_chi_bar(NerveCochain.from_bar(base, phi.cochain()), loops), f"{name}: {phi}")
            count += 1
    return f"{count} bundles"


@_check("coc", "transgression-pairing-identity")
def _transgression_identity(ctx: Context) -> str:
    for n in (2, 3):
        group = direct_product(cyclic(n), cyclic(n))
        gerbe = pairing_cocycle(GroupGroupoid(group), n)
        expect(transgress_gerbe(gerbe).is_cocycle(), f"(Z{n})^2: transgression is not a cocycle")
        # β is bilinear, so τβ(γ, h) is the commutator pairing
        for gamma, h in itertools.product(group.elements, repeat=2):
            expected = gerbe(h, gamma) - gerbe(gamma, h)
            expect(transgression_value(gerbe, gamma, h) == expected, f"(Z{n})^2 at ({gamma}, {h})")
    tau = transgress_gerbe(ctx.catalog.gerbe("discrete-torsion-V4"))
    expect(tau.is_cocycle(), "discrete torsion: transgression is not a cocycle")
    return "n = 2, 3"


@_check("coc", "holonomy-theorem")
def _holonomy(ctx: Context) -> str:
    count = 0
    for m in range(2, 7):
        gamma = ctx.catalog.group(f"Z{m}")
        for phi in characters(gamma):
            report = verify_holonomy_theorem(gamma, phi, 4 * m * phi.order, num_workers=1)
            expect(report.verdict, f"Z{m}, {phi}: {report.mismatches}")
            count += 1
    return f"{count} characters"


def _random_normalized_cochain(ctx: Context, x, denominator: int = 6) -> NerveCochain:
    def value(f):
        return QmodZ(0) if x.is_identity(f) else QmodZ(int(ctx.rng.integers(denominator)), denominator)

    return NerveCochain.from_function(x, 1, value, Coefficients.QMODZ)


@_check("coc", "transgression-of-coboundary")
def _transgression_of_coboundary(ctx: Context) -> str:
    names = ["BZ3", "BS3", "swap2", "conj-Z3", "regular-Z3"]
    for name in names:
        x = ctx.catalog.groupoid(name)
        loops = loop_groupoid(x)
        c = _random_normalized_cochain(ctx, x)
        tau = transgress_gerbe(GerbeCocycle(c.coboundary()), loops)
        expect(tau == restrict_to_loops(c, loops).coboundary(), f"{name}: τ(δc) != δ(c|loops)")
    return f"{len(names)} groupoids"


@_check("coc", "transgression-under-pullback")
def _transgression_pullback(ctx: Context) -> str:
    catalog = ctx.catalog
    gerbe = catalog.gerbe("discrete-torsion-V4")
    target = loop_groupoid(gerbe.base)
    tau = transgress_gerbe(gerbe, target)
    count = 0
    for name in ("pt", "BZ2", "BZ4", "swap2", "BV4"):
        source = loop_groupoid(catalog.groupoid(name))
        for f in enumerate_maps(source.base, gerbe.base):
            pulled = transgress_gerbe(GerbeCocycle(gerbe.beta.pullback(f)), source)
            expect(pulled == tau.pullback(loop_of_map(f, source, target)), f"{name}: τ(F*β) != (LF)*τβ")
            count += 1
    return f"{count} maps into BV4"


# --------------------------------------------------------------------- deloc


@_check("deloc", "delocalized-values")
def _deloc_values(ctx: Context) -> str:
    catalog = ctx.catalog
    expect(delocalized(catalog.gcomplex("point-S3"), num_workers=1).total == 3, "point/S3")
    expect(delocalized(catalog.gcomplex("point-Z4"), num_workers=1).total == 4, "point/Z4")
    torsion = delocalized(catalog.gcomplex("point-V4"), catalog.gerbe("discrete-torsion-V4"), num_workers=1)
    expect(torsion.total == 1, f"discrete torsion on V4: {torsion.dims}")
    expect(delocalized(catalog.gcomplex("S2-rot2"), num_workers=1).dims == [3, 0, 1], "S2/Z2")
    expect(delocalized(catalog.gcomplex("S2-rot3"), num_workers=1).dims == [5, 0, 1], "S2/Z3")
    return "5 values"


@_check("deloc", "untwisted-paths-agree")
def _deloc_untwisted(ctx: Context) -> str:
    names = ctx.catalog.names("gcomplex")
    for name in names:
        delocalized_untwisted_rational(ctx.catalog.gcomplex(name), num_workers=1)
    return f"{len(names)} gcomplexes"


@_check("deloc", "gauge-invariance")
def _deloc_gauge(ctx: Context) -> str:
    catalog = ctx.catalog
    gerbe = catalog.gerbe("discrete-torsion-V4")
    group = gerbe.base.group
    space = catalog.gcomplex("point-V4")
    expected = delocalized(space, gerbe, num_workers=1).dims
    count = max(1, min(ctx.samples, 5))
    for _ in range(count):
        values = [0] + [int(v) for v in ctx.rng.integers(4, size=group.order - 1)]
        shift = BarCochain.from_function(
            group, 1, lambda g: QmodZ(values[g] if g != group.identity else 0, 4), Coefficients.QMODZ
        )
        shifted = GerbeCocycle(gerbe.beta + NerveCochain.from_bar(gerbe.base, shift).coboundary())
        dims = delocalized(space, shifted, num_workers=1).dims
        expect(dims == expected, f"β + δc gives {dims}, β gives {expected}")
    return f"{count} random gauge shifts"


# ------------------------------------------------------------------ zcomplex


def _shifted_betti(betti: Sequence[int], mmax: int) -> List[int]:
    return [sum(betti[m - 2 * j] for j in range(m // 2 + 1) if m - 2 * j < len(betti)) for m in range(mmax + 1)]


@_check("zcomplex", "untwisted-dims-are-shifted-betti")
def _untwisted_dims(ctx: Context) -> str:
    names = ["point", "interval", "S2", "S3-sphere", "torus"]
    for name in names:
        complex = ctx.catalog.complex(name)
        twisted = build_twisted(complex)
        mmax = complex.dim + 2 * defaults.ZCAP_DEFAULT
        dims = twisted_cohomology(twisted, mmax, num_workers=1)
        expect(dims == _shifted_betti(betti_numbers(complex), mmax), f"{name}: {dims}")
    return f"{len(names)} complexes"


@_check("zcomplex", "twisting-lowers-dims")
def _twisting(ctx: Context) -> str:
    sphere = ctx.catalog.complex("S3-sphere")
    untwisted = periodic_cohomology(sphere)
    expect(tuple(untwisted) == (1, 1), f"untwisted periodic dims {tuple(untwisted)}")
    for k in (1, 2, 3):
        lam = top_cocycle(sphere, k)
        twisted = build_twisted(sphere, lam, mmax=9)
        dims = twisted_cohomology(twisted, 9, num_workers=1)
        periodic = periodic_cohomology(sphere, lam)
        expect((dims[8], dims[9]) == tuple(periodic), f"k={k}: stabilized {dims[8:]} vs periodic {tuple(periodic)}")
        expect(periodic.even < untwisted.even and periodic.odd < untwisted.odd, f"k={k}: not below untwisted")
    return "k = 1..3"


@_check("zcomplex", "e2-bound")
def _e2_bound(ctx: Context) -> str:
    mmax = 6
    for name in ("S2", "torus", "S3-sphere"):
        twisted = build_twisted(ctx.catalog.complex(name), mmax=mmax)
        dims = twisted_cohomology(twisted, mmax, num_workers=1)
        expect(spectral_sequence_e2(twisted, mmax).dims == dims, f"{name}: untwisted E_2 differs from {dims}")
    sphere = ctx.catalog.complex("S3-sphere")
    for k in (1, 2, 3):
        twisted = build_twisted(sphere, top_cocycle(sphere, k), mmax=mmax)
        dims = twisted_cohomology(twisted, mmax, num_workers=1)
        bound = spectral_sequence_e2(twisted, mmax).dims
        expect(all(d <= b for d, b in zip(dims, bound)), f"k={k}: {dims} exceeds E_2 {bound}")
    return "3 untwisted, k = 1..3"


def _random_cochain(ctx: Context, complex, degree: int, low: int = -2, high: int = 3) -> SimplicialCochain:
    values = ctx.rng.integers(low, high, size=complex.count(degree))
    return SimplicialCochain.from_vector(complex, degree, [int(v) for v in values])


@_check("zcomplex", "gauge-invariance")
def _gauge(ctx: Context) -> str:
    sphere = ctx.catalog.complex("S3-sphere")
    count = max(1, min(ctx.samples, 10))
    for _ in range(count):
        mu = _random_cochain(ctx, sphere, 2)
        lam = mu.coboundary()
        expect(verify_gauge_transform(TwistedComplex(sphere, lam), mu, mmax=5), "z-complex gauge transform")
        expect(verify_periodic_gauge_transform(PeriodicComplex(sphere, lam), mu), "periodic gauge transform")
    return f"{count} random μ"


@_check("zcomplex", "pairing-adjunction")
def _pairing(ctx: Context) -> str:
    sphere = ctx.catalog.complex("S3-sphere")
    for _ in range(ctx.samples):
        lam = top_cocycle(sphere, int(ctx.rng.integers(0, 4)))
        n, q = int(ctx.rng.integers(0, 2)), int(ctx.rng.integers(0, 4))
        omega = {n: _random_cochain(ctx, sphere, q)}
        # z-elements are homogeneous: α_j has degree m - 2j
        m = max(0, sphere.dim - 1 - q + 2 * n)
        alpha = {j: _random_cochain(ctx, sphere, m - 2 * j) for j in range(m // 2 + 1) if m - 2 * j <= sphere.dim}
        left = duality_pairing(d_prime(lam, omega), alpha)
        right = (-1) ** (q + 1) * duality_pairing(omega, d_lambda(lam, alpha))
        expect(left == right, f"<d'ω, α> = {left} but (-1)^(|ω|+1)<ω, dα> = {right}")
    return f"{ctx.samples} random pairs"


@_check("zcomplex", "torus-local-system")
def _torus_local_system(ctx: Context) -> str:
    torus = ctx.catalog.complex("torus")
    # ℓ(i, i + d) depends on d mod 7 with ℓ(d = 1) = ℓ(d = 3) = 1/2 and ℓ(d = 2) = 0
    half_steps = {1, 3, 4, 6}

    def holonomy(u, v):
        return QmodZ(1 if (int(v) - int(u)) % 7 in half_steps else 0, 2)

    local_system = SimplicialLocalSystem.from_function(torus, holonomy)
    expect(local_system_cohomology(torus) == [1, 2, 1], "torus Betti numbers")
    dims = local_system_cohomology(torus, local_system)
    expect(dims == [0, 0, 0], f"H*(T; L) = {dims}")
    return "H*(T; L) = 0"


# --------------------------------------------------------------------- runner


def _run_one(ctx: Context, module: str, name: str, fn) -> CheckResult:
    try:
        detail = fn(ctx)
        return CheckResult(module, name, True, detail)
    except Exception as e:  # reported, never raised
        _logger.debug("check %s:%s failed", module, name, exc_info=True)
        return CheckResult(module, name, False, f"{type(e).__name__}: {e}")


def run_selftest(
    seed: int = defaults.SEED_DEFAULT,
    samples: int = defaults.TEST_SAMPLE_COUNT,
    modules: Optional[Sequence[str]] = None,
    num_workers: Optional[int] = None,
    catalog: Optional[Catalog] = None,
) -> SelftestReport:
    """Run every registered check (or those of the given modules).

    Returns:
        SelftestReport: One result per check, in registration order.
    """
    catalog = catalog or get_catalog()
    selected = [
        (i, module, name, fn) for i, (module, name, fn) in enumerate(_CHECKS) if not modules or module in modules
    ]

    def run(item):
        i, module, name, fn = item
        ctx = Context(catalog, np.random.default_rng(seed + i), samples)
        return _run_one(ctx, module, name, fn)

    results = parallel_map(run, selected, num_workers)
    report = SelftestReport(seed, samples, results)
    _logger.info("selftest: %d checks, %d failed", len(results), len(report.failures()))
    return report
