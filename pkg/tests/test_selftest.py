import pytest

from orbiloop.selftest import check_names, run_selftest

MODULES = ["gpd-core", "loop", "grp-cohom", "coc", "deloc", "zcomplex", "cli"]


def test_checks_cover_every_module():
    names = check_names()
    assert len(names) == len(set(names))
    assert {name.split(":")[0] for name in names} == set(MODULES)
    assert "coc:holonomy-theorem" in names


@pytest.mark.parametrize(
    "name",
    [
        "gpd-core:fiber-product-universal-property",
        "gpd-core:equalizer-two-isomorphism",
        "loop:multiplication-axioms",
        "loop:loop-of-map-multiplicative",
        "grp-cohom:integration-anticommutes-with-coboundary",
        "grp-cohom:integrated-gerbe-class-is-bockstein",
        "coc:transgression-of-coboundary",
        "coc:transgression-under-pullback",
        "deloc:gauge-invariance",
        "zcomplex:e2-bound",
    ],
)
def test_invariant_is_registered(name):
    assert name in check_names()


@pytest.mark.parametrize("module", ["gpd-core", "loop", "grp-cohom", "cli"])
def test_module_checks_pass(catalog, module):
    report = run_selftest(seed=0, samples=3, modules=[module], catalog=catalog)
    assert report.results
    assert report.failures() == []
    assert all(r.module == module for r in report.results)


@pytest.mark.slow
@pytest.mark.parametrize("module", ["coc", "deloc", "zcomplex"])
def test_slow_module_checks_pass(catalog, module):
    report = run_selftest(seed=0, samples=2, modules=[module], catalog=catalog)
    assert report.results
    assert report.failures() == [], report.table()
    assert all(r.module == module for r in report.results)


def test_report_is_seeded(catalog):
    first = run_selftest(seed=7, samples=2, modules=["loop"], catalog=catalog)
    second = run_selftest(seed=7, samples=2, modules=["loop"], catalog=catalog)
    assert first.to_dict() == second.to_dict()
    assert first.passed
    assert "ok" in first.table()
