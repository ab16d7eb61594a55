import numpy as np
import pytest
from packaging import version

from orbiloop import env
from orbiloop.exceptions import PreconditionError


def test_sympy_version_meets_the_minimum():
    assert env.sympy_version() >= version.Version("1.12")


def test_sympy_version_rejects_old_releases(monkeypatch):
    monkeypatch.setattr(env, "get_version", lambda name: "1.11.1")
    with pytest.raises(ImportError, match="sympy>=1.12"):
        env.sympy_version()


def test_package_lookup():
    assert env.package_available("numpy")
    assert not env.package_available("orbiloop_no_such_package")
    assert env.get_version("numpy") == np.__version__
    with pytest.raises(ValueError):
        env.get_version("orbiloop_no_such_package")


@pytest.mark.parametrize("raw, expected", [("", 1), ("3", 3), (" 2 ", 2)])
def test_num_threads(monkeypatch, raw, expected):
    monkeypatch.setenv("ORBILOOP_THREADS", raw)
    assert env.num_threads() == expected


@pytest.mark.parametrize("raw", ["0", "-1", "two"])
def test_num_threads_rejects_bad_values(monkeypatch, raw):
    monkeypatch.setenv("ORBILOOP_THREADS", raw)
    with pytest.raises(PreconditionError):
        env.num_threads()


def test_debug_toggle(monkeypatch):
    monkeypatch.setenv("ORBILOOP_DEBUG", "False")
    assert env.debug() is False
    assert env.debug(True) is True
    assert env.debug("false") is False
    with pytest.raises(ValueError):
        env.debug("sometimes")
