import importlib
import logging
import os
from importlib import util

from packaging import version

from .exceptions import PreconditionError

_SUPPORTED_PACKAGES = {}

_MIN_SYMPY_VERSION = "1.12"

_LOG_FORMAT = "%(asctime)s %(name)s %(levelname)s: %(message)s"

__all__ = [
    "debug",
    "get_version",
    "package_available",
    "num_threads",
    "setup_logger",
    "sympy_version",
]


def package_available(name: str):
    """Returns if package is available.

    Args:
        name (str): Name of the package.

    Returns:
        bool: Whether module exists in environment.
    """
    global _SUPPORTED_PACKAGES
    if name not in _SUPPORTED_PACKAGES:
        _SUPPORTED_PACKAGES[name] = util.find_spec(name) is not None
    return _SUPPORTED_PACKAGES[name]


def get_version(package_or_name) -> str:
    """Returns package version.

    Args:
        package_or_name (``module`` or ``str``): Module or name of module.
            This package must have the version accessible through ``<module>.__version__``.

    Returns:
        str: The package version.

    Examples:
        >>> get_version("numpy")
        "1.20.0"
    """
    if isinstance(package_or_name, str):
        if not package_available(package_or_name):
            raise ValueError(f"Package {package_or_name} not available")
        package_or_name = importlib.import_module(package_or_name)
    return package_or_name.__version__


def sympy_version() -> version.Version:
    """Returns the installed sympy version, rejecting versions without ``DomainMatrix.to_list``.

    Raises:
        ImportError: If sympy is older than the supported minimum.
    """
    installed = version.parse(get_version("sympy"))
    if installed < version.Version(_MIN_SYMPY_VERSION):
        raise ImportError(f"orbiloop needs sympy>={_MIN_SYMPY_VERSION}, found {installed}")
    return installed


def num_threads() -> int:
    """Worker cap read from ``ORBILOOP_THREADS`` (defaults to 1).

    Raises:
        PreconditionError: If the variable is set to something other than a positive integer.
    """
    raw = os.environ.get("ORBILOOP_THREADS", "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise PreconditionError("ORBILOOP_THREADS", "must be a positive integer", raw) from None
    if value < 1:
        raise PreconditionError("ORBILOOP_THREADS", "must be a positive integer", raw)
    return value


def setup_logger() -> logging.Logger:
    """Attach a stderr stream handler to the ``orbiloop`` logger (once)."""
    logger = logging.getLogger("orbiloop")
    # the package logger always logs at DEBUG level, handlers filter
    logger.setLevel(logging.DEBUG)
    if not any(isinstance(h, logging.StreamHandler) for h in logger.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(_LOG_FORMAT))
        handler.setLevel(logging.DEBUG if debug() else logging.INFO)
        logger.addHandler(handler)
    return logger


def debug(value: bool = None) -> bool:
    """Return (and optionally set) debug mode.

    Args:
        value (bool, optional): If specified, sets the debug status.
            If not specified, debug mode is not set, only returned.

    Returns:
        bool: If ``True``, debug mode is active.

    Raises:
        ValueError: If ``value`` is not a supported value.

    Note:
        Changing the debug state changes the stream handler logging level
        for the ``orbiloop`` logger. If debug state is turned off, logging
        level is set to ``logging.INFO``. If debug state is turned on,
        logging level is set to ``logging.DEBUG``.

    Examples:
        >>> debug()  # get debug status, defaults to False
        False
        >>> debug(True)  # turn on debug mode
        True
        >>> debug()  # get debug status
        True
    """

    def _is_debug():
        return os.environ.get("ORBILOOP_DEBUG", "") in ["True", "true"]

    def _toggle_debug(_old_value, _new_value):
        if _old_value == _new_value:
            return

        _logger = logging.getLogger("orbiloop")
        _logger.setLevel(logging.DEBUG)
        for h in _logger.handlers:
            if isinstance(h, logging.StreamHandler):
                h.setLevel(logging.DEBUG if _new_value else logging.INFO)

    if value is not None:
        old_value = _is_debug()
        if isinstance(value, bool):
            os.environ["ORBILOOP_DEBUG"] = str(value)
        elif isinstance(value, str) and value.lower() in ("true", "false", ""):
            os.environ["ORBILOOP_DEBUG"] = value
        else:
            raise ValueError(f"Unknown value for debug: '{value}'")

        _toggle_debug(old_value, _is_debug())

    return _is_debug()
