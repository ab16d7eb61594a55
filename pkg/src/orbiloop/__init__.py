"""Loop groupoids of finite groupoids, transgression of bundles and gerbes, and twisted cohomology."""
from . import cocycles, cohomology, complexes, deloc, groupoids, loops, zcomplex
from .config import get_catalog
from .env import debug, setup_logger
from .exceptions import *  # noqa

__version__ = "0.1.0"
