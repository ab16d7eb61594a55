from .complex_io import *  # noqa
from .format_io import *  # noqa
from .format_io_utils import *  # noqa
from .groupoid_io import *  # noqa

from . import complex_io, format_io, format_io_utils, groupoid_io

__all__ = []
__all__.extend(complex_io.__all__)
__all__.extend(format_io.__all__)
__all__.extend(format_io_utils.__all__)
__all__.extend(groupoid_io.__all__)
