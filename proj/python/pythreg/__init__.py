from ._core import *  # noqa: F401,F403
from ._core import InvalidArgument, MultFunc, ResourceLimit, Unsupported

__version__ = "0.1.0"
