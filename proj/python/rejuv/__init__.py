"""Rejuvenation period optimization and MIN-DELAY scheduling (C++ core)."""

from ._rejuv import *  # noqa: F401,F403
from ._rejuv import __doc__  # noqa: F401
