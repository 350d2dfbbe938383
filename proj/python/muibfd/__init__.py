"""Link-level simulator for a multi-UAV full-duplex system with directional antennas.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from ._muibfd import *  # noqa: F401,F403
from ._muibfd import __doc__  # noqa: F401

__version__ = "0.1.0"
