"""Numerical checks of generalized Cauchy-Schwarz inequalities.

The public names of the submodules are re-exported here; see the README for
a tour.
"""

from . import errors, inequalities, linalg, multilinear, report, search, sos, vectors
from .errors import *  # noqa: F401,F403
from .inequalities import *  # noqa: F401,F403
from .linalg import *  # noqa: F401,F403
from .multilinear import *  # noqa: F401,F403
from .report import *  # noqa: F401,F403
from .search import *  # noqa: F401,F403
from .sos import *  # noqa: F401,F403
from .vectors import *  # noqa: F401,F403

__version__ = "0.1.0"
