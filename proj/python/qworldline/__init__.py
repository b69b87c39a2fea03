"""Localized quantum systems on accelerated worldlines in curved spacetimes.

Thin re-export of the compiled extension: geometry of Fermi normal frames,
corrected Hamiltonians on weighted grids, detector response integrals, and the
config-driven run pipeline used by the ``qwl`` command-line tool.
"""

from . import _core
from ._core import *  # noqa: F401,F403

__version__ = _core.__version__
