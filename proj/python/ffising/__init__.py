"""Free-fermion transverse-field Ising chain: BdG, Gaussian states, dynamics."""

from ._core import *  # noqa: F401,F403
from ._core import FfisingError, __version__  # noqa: F401
