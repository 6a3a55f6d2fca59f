"""chGUE-GUE transition ensemble of the Hermitian Wilson Dirac operator.

Finite-n skew-orthogonal polynomials, Pfaffian spectral correlators,
microscopic (weakly non-chiral) limits, and Monte Carlo sampling. The heavy
lifting lives in the compiled extension module `_wrmt`.
"""

from _wrmt import *  # noqa: F401,F403
from _wrmt import __version__  # noqa: F401
