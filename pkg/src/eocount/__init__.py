"""Exact and asymptotic counting of Eulerian orientations.

Subpackages by area: graphs (Laplacian, spanning trees, Cheeger constant),
exact (brute-force and recurrence counters, quadrature cross-check),
cumulants (Isserlis sums, connected pairings, moment/cumulant conversion),
powersums (Gaussian power-sum moments via partition types), expansion (the
RT/ED/EOG asymptotic series), estimator (general-graph estimates and sandwich
bounds), taillab (exhaustive checks of the cumulant tail bound).
"""

from .errors import DomainError, SizeLimitError
from .graphs import Graph
from .laurent import LaurentSeries

__version__ = "0.1.0"

__all__ = ["DomainError", "SizeLimitError", "Graph", "LaurentSeries",
           "__version__"]
