"""One-loop effective potentials at finite temperature and on S^1 x R^d.

Subpackages: ``specfun`` (special-function kernel), ``laurent``
(dimensional-regularization bookkeeping), ``thermal`` (finite-T
potentials), ``compact`` (circle compactification), ``twisted`` (twisted
boundary conditions and Scherk-Schwarz), ``models`` (SM/SUSY composites),
``harness`` (sweeps, convergence, discrepancy ledger), ``cli``.
"""

from . import compact, harness, laurent, models, specfun, thermal, twisted

__all__ = ["specfun", "laurent", "thermal", "compact", "twisted", "models",
           "harness"]
__version__ = "0.1.0"
