"""counterlab: exact and certified constructions of real-analysis counterexamples.

Each submodule builds and machine-checks one family of witnesses:

* ``numkernel``   -- exact rationals and midpoint-radius enclosures
* ``expalg``      -- symbolic calculus of exponential sums
* ``cantor_mes``  -- measurable everywhere-surjective functions on Cantor sets
* ``pompeiu``     -- differentiable functions whose derivative vanishes densely
* ``sepcont``     -- separately continuous but discontinuous functions
* ``series_lab``  -- series defeating the ratio and root tests; weighted c0
* ``measure_lab`` -- convergence in measure vs pointwise, typewriter sequences
* ``cli_report``  -- command-line verification reports
"""

from .numkernel import (  # noqa: F401
    Rat,
    Enclosure,
    Order,
    compare,
    exact,
    DEFAULT_PRECISION,
)
from .errors import (  # noqa: F401
    PrecisionError,
    BudgetExceeded,
    NoBracket,
    WindowViolation,
)

__version__ = "0.1.0"
