"""qlimits: thermodynamic work/runtime limits of exhaustive search.

Subpackages and modules
-----------------------
constants   CODATA-2018 constant set, versioned JSON export
units       duration parsing/formatting (s, a, Ga, Ta)
scenarios   named adversary parameter sets
dynamics    exact two-level search simulator, schedules, full-space oracle
bounds      classical/quantum/gate/ballistic work-time bounds
bht         hybrid collision-search optimization
keylength   secure/recoverable/deterministic key-length solvers
cli         the ``qlimits`` command-line front end
"""

__version__ = "0.1.0"

from .constants import (
    CODATA2018,
    CONSTANTS_VERSION,
    PhysicalConstants,
    constants_json,
    constants_table,
)
from .units import format_duration, parse_duration
from .scenarios import SCENARIOS, Scenario, scenario
from . import bht, bounds, dynamics, keylength

__all__ = [
    "CODATA2018",
    "CONSTANTS_VERSION",
    "PhysicalConstants",
    "SCENARIOS",
    "Scenario",
    "__version__",
    "bht",
    "bounds",
    "constants_json",
    "constants_table",
    "dynamics",
    "format_duration",
    "keylength",
    "parse_duration",
    "scenario",
]
