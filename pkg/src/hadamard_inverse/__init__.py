"""hadamard-inverse - Hadamard products and inverses of germs at the origin.

Works with germs through their Taylor coefficients and, where available, principal-sheet
point evaluators.

Main components:
- germ_core.py: Truncated series, Hadamard and Cauchy products, termwise inverse
- germ_catalog.py: Closed-form germs, single-pole rational germs, entire perturbations
- ode_builder.py: Euler operators annihilating inverses of single-pole germs
- contour_quadrature.py: Hadamard products as circle integrals, K/J split, limit probes
- volterra_engine.py: Simple-singularity jets, the h1 kernel and the triangular g1 solve
- singularity_scope.py: Ratio tests, Padé pole maps and natural-boundary scores
- cli.py: Command-line front end writing JSON/CSV artifacts

Key features:
- Exact coefficient rules cross-checked against point evaluators
- Certified quadrature refinement and Padé root certificates
- Deterministic, versioned artifacts and an optional TinyDB run ledger
"""

from importlib.metadata import version

__version__ = version("hadamard-inverse")

from .config import DEFAULT_CONFIG, NumericsConfig, RunLedger
from .exceptions import HadamardError, NumericalFailure, PreconditionError
from .germ_catalog import CatalogGerm, RationalGerm, expand, parse_germ
from .germ_core import TruncatedGerm, cauchy_product, delta, hadamard_inverse, hadamard_product
from .logging_config import floating_point_logged, get_logger, setup_logging
from .ode_builder import EulerOperator, build_euler_operator, solve_ode_series, verify_recurrence
from .rich_utils import console, format_complex, render_rows
from .singularity_scope import ScanReport, pade, pade_poles, scan_report
from .volterra_engine import EntireFunctionJet, SingularJet, solve_g1

__all__ = [
    "DEFAULT_CONFIG",
    "CatalogGerm",
    "EntireFunctionJet",
    "EulerOperator",
    "HadamardError",
    "NumericalFailure",
    "NumericsConfig",
    "PreconditionError",
    "RationalGerm",
    "RunLedger",
    "ScanReport",
    "SingularJet",
    "TruncatedGerm",
    "build_euler_operator",
    "cauchy_product",
    "console",
    "delta",
    "expand",
    "floating_point_logged",
    "format_complex",
    "get_logger",
    "hadamard_inverse",
    "hadamard_product",
    "pade",
    "pade_poles",
    "parse_germ",
    "render_rows",
    "scan_report",
    "setup_logging",
    "solve_g1",
    "solve_ode_series",
    "verify_recurrence",
]
