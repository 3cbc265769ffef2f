"""Continued fractions of hyperquadratic power series over F_p((1/T))."""
from .contfrac import bracket, continuant, expand_rational, expand_series, scalar_action
from .errors import (
    DomainError,
    HenselError,
    HypercfError,
    InvariantViolation,
    PrecisionError,
    ResourceCapExceeded,
    TheoremViolation,
)
from .hyper import PkExpansionSpec, build_equation, check_h1, check_h2, derive_rpq, expand
from .laurent import LaurentSeries, hensel_root
from .modular_poly import DensePoly, XPoly
from .pk import PkContext, make_context

__version__ = "0.1.0"
