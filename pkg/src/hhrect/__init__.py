"""Inequality verification and certified cubature on rectangles."""

__version__ = "0.1.0"

from .expr import (EvaluationError, Expression, LexError,  # noqa: F401
                   NonDifferentiableError, ParseError, parse)
from .quadrature import (QuadratureSpec, Rectangle,  # noqa: F401
                         integrate_1d, integrate_2d, kernel_integral)
from .hadamard import (BoundReport, ChainReport, bound_thm21,  # noqa: F401
                       bound_thm22, bound_thm23, chain, corner_average,
                       functional_A, identity_lhs, identity_rhs,
                       verify_bounds)
from .convexity import (ConvexityVerdict,  # noqa: F401
                        check_coordinated_convexity, check_hypothesis,
                        check_partial_convexity, hh_chain_1d)
from .cubature import (CertifiedIntegral, composite_integrate,  # noqa: F401
                       convergence_table, corrected_tile_estimate)
