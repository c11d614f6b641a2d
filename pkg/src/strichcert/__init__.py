"""strichcert: certified numerics for sharp space-time extension constants.

Computes, bounds and cross-checks the coefficient integrals, closed-form
constants and second-variation coercivity conditions that certify local
maximality of the standard profiles for cone, paraboloid and sphere
extension inequalities, and reproduces the bundled reference tables.
"""

from .backend import BACKEND_NAME
from .deficit import DiscreteDeficitModel
from .penrose import CompactifiedPoint, MinkowskiRadialPoint
from .quadrature import (
    CertifiedValue,
    QuadResult,
    QuadratureNonConvergence,
    integrate_adaptive,
    integrate_mu,
    tail_power_bound,
)
from .reports import CertReport, CoeffTable
from .schrod import SchrodParams, StrichartzConstant
from .sphere import SphereParams
from .wave import WaveParams

__version__ = "0.1.0"

__all__ = [
    "BACKEND_NAME",
    "CertifiedValue",
    "CertReport",
    "CoeffTable",
    "CompactifiedPoint",
    "DiscreteDeficitModel",
    "MinkowskiRadialPoint",
    "QuadResult",
    "QuadratureNonConvergence",
    "SchrodParams",
    "SphereParams",
    "StrichartzConstant",
    "WaveParams",
    "integrate_adaptive",
    "integrate_mu",
    "tail_power_bound",
    "__version__",
]
