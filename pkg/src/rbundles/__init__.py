"""Exact computations for R-bundles: flat limits of (3m+1)-sheaves on the plane
degenerating onto the surface D(p) = D0 + D1."""

from .fields import GF, QQ
from .moduli import (
    Direction,
    GroupElement,
    NormalCoords,
    PointP2,
    SheafMatrix,
    SpecialCoefficients,
    common_zero,
    group_act,
    is_in_X,
    is_in_X8,
    quotient_invariants,
    tangent_and_normal,
    to_special_form,
    x8_jacobian_oracle,
)
from .rbundle import (
    AutomorphismL,
    OrbitReport,
    PhiMatrix,
    SupportReport,
    build_phi,
    equivalent,
    singular_locus_D1,
    stabilizer_orbits,
    support_report,
)

__version__ = "0.1.0"
