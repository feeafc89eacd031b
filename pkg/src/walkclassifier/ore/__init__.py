"""Operator algebra: Weyl and shift algebras, local analysis, p-curvature."""
from .curvature import PCurvature, berkowitz, char_poly_mod, p_curvature
from .local import IndicialData, Place, indicial, is_regular_singular, local_exponents, singular_points
from .operators import (
    DiffOp,
    OreQt,
    RatFuncQ,
    RecOp,
    apply_diffop,
    apply_recop,
    d_op,
    gcrd,
    ode_to_rec,
    ore_mul,
    right_divmod,
)

__all__ = [
    "DiffOp", "IndicialData", "OreQt", "PCurvature", "Place", "RatFuncQ", "RecOp",
    "apply_diffop", "apply_recop", "berkowitz", "char_poly_mod", "d_op", "gcrd", "indicial",
    "is_regular_singular", "local_exponents", "ode_to_rec", "ore_mul", "p_curvature",
    "right_divmod", "singular_points",
]
