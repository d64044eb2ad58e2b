"""lecalc: exact local invariants of polynomial singularities.

Everything is computed over the rationals with exact arithmetic: the chain
numbers of a polynomial at the origin, their alternating-sum defect, Milnor
numbers, and the same invariants for functions restricted to singular
variety germs, plus independent combinatorial oracles for cross-checking.
"""

from ._kernel import BACKEND as kernel_backend
from .conormal import (
    ConormalData,
    DifferentialImage,
    VarietyGerm,
    conormal_variety,
    generic_linear_form_on_germ,
    image_of_differential,
    isolated_intersection_number,
    le_vogel_numbers,
)
from .defect import (
    ConstructibleFunctionData,
    DefectReport,
    StratumDatum,
    check_euler_condition,
    defect_affine,
    defect_from_numbers,
    defect_levogel,
    euler_obstruction_of_function,
    milnor_fibre_chi_affine,
    milnor_number,
    weighted_euler_characteristic,
)
from .groebner import (
    Ideal,
    MonomialOrder,
    colength,
    colength_at_origin,
    contains,
    dim_at_origin,
    eliminate,
    embed,
    equal_ideals,
    groebner_basis,
    ideal_quotient,
    ideal_sum,
    intersect,
    krull_dimension,
    maximal_ideal,
    multiplicity_at_origin,
    normal_form,
    random_linear_form,
    saturate,
    unit_ideal,
    zero_ideal,
)
from .lecycles import (
    CoordinateFrame,
    GammaChain,
    LeNumbers,
    auto_genericize,
    critical_locus,
    le_numbers_affine,
    polar_gamma,
    verify_properness,
)
from .oracle import (
    OracleResult,
    chi_homogeneous_plane,
    chi_thom_sebastiani,
    milnor_via_macaulay,
    monomial_colength,
)
from .polyparse import (
    InputError,
    LinearChange,
    MathematicalRefusal,
    ParseError,
    Polynomial,
    VariableFrame,
    parse_polynomial,
)

__version__ = "0.1.0"

__all__ = [
    "ConormalData",
    "ConstructibleFunctionData",
    "CoordinateFrame",
    "DefectReport",
    "DifferentialImage",
    "GammaChain",
    "Ideal",
    "InputError",
    "LeNumbers",
    "LinearChange",
    "MathematicalRefusal",
    "MonomialOrder",
    "OracleResult",
    "ParseError",
    "Polynomial",
    "StratumDatum",
    "VarietyGerm",
    "VariableFrame",
    "auto_genericize",
    "check_euler_condition",
    "chi_homogeneous_plane",
    "chi_thom_sebastiani",
    "colength",
    "colength_at_origin",
    "conormal_variety",
    "contains",
    "critical_locus",
    "defect_affine",
    "defect_from_numbers",
    "defect_levogel",
    "dim_at_origin",
    "eliminate",
    "embed",
    "equal_ideals",
    "euler_obstruction_of_function",
    "generic_linear_form_on_germ",
    "groebner_basis",
    "ideal_quotient",
    "ideal_sum",
    "image_of_differential",
    "intersect",
    "isolated_intersection_number",
    "kernel_backend",
    "krull_dimension",
    "le_numbers_affine",
    "le_vogel_numbers",
    "maximal_ideal",
    "milnor_fibre_chi_affine",
    "milnor_number",
    "milnor_via_macaulay",
    "monomial_colength",
    "multiplicity_at_origin",
    "normal_form",
    "parse_polynomial",
    "polar_gamma",
    "random_linear_form",
    "saturate",
    "unit_ideal",
    "verify_properness",
    "weighted_euler_characteristic",
    "zero_ideal",
    "__version__",
]
