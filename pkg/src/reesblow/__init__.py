"""Exact computations with extended Rees algebras, Proj charts and blow-ups."""

from .blowup import (
    DeformationFamily,
    ExceptionalDivisor,
    blow_up,
    deformation_fiber,
    exceptional_divisor,
    is_empty_atlas,
    nonneg_part,
    proj_atlas,
)
from .errors import ReesError
from .graded import (
    Chart,
    GradedAlgebra,
    ProjAtlas,
    generated_in_degree_one,
    graded_piece_basis,
    hilbert_function,
    homogeneous_localization_chart,
    split_degree_zero,
    split_dimension_check,
    twist_cocycle,
    verify_localization_chart,
    veronese,
)
from .idealcore import (
    Ideal,
    annihilator,
    eliminate,
    groebner,
    intersection,
    map_kernel,
    normal_form,
    quotient,
    regular_sequence_test,
    saturation,
)
from .polyring import GREVLEX, LEX, QQ, Field, MonomialOrder, Polynomial, RingContext
from .rees import (
    ImmersionData,
    ReesPresentation,
    compare_to_classical,
    cone,
    rees_extended,
    rees_naturality,
    regularize,
    t_regularity,
)

__version__ = "0.1.0"

__all__ = [
    "Chart", "DeformationFamily", "ExceptionalDivisor", "Field", "GREVLEX", "GradedAlgebra", "Ideal",
    "ImmersionData", "LEX", "MonomialOrder", "Polynomial", "ProjAtlas", "QQ", "ReesError", "ReesPresentation",
    "RingContext", "annihilator", "blow_up", "compare_to_classical", "cone", "deformation_fiber", "eliminate",
    "exceptional_divisor", "generated_in_degree_one", "graded_piece_basis", "groebner", "hilbert_function",
    "homogeneous_localization_chart", "intersection", "is_empty_atlas", "map_kernel", "nonneg_part",
    "normal_form", "proj_atlas", "quotient", "rees_extended", "rees_naturality", "regular_sequence_test",
    "regularize", "saturation", "split_degree_zero", "split_dimension_check", "t_regularity", "twist_cocycle",
    "verify_localization_chart", "veronese",
]
