"""Conjectural heights of CM-types on abelian CM fields, with exact verifiers."""

__version__ = "0.1.0"

from .galois import GaloisCMField, build_field, cm_fields, parse_field_spec, quadratic_field
from .classfun import ClassFunction, decompose, dual, conj_average, in_cm_space
from .cmtypes import CMType, PartialCMType, A_full, A_partial, cm_type, partial_cm_type
from .heights import conjectural_ht, height_full, height_partial
from .lfunctions import l_at_zero, l_prime_at_zero, log_derivative_at_zero, z_functional

__all__ = [
    "GaloisCMField",
    "build_field",
    "cm_fields",
    "parse_field_spec",
    "quadratic_field",
    "ClassFunction",
    "decompose",
    "dual",
    "conj_average",
    "in_cm_space",
    "CMType",
    "PartialCMType",
    "A_full",
    "A_partial",
    "cm_type",
    "partial_cm_type",
    "conjectural_ht",
    "height_full",
    "height_partial",
    "l_at_zero",
    "l_prime_at_zero",
    "log_derivative_at_zero",
    "z_functional",
]
