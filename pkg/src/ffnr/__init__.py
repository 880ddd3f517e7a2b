"""Numerical ranges of 2×2 matrices over finite fields F_{q²}, their boundary
generating curves, and an exhaustive checker for the theorems relating them."""

from .canonical import CanonicalDecomposition, ClassTag, EquivClass, ZetaClass, canonicalize, class_enumeration, classify_zeta
from .curve import TernaryQuadraticForm, affine_dual_points, base_form, dual_form, scaling_family
from .field import FieldSpec, Fq2Elem, make_field
from .linalg import Mat2, hermitian_parts, schur_triangularize
from .numrange import density_map, numerical_range, quotient_density, unit_sphere

__all__ = [
    "CanonicalDecomposition",
    "ClassTag",
    "EquivClass",
    "FieldSpec",
    "Fq2Elem",
    "Mat2",
    "TernaryQuadraticForm",
    "ZetaClass",
    "affine_dual_points",
    "base_form",
    "canonicalize",
    "class_enumeration",
    "classify_zeta",
    "density_map",
    "dual_form",
    "hermitian_parts",
    "make_field",
    "numerical_range",
    "quotient_density",
    "scaling_family",
    "schur_triangularize",
    "unit_sphere",
]
