"""Three-weight p-ary codes from quadratic forms over F_q^2.

Weight distributions and weight hierarchies are computed twice: from
closed forms and by exhaustive enumeration.
"""
from .field import FiniteField, build_field, quadratic_character
from .qform import FormSpec, FormProfile, analyze
from .code import CodeSpec, WeightDistribution, weight_distribution
from .ghw import ghw_brute, ghw_formula

__all__ = [
    "FiniteField", "build_field", "quadratic_character",
    "FormSpec", "FormProfile", "analyze",
    "CodeSpec", "WeightDistribution", "weight_distribution",
    "ghw_brute", "ghw_formula",
]
__version__ = "0.1.0"
