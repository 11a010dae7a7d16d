"""
多项式与微分形式模块
"""

from .mpoly import (
    MPoly, VarSet, ExponentOverflow, MissingImage, NotDivisible, UnknownVariable, VarSetMismatch,
    coefficient_vector, from_coefficient_vector, grevlex_key, monomial_basis,
)
from .forms import DegreeOverflow, DiffForm, exterior_derivative, wedge

__all__ = [
    'MPoly', 'VarSet', 'ExponentOverflow', 'MissingImage', 'NotDivisible', 'UnknownVariable', 'VarSetMismatch',
    'coefficient_vector', 'from_coefficient_vector', 'grevlex_key', 'monomial_basis',
    'DegreeOverflow', 'DiffForm', 'exterior_derivative', 'wedge',
]
