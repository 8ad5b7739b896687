"""Constant-dimension subspace codes from Riemann-Roch spaces."""

from rrcodes.counting import BoundedEq, count_family, count_U, count_U_shifted, oracle_count
from rrcodes.divisors import CurveDescriptor, Divisor, FamilySpec, enumerate_family
from rrcodes.params import code_parameters, rate, table3

__all__ = [
    "BoundedEq",
    "CurveDescriptor",
    "Divisor",
    "FamilySpec",
    "code_parameters",
    "count_U",
    "count_U_shifted",
    "count_family",
    "enumerate_family",
    "oracle_count",
    "rate",
    "table3",
]
