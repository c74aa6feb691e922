"""Exact rank-one realizations: fields, root groups and valuation checks."""

from .fields import PrimeField, QuadraticField, RatFunc, Tower, omega
from .realizations import (
    AxiomReport,
    BC1Realization,
    SL2Realization,
    SU3Realization,
    attained_value_set,
    axiom_report,
    h_lambda_mul,
    j_lambda,
    realize,
    su3_inv,
    su3_mul,
)

__all__ = [
    "AxiomReport",
    "BC1Realization",
    "PrimeField",
    "QuadraticField",
    "RatFunc",
    "SL2Realization",
    "SU3Realization",
    "Tower",
    "attained_value_set",
    "axiom_report",
    "h_lambda_mul",
    "j_lambda",
    "omega",
    "realize",
    "su3_inv",
    "su3_mul",
]
