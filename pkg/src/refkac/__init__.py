"""Kac polynomials and refined Kac functions of finite quivers, computed exactly."""

from refkac.qfield import IntPolynomial, RationalFunction, gl_order, parse_rational, poly_gcd
from refkac.quiver import Quiver, euler_form, gamma_m, has_enough_loops, rep_space_exponent
from refkac.hua import KacTable, RefinedKacTable, kac_table, p_series, q_series, refined_kac_table

__all__ = [
    "IntPolynomial",
    "RationalFunction",
    "gl_order",
    "parse_rational",
    "poly_gcd",
    "Quiver",
    "euler_form",
    "gamma_m",
    "has_enough_loops",
    "rep_space_exponent",
    "KacTable",
    "RefinedKacTable",
    "kac_table",
    "p_series",
    "q_series",
    "refined_kac_table",
]
