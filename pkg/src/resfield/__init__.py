"""Exact arithmetic in rational Puiseux series with total residue maps.

The main entry points are re-exported here; submodules hold the rest.
"""

from .encoders import (DiophSystem, check_h10_witness, compute_Sab, defk_check, encode_finite_set,
                       encode_h10, modelcomp_identity_check, witness_from_polynomial_solution)
from .fields import QQ, QQI, FieldElem, GaussianRationals, PrimeField, Rationals, parse_field
from .poly import Poly, poly_eval, poly_is_zero, poly_roots_in_k
from .series import Series, coeff_at, extract_pa, lift_iota, res0, residue_pi, total_res, val
from .syntax import parse_field_elem, parse_poly, parse_series
from .valext import ExtRatFunc, gauss_residue, gauss_val, infinitesimal_val, parse_ext
from .values import INF

__all__ = [
    'DiophSystem', 'check_h10_witness', 'compute_Sab', 'defk_check', 'encode_finite_set',
    'encode_h10', 'modelcomp_identity_check', 'witness_from_polynomial_solution',
    'QQ', 'QQI', 'FieldElem', 'GaussianRationals', 'PrimeField', 'Rationals', 'parse_field',
    'Poly', 'poly_eval', 'poly_is_zero', 'poly_roots_in_k',
    'Series', 'coeff_at', 'extract_pa', 'lift_iota', 'res0', 'residue_pi', 'total_res', 'val',
    'parse_field_elem', 'parse_poly', 'parse_series',
    'ExtRatFunc', 'gauss_residue', 'gauss_val', 'infinitesimal_val', 'parse_ext',
    'INF',
]
