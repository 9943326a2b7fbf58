"""Exact Darboux transformations and exceptional Laguerre polynomials."""

from .algebra import Polynomial, Rational, RationalFunction, poly_gcd, sturm_root_count
from .darboux import (
    Classification,
    Factorization,
    classify,
    crum_chain,
    factorize,
    intertwine_check,
    riccati_check,
    sl_data,
)
from .diffop import DiffOperator, compose, first_order, gauge_conjugate
from .laguerre import SeedFamily, SeedSpec, laguerre, laguerre_operator, seed
from .quadrature import gamma_fn, gauss_laguerre, weighted_inner_product
from .quasirational import QuasiRational, qr_wronskian
from .xlaguerre import InvalidFamily, Variant, XFamily, x_norm, x_operator, x_polynomial, x_weight

__all__ = [
    "Classification",
    "DiffOperator",
    "Factorization",
    "InvalidFamily",
    "Polynomial",
    "QuasiRational",
    "Rational",
    "RationalFunction",
    "SeedFamily",
    "SeedSpec",
    "Variant",
    "XFamily",
    "classify",
    "compose",
    "crum_chain",
    "factorize",
    "first_order",
    "gamma_fn",
    "gauge_conjugate",
    "gauss_laguerre",
    "intertwine_check",
    "laguerre",
    "laguerre_operator",
    "poly_gcd",
    "qr_wronskian",
    "riccati_check",
    "seed",
    "sl_data",
    "sturm_root_count",
    "weighted_inner_product",
    "x_norm",
    "x_operator",
    "x_polynomial",
    "x_weight",
]
