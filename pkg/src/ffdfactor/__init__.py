"""Exact factorization in filtered noncommutative algebras.

The main entry points are :func:`builtin` (named algebras such as the Weyl,
shift and quantum algebras), :func:`factor_two` and :func:`factor_all`
(exact factorizations via the bilinear ansatz), :func:`census_two` (a
brute-force oracle over small prime fields) and the Ore-ring identity
checks in :mod:`ffdfactor.gallery`.
"""

__version__ = "0.1.0"

from .fields import GF, QQ, QQ_I, RationalFunctionField, parse_field
from .pbw import (GAlgebra, PBWPolynomial, builtin, find_weights, gr_check, growth,
                  leading_form, load_presentation, pbw_mul, weighted_degree)
from .ore import OrePolynomial, OreRing, ore_equal_up_to_center, ore_mul
from .ansatz import (FactorizationSet, bounds, build_system, canonical_pair, factor_all,
                     factor_two, is_irreducible, solve_ff, solve_groebner)
from .oracle import CensusReport, census_sweep, census_two

__all__ = [
    "GF", "QQ", "QQ_I", "RationalFunctionField", "parse_field",
    "GAlgebra", "PBWPolynomial", "builtin", "find_weights", "gr_check", "growth",
    "leading_form", "load_presentation", "pbw_mul", "weighted_degree",
    "OrePolynomial", "OreRing", "ore_equal_up_to_center", "ore_mul",
    "FactorizationSet", "bounds", "build_system", "canonical_pair", "factor_all",
    "factor_two", "is_irreducible", "solve_ff", "solve_groebner",
    "CensusReport", "census_sweep", "census_two",
]
