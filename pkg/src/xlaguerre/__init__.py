"""Rationally extended radial oscillators and exceptional Laguerre polynomials
from two- and three-seed Wronskians, with exact and numeric verification."""

from .exactmath import Poly, RatFunc, count_positive_roots, laguerre, ratfunc_equal, wronskian_k
from .susy import Case, Convention, ExtensionSpec, SeedKind, SeedSpec, build_extension, build_g, make_seed
from .eop import EopFamily, eop_solve

__version__ = "0.1.0"
