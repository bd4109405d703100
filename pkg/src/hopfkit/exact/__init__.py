from .gaussian import GR, I, GaussianFactorization, GaussianRational, gaussian_factor, parse_rational
from .lattice import IntegerLattice, hermite_normal_form, integer_rank, lattice_kernel
from .polymap import PolyMap, poly_compose, poly_inverse

__all__ = [
    "GR",
    "I",
    "GaussianFactorization",
    "GaussianRational",
    "IntegerLattice",
    "PolyMap",
    "gaussian_factor",
    "hermite_normal_form",
    "integer_rank",
    "lattice_kernel",
    "parse_rational",
    "poly_compose",
    "poly_inverse",
]
