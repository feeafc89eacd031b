"""Exact arithmetic kernel: polynomials over Q and F_p, modular linear algebra, CRT."""
from .bivariate import PolyQ2, bivariate_gcd_T, bivariate_resultant, sylvester_resultant
from .modular import (
    BadPrimeError,
    crt_combine,
    crt_pair,
    encode_rational,
    guessing_primes,
    is_prime,
    nullspace_mod,
    primes_below,
    primes_from,
    rational_reconstruct,
    rref_mod,
)
from .polymod import PolyMod, RatFuncMod, conv_mod, polymod_gcd
from .polyq import (
    PolyQ,
    falling_factorial_poly,
    multiplicity,
    poly_gcd,
    poly_lcm,
    rational_roots,
    remove_rational_roots,
    squarefree_decomposition,
)

__all__ = [
    "BadPrimeError", "PolyMod", "PolyQ", "PolyQ2", "RatFuncMod", "bivariate_gcd_T",
    "bivariate_resultant", "conv_mod", "crt_combine", "crt_pair", "encode_rational",
    "falling_factorial_poly", "guessing_primes", "is_prime", "multiplicity", "nullspace_mod",
    "poly_gcd", "poly_lcm", "polymod_gcd", "primes_below", "primes_from", "rational_reconstruct",
    "rational_roots", "remove_rational_roots", "rref_mod", "squarefree_decomposition",
    "sylvester_resultant",
]
