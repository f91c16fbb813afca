"""Exact linear algebra over QQ and GF(p)."""

from .field import QQ, Field, format_scalar, is_prime
from .matrix import EchelonBasis, Matrix, in_span, nullspace_basis, rank, rref, solve_combination

__all__ = ["QQ", "Field", "format_scalar", "is_prime", "EchelonBasis", "Matrix", "in_span",
           "nullspace_basis", "rank", "rref", "solve_combination"]
