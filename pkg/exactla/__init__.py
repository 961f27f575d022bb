"""Exact linear algebra over prime fields."""
from exactla.field import FpScalar, is_prime
from exactla.matrix import FpMatrix, kernel_basis, rref, solve

__all__ = ["FpScalar", "FpMatrix", "is_prime", "rref", "kernel_basis", "solve"]
