"""Geometric (Clifford) algebra over exact and floating-point rings."""
from .core import Algebra, Multivector, Signature, inverse, pseudoscalar_square
from .rings import COMPLEX_FLOAT, COMPLEX_RATIONAL, FLOAT, INTEGER, RATIONAL, CPair

__version__ = "0.1.0"

__all__ = ["Algebra", "Multivector", "Signature", "inverse", "pseudoscalar_square",
           "FLOAT", "INTEGER", "RATIONAL", "COMPLEX_FLOAT", "COMPLEX_RATIONAL", "CPair"]
