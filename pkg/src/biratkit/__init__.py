"""Birational geometry toolkit: projective degrees, inverses and Segre classes of rational maps."""

from .field import QQ, FieldSpec
from .groebner import Ideal
from .polynomial import Polynomial, PolynomialRing
from .random_source import RandomSource
from .ratmap import RationalMap, make_map

__version__ = "0.1.0"

__all__ = [
    "QQ",
    "FieldSpec",
    "Ideal",
    "Polynomial",
    "PolynomialRing",
    "RandomSource",
    "RationalMap",
    "make_map",
]
