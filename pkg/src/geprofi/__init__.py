"""Exact constructions, invariants and full-intersection certificates for
finite point sets in P^4."""

from ._accel import BACKEND
from .errors import GenericityError, GeprofiError, PreconditionError, ReductionError, ShapeError
from .field import QQ, FpElement, PrimeField, RandomSource, derive_seed, inverse, sample

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "QQ",
    "FpElement",
    "GenericityError",
    "GeprofiError",
    "PreconditionError",
    "PrimeField",
    "RandomSource",
    "ReductionError",
    "ShapeError",
    "derive_seed",
    "inverse",
    "sample",
]
