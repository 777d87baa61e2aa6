"""Exact determinants over integral domains by fraction-free condensation."""
from .algorithms import (
    DetResult,
    MatrixData,
    det_combined,
    det_dodgson,
    det_dodgson_rect,
    det_one_pass,
    det_oracle,
    minor_oracle,
)
from .complexity import counts_combined, counts_dodgson, counts_one_pass, optimal_r_by_counts
from .modular import det_modular, plan_moduli
from .poly import MultiPoly, PolynomialRing
from .rings import ExactnessError, IntegerRing, OpTally, PrimeField

__version__ = "0.1.0"

__all__ = [
    "DetResult",
    "ExactnessError",
    "IntegerRing",
    "MatrixData",
    "MultiPoly",
    "OpTally",
    "PolynomialRing",
    "PrimeField",
    "counts_combined",
    "counts_dodgson",
    "counts_one_pass",
    "det_combined",
    "det_dodgson",
    "det_dodgson_rect",
    "det_modular",
    "det_one_pass",
    "det_oracle",
    "minor_oracle",
    "optimal_r_by_counts",
    "plan_moduli",
]
