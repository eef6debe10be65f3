"""Exact composition sums over the PI tree and the sequences they generate."""

from .algebra import Polynomial, Rational, Series, format_rational, parse_rational
from .compositions import Composition, enumerate_compositions, from_mask, to_mask
from .compsum import comp_sum, comp_sum_inverse, weighted_comp_sum
from .errors import ConstantTermError, RangeError, SizeGuard
from .pitree import InputSequence, build_row, export_dot, row_sum, row_sums, woon

__version__ = "0.1.0"

__all__ = [
    "Composition", "ConstantTermError", "InputSequence", "Polynomial", "RangeError", "Rational", "Series",
    "SizeGuard", "build_row", "comp_sum", "comp_sum_inverse", "enumerate_compositions", "export_dot",
    "format_rational", "from_mask", "parse_rational", "row_sum", "row_sums", "to_mask", "weighted_comp_sum",
    "woon",
]
