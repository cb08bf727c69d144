"""Exact continued fractions over F_p((1/X)) and finite-window Littlewood checks."""

from .algebra import LaurentSeries, NormLog2, Poly, series_from_rational
from .cfengine import CFWord, Halt, cf_eval, cf_expand, cf_expand_rational, convergents
from .instances import get_instance
from .littlewood import product_at, scan

__version__ = "0.1.0"

__all__ = ["Poly", "LaurentSeries", "NormLog2", "series_from_rational", "CFWord", "Halt",
           "cf_expand", "cf_expand_rational", "cf_eval", "convergents", "get_instance",
           "product_at", "scan"]
