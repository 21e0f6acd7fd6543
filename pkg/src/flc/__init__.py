"""Exact classification toolkit for the TLb7 / TLb8 filiform Leibniz families."""
from .gaussrat import GaussRat, DivisionByZero
from .poly import MultiPoly, RatFunc, MissingVariable, DenominatorVanished

__version__ = "0.1.0"

__all__ = ["GaussRat", "DivisionByZero", "MultiPoly", "RatFunc", "MissingVariable",
           "DenominatorVanished", "__version__"]
