"""Experimental mathematics with central binomial series for zeta values."""

from .mp import Precision

__all__ = ["Precision"]
__version__ = "0.1.0"
