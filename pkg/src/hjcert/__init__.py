"""Exact Hirzebruch-Jung string invariants and a certified finite case scan."""

from .hj_core import HJString, hj_expansion, profile
from .obstruction import Configuration, eliminate
from .enumerator import verify_case, verify_theorem

__version__ = "0.1.0"

__all__ = [
    "HJString",
    "Configuration",
    "eliminate",
    "hj_expansion",
    "profile",
    "verify_case",
    "verify_theorem",
]
