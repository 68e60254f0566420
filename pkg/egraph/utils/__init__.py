"""
Utility helpers for the e-graph packages.
"""

from .fresh import FreshNameSupply

__all__ = ["FreshNameSupply"]
