"""
npstrata: symmetric Newton polygons, the dimensions of their strata, and a
deduction engine for which polygons occur on the moduli space of curves.
"""

__version__ = "0.1.0"
