"""Exact growth series for virtually abelian groups: standard, twisted conjugacy and relative."""

from .ratfun import Polynomial, RationalSeries
from .relative import relative_series, standard_growth_series
from .twisted import twisted_growth, twisted_growth_series
from .vagroup import GroupDescription, GroupElement, load_group

__all__ = [
    "GroupDescription",
    "GroupElement",
    "Polynomial",
    "RationalSeries",
    "load_group",
    "relative_series",
    "standard_growth_series",
    "twisted_growth",
    "twisted_growth_series",
]

__version__ = "0.1.0"
