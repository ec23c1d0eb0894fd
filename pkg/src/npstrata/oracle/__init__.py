"""Independent brute-force oracles for the polygon and strata code."""

from .brute import LatticePath, brute_codim, brute_enumerate, brute_partitions
from .selfcheck import CheckResult, SelfCheckReport, run_selfcheck

__all__ = [
    "CheckResult",
    "LatticePath",
    "SelfCheckReport",
    "brute_codim",
    "brute_enumerate",
    "brute_partitions",
    "run_selfcheck",
]
