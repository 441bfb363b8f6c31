"""Exact Mertens-function computation, divisor-sum identities, and record scans."""

from .capacity import CapacityError
from .sieves import SieveTable, build_sieve, jordan_table, prefix, sieve_range
from .mertens import MertensQuotientTable, mertens_at, mertens_quotients, mertens_sieved
from .floorsum import QuotientBlock, blocks, weighted_msum

__all__ = [
    "CapacityError",
    "SieveTable",
    "build_sieve",
    "jordan_table",
    "prefix",
    "sieve_range",
    "MertensQuotientTable",
    "mertens_at",
    "mertens_quotients",
    "mertens_sieved",
    "QuotientBlock",
    "blocks",
    "weighted_msum",
]
