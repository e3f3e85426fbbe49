"""Exact enumeration and q-series verification for K-restricted jagged partitions."""
from .genfun import andrews_F, gf_A, gf_B, product_theorem11
from .jagged import (
    RestrictionParams,
    count_A,
    count_B,
    enumerate_jagged,
    is_jagged,
    is_k_restricted,
)
from .overpart import Overpartition, jagged_to_overpartition, overpartition_to_jagged
from .report import IdentityReport
from .series import BivariateSeries, PowerSeries, TruncationError

__version__ = "0.1.0"
