"""Good-base oracles, query protocols and degree computations for oracle identification problems."""

__version__ = "0.1.0"

from .bitlin import BitString, exists_small_xor_cover, inner_product, rank_gf2, xor_subset
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "BitString",
    "exists_small_xor_cover",
    "inner_product",
    "rank_gf2",
    "xor_subset",
    "__version__",
]
