"""Python bindings for the bsmooth C++ library.

Vectors are plain lists. Option indices are 0-based, as in the C++ API.
"""

from ._bsmooth import (
    BsmoothError,
    Profile,
    balance_top,
    combine,
    disagreed_top_bins,
    fit_profile,
    from_weights,
    invert_binary_entropy,
    normalize_counts,
    normalized_entropy,
    ranking,
    reciprocal_rank,
    simulate_implicit,
    simulate_random,
    smooth,
    top_bins,
)

__all__ = [
    "BsmoothError",
    "Profile",
    "balance_top",
    "combine",
    "disagreed_top_bins",
    "fit_profile",
    "from_weights",
    "invert_binary_entropy",
    "normalize_counts",
    "normalized_entropy",
    "ranking",
    "reciprocal_rank",
    "simulate_implicit",
    "simulate_random",
    "smooth",
    "top_bins",
]
