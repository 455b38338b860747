"""Shared numba settings for the compiled kernels."""
from functools import partial

from numba import njit

# numpy error model: division by zero yields inf/nan instead of raising,
# which the branch-free kernels rely on and which keeps loops vectorizable
kernel = partial(njit, cache=True, error_model="numpy")
