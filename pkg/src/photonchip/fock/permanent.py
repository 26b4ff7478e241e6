"""Matrix permanents.

The permanent gives multi-photon transition amplitudes. ``permanent`` uses
Glynn's formula walked in Gray-code order, O(2^(n-1) n); ``permanent_naive``
expands over all permutations and is kept as a reference.
"""

from itertools import permutations

import numpy as np


def _as_square(matrix: np.ndarray) -> np.ndarray:
    a = np.asarray(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"permanent requires a square matrix, got shape {a.shape}")
    return a


def permanent(matrix: np.ndarray) -> complex:
    """Permanent of a square complex matrix via Glynn's Gray-code formula.

    Args:
        matrix: n x n array, n >= 0

    Returns:
        The permanent; 1 for the 0 x 0 matrix

    Raises:
        ValueError: If the matrix is not square
    """
    a = _as_square(matrix)
    n = a.shape[0]
    if n == 0:
        return complex(1.0)

    # Column sums with every row sign delta_i = +1; row 0 never flips
    row_comb = a.sum(axis=0)
    total = np.prod(row_comb)
    sign = 1.0
    delta = np.ones(n)

    for k in range(1, 2 ** (n - 1)):
        j = (k & -k).bit_length()
        delta[j] = -delta[j]
        row_comb = row_comb + 2.0 * delta[j] * a[j]
        sign = -sign
        total += sign * np.prod(row_comb)

    return complex(total / 2 ** (n - 1))


def permanent_naive(matrix: np.ndarray) -> complex:
    """Permanent by direct expansion over all n! permutations."""
    a = _as_square(matrix)
    n = a.shape[0]
    rows = np.arange(n)
    total = 0j
    for cols in permutations(range(n)):
        total += np.prod(a[rows, list(cols)])
    return complex(total)
