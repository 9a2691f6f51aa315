import numpy as np

from agglo import CondensedMatrix


def tie_rich_matrix(rng, n):
    """Small-integer dissimilarities so equal entries are frequent."""
    hi = 2 + max(2, n // 2)
    vals = rng.integers(1, hi, size=n * (n - 1) // 2).astype(float)
    return CondensedMatrix(n, vals)


def real_matrix(rng, n):
    return CondensedMatrix(n, rng.uniform(0.05, 1.0, size=n * (n - 1) // 2))
