"""Compiled 2^n loops behind the exact permanent algorithms.

Both kernels walk subsets (or sign vectors) in the standard binary-reflected
Gray-code order, so each step updates the running row sums by a single
column.  Accumulation is plain and sequential; the order is fixed, which
makes results bit-for-bit reproducible.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def ryser_gray(a):
    """Inclusion-exclusion permanent: (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} a_ij."""
    n = a.shape[0]
    rowsum = np.zeros_like(a[0])
    total = rowsum[0]
    parity = 1.0  # (-1)^|S| for the current subset
    gray = 0
    for k in range(1, 1 << n):
        bit = k & (-k)
        j = 0
        while (1 << j) != bit:
            j += 1
        if gray & bit:
            for i in range(n):
                rowsum[i] -= a[i, j]
        else:
            for i in range(n):
                rowsum[i] += a[i, j]
        gray ^= bit
        parity = -parity
        prod = rowsum[0] * 0 + 1
        for i in range(n):
            prod *= rowsum[i]
        total += parity * prod
    if n % 2 == 1:
        total = -total
    return total


@njit(cache=True)
def glynn_gray(a):
    """Average of (prod_i x_i)(prod_i (Ax)_i) over all x in {-1, 1}^n."""
    n = a.shape[0]
    y = np.zeros_like(a[0])
    for i in range(n):
        acc = a[i, 0] - a[i, 0]
        for j in range(n):
            acc += a[i, j]
        y[i] = acc
    x = np.ones(n)
    prod = y[0] * 0 + 1
    for i in range(n):
        prod *= y[i]
    total = prod  # x = all ones contributes with sign +1
    sign = 1.0
    for k in range(1, 1 << n):
        bit = k & (-k)
        j = 0
        while (1 << j) != bit:
            j += 1
        step = 2.0 * x[j]
        x[j] = -x[j]
        for i in range(n):
            y[i] -= step * a[i, j]
        sign = -sign
        prod = y[0] * 0 + 1
        for i in range(n):
            prod *= y[i]
        total += sign * prod
    return total / (1 << n)


def warm_up() -> None:
    """Trigger compilation of both kernels for both dtypes."""
    two = np.array([[1.0, 2.0], [3.0, 4.0]])
    ryser_gray(two)
    glynn_gray(two)
    ryser_gray(two.astype(np.complex128))
    glynn_gray(two.astype(np.complex128))
