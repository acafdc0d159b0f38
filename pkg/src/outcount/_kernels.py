"""Compiled inner loops for the two places pure Python is too slow:
brute-force necklace enumeration and free reduction of very long words.

Both operate on the integer letter codes used in :mod:`outcount.words`.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _is_least_rotation(x, n):
    for r in range(1, n):
        for t in range(n):
            a = x[(r + t) % n]
            b = x[t]
            if a < b:
                return False
            if a > b:
                break
    return True


@njit(cache=True)
def count_canonical_words(rank, n):
    """Count cyclically reduced words of length n that equal their least rotation.

    Plain depth-first enumeration; the only pruning is that no letter may be
    smaller than the first one, which every least rotation satisfies.
    """
    if n == 0:
        return 1
    m = 2 * rank
    x = np.zeros(n, dtype=np.int64)
    choice = np.zeros(n, dtype=np.int64)
    count = 0
    depth = 0
    choice[0] = 0
    while depth >= 0:
        c = choice[depth]
        if c >= m:
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        ok = True
        if depth > 0:
            if c < x[0] or c == (x[depth - 1] ^ 1):
                ok = False
        if not ok:
            choice[depth] += 1
            continue
        x[depth] = c
        if depth == n - 1:
            if (n == 1 or x[0] != (x[n - 1] ^ 1)) and _is_least_rotation(x, n):
                count += 1
            choice[depth] += 1
        else:
            depth += 1
            choice[depth] = 0
    return count


@njit(cache=True)
def reduce_array(codes):
    out = np.empty_like(codes)
    top = 0
    for i in range(codes.shape[0]):
        c = codes[i]
        if top > 0 and out[top - 1] == (c ^ 1):
            top -= 1
        else:
            out[top] = c
            top += 1
    return out[:top].copy()


@njit(cache=True)
def cyclic_bounds(codes):
    """(start, stop) of the cyclically reduced core of a reduced word."""
    i = 0
    j = codes.shape[0]
    while j - i >= 2 and codes[i] == (codes[j - 1] ^ 1):
        i += 1
        j -= 1
    return i, j
