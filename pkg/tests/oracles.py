"""Slow reference computations, independent of the package internals."""
import itertools
import math

import numpy as np


def iterated_integral(increments, word):
    """Exact iterated integral of a piecewise linear path along ``word``.

    On a segment with constant velocity the k-fold integral over its own
    time simplex is ``prod(v[w_j]) / k!``; across segments the time-ordered
    region factorises, so we sum over non-decreasing segment assignments
    ``s_1 <= ... <= s_k`` with weight ``prod_s 1 / m_s!`` (``m_s`` = number
    of letters assigned to segment ``s``).
    """
    increments = np.asarray(increments, dtype=float)
    k = len(word)
    if k == 0:
        return 1.0
    total = 0.0
    for assign in itertools.combinations_with_replacement(range(len(increments)), k):
        term = 1.0
        for seg, letter in zip(assign, word):
            term *= increments[seg][letter - 1]
        for seg in set(assign):
            term /= math.factorial(assign.count(seg))
        total += term
    return total


def subset_pvar(points, p):
    """Max of sum ||x_b - x_a||^p over all subsets of interior indices (pure Python)."""
    pts = [np.asarray(x, dtype=float) for x in points]
    n = len(pts) - 1
    if n <= 0:
        return 0.0
    best = 0.0
    for mask in range(1 << (n - 1)):
        idx = [0] + [i + 1 for i in range(n - 1) if mask >> i & 1] + [n]
        s = 0.0
        for a, b in zip(idx, idx[1:]):
            s += math.sqrt(float(np.sum((pts[b] - pts[a]) ** 2))) ** p
        best = max(best, s)
    return best ** (1.0 / p)


def all_words(dim, max_len):
    for k in range(max_len + 1):
        yield from itertools.product(range(1, dim + 1), repeat=k)


def subset_pvar_power(points, p):
    """``max_P sum ||x_b - x_a||^p`` over breakpoint subsets, enumerated as bit masks.

    Vectorised over masks: the pair ``(a, b)`` contributes to a mask when
    both ends are kept and nothing in between is.
    """
    pts = np.asarray(points, dtype=float)
    n = len(pts) - 1
    if n <= 0:
        return 0.0
    masks = np.arange(1 << (n - 1))
    keep = np.ones((len(masks), n + 1), dtype=bool)
    keep[:, 1:n] = (masks[:, None] >> np.arange(n - 1)[None, :]) & 1 == 1
    gap = np.linalg.norm(pts[:, None, :] - pts[None, :, :], axis=2) ** p
    total = np.zeros(len(masks))
    for a in range(n):
        # ``clear`` tracks that every index strictly between a and b is dropped
        clear = np.ones(len(masks), dtype=bool)
        for b in range(a + 1, n + 1):
            total += np.where(keep[:, a] & keep[:, b] & clear, gap[a, b], 0.0)
            clear &= ~keep[:, b]
    return float(total.max())
