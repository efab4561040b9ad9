"""Exact signatures of piecewise linear paths.

The signature of a straight segment is the tensor exponential of its
increment; Chen's identity turns a path's signature into the ordered
product of those exponentials.  No quadrature is involved.

Consecutive increments that are exactly parallel commute, so their
exponentials are multiplied by adding the vectors first
(``exp(a) exp(c a) = exp((1 + c) a)``).  Retracings such as
``line(v) * line(-v)`` then cancel without round-off.
"""
from __future__ import annotations

from typing import List, Sequence

import numpy as np

from .paths import PiecewiseLinearPath
from .tensor_algebra import TruncatedTensor, batch_mul, exp_vector_flat, tensor_size

DEFAULT_LEVEL = 4


def _parallel(u: np.ndarray, v: np.ndarray) -> bool:
    outer = np.multiply.outer(u, v)
    return bool(np.array_equal(outer, outer.T))


def merge_parallel(increments: np.ndarray) -> List[np.ndarray]:
    """Sum runs of consecutive, exactly parallel increments; drop zeros."""
    merged: List[np.ndarray] = []
    for v in increments:
        if not np.any(v):
            continue
        if merged and _parallel(merged[-1], v):
            merged[-1] = merged[-1] + v
        else:
            merged.append(np.array(v, dtype=float))
    return [v for v in merged if np.any(v)]


def _chen_product(increments: np.ndarray, dim: int, level: int) -> np.ndarray:
    out = np.zeros(tensor_size(dim, level))
    out[0] = 1.0
    for v in merge_parallel(increments):
        out = batch_mul(out, exp_vector_flat(v, level), dim, level)[0]
    return out


def signature(X: PiecewiseLinearPath, level: int = DEFAULT_LEVEL) -> TruncatedTensor:
    """Truncated signature ``S_{0,T}(X)``; the constant path maps to 1."""
    if level < 1:
        raise ValueError("level must be >= 1")
    return TruncatedTensor(X.dim, level, _chen_product(X.increments, X.dim, level))


def signature_segment(X: PiecewiseLinearPath, s: float, t: float, level: int = DEFAULT_LEVEL) -> TruncatedTensor:
    """Signature of the restriction of ``X`` to ``[s, t]``."""
    if s > t:
        raise ValueError(f"s={s} > t={t}")
    return signature(X.restrict(s, t), level)


def signature_trajectory(
    X: PiecewiseLinearPath, level: int = DEFAULT_LEVEL, mesh: Sequence[float] = ()
) -> List[TruncatedTensor]:
    """``S_{0,t}(X)`` for each ``t`` in a sorted mesh.

    Built incrementally: the mesh and the breakpoints are merged, and one
    exponential per sub-interval is multiplied on.
    """
    mesh = np.asarray(mesh, dtype=float)
    if mesh.size and np.any(np.diff(mesh) < 0):
        raise ValueError("mesh must be sorted")
    if mesh.size and (mesh[0] < 0 or mesh[-1] > X.horizon):
        raise ValueError(f"mesh must lie in [0, {X.horizon}]")
    grid = np.union1d(mesh, X.times if not X.is_constant else [0.0])
    values = X(grid)
    cur = np.zeros(tensor_size(X.dim, level))
    cur[0] = 1.0
    by_time = {grid[0]: cur}
    for j in range(1, len(grid)):
        cur = batch_mul(cur, exp_vector_flat(values[j] - values[j - 1], level), X.dim, level)[0]
        by_time[grid[j]] = cur
    return [TruncatedTensor(X.dim, level, by_time[t]) for t in mesh]
