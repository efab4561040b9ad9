"""Tree-like equivalence classes of piecewise linear paths and metrics on them.

A class is represented by its tree-reduced member run at constant speed on
``[0, 1]``, together with the truncated signature of that member.  Three
distances are offered:

``dist_sig``
    product-type metric on truncated signatures (weakest);
``dist_d``
    p-variation distance between canonical representatives;
``dist_star``
    p-variation of the canonical form of ``X * reverse(Y)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .paths import (
    COLLINEAR_TOL,
    PiecewiseLinearPath,
    concat,
    constant_speed_reparam,
    reverse,
    tree_reduce,
)
from .signature import DEFAULT_LEVEL, signature
from .tensor_algebra import TruncatedTensor, product_metric_dist
from .variation import DEFAULT_REFINE, p_var_distance, p_variation_lift


@dataclass(frozen=True, eq=False)
class UnparamPath:
    """Canonical representative of a tree-like equivalence class.

    ``level`` fixes the truncation of the cached signature.  Distances refuse
    to compare classes built with different ``p`` or ``level``.
    """

    canonical: PiecewiseLinearPath
    sig: TruncatedTensor
    p: float
    level: int

    @property
    def dim(self) -> int:
        return self.canonical.dim

    @property
    def rough_depth(self) -> int:
        """``floor(p)``: the number of levels a p-rough path carries."""
        return int(math.floor(self.p))


def canonicalize(X: PiecewiseLinearPath, p: float = 1.0, level: int = DEFAULT_LEVEL,
                 tol: float = COLLINEAR_TOL) -> UnparamPath:
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    canon = constant_speed_reparam(tree_reduce(X, tol).with_horizon(1.0))
    return UnparamPath(canon, signature(canon, level), float(p), int(level))


def equivalent(X: PiecewiseLinearPath, Y: PiecewiseLinearPath, level: int = DEFAULT_LEVEL,
               tol: float = 1e-10) -> bool:
    """Whether the truncated signatures agree to ``tol``.

    This certifies equivalence only up to ``level``: two paths whose
    signatures first differ beyond the truncation are reported equivalent.
    """
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")
    return signature(X, level).allclose(signature(Y, level), atol=tol)


def _check_context(A: UnparamPath, B: UnparamPath) -> None:
    if A.dim != B.dim:
        raise ValueError(f"dimension mismatch: {A.dim} vs {B.dim}")
    if A.p != B.p:
        raise ValueError(f"p mismatch: {A.p} vs {B.p}")
    if A.level != B.level:
        raise ValueError(f"signature level mismatch: {A.level} vs {B.level}")


def dist_d(A: UnparamPath, B: UnparamPath, refine: int = DEFAULT_REFINE,
           depth: int | None = None) -> float:
    """p-variation distance between the canonical representatives.

    ``depth`` is the number of signature levels compared; it defaults to
    ``floor(p)``, the levels carried by a p-rough path.
    """
    _check_context(A, B)
    depth = A.rough_depth if depth is None else depth
    return p_var_distance(A.canonical, B.canonical, A.p, depth, refine).value


def dist_star(A: UnparamPath, B: UnparamPath, refine: int = DEFAULT_REFINE,
              depth: int | None = None) -> float:
    """p-variation of the canonical form of ``A * reverse(B)``.

    At ``depth == 1`` the value is exact; deeper lifts are measured in the
    homogeneous-norm gauge on a refined grid.
    """
    _check_context(A, B)
    depth = A.rough_depth if depth is None else depth
    loop = canonicalize(concat(A.canonical, reverse(B.canonical)), A.p, A.level)
    return p_variation_lift(loop.canonical, A.p, depth, refine).value


def dist_sig(A: UnparamPath, B: UnparamPath) -> float:
    """Product-type metric on the cached signatures; always at most 1."""
    _check_context(A, B)
    return product_metric_dist(A.sig, B.sig)


METRICS = {"d": dist_d, "star": dist_star, "sig": dist_sig}
