"""scikit-learn compatible transformers over collections of paths.

Inputs may be :class:`PiecewiseLinearPath` objects or arrays of sample
points of shape ``(n_samples, d)`` (optionally with a times column handled
by :func:`check_path`).
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .paths import PiecewiseLinearPath, tree_reduce
from .signature import signature
from .unparam import canonicalize, dist_d, dist_sig, dist_star
from .variation import p_var_distance, p_variation, p_variation_lift


def check_path(X, dim=None) -> PiecewiseLinearPath:
    """Coerce one sample into a path, translating it to start at the origin."""
    if isinstance(X, PiecewiseLinearPath):
        path = X
    else:
        arr = np.asarray(X, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise ValueError(f"expected an array of shape (n_samples, d), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("path samples contain NaN or inf")
        path = PiecewiseLinearPath.from_points(arr)
    if dim is not None and path.dim != dim:
        raise ValueError(f"path has dimension {path.dim}, expected {dim}")
    return path


def check_paths(X, dim=None) -> list:
    """Coerce a collection of samples; all must share one dimension."""
    if isinstance(X, PiecewiseLinearPath):
        raise TypeError("expected a collection of paths, got a single path")
    paths = [check_path(x) for x in X]
    if not paths:
        raise ValueError("empty collection of paths")
    dims = {p.dim for p in paths}
    if len(dims) != 1:
        raise ValueError(f"paths have mixed dimensions {sorted(dims)}")
    if dim is not None and dims != {dim}:
        raise ValueError(f"paths have dimension {dims.pop()}, expected {dim}")
    return paths


class SignatureTransformer(TransformerMixin, BaseEstimator):
    """Truncated signature features.

    Parameters
    ----------
    level : int, default=4
        Truncation level.
    reduce : bool, default=False
        Tree-reduce each path first.  The signature is unchanged up to
        round-off; this only affects cost on paths with many retracings.
    include_scalar : bool, default=False
        Keep the constant leading 1.
    """

    def __init__(self, level=4, reduce=False, include_scalar=False):
        self.level = level
        self.reduce = reduce
        self.include_scalar = include_scalar

    def fit(self, X, y=None):
        paths = check_paths(X)
        self.n_features_in_ = paths[0].dim
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        paths = check_paths(X, self.n_features_in_)
        if self.reduce:
            paths = [tree_reduce(p) for p in paths]
        feats = np.stack([signature(p, self.level).coeffs for p in paths])
        return feats if self.include_scalar else feats[:, 1:]


class PVariationTransformer(TransformerMixin, BaseEstimator):
    """One column per exponent: the p-variation of each path (or of its lift)."""

    def __init__(self, p=(1.0, 2.0), level=1, refine=4):
        self.p = p
        self.level = level
        self.refine = refine

    def fit(self, X, y=None):
        ps = np.atleast_1d(np.asarray(self.p, dtype=float))
        if np.any(ps < 1):
            raise ValueError("all exponents must be >= 1")
        self.exponents_ = ps
        self.n_features_in_ = check_paths(X)[0].dim
        return self

    def transform(self, X):
        check_is_fitted(self, "exponents_")
        paths = check_paths(X, self.n_features_in_)
        out = np.empty((len(paths), len(self.exponents_)))
        for i, path in enumerate(paths):
            for j, p in enumerate(self.exponents_):
                if self.level == 1:
                    out[i, j] = p_variation(path, p).value
                else:
                    out[i, j] = p_variation_lift(path, p, self.level, self.refine).value
        return out


class UnparamDistanceTransformer(TransformerMixin, BaseEstimator):
    """Distances from each path to the paths seen in ``fit``.

    Useful as a precomputed-kernel style feature map, e.g. feeding
    ``exp(-D / s)`` to an SVM.

    Parameters
    ----------
    metric : {"d", "star", "sig", "pvar"}, default="d"
        Class metric on tree-reduced constant-speed representatives, or the
        parameterised p-variation distance ``"pvar"``.
    p : float, default=1.0
    level : int, default=4
        Signature level cached on each class (and lift depth for ``"pvar"``).
    refine : int, default=2
    """

    def __init__(self, metric="d", p=1.0, level=4, refine=2):
        self.metric = metric
        self.p = p
        self.level = level
        self.refine = refine

    def _distance(self, a, b):
        if self.metric == "pvar":
            return p_var_distance(a, b, self.p, self.level, self.refine).value
        if self.metric == "sig":
            return dist_sig(a, b)
        fn = {"d": dist_d, "star": dist_star}[self.metric]
        return fn(a, b, self.refine)

    def _prepare(self, paths):
        if self.metric == "pvar":
            return paths
        return [canonicalize(p, self.p, self.level) for p in paths]

    def fit(self, X, y=None):
        if self.metric not in ("d", "star", "sig", "pvar"):
            raise ValueError(f"unknown metric {self.metric!r}")
        paths = check_paths(X)
        self.n_features_in_ = paths[0].dim
        self.reference_ = self._prepare(paths)
        return self

    def transform(self, X):
        check_is_fitted(self, "reference_")
        items = self._prepare(check_paths(X, self.n_features_in_))
        return np.array([[self._distance(a, b) for b in self.reference_] for a in items])
