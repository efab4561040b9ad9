"""Piecewise linear paths in R^d.

A path is a list of breakpoint times ``0 = t_0 < ... < t_n = T`` and the
points ``x_0 = 0, x_1, ..., x_n``.  The constant path has ``n = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

COLLINEAR_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PiecewiseLinearPath:
    """Immutable piecewise linear path started at the origin.

    Parameters
    ----------
    times : array_like, shape (n + 1,)
        Strictly increasing breakpoint times starting at 0.
    points : array_like, shape (n + 1, d)
        Breakpoint positions; the first row must be zero.
    horizon : float, optional
        Terminal time ``T``.  Required only for the constant path, where it
        cannot be read off ``times``.
    """

    times: np.ndarray
    points: np.ndarray
    horizon: float

    def __init__(self, times, points, horizon: float | None = None):
        t = np.array(times, dtype=float).reshape(-1)
        x = np.array(points, dtype=float)
        if x.ndim != 2:
            raise ValueError("points must be a 2-d array (n + 1, d)")
        if t.shape[0] != x.shape[0] or t.shape[0] == 0:
            raise ValueError("times and points must be non-empty and of equal length")
        if x.shape[1] < 1:
            raise ValueError("dimension must be positive")
        if t[0] != 0.0:
            raise ValueError("first time must be 0")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        if np.any(x[0] != 0.0):
            raise ValueError("path must start at the origin")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            raise ValueError("non-finite times or points")
        if t.shape[0] == 1:
            T = 1.0 if horizon is None else float(horizon)
        else:
            T = float(t[-1])
            if horizon is not None and float(horizon) != T:
                raise ValueError(f"horizon {horizon} does not match last time {T}")
        if not T > 0:
            raise ValueError("horizon must be positive")
        t.setflags(write=False)
        x.setflags(write=False)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "points", x)
        object.__setattr__(self, "horizon", T)

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, dim: int, horizon: float = 1.0) -> "PiecewiseLinearPath":
        return cls([0.0], np.zeros((1, dim)), horizon=horizon)

    @classmethod
    def from_increments(cls, vectors, horizon: float = 1.0, dim: int | None = None) -> "PiecewiseLinearPath":
        """Constant-speed path through the given segment vectors.

        Zero vectors are dropped; if nothing remains the constant path is
        returned (``dim`` is needed when ``vectors`` is empty).
        """
        V = np.array(vectors, dtype=float)
        if V.size == 0:
            if dim is None:
                raise ValueError("dim required for an empty segment list")
            return cls.constant(dim, horizon)
        V = V.reshape(len(V), -1)
        lengths = np.linalg.norm(V, axis=1)
        keep = lengths > 0
        if not np.any(keep):
            return cls.constant(V.shape[1], horizon)
        V, lengths = V[keep], lengths[keep]
        times = _arc_times(lengths, horizon)
        points = np.vstack([np.zeros(V.shape[1]), np.cumsum(V, axis=0)])
        return cls(times, points)

    @classmethod
    def from_points(cls, points, times=None, horizon: float = 1.0) -> "PiecewiseLinearPath":
        """Build from sample positions, translating so the path starts at 0.

        Without ``times`` the samples are spread uniformly over ``[0, horizon]``.
        """
        x = np.array(points, dtype=float)
        if x.ndim == 1:
            x = x[:, None]
        x = x - x[0]
        if times is None:
            times = np.linspace(0.0, horizon, x.shape[0]) if x.shape[0] > 1 else [0.0]
        return cls(times, x, horizon=horizon if len(x) == 1 else None)

    # -- views --------------------------------------------------------
    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    @property
    def n_segments(self) -> int:
        return int(self.times.shape[0] - 1)

    @property
    def is_constant(self) -> bool:
        return self.n_segments == 0

    @property
    def increments(self) -> np.ndarray:
        """Segment vectors ``v_i = x_i - x_{i-1}``; durations are discarded."""
        return np.diff(self.points, axis=0)

    @property
    def endpoint(self) -> np.ndarray:
        return self.points[-1]

    def length(self) -> float:
        """1-variation: the sum of segment lengths."""
        return float(np.sum(np.linalg.norm(self.increments, axis=1)))

    def __call__(self, t):
        """Evaluate the path at time(s) ``t``."""
        t = np.asarray(t, dtype=float)
        if self.is_constant:
            return np.zeros(t.shape + (self.dim,))
        return np.stack([np.interp(t, self.times, self.points[:, k]) for k in range(self.dim)], axis=-1)

    def with_horizon(self, horizon: float) -> "PiecewiseLinearPath":
        """Linear time change onto ``[0, horizon]``."""
        if self.is_constant:
            return PiecewiseLinearPath.constant(self.dim, horizon)
        return PiecewiseLinearPath(self.times * (horizon / self.horizon), self.points)

    def restrict(self, s: float, t: float) -> "PiecewiseLinearPath":
        """The piece on ``[s, t]``, shifted to start at time 0 and the origin."""
        if s > t:
            raise ValueError(f"s={s} > t={t}")
        if s < 0 or t > self.horizon:
            raise ValueError(f"[{s}, {t}] not inside [0, {self.horizon}]")
        if s == t:
            return PiecewiseLinearPath.constant(self.dim, 1.0)
        inner = self.times[(self.times > s) & (self.times < t)]
        ts = np.concatenate([[s], inner, [t]])
        xs = self(ts)
        return PiecewiseLinearPath(ts - s, xs - xs[0])

    def segment_equal(self, other: "PiecewiseLinearPath", atol: float = 1e-12) -> bool:
        """Equality of segment lists (i.e. up to reparameterisation)."""
        a, b = self.increments, other.increments
        return a.shape == b.shape and bool(np.allclose(a, b, rtol=0.0, atol=atol))

    def __eq__(self, other):
        if not isinstance(other, PiecewiseLinearPath):
            return NotImplemented
        return (
            self.horizon == other.horizon
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.points, other.points)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"PiecewiseLinearPath(dim={self.dim}, n_segments={self.n_segments}, horizon={self.horizon})"


def _arc_times(lengths: np.ndarray, horizon: float) -> np.ndarray:
    cum = np.concatenate([[0.0], np.cumsum(lengths)])
    times = horizon * cum / cum[-1]
    times[-1] = horizon
    return times


def line(v, T: float = 1.0) -> PiecewiseLinearPath:
    """The straight line ``t -> (t / T) v`` on ``[0, T]``."""
    if not T > 0:
        raise ValueError("T must be positive")
    v = np.asarray(v, dtype=float).reshape(-1)
    return PiecewiseLinearPath([0.0, T], np.vstack([np.zeros_like(v), v]))


def concat(X: PiecewiseLinearPath, Y: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Run ``X`` on ``[0, T/2]`` at double speed, then ``Y`` translated by X's endpoint."""
    if X.dim != Y.dim:
        raise ValueError(f"dimension mismatch: {X.dim} vs {Y.dim}")
    if X.horizon != Y.horizon:
        raise ValueError(f"horizon mismatch: {X.horizon} vs {Y.horizon}")
    T = X.horizon
    if Y.is_constant:
        return X
    if X.is_constant:
        return Y
    times = np.concatenate([X.times / 2.0, T / 2.0 + Y.times[1:] / 2.0])
    points = np.vstack([X.points, X.endpoint + Y.points[1:]])
    return PiecewiseLinearPath(times, points)


def concat_all(paths: Sequence[PiecewiseLinearPath]) -> PiecewiseLinearPath:
    """Left fold of :func:`concat`."""
    out = paths[0]
    for p in paths[1:]:
        out = concat(out, p)
    return out


def reverse(X: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """``t -> x_{T-t} - x_T``."""
    if X.is_constant:
        return X
    T = X.horizon
    times = T - X.times[::-1]
    times[0] = 0.0
    return PiecewiseLinearPath(times, X.points[::-1] - X.endpoint)


def constant_speed_reparam(X: PiecewiseLinearPath) -> PiecewiseLinearPath:
    """Same segments, timed so that 1-variation accrues linearly in time.

    Zero-length segments are dropped; a path of zero length becomes the
    constant path on the same horizon.
    """
    if X.is_constant:
        return X
    return PiecewiseLinearPath.from_increments(X.increments, horizon=X.horizon, dim=X.dim)


def _cosine(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))


def tree_reduce(X: PiecewiseLinearPath, tol: float = COLLINEAR_TOL) -> PiecewiseLinearPath:
    """Irreducible path with the same signature, at constant speed.

    A stack pass over the segments: zero segments are dropped, positively
    collinear neighbours merged, and anti-collinear neighbours replaced by
    their net vector, which is then pushed again so cancellations cascade.
    """
    stack: list[np.ndarray] = []

    def push(v: np.ndarray) -> None:
        while True:
            if not np.any(v):
                return
            if not stack:
                stack.append(v)
                return
            c = _cosine(stack[-1], v)
            if c >= 1.0 - tol:
                stack[-1] = stack[-1] + v
                return
            if c <= -1.0 + tol:
                top = stack.pop()
                scale = max(np.linalg.norm(top), np.linalg.norm(v))
                v = top + v
                # round-off left over from an exact cancellation
                if np.linalg.norm(v) <= tol * scale:
                    return
                continue
            stack.append(v)
            return

    for v in X.increments:
        push(v.copy())
    return PiecewiseLinearPath.from_increments(stack, horizon=X.horizon, dim=X.dim)


def is_irreducible(X: PiecewiseLinearPath, tol: float = COLLINEAR_TOL) -> bool:
    """No zero segment and no adjacent pair with cosine within ``tol`` of -1."""
    V = X.increments
    if np.any(np.linalg.norm(V, axis=1) == 0.0):
        return False
    return all(_cosine(V[i], V[i + 1]) > -1.0 + tol for i in range(len(V) - 1))


def axis_path(vectors, horizon: float = 1.0, tol: float = 1e-12) -> PiecewiseLinearPath:
    """Constant-speed path through nonzero, consecutively orthogonal vectors."""
    V = np.array(vectors, dtype=float)
    if V.ndim != 2 or V.shape[0] == 0:
        raise ValueError("axis_path needs a non-empty list of vectors")
    norms = np.linalg.norm(V, axis=1)
    if np.any(norms == 0):
        raise ValueError("axis path segments must be nonzero")
    for i in range(len(V) - 1):
        if abs(np.dot(V[i], V[i + 1])) > tol * norms[i] * norms[i + 1]:
            raise ValueError(f"segments {i} and {i + 1} are not orthogonal")
    return PiecewiseLinearPath.from_increments(V, horizon=horizon)


def is_constant_speed(X: PiecewiseLinearPath, atol: float = 1e-9) -> bool:
    """Check ``||X||_{1-var;[0,t]} = (t/T) ||X||_{1-var}`` at every breakpoint."""
    if X.is_constant:
        return True
    cum = np.concatenate([[0.0], np.cumsum(np.linalg.norm(X.increments, axis=1))])
    return bool(np.all(np.abs(cum - X.times / X.horizon * cum[-1]) <= atol))
