"""Truncated free tensor algebra over R^d.

Elements of T^(N)(R^d) are stored densely as one flat float array holding
levels 0..N back to back; level ``k`` occupies ``d**k`` slots in
lexicographic word order.  Words are tuples of letters in ``1..d``.

Norms on each tensor power are Euclidean (coefficient l2 over words).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Tuple

import numpy as np

Word = Tuple[int, ...]

ALGEBRA_TOL = 1e-12
GROUP_LIKE_TOL = 1e-10


@lru_cache(maxsize=None)
def level_offsets(dim: int, level: int) -> Tuple[int, ...]:
    """Start offsets of levels 0..level+1 in the flat layout."""
    offsets = [0]
    for k in range(level + 1):
        offsets.append(offsets[-1] + dim**k)
    return tuple(offsets)


def tensor_size(dim: int, level: int) -> int:
    return level_offsets(dim, level)[-1]


def word_index(word: Word, dim: int) -> int:
    """Flat index of ``word`` inside the full layout."""
    k = len(word)
    idx = 0
    for letter in word:
        if not 1 <= letter <= dim:
            raise ValueError(f"letter {letter} out of range 1..{dim}")
        idx = idx * dim + (letter - 1)
    return (dim**k - 1) // (dim - 1) + idx if dim > 1 else k + idx


def words(dim: int, length: int) -> Iterable[Word]:
    """All words of a given length, lexicographic."""
    return (tuple(int(c) + 1 for c in w) for w in np.ndindex(*([dim] * length)))


class TruncatedTensor:
    """Immutable element of the truncated tensor algebra T^(N)(R^d).

    Parameters
    ----------
    dim : int
        Dimension ``d`` of the underlying space.
    level : int
        Truncation level ``N``.
    coeffs : array_like, optional
        Flat coefficient array of length ``(d**(N+1) - 1) / (d - 1)``.
        Defaults to zero.
    """

    __slots__ = ("dim", "level", "_c")

    def __init__(self, dim: int, level: int, coeffs=None):
        if dim < 1:
            raise ValueError("dim must be positive")
        if level < 0:
            raise ValueError("level must be non-negative")
        size = tensor_size(dim, level)
        if coeffs is None:
            c = np.zeros(size)
        else:
            c = np.array(coeffs, dtype=float).reshape(-1)
            if c.shape[0] != size:
                raise ValueError(f"expected {size} coefficients, got {c.shape[0]}")
        if not np.isfinite(c[0]):
            raise ValueError("scalar coefficient must be finite")
        c.setflags(write=False)
        self.dim = int(dim)
        self.level = int(level)
        self._c = c

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, dim: int, level: int) -> "TruncatedTensor":
        return cls(dim, level)

    @classmethod
    def unit(cls, dim: int, level: int) -> "TruncatedTensor":
        c = np.zeros(tensor_size(dim, level))
        c[0] = 1.0
        return cls(dim, level, c)

    @classmethod
    def from_vector(cls, v, level: int) -> "TruncatedTensor":
        """Embed ``v`` in level one."""
        v = np.asarray(v, dtype=float).reshape(-1)
        c = np.zeros(tensor_size(v.shape[0], level))
        if level >= 1:
            c[1 : 1 + v.shape[0]] = v
        return cls(v.shape[0], level, c)

    @classmethod
    def from_dict(cls, dim: int, level: int, mapping: Dict[Word, float]) -> "TruncatedTensor":
        c = np.zeros(tensor_size(dim, level))
        for w, val in mapping.items():
            w = tuple(w)
            if len(w) > level:
                raise ValueError(f"word {w} longer than level {level}")
            c[word_index(w, dim)] += float(val)
        return cls(dim, level, c)

    # -- access -------------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        """Read-only flat coefficient array."""
        return self._c

    def __getitem__(self, word) -> float:
        word = tuple(word)
        if len(word) > self.level:
            raise KeyError(f"word {word} longer than level {self.level}")
        return float(self._c[word_index(word, self.dim)])

    def level_coeffs(self, i: int) -> np.ndarray:
        """Flat coefficients of the homogeneous level ``i``."""
        if not 0 <= i <= self.level:
            raise ValueError(f"level {i} out of range 0..{self.level}")
        off = level_offsets(self.dim, self.level)
        return self._c[off[i] : off[i + 1]]

    def level_tensor(self, i: int) -> np.ndarray:
        """Level ``i`` as an array of shape ``(d,) * i``."""
        return self.level_coeffs(i).reshape((self.dim,) * i)

    def to_dict(self, skip_zeros: bool = False) -> Dict[Word, float]:
        out = {}
        for k in range(self.level + 1):
            block = self.level_coeffs(k)
            for j, w in enumerate(words(self.dim, k)):
                if skip_zeros and block[j] == 0.0:
                    continue
                out[w] = float(block[j])
        return out

    # -- arithmetic ---------------------------------------------------
    def _check_compatible(self, other: "TruncatedTensor") -> None:
        if not isinstance(other, TruncatedTensor):
            raise TypeError(f"expected TruncatedTensor, got {type(other).__name__}")
        if self.dim != other.dim or self.level != other.level:
            raise ValueError(
                f"incompatible tensors: (d={self.dim}, N={self.level}) vs "
                f"(d={other.dim}, N={other.level})"
            )

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(other, -1.0))

    def __neg__(self):
        return scale(self, -1.0)

    def __mul__(self, lam):
        if isinstance(lam, TruncatedTensor):
            return NotImplemented
        return scale(self, lam)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return tensor_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TruncatedTensor):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.level == other.level
            and bool(np.array_equal(self._c, other._c))
        )

    __hash__ = None

    def allclose(self, other: "TruncatedTensor", atol: float = ALGEBRA_TOL) -> bool:
        self._check_compatible(other)
        return bool(np.max(np.abs(self._c - other._c), initial=0.0) <= atol)

    def __repr__(self) -> str:
        return f"TruncatedTensor(dim={self.dim}, level={self.level}, scalar={self._c[0]!r})"

    def serialize(self) -> str:
        return serialize_tensor(self)


# -- batch kernels ------------------------------------------------------
# Rows of ``A`` are flat tensors sharing (dim, level).


def batch_mul(A: np.ndarray, B: np.ndarray, dim: int, level: int) -> np.ndarray:
    """Row-wise tensor product; either operand may be a single flat tensor."""
    A = np.atleast_2d(A)
    B = np.atleast_2d(B)
    rows = max(A.shape[0], B.shape[0])
    off = level_offsets(dim, level)
    out = np.zeros((rows, off[-1]))
    for n in range(level + 1):
        acc = out[:, off[n] : off[n + 1]]
        for k in range(n + 1):
            a = A[:, off[k] : off[k + 1]]
            b = B[:, off[n - k] : off[n - k + 1]]
            acc += (a[:, :, None] * b[:, None, :]).reshape(rows, -1)
    return out


def exp_vector_flat(v: np.ndarray, level: int) -> np.ndarray:
    """Flat ``exp(v)`` for a level-one vector via ``v^{(x)k} / k!``."""
    v = np.asarray(v, dtype=float)
    parts = [np.ones(1)]
    cur = np.ones(1)
    for k in range(1, level + 1):
        cur = np.multiply.outer(cur, v).reshape(-1) / k
        parts.append(cur)
    return np.concatenate(parts)


# -- operations ---------------------------------------------------------


def tensor_mul(a: TruncatedTensor, b: TruncatedTensor) -> TruncatedTensor:
    """Truncated tensor product: ``(ab)[w] = sum_{uv=w} a[u] b[v]``."""
    a._check_compatible(b)
    out = batch_mul(a._c, b._c, a.dim, a.level)[0]
    return TruncatedTensor(a.dim, a.level, out)


def add(a: TruncatedTensor, b: TruncatedTensor) -> TruncatedTensor:
    a._check_compatible(b)
    return TruncatedTensor(a.dim, a.level, a._c + b._c)


def scale(a: TruncatedTensor, lam: float) -> TruncatedTensor:
    return TruncatedTensor(a.dim, a.level, a._c * float(lam))


def project_level(x: TruncatedTensor, i: int) -> TruncatedTensor:
    """Keep only the words of length exactly ``i``."""
    if not 0 <= i <= x.level:
        raise ValueError(f"level {i} out of range 0..{x.level}")
    off = level_offsets(x.dim, x.level)
    c = np.zeros_like(x._c)
    c[off[i] : off[i + 1]] = x._c[off[i] : off[i + 1]]
    return TruncatedTensor(x.dim, x.level, c)


def truncate(x: TruncatedTensor, n: int) -> TruncatedTensor:
    """Drop every word longer than ``n``; the result lives at level ``n``."""
    if not 0 <= n <= x.level:
        raise ValueError(f"truncation level {n} out of range 0..{x.level}")
    return TruncatedTensor(x.dim, n, x._c[: tensor_size(x.dim, n)])


def _require_scalar(x: TruncatedTensor, value: float, what: str) -> None:
    if x._c[0] != value:
        raise ValueError(f"{what} requires scalar coefficient {value}, got {x._c[0]!r}")


def exp_trunc(x: TruncatedTensor) -> TruncatedTensor:
    """Truncated tensor exponential of an element with zero scalar part."""
    _require_scalar(x, 0.0, "exp_trunc")
    if not np.any(x._c[1 + x.dim :]):
        return TruncatedTensor(x.dim, x.level, exp_vector_flat(x._c[1 : 1 + x.dim], x.level))
    # Horner: 1 + x(1 + x/2(1 + x/3(...)))
    unit = TruncatedTensor.unit(x.dim, x.level)._c
    acc = unit.copy()
    for k in range(x.level, 0, -1):
        acc = unit + batch_mul(x._c, acc, x.dim, x.level)[0] / k
    return TruncatedTensor(x.dim, x.level, acc)


def log_trunc(g: TruncatedTensor) -> TruncatedTensor:
    """Truncated logarithm of an element with unit scalar part."""
    _require_scalar(g, 1.0, "log_trunc")
    y = g._c.copy()
    y[0] = 0.0
    out = np.zeros_like(y)
    power = y.copy()
    for k in range(1, g.level + 1):
        out += ((-1) ** (k + 1) / k) * power
        power = batch_mul(power, y, g.dim, g.level)[0]
    return TruncatedTensor(g.dim, g.level, out)


def group_inverse(g: TruncatedTensor) -> TruncatedTensor:
    """Inverse via the Neumann series ``sum_k (1 - g)^k``."""
    _require_scalar(g, 1.0, "group_inverse")
    y = -g._c.copy()
    y[0] = 0.0
    out = TruncatedTensor.unit(g.dim, g.level)._c.copy()
    power = out.copy()
    for _ in range(g.level):
        power = batch_mul(power, y, g.dim, g.level)[0]
        out += power
    return TruncatedTensor(g.dim, g.level, out)


@lru_cache(maxsize=4096)
def shuffle_product(u: Word, v: Word) -> Dict[Word, int]:
    """Shuffle product of two words as a word -> multiplicity map."""
    u, v = tuple(u), tuple(v)
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: Dict[Word, int] = {}
    for w, m in shuffle_product(u[:-1], v).items():
        key = w + (u[-1],)
        out[key] = out.get(key, 0) + m
    for w, m in shuffle_product(u, v[:-1]).items():
        key = w + (v[-1],)
        out[key] = out.get(key, 0) + m
    return out


@lru_cache(maxsize=64)
def _shuffle_table(dim: int, level: int):
    """Index arrays encoding every shuffle identity up to ``level``.

    Returns ``(iu, iv, rows, cols, mult)`` such that the shuffle defect of a
    flat tensor ``c`` is ``c[iu]*c[iv] - segment_sum(mult * c[cols], rows)``.
    """
    iu, iv, rows, cols, mult = [], [], [], [], []
    r = 0
    for lu in range(level + 1):
        for lv in range(level + 1 - lu):
            for u in words(dim, lu):
                for v in words(dim, lv):
                    iu.append(word_index(u, dim))
                    iv.append(word_index(v, dim))
                    for w, m in shuffle_product(u, v).items():
                        rows.append(r)
                        cols.append(word_index(w, dim))
                        mult.append(m)
                    r += 1
    return (np.array(iu), np.array(iv), np.array(rows), np.array(cols), np.array(mult, dtype=float))


def shuffle_defect(g: TruncatedTensor) -> float:
    """Largest ``|<g,u><g,v> - <g, u sh v>|`` over words with ``|u|+|v| <= N``."""
    iu, iv, rows, cols, mult = _shuffle_table(g.dim, g.level)
    c = g._c
    rhs = np.bincount(rows, weights=mult * c[cols], minlength=iu.shape[0])
    return float(np.max(np.abs(c[iu] * c[iv] - rhs)))


def is_group_like(g: TruncatedTensor, tol: float = GROUP_LIKE_TOL) -> bool:
    return shuffle_defect(g) <= tol


def tensor_norm(x: TruncatedTensor, i: int) -> float:
    """Euclidean norm of the level-``i`` component."""
    return float(np.linalg.norm(x.level_coeffs(i)))


def level_norms_flat(C: np.ndarray, dim: int, level: int) -> np.ndarray:
    """Per-level Euclidean norms of rows of ``C``; shape ``(rows, level + 1)``."""
    C = np.atleast_2d(C)
    off = level_offsets(dim, level)
    return np.stack(
        [np.sqrt(np.sum(C[:, off[i] : off[i + 1]] ** 2, axis=1)) for i in range(level + 1)],
        axis=1,
    )


def homogeneous_norm(g: TruncatedTensor) -> float:
    """``max_{1<=i<=N} ||pi_i(g)||^(1/i)``; a gauge equivalent to the CC norm."""
    _require_scalar(g, 1.0, "homogeneous_norm")
    if g.level == 0:
        return 0.0
    norms = level_norms_flat(g._c, g.dim, g.level)[0, 1:]
    return float(np.max(norms ** (1.0 / np.arange(1, g.level + 1))))


def product_metric_dist(g: TruncatedTensor, h: TruncatedTensor) -> float:
    """``sum_n 2^-n min(1, ||pi_n(g - h)||)`` over levels ``1..N``."""
    g._check_compatible(h)
    if g.level == 0:
        return 0.0
    norms = level_norms_flat(g._c - h._c, g.dim, g.level)[0, 1:]
    weights = 0.5 ** np.arange(1, g.level + 1)
    return float(np.sum(weights * np.minimum(1.0, norms)))


# -- text format --------------------------------------------------------


def serialize_tensor(x: TruncatedTensor) -> str:
    """One ``letters:coefficient`` line per word; the empty word is ``()``."""
    lines = []
    for w, val in x.to_dict().items():
        key = ",".join(str(a) for a in w) if w else "()"
        lines.append(f"{key}:{val!r}")
    return "\n".join(lines) + "\n"


def parse_tensor(text: str, dim: int, level: int) -> TruncatedTensor:
    mapping = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        key, _, val = line.rpartition(":")
        if not key:
            raise ValueError(f"malformed tensor line: {raw!r}")
        word = () if key == "()" else tuple(int(a) for a in key.split(","))
        mapping[word] = float(val)
    return TruncatedTensor.from_dict(dim, level, mapping)


def infer_shape(text: str) -> Tuple[int, int]:
    """Recover (dim, level) from a serialised dense tensor."""
    dim, level = 1, 0
    for raw in text.splitlines():
        key = raw.strip().rpartition(":")[0]
        if key and key != "()":
            letters = [int(a) for a in key.split(",")]
            dim = max(dim, max(letters))
            level = max(level, len(letters))
    return dim, level
