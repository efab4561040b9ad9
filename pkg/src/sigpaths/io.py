"""Path files: JSON ``{"dim", "horizon", "times", "points"}`` or CSV ``t,x1,...,xd``.

Floats are written with ``repr`` so a write/read cycle is bit-exact.
"""
from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import List, Union

import numpy as np

from .paths import PiecewiseLinearPath

PathLike = Union[str, Path]


class PathFormatError(ValueError):
    """Malformed path file."""


def path_to_dict(X: PiecewiseLinearPath) -> dict:
    return {
        "dim": X.dim,
        "horizon": X.horizon,
        "times": [float(t) for t in X.times],
        "points": [[float(c) for c in row] for row in X.points],
    }


def path_from_dict(data: dict) -> PiecewiseLinearPath:
    try:
        dim = int(data["dim"])
        times = np.asarray(data["times"], dtype=float)
        points = np.asarray(data["points"], dtype=float).reshape(len(times), -1)
        horizon = data.get("horizon")
    except (KeyError, TypeError, ValueError) as exc:
        raise PathFormatError(f"bad path record: {exc}") from exc
    if points.shape[1] != dim:
        raise PathFormatError(f"points have dimension {points.shape[1]}, header says {dim}")
    if points.shape[0] and np.any(points[0] != 0):
        points = points - points[0]
    try:
        return PiecewiseLinearPath(times, points, horizon=horizon if len(times) == 1 else None)
    except ValueError as exc:
        raise PathFormatError(str(exc)) from exc


def dumps_json(X: PiecewiseLinearPath) -> str:
    return json.dumps(path_to_dict(X)) + "\n"


def dumps_csv(X: PiecewiseLinearPath) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t"] + [f"x{k + 1}" for k in range(X.dim)])
    for t, row in zip(X.times, X.points):
        w.writerow([repr(float(t))] + [repr(float(c)) for c in row])
    return buf.getvalue()


def loads_csv(text: str, horizon: float = 1.0) -> PiecewiseLinearPath:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    if not rows or rows[0][0].strip() != "t":
        raise PathFormatError("CSV path must start with a header 't,x1,...,xd'")
    dim = len(rows[0]) - 1
    try:
        data = np.array([[float(c) for c in r] for r in rows[1:]], dtype=float)
    except ValueError as exc:
        raise PathFormatError(f"non-numeric CSV entry: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != dim + 1 or data.shape[0] == 0:
        raise PathFormatError("ragged or empty CSV path")
    return path_from_dict({"dim": dim, "horizon": horizon, "times": data[:, 0], "points": data[:, 1:]})


def read_path(path: PathLike) -> PiecewiseLinearPath:
    """Read a path file; ``.csv`` is parsed as CSV, anything else as JSON."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise PathFormatError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".csv":
        return loads_csv(text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PathFormatError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PathFormatError(f"{path}: expected a JSON object")
    return path_from_dict(data)


def write_path(X: PiecewiseLinearPath, path: PathLike) -> None:
    path = Path(path)
    path.write_text(dumps_csv(X) if path.suffix.lower() == ".csv" else dumps_json(X))


def read_corpus(path: PathLike) -> List[Path]:
    """A corpus file lists path files, one per line, relative to the corpus file."""
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise PathFormatError(f"cannot read {path}: {exc}") from exc
    return [path.parent / ln.strip() for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]
