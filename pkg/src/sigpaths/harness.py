"""Counterexample families and numerical checks of the quantitative bounds.

Each ``verify_*`` function builds a concrete family of piecewise linear
paths, evaluates the relevant quantities exactly (or as certified lower
bounds), and returns a :class:`~sigpaths.report.VerificationReport`.
"""
from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from .paths import (
    PiecewiseLinearPath,
    concat,
    constant_speed_reparam,
    is_irreducible,
    line,
    reverse,
    tree_reduce,
)
from .report import Bound, VerificationReport
from .signature import signature
from .tensor_algebra import group_inverse, shuffle_defect
from .unparam import canonicalize, dist_d, dist_sig, dist_star
from .variation import (
    control,
    p_var_distance,
    p_variation,
    p_variation_interval,
    p_variation_lift,
)

EXACT_TOL = 1e-12
BOUND_TOL = 1e-9
SIG_CONVERGED = 1e-3
TOL_ENV = "SIGPATHS_TOL"


def default_tol() -> float:
    """Bound-check tolerance, overridable through ``$SIGPATHS_TOL``."""
    raw = os.environ.get(TOL_ENV)
    return float(raw) if raw else BOUND_TOL


# -- random corpora -----------------------------------------------------


def random_path(rng: np.random.Generator, dim: int = 2, n_segments: int = 5,
                constant_speed: bool = False) -> PiecewiseLinearPath:
    """Gaussian increments with random positive durations on ``[0, 1]``."""
    inc = rng.normal(size=(n_segments, dim))
    if constant_speed:
        return PiecewiseLinearPath.from_increments(inc)
    dur = rng.uniform(0.2, 1.0, size=n_segments)
    times = np.concatenate([[0.0], np.cumsum(dur) / dur.sum()])
    times[-1] = 1.0
    return PiecewiseLinearPath(times, np.vstack([np.zeros(dim), np.cumsum(inc, axis=0)]))


def random_unit_vectors(rng: np.random.Generator, m: int, dim: int = 2) -> np.ndarray:
    v = rng.normal(size=(m, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# -- families -----------------------------------------------------------


def _unit(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float).reshape(-1)
    if abs(np.linalg.norm(v) - 1.0) > 1e-12:
        raise ValueError(f"{name} must be a unit vector")
    return v


def _collinear(u: np.ndarray, v: np.ndarray, tol: float = 1e-12) -> bool:
    return abs(abs(np.dot(u, v)) - np.linalg.norm(u) * np.linalg.norm(v)) <= tol * np.linalg.norm(u) * np.linalg.norm(v)


def _check_last_piece(X: PiecewiseLinearPath, *dirs: np.ndarray) -> None:
    V = X.increments
    V = V[np.linalg.norm(V, axis=1) > 0]
    if len(V) == 0:
        return
    for d in dirs:
        if _collinear(V[-1], d):
            raise ValueError("direction is collinear with the last segment of X")


def family_Y(X: PiecewiseLinearPath, n: float, eps: float, v1) -> PiecewiseLinearPath:
    """``X * line((n+eps) v1) * line(-(n+eps) v1)`` at constant speed; tree-equivalent to X."""
    v1 = _unit(v1, "v1")
    _check_last_piece(X, v1)
    a = (n + eps) * v1
    return PiecewiseLinearPath.from_increments(list(X.increments) + [a, -a], dim=X.dim)


def family_Z(X: PiecewiseLinearPath, n: float, eps: float, v1, v2) -> PiecewiseLinearPath:
    """``X`` followed by the thin rectangle ``eps v2, n v1, -eps v2, -n v1`` at constant speed."""
    v1, v2 = _unit(v1, "v1"), _unit(v2, "v2")
    if abs(np.dot(v1, v2)) > 1e-12:
        raise ValueError("v1 and v2 must be orthogonal")
    _check_last_piece(X, v1, v2)
    segs = [eps * v2, n * v1, -eps * v2, -n * v1]
    return PiecewiseLinearPath.from_increments(list(X.increments) + segs, dim=X.dim)


def family_X_eps(eps: float, v1, v2, variant: str = "printed") -> PiecewiseLinearPath:
    """Four-segment path ``eps v2, (1/2-eps) v1, -eps w, -(1/2-eps) v1`` at constant speed.

    ``variant="printed"`` takes ``w = v1``; ``variant="closed"`` takes
    ``w = v2``, which closes the loop into a thin rectangle that degenerates
    to the out-and-back path ``line(v1/2) * line(-v1/2)`` as ``eps -> 0``.
    """
    if not 0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 1/2), got {eps}")
    v1, v2 = _unit(v1, "v1"), _unit(v2, "v2")
    if _collinear(v1, v2):
        raise ValueError("v1 and v2 must not be collinear")
    if variant == "printed":
        w = v1
    elif variant == "closed":
        w = v2
    else:
        raise ValueError(f"unknown variant {variant!r}")
    h = 0.5 - eps
    return PiecewiseLinearPath.from_increments([eps * v2, h * v1, -eps * w, -h * v1])


def family_Y_tree(n: float, v1) -> PiecewiseLinearPath:
    """Tree-like out-and-back path ``line(n v1) * line(-n v1)``."""
    v1 = np.asarray(v1, dtype=float)
    return PiecewiseLinearPath.from_increments([n * v1, -n * v1])


def family_Z_quotient(n: float, eps: float, v1, v2) -> PiecewiseLinearPath:
    """``eps v2, (n-eps) v1, -eps v2, -(n-eps) v1`` at constant speed."""
    if not 0 < eps < n:
        raise ValueError("need 0 < eps < n")
    v1, v2 = _unit(v1, "v1"), _unit(v2, "v2")
    m = n - eps
    return PiecewiseLinearPath.from_increments([eps * v2, m * v1, -eps * v2, -m * v1])


def example_path(eps: float) -> PiecewiseLinearPath:
    """``line((1+eps) e1) * line(-2 eps e1) * line((1+eps) e1)`` in R^2."""
    e1 = np.array([1.0, 0.0])
    return PiecewiseLinearPath.from_increments([(1 + eps) * e1, -2 * eps * e1, (1 + eps) * e1])


def breakpoint_subset_max(X: PiecewiseLinearPath, p: float) -> float:
    """p-variation by enumerating every subset of interior breakpoints."""
    pts = X.points
    n = len(pts) - 1
    best = 0.0
    for r in range(n):
        for inner in itertools.combinations(range(1, n), r):
            idx = (0,) + inner + (n,)
            s = sum(np.linalg.norm(pts[b] - pts[a]) ** p for a, b in zip(idx, idx[1:]))
            best = max(best, s)
    return best ** (1.0 / p)


# -- checks -------------------------------------------------------------


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.runtime_ms = (time.perf_counter() - start) * 1e3
    return report


def verify_example_pvar(eps: float = 0.1, p: float = 1.5, tol: float = EXACT_TOL) -> VerificationReport:
    """p-variation of the non-reduced example path and its reduction."""
    start = time.perf_counter()
    X = example_path(eps)
    value = p_variation(X, p).value
    brute = breakpoint_subset_max(X, p)
    reduced = tree_reduce(X)
    target = line([2.0, 0.0])
    reduced_ok = reduced.segment_equal(target, atol=tol)
    expected = 2.0 + 4.0 * eps if p == 1 else 2.0
    bound = Bound("||gamma||_p-var", "==", expected,
                  "example: out-back-out path in the class of line(2 e1)")
    passed = bound.holds(value, tol) and bound.holds(brute, tol) and reduced_ok
    rep = VerificationReport(
        "example_pvar", {"eps": eps, "p": p},
        {"pvar_dp": value, "pvar_bruteforce": brute,
         "reduced_segments": float(reduced.n_segments),
         "reduced_endpoint_x": float(reduced.endpoint[0]),
         "three_piece": (2 * (1 + eps) ** p + (2 * eps) ** p) ** (1.0 / p)},
        bound, passed, tol,
    )
    if rep.computed_values["three_piece"] > 2.0 and p != 1:
        rep.notes.append("the partition through both turning points beats the chord: "
                         "2 (1+eps)^p + (2 eps)^p > 2^p")
    if not reduced_ok:
        rep.flags.append("tree_reduce did not return line(2 e1)")
    if p != 1 and not 1 < p < 2:
        rep.notes.append("the equality is stated for p in (1, 2)")
    return _finish(rep, start)


def _default_base(dim: int = 2) -> PiecewiseLinearPath:
    return PiecewiseLinearPath.from_increments([[0.3, 0.4], [0.5, -0.2]])


def verify_unbounded_balls(n_max: int = 8, eps: float = 0.05, p: float = 1.5,
                           X: Optional[PiecewiseLinearPath] = None, level: int = 4,
                           tol: Optional[float] = None) -> VerificationReport:
    """Tree-equivalent ``Y`` and tree-reduced ``Z`` stay ``4 eps`` apart while ``||Z||`` explodes."""
    start = time.perf_counter()
    tol = default_tol() if tol is None else tol
    X = _default_base() if X is None else X
    v1, v2 = np.eye(X.dim)[0], np.eye(X.dim)[1]
    pvar_X = p_variation(X, p).value
    sig_X = signature(X, level)
    rows, ok = [], True
    worst_dist, worst_margin, worst_sig = 0.0, math.inf, 0.0
    for n in range(1, n_max + 1):
        Y, Z = family_Y(X, n, eps, v1), family_Z(X, n, eps, v1, v2)
        d1 = p_var_distance(Y, Z, 1.0, 1).value
        pz = p_variation(Z, p).value
        lower = pvar_X**p + 2 * eps**p + 2 * float(n) ** p
        sig_gap = float(np.max(np.abs(signature(Y, level).coeffs - sig_X.coeffs)))
        ok &= d1 <= 4 * eps + tol
        ok &= pz**p >= lower - tol
        ok &= is_irreducible(Z) if is_irreducible(X) else True
        # coefficients grow like (n + eps)^k, so the round-off does too
        ok &= sig_gap <= 1e-10 * max(1.0, (n + eps) ** level)
        worst_dist = max(worst_dist, d1)
        worst_margin = min(worst_margin, pz**p - lower)
        worst_sig = max(worst_sig, sig_gap)
        rows.append({"n": n, "d_1var_YZ": d1, "pvar_Z": pz, "pvar_Z_pow_p": pz**p, "lower_bound": lower})
    pz_values = [r["pvar_Z"] for r in rows]
    rep = VerificationReport(
        "unbounded_balls", {"n_max": n_max, "eps": eps, "p": p, "N": level},
        {"max_d_1var_YZ": worst_dist, "min_margin_pvar_pow_p": worst_margin,
         "max_sig_gap_Y_vs_X": worst_sig},
        Bound("d_1var(Y_n,eps, Z_n,eps)", "<=", 4 * eps, "unbounded-balls construction"),
        bool(ok), tol, sweep=rows,
    )
    rep.notes.append("also checked: ||Z||^p >= ||X||^p + 2 eps^p + 2 n^p and S(Y) = S(X)")
    if any(b < a for a, b in zip(pz_values, pz_values[1:])):
        rep.flags.append("||Z_n,eps||_p-var not monotone in n")
    return _finish(rep, start)


def verify_dstar_separation(p: float = 1.5, m: int = 10, seed: int = 0, dim: int = 2,
                            tol: Optional[float] = None) -> VerificationReport:
    """Distinct unit straight lines are at ``d_star^p >= 2`` from one another."""
    start = time.perf_counter()
    tol = default_tol() if tol is None else tol
    rng = np.random.default_rng(seed)
    dirs = random_unit_vectors(rng, m, dim)
    classes = [canonicalize(line(v), p, 1) for v in dirs]
    values = [dist_star(classes[i], classes[j], depth=1) ** p
              for i in range(m) for j in range(i + 1, m)]
    self_dist = dist_star(classes[0], classes[0], depth=1)
    min_val = min(values) if values else math.inf
    bound = Bound("min d_star^p over distinct pairs", ">=", 2.0,
                  "non-separability of d_star via unit straight lines")
    rep = VerificationReport(
        "dstar_separation", {"p": p, "m": m, "seed": seed, "dim": dim},
        {"min_dstar_pow_p": min_val, "max_dstar_pow_p": max(values) if values else 0.0,
         "dstar_identical": self_dist},
        bound, bound.holds(min_val, tol) and self_dist <= tol, tol,
    )
    return _finish(rep, start)


def verify_cauchy_gap(eps_sequence: Optional[Sequence[float]] = None, p: float = 1.5, level: int = 4,
                      refine: int = 2, tol: float = 1e-6) -> VerificationReport:
    """Signature distance to the trivial class vanishes while ``dist_d`` stays large.

    Runs both variants of the four-segment family.  The bound is enforced on
    the closed variant; the printed variant is reported and only required
    to produce finite values.
    """
    start = time.perf_counter()
    eps_sequence = [2.0**-j for j in range(1, 11)] if eps_sequence is None else list(eps_sequence)
    v1, v2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    o = canonicalize(PiecewiseLinearPath.constant(2), p, level)
    target = 2.0 ** (1.0 / p - 1.0)
    rows, invalid = [], []
    for eps in eps_sequence:
        row = {"eps": eps}
        for variant in ("closed", "printed"):
            try:
                A = canonicalize(family_X_eps(eps, v1, v2, variant), p, level)
            except ValueError:
                invalid.append((variant, eps))
                row.update({f"sig_{variant}": math.nan, f"d_{variant}": math.nan})
                if variant == "closed":
                    row["lift_closed"] = math.nan
                continue
            row[f"sig_{variant}"] = dist_sig(A, o)
            row[f"d_{variant}"] = dist_d(A, o)
            if variant == "closed":
                row["lift_closed"] = p_variation_lift(A.canonical, p, level, refine).value
        rows.append(row)

    closed_d = np.array([r["d_closed"] for r in rows])
    closed_sig = np.array([r["sig_closed"] for r in rows])
    gap_ok = bool(np.all(closed_d >= target - tol))  # NaN compares False
    smallest = int(np.argmin(eps_sequence))
    sig_ok = bool(closed_sig[smallest] < SIG_CONVERGED)
    printed = np.array([[r["sig_printed"], r["d_printed"]] for r in rows
                        if ("printed", r["eps"]) not in invalid])
    printed_ok = bool(np.all(np.isfinite(printed)))
    deficit = target - closed_d
    rep = VerificationReport(
        "cauchy_gap", {"p": p, "N": level, "refine": refine, "n_eps": len(eps_sequence)},
        {"min_d_closed": float(np.nanmin(closed_d)), "target": target,
         "sig_closed_at_smallest_eps": float(closed_sig[smallest]),
         "max_deficit": float(np.nanmax(deficit))},
        Bound("dist_d([X_eps], [o]) for every eps", ">=", target,
              "non-completeness of d along the four-segment family"),
        gap_ok and sig_ok and printed_ok, tol, sweep=rows,
    )
    for variant, eps in invalid:
        rep.notes.append(f"{variant} variant undefined at eps={eps!r} (needs 0 < eps < 1/2)")
    finite = np.isfinite(deficit) & (deficit > 0)
    if np.any(finite):
        ratios = deficit[finite] / np.asarray(eps_sequence)[finite]
        rep.notes.append(
            f"dist_d approaches the bound from below; deficit/eps in [{ratios.min():.4g}, {ratios.max():.4g}]"
        )
    sig_finite = closed_sig[np.isfinite(closed_sig)]
    order = np.argsort(-np.asarray(eps_sequence)[np.isfinite(closed_sig)])
    if np.any(np.diff(sig_finite[order]) > 0):
        rep.flags.append("dist_sig not monotone in eps for the closed variant")
    lift = np.array([r["lift_closed"] for r in rows])
    if np.any(lift < target - tol):
        rep.flags.append("homogeneous-gauge lifted value below the bound for some eps")
    if not sig_ok:
        rep.flags.append("dist_sig did not fall below the convergence threshold")
    return _finish(rep, start)


def verify_quotient_witness(n_max: int = 8, deltas: Optional[Sequence[float]] = None,
                            p: float = 1.5, iterations: int = 60) -> VerificationReport:
    """Tree-reduced paths within ``delta_n`` of tree-like ones, with exploding p-variation."""
    start = time.perf_counter()
    deltas = [2.0**-n for n in range(1, n_max + 1)] if deltas is None else list(deltas)
    v1, v2 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
    rows, ok = [], True
    for n, delta in zip(range(1, n_max + 1), deltas):
        Yn = family_Y_tree(n, v1)

        def dist(e: float) -> float:
            return p_var_distance(family_Z_quotient(n, e, v1, v2), Yn, 1.0, 1).value

        lo, hi = delta / 4.0, min(float(delta), n / 2.0)
        if dist(lo) >= delta:
            ok = False
        elif dist(hi) < delta:
            lo = hi
        else:
            for _ in range(iterations):
                mid = 0.5 * (lo + hi)
                lo, hi = (mid, hi) if dist(mid) < delta else (lo, mid)
        Z = family_Z_quotient(n, lo, v1, v2)
        d = dist(lo)
        ok &= d < delta and is_irreducible(Z)
        rows.append({"n": n, "eps_n": lo, "distance": d, "delta_n": delta,
                     "pvar_Z": p_variation(Z, p).value})
    pz = [r["pvar_Z"] for r in rows]
    increasing = all(b > a for a, b in zip(pz, pz[1:]))
    rep = VerificationReport(
        "quotient_witness", {"n_max": n_max, "p": p},
        {"max_distance_over_delta": max(r["distance"] / r["delta_n"] for r in rows),
         "pvar_Z_first": pz[0], "pvar_Z_last": pz[-1]},
        Bound("d_1var(Z_n,eps_n, Y_n) / delta_n", "<=", 1.0, "non-metrisability of the quotient topology"),
        bool(ok and increasing), 0.0, sweep=rows,
    )
    if not increasing:
        rep.flags.append("||Z_n,eps_n||_p-var not increasing in n")
    return _finish(rep, start)


def verify_constant_speed_closed(sample_paths: Optional[Sequence[PiecewiseLinearPath]] = None,
                                 t_grid: Optional[Sequence[float]] = None, seed: int = 0,
                                 n_paths: int = 50, tol: Optional[float] = None) -> VerificationReport:
    """After reparameterisation, 1-variation on ``[0, t]`` equals ``t / T`` of the total."""
    start = time.perf_counter()
    tol = default_tol() if tol is None else tol
    rng = np.random.default_rng(seed)
    if sample_paths is None:
        sample_paths = [random_path(rng, 2, 10) for _ in range(n_paths)]
    grid = np.linspace(0.0, 1.0, 100) if t_grid is None else np.asarray(t_grid, dtype=float)
    worst, worst_before = 0.0, 0.0
    for X in sample_paths:
        for label, path in (("before", X), ("after", constant_speed_reparam(X))):
            if path.is_constant:
                continue
            total = path.length()
            ts = grid * path.horizon
            dev = max(abs(p_variation_interval(path, 1.0, 0.0, t).value - t / path.horizon * total) for t in ts)
            if label == "after":
                worst = max(worst, dev)
            else:
                worst_before = max(worst_before, dev)
    bound = Bound("max |(1-var on [0,t]) - (t/T) total|", "<=", 0.0,
                  "constant-speed (Hoelder-control) parameterisation")
    rep = VerificationReport(
        "constant_speed_closed", {"n_paths": len(sample_paths), "grid": len(grid), "seed": seed},
        {"max_deviation_after": worst, "max_deviation_before": worst_before},
        bound, bound.holds(worst, tol), tol,
    )
    return _finish(rep, start)


# -- algebraic checks over random corpora -------------------------------


def verify_chen(n_pairs: int = 200, seed: int = 0, tol: float = EXACT_TOL) -> VerificationReport:
    """Chen's identity per coefficient, plus reversal as group inverse.

    The reversal error is measured relative to the largest coefficient of
    ``S(X)``, since the inverse is evaluated by a series with cancellation.
    """
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst_chen = worst_rev = 0.0
    for _ in range(n_pairs):
        d, N = int(rng.integers(1, 4)), int(rng.integers(1, 6))
        X = random_path(rng, d, int(rng.integers(1, 7)))
        Y = random_path(rng, d, int(rng.integers(1, 7)))
        lhs = signature(concat(X, Y), N)
        rhs = signature(X, N) @ signature(Y, N)
        worst_chen = max(worst_chen, float(np.max(np.abs(lhs.coeffs - rhs.coeffs))))
        SX = signature(X, N)
        rev = signature(reverse(X), N)
        scale = max(1.0, float(np.max(np.abs(SX.coeffs))))
        worst_rev = max(worst_rev, float(np.max(np.abs(rev.coeffs - group_inverse(SX).coeffs))) / scale)
    bound = Bound("max |S(X*Y) - S(X)S(Y)| per coefficient", "<=", 0.0, "Chen identity")
    rep = VerificationReport("chen", {"pairs": n_pairs, "seed": seed},
                             {"max_coeff_error": worst_chen, "max_reversal_rel_error": worst_rev},
                             bound, bound.holds(worst_chen, tol) and worst_rev <= tol, tol)
    return _finish(rep, start)


def verify_treelike(ns: Iterable[float] = (1, 10, 100), level: int = 6, dim: int = 2,
                    tol: float = EXACT_TOL) -> VerificationReport:
    start = time.perf_counter()
    v = np.eye(dim)[0]
    worst = 0.0
    for n in ns:
        S = signature(family_Y_tree(n, v), level)
        unit = np.zeros_like(S.coeffs)
        unit[0] = 1.0
        worst = max(worst, float(np.max(np.abs(S.coeffs - unit))))
    bound = Bound("max |S(line(nv) * line(-nv)) - 1|", "<=", 0.0, "tree-like paths have trivial signature")
    rep = VerificationReport("treelike", {"ns": list(ns), "N": level}, {"max_deviation": worst},
                             bound, bound.holds(worst, tol), tol)
    return _finish(rep, start)


def verify_group_like(n_paths: int = 200, level: int = 4, seed: int = 0,
                      tol: float = 1e-10) -> VerificationReport:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_paths):
        X = random_path(rng, int(rng.integers(1, 4)), int(rng.integers(1, 7)))
        worst = max(worst, shuffle_defect(signature(X, level)))
    bound = Bound("max shuffle defect", "<=", 0.0, "signatures are group-like")
    rep = VerificationReport("group_like", {"paths": n_paths, "N": level, "seed": seed},
                             {"max_shuffle_defect": worst}, bound, bound.holds(worst, tol), tol)
    return _finish(rep, start)


def verify_monotonicity(n_pairs: int = 100, seed: int = 0, level: int = 2, refine: int = 1,
                        tol: Optional[float] = None) -> VerificationReport:
    """``||X||_q <= ||X||_p`` and ``d_q <= d_p`` for ``q >= p``."""
    start = time.perf_counter()
    tol = default_tol() if tol is None else tol
    rng = np.random.default_rng(seed)
    worst = -math.inf
    for _ in range(n_pairs):
        X, Y = random_path(rng, 2, int(rng.integers(1, 6))), random_path(rng, 2, int(rng.integers(1, 6)))
        for p, q in ((1.0, 1.5), (1.5, 2.5)):
            worst = max(worst, p_variation(X, q).value - p_variation(X, p).value)
            for N in (1, level):
                worst = max(worst, p_var_distance(X, Y, q, N, refine).value
                            - p_var_distance(X, Y, p, N, refine).value)
    bound = Bound("max (q-quantity - p-quantity)", "<=", 0.0, "monotonicity of p-variation in p")
    rep = VerificationReport("monotonicity", {"pairs": n_pairs, "seed": seed, "N": level},
                             {"max_violation": worst}, bound, bound.holds(worst, tol), tol)
    return _finish(rep, start)


def verify_additivity(n: int = 100, p: float = 1.5, seed: int = 0,
                      tol: Optional[float] = None) -> VerificationReport:
    """Sub-additivity under concatenation and super-additivity of the control."""
    start = time.perf_counter()
    tol = default_tol() if tol is None else tol
    rng = np.random.default_rng(seed)
    worst_sub, worst_super = -math.inf, -math.inf
    for _ in range(n):
        X, Y = random_path(rng, 2, int(rng.integers(1, 6))), random_path(rng, 2, int(rng.integers(1, 6)))
        lhs = p_variation(concat(X, Y), p).value
        worst_sub = max(worst_sub, lhs - p_variation(X, p).value - p_variation(Y, p).value)
        s, u, t = np.sort(rng.uniform(0, 1, 3))
        worst_super = max(worst_super, control(X, p, s, u) + control(X, p, u, t) - control(X, p, s, t))
    worst = max(worst_sub, worst_super)
    bound = Bound("max violation", "<=", 0.0, "sub-additivity of p-variation, super-additivity of controls")
    rep = VerificationReport("additivity", {"n": n, "p": p, "seed": seed},
                             {"max_subadditivity_violation": worst_sub,
                              "max_superadditivity_violation": worst_super},
                             bound, bound.holds(worst, tol), tol)
    return _finish(rep, start)


CHECKS: Dict[str, Callable[..., VerificationReport]] = {
    "additivity": verify_additivity,
    "cauchy_gap": verify_cauchy_gap,
    "chen": verify_chen,
    "constant_speed_closed": verify_constant_speed_closed,
    "dstar_separation": verify_dstar_separation,
    "example_pvar": verify_example_pvar,
    "group_like": verify_group_like,
    "monotonicity": verify_monotonicity,
    "quotient_witness": verify_quotient_witness,
    "treelike": verify_treelike,
    "unbounded_balls": verify_unbounded_balls,
}

# which shared CLI options each check understands
_ACCEPTS = {
    "additivity": {"p", "seed"},
    "cauchy_gap": {"p", "level", "refine"},
    "chen": {"seed"},
    "constant_speed_closed": {"seed"},
    "dstar_separation": {"p", "seed"},
    "example_pvar": {"p"},
    "group_like": {"seed"},
    "monotonicity": {"seed", "refine"},
    "quotient_witness": {"p"},
    "treelike": set(),
    "unbounded_balls": {"p", "level"},
}


def run_check(name: str, **options) -> VerificationReport:
    """Run one registered check, forwarding only the options it accepts."""
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}; choose from {sorted(CHECKS)}")
    kwargs = {k: v for k, v in options.items() if k in _ACCEPTS[name] and v is not None}
    return CHECKS[name](**kwargs)


def run_all(names: Optional[Sequence[str]] = None, jobs: int = 1, **options) -> List[VerificationReport]:
    """Run checks (optionally on a thread pool); reports come back sorted by name."""
    names = sorted(CHECKS) if names is None else sorted(names)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(lambda n: run_check(n, **options), names))
    else:
        reports = [run_check(n, **options) for n in names]
    return sorted(reports, key=lambda r: r.check_name)
