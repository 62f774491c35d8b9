"""Timing harness: how local and global computations scale with l at fixed p."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .globalphi import check_walk_preconditions, modular_poly_mod_p
from .localphi import local_modular_poly
from .ssinit import supersingular_j

DEFAULT_ELLS = (11, 23, 47)
DEFAULT_P = 587  # S(587) = 50, enough for l = 47
LOCAL_SLOPE_LIMIT = 3.8
FULL_SLOPE_LIMIT = 4.5


@dataclass(frozen=True)
class BenchRow:
    kind: str  # "local" or "full"
    ell: int
    p: int
    n_used: int
    reps: int
    seconds: float  # median over reps
    slope: float | None = None


def fit_slope(ells, seconds) -> float:
    """Least-squares slope of log(time) against log(l)."""
    x = np.log(np.asarray(ells, dtype=float))
    y = np.log(np.asarray(seconds, dtype=float))
    return float(np.polyfit(x, y, 1)[0])


def _median_time(fn, reps: int) -> tuple[float, object]:
    times, out = [], None
    for _ in range(reps):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def run_bench(
    ells=DEFAULT_ELLS,
    p: int = DEFAULT_P,
    reps: int = 1,
    seed: int = 0,
    *,
    full: bool = True,
    uniform_n: bool = False,
    progress=None,
) -> list[BenchRow]:
    """Median wall times of local_modular_poly and (optionally) the whole pipeline.

    ``uniform_n`` forces the extension degree 6(l-1), which always contains
    E[l] for supersingular E; by default the degree dictated by the trace is
    used.
    """
    ells = sorted(ells)
    for ell in ells:
        check_walk_preconditions(p, ell)
    j0 = supersingular_j(p, np.random.default_rng(seed))
    rows = []
    local_times, full_times = [], []
    for ell in ells:
        n = 6 * (ell - 1) if uniform_n else None
        rng = np.random.default_rng([seed, ell])
        secs, loc = _median_time(lambda: local_modular_poly(j0, p, ell, rng, n=n), reps)
        local_times.append(secs)
        rows.append(BenchRow("local", ell, p, loc.n, reps, secs))
        if progress:
            progress(rows[-1])
    if full:
        for ell in ells:
            rng = np.random.default_rng([seed, ell, 1])
            secs, _ = _median_time(lambda: modular_poly_mod_p(p, ell, rng), reps)
            full_times.append(secs)
            rows.append(BenchRow("full", ell, p, 0, reps, secs))
            if progress:
                progress(rows[-1])
    out = []
    local_slope = fit_slope(ells, local_times) if len(ells) > 1 else None
    full_slope = fit_slope(ells, full_times) if full and len(ells) > 1 else None
    for r in rows:
        slope = local_slope if r.kind == "local" else full_slope
        out.append(BenchRow(r.kind, r.ell, r.p, r.n_used, r.reps, r.seconds, slope))
    return out


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "ell", "p", "n_used", "reps", "seconds", "slope"])
    for r in rows:
        slope = "" if r.slope is None else f"{r.slope:.4f}"
        w.writerow([r.kind, r.ell, r.p, r.n_used, r.reps, f"{r.seconds:.6f}", slope])
    return buf.getvalue()
