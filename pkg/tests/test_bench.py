import numpy as np
import pytest

from modpoly.bench import fit_slope, rows_to_csv, run_bench
from modpoly.errors import PreconditionError


def test_fit_slope_exact():
    ells = [3, 5, 11]
    assert fit_slope(ells, [e**3 for e in ells]) == pytest.approx(3.0)


def test_small_local_bench(tmp_path):
    rows = run_bench([5, 7, 11], 587, reps=1, seed=1, full=False)
    assert [r.ell for r in rows] == [5, 7, 11]
    assert all(r.kind == "local" and r.seconds > 0 and r.n_used == r.ell - 1 for r in rows)
    assert np.isfinite(rows[0].slope)
    text = rows_to_csv(rows)
    assert text.splitlines()[0] == "kind,ell,p,n_used,reps,seconds,slope"


def test_uniform_n_flag():
    rows = run_bench([3], 587, full=False, uniform_n=True)
    assert rows[0].n_used == 12 and rows[0].slope is None


def test_bench_precondition():
    with pytest.raises(PreconditionError):
        run_bench([47], 97, full=False)
