"""Loop and vectorized grid kernels must agree bit for bit, tie-break included."""

import os
import subprocess
import sys

import numpy as np

from swiptdas import _kernels


def _random_case(rng, na=9, npts=11):
    z1 = rng.uniform(0.0, 3.0, size=(na, npts))
    z2 = rng.uniform(0.0, 3.0, size=(na, npts))
    r2 = rng.uniform(0.0, 3.0, size=(na, npts))
    efeas1 = rng.uniform(size=na) < 0.8
    efeas2 = rng.uniform(size=na) < 0.8
    return z1, z2, r2, efeas1, efeas2


def test_maxsum_kernels_agree():
    rng = np.random.default_rng(101)
    for _ in range(50):
        z1, z2, r2, e1, e2 = _random_case(rng)
        r_min = rng.uniform(0.0, 2.0)
        loops = _kernels._maxsum_best_loops(z1, z2, r2, e1, e2, r_min)
        vec = _kernels._maxsum_best_numpy(z1, z2, r2, e1, e2, r_min)
        assert loops == vec


def test_maxmin_kernels_agree():
    rng = np.random.default_rng(102)
    for _ in range(50):
        z1, z2, r2, e1, e2 = _random_case(rng)
        r_sic = rng.uniform(0.0, 2.0)
        loops = _kernels._maxmin_best_loops(z1, z2, r2, e1, e2, r_sic)
        vec = _kernels._maxmin_best_numpy(z1, z2, r2, e1, e2, r_sic)
        assert loops == vec


def test_dispatched_kernels_match_reference():
    # whatever backend was selected at import time, it must equal the plain loops
    rng = np.random.default_rng(103)
    for _ in range(10):
        z1, z2, r2, e1, e2 = _random_case(rng, na=7, npts=8)
        assert _kernels.maxsum_best(z1, z2, r2, e1, e2, 0.5) == (
            _kernels._maxsum_best_loops(z1, z2, r2, e1, e2, 0.5)
        )
        assert _kernels.maxmin_best(z1, z2, r2, e1, e2, 0.25) == (
            _kernels._maxmin_best_loops(z1, z2, r2, e1, e2, 0.25)
        )


def test_tiebreak_prefers_large_splits_then_small_power():
    # constant objective surface: every feasible point ties
    na, npts = 5, 6
    ones = np.ones((na, npts))
    efeas = np.ones(na, dtype=bool)
    for fn in (_kernels._maxsum_best_loops, _kernels._maxsum_best_numpy):
        best, i1, i2, ip = fn(ones, ones, ones, efeas, efeas, 0.5)
        assert best == 2.0
        assert (i1, i2, ip) == (na - 1, na - 1, 0)
    for fn in (_kernels._maxmin_best_loops, _kernels._maxmin_best_numpy):
        best, i1, i2, ip = fn(ones, ones, ones, efeas, efeas, 0.5)
        assert best == 1.0
        assert (i1, i2, ip) == (na - 1, na - 1, 0)


def test_tiebreak_respects_energy_masks():
    na, npts = 5, 6
    ones = np.ones((na, npts))
    e1 = np.array([True, True, False, True, False])
    e2 = np.array([False, True, True, False, False])
    for fn in (_kernels._maxsum_best_loops, _kernels._maxsum_best_numpy):
        _, i1, i2, ip = fn(ones, ones, ones, e1, e2, 0.0)
        assert (i1, i2, ip) == (3, 2, 0)


def test_all_infeasible_sentinel():
    na, npts = 4, 5
    zeros = np.zeros((na, npts))
    efeas = np.ones(na, dtype=bool)
    none = np.zeros(na, dtype=bool)
    for fn in (_kernels._maxsum_best_loops, _kernels._maxsum_best_numpy):
        assert fn(zeros, zeros, zeros, efeas, efeas, 1.0) == (-np.inf, -1, -1, -1)
        assert fn(zeros, zeros, zeros, none, efeas, 0.0) == (-np.inf, -1, -1, -1)
    for fn in (_kernels._maxmin_best_loops, _kernels._maxmin_best_numpy):
        assert fn(zeros, zeros, zeros, efeas, efeas, 1.0) == (-np.inf, -1, -1, -1)
        assert fn(zeros, zeros, zeros, efeas, none, 0.0) == (-np.inf, -1, -1, -1)


def test_maxmin_sic_floor_masks_points():
    # only the single point with z2 above the floor survives
    na, npts = 3, 3
    z1 = np.full((na, npts), 2.0)
    r2 = np.full((na, npts), 2.0)
    z2 = np.zeros((na, npts))
    z2[1, 2] = 1.5
    efeas = np.ones(na, dtype=bool)
    for fn in (_kernels._maxmin_best_loops, _kernels._maxmin_best_numpy):
        best, i1, i2, ip = fn(z1, z2, r2, efeas, efeas, 1.0)
        assert best == 1.5
        assert (i2, ip) == (1, 2)
        assert i1 == na - 1


def test_env_flag_disables_numba():
    code = (
        "from swiptdas import _kernels; "
        "print(_kernels.USE_NUMBA, _kernels.maxsum_best is _kernels._maxsum_best_numpy)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={**os.environ, "SWIPTDAS_NO_NUMBA": "1"},
        check=True,
    )
    assert out.stdout.split() == ["False", "True"]
