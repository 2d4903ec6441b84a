"""Argmax kernels for the grid-search oracle.

Two interchangeable implementations of each kernel: a compiled triple loop
(numba) and a vectorized numpy fallback.  Selection happens at import time:
numba wins when it is importable and the environment variable
SWIPTDAS_NO_NUMBA is unset/empty.  Both paths implement the identical
tie-break so they return the same grid point, not merely the same objective:
on equal objectives prefer the largest alpha1 index, then the largest alpha2
index, then the smallest p2 index.  Large splits win ties because the
objectives plateau in a split once another decode is the bottleneck, and the
larger split relaxes every rate constraint, leaving the local refiner room
to push p2 instead of stranding it against a rate floor.

Kernel inputs are precomputed rate matrices over the (alpha, p2) grids:
z1[i1, ip] the weak user's own decode, z2[i2, ip] the cross decode,
r2[i2, ip] the strong user's own rate, plus per-alpha energy feasibility
masks.  Returns (best objective, i1, i2, ip), with best = -inf and indices -1
when no grid point is feasible.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:
    numba = None


def _maxsum_best_loops(z1, z2, r2, efeas1, efeas2, r_min):
    na, npts = z1.shape
    best = -np.inf
    bi1 = -1
    bi2 = -1
    bip = -1
    for i1 in range(na - 1, -1, -1):
        if not efeas1[i1]:
            continue
        for i2 in range(na - 1, -1, -1):
            if not efeas2[i2]:
                continue
            for ip in range(npts):
                za = z1[i1, ip]
                zb = z2[i2, ip]
                r1 = za if za < zb else zb
                rs = r2[i2, ip]
                if r1 < r_min or rs < r_min:
                    continue
                obj = r1 + rs
                if obj > best:
                    best = obj
                    bi1 = i1
                    bi2 = i2
                    bip = ip
    return best, bi1, bi2, bip


def _maxmin_best_loops(z1, z2, r2, efeas1, efeas2, r_sic):
    na, npts = z1.shape
    best = -np.inf
    bi1 = -1
    bi2 = -1
    bip = -1
    for i1 in range(na - 1, -1, -1):
        if not efeas1[i1]:
            continue
        for i2 in range(na - 1, -1, -1):
            if not efeas2[i2]:
                continue
            for ip in range(npts):
                zb = z2[i2, ip]
                if zb < r_sic:
                    continue
                za = z1[i1, ip]
                r1 = za if za < zb else zb
                rs = r2[i2, ip]
                obj = r1 if r1 < rs else rs
                if obj > best:
                    best = obj
                    bi1 = i1
                    bi2 = i2
                    bip = ip
    return best, bi1, bi2, bip


def _best_over_alpha1(z1, efeas1, idx2, masked_objective):
    """Shared scan for the numpy path.  masked_objective(z1_row) returns the
    (i2, ip) objective matrix with -inf at infeasible points; scanning i1
    descending and flat-argmaxing the row-reversed matrix reproduces the loop
    kernels' tie-break exactly."""
    npts = z1.shape[1]
    best = -np.inf
    bi1 = bi2 = bip = -1
    for i1 in np.flatnonzero(efeas1)[::-1]:
        obj = masked_objective(z1[i1])[::-1]
        flat = int(np.argmax(obj))
        val = float(obj.flat[flat])
        if val > best:
            best = val
            bi1 = int(i1)
            bi2 = int(idx2[idx2.size - 1 - flat // npts])
            bip = int(flat % npts)
    return best, bi1, bi2, bip


def _maxsum_best_numpy(z1, z2, r2, efeas1, efeas2, r_min):
    idx2 = np.flatnonzero(efeas2)
    if idx2.size == 0 or not efeas1.any():
        return -np.inf, -1, -1, -1
    z2f = z2[idx2]
    r2f = r2[idx2]
    feas_fixed = (z2f >= r_min) & (r2f >= r_min)

    def masked_objective(z1_row):
        feas = feas_fixed & (z1_row >= r_min)[None, :]
        return np.where(feas, np.minimum(z1_row[None, :], z2f) + r2f, -np.inf)

    return _best_over_alpha1(z1, efeas1, idx2, masked_objective)


def _maxmin_best_numpy(z1, z2, r2, efeas1, efeas2, r_sic):
    idx2 = np.flatnonzero(efeas2)
    if idx2.size == 0 or not efeas1.any():
        return -np.inf, -1, -1, -1
    z2f = z2[idx2]
    r2f = r2[idx2]
    feas_fixed = z2f >= r_sic
    low2 = np.minimum(z2f, r2f)

    def masked_objective(z1_row):
        obj = np.minimum(z1_row[None, :], low2)
        return np.where(feas_fixed, obj, -np.inf)

    return _best_over_alpha1(z1, efeas1, idx2, masked_objective)


def _want_numba() -> bool:
    if os.environ.get("SWIPTDAS_NO_NUMBA", ""):
        return False
    return numba is not None


USE_NUMBA = _want_numba()

if USE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)
    maxsum_best = _jit(_maxsum_best_loops)
    maxmin_best = _jit(_maxmin_best_loops)
else:
    maxsum_best = _maxsum_best_numpy
    maxmin_best = _maxmin_best_numpy
