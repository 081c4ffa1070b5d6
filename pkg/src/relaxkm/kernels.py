"""Integer kernels for truncated partition-function expansions.

``partition_counts`` expands prod_b (1 - e^{-b})^{-1} over a list of
nonnegative integer "coin" vectors b on a box grid. The numba path runs an
in-place coin-change recursion; the numpy path sums shifted slices. Set
RELAXKM_NO_NUMBA=1 to force the numpy path.
"""
from __future__ import annotations

import os
from typing import Sequence, Tuple

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn
        return wrap(args[0]) if args and callable(args[0]) else wrap


def use_numba() -> bool:
    return NUMBA_AVAILABLE and os.environ.get("RELAXKM_NO_NUMBA", "") not in ("1", "true", "yes")


@njit(cache=True)
def _coin_change_nb(shape, coins):
    ndim = shape.shape[0]
    total = 1
    for d in range(ndim):
        total *= shape[d]
    strides = np.empty(ndim, dtype=np.int64)
    s = 1
    for d in range(ndim - 1, -1, -1):
        strides[d] = s
        s *= shape[d]
    out = np.zeros(total, dtype=np.int64)
    out[0] = 1
    idx = np.empty(ndim, dtype=np.int64)
    for c in range(coins.shape[0]):
        off = 0
        for d in range(ndim):
            off += coins[c, d] * strides[d]
        for flat in range(total):
            rem = flat
            ok = True
            for d in range(ndim):
                idx[d] = rem // strides[d]
                rem -= idx[d] * strides[d]
                if idx[d] < coins[c, d]:
                    ok = False
            if ok:
                out[flat] += out[flat - off]
    return out


def _coin_change_np(shape: Tuple[int, ...], coins: np.ndarray) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    out[(0,) * len(shape)] = 1
    for b in coins:
        # multiply by the geometric series sum_m e^{m b}
        acc = out.copy()
        m = 1
        while all(m * b[d] < shape[d] for d in range(len(shape))):
            src = tuple(slice(0, shape[d] - m * b[d]) for d in range(len(shape)))
            dst = tuple(slice(m * b[d], shape[d]) for d in range(len(shape)))
            acc[dst] += out[src]
            m += 1
        out = acc
    return out


def partition_counts(shape: Sequence[int], coins: Sequence[Sequence[int]], numba: bool | None = None) -> np.ndarray:
    """Coefficient array of prod over coins of 1/(1 - x^coin) on the box [0, shape)."""
    shape = tuple(int(s) for s in shape)
    arr = np.asarray(coins, dtype=np.int64).reshape(-1, len(shape))
    if np.any(arr < 0) or np.any(arr.sum(axis=1) == 0):
        raise ValueError("coins must be nonnegative and nonzero")
    if numba is None:
        numba = use_numba()
    if numba and NUMBA_AVAILABLE:
        return _coin_change_nb(np.asarray(shape, dtype=np.int64), arr).reshape(shape)
    return _coin_change_np(shape, arr)
