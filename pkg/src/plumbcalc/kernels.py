"""Peeling kernels.

Given the intersection matrix, a twist cycle and a peeling order, each kernel
returns per-step summand degrees, quotient h0/h1 and the running h1 interval
accumulated from the innermost step outwards.

Three interchangeable backends:

* ``numba``  -- @njit loop over int64 arrays (default when numba imports)
* ``numpy``  -- vectorized int64 version, selected with ``PLUMBCALC_NUMBA=0``
* ``python`` -- arbitrary-precision ints; used automatically when the int64
  magnitude bound could be exceeded

All three are exact; the int64 paths are only entered under a proven bound.
"""

from __future__ import annotations

import os
from typing import NamedTuple, Sequence

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

_INT64_SAFE = 2**62

USE_NUMBA = numba is not None and os.environ.get("PLUMBCALC_NUMBA", "1").lower() not in ("0", "false", "no")


class PeelArrays(NamedTuple):
    d_t: np.ndarray | list
    d_n: np.ndarray | list
    h0q: np.ndarray | list
    h1q: np.ndarray | list
    exact: np.ndarray | list
    h1_lo: np.ndarray | list  # interval of the sheaf on the remaining cycle at step s
    h1_hi: np.ndarray | list
    euler: int


def _peel_python(M, twist, order, b) -> PeelArrays:
    n = len(M)
    D = [sum(M[r][c] * twist[c] for c in range(n)) for r in range(n)]
    S = len(order)
    d_t, d_n, h0q, h1q = [0] * S, [0] * S, [0] * S, [0] * S
    for s, c in enumerate(order):
        d = D[c]
        dt, dn = 2 + d, -b[c] + d
        d_t[s], d_n[s] = dt, dn
        h0q[s] = max(0, dt + 1) + max(0, dn + 1)
        h1q[s] = max(0, -dt - 1) + max(0, -dn - 1)
        for r in range(n):
            if M[r][c]:
                D[r] -= M[r][c]
    exact, lo_out, hi_out = [True] * S, [0] * S, [0] * S
    lo = hi = 0
    for s in range(S - 1, -1, -1):
        exact[s] = min(h0q[s], hi) == 0
        lo = max(lo - h0q[s], 0) + h1q[s]
        hi = hi + h1q[s]
        lo_out[s], hi_out[s] = lo, hi
    euler = sum(dt + dn + 2 for dt, dn in zip(d_t, d_n))
    return PeelArrays(d_t, d_n, h0q, h1q, exact, lo_out, hi_out, euler)


def _peel_numpy(M, twist, order, b) -> PeelArrays:
    M = np.asarray(M, dtype=np.int64)
    order = np.asarray(order, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    S = order.size
    base = M @ np.asarray(twist, dtype=np.int64)
    # D before step s equals base - sum of M[:, c_t] over t < s
    cols = M[:, order]
    excl = np.cumsum(cols, axis=1) - cols
    d = base[order] - excl[order, np.arange(S)]
    d_t = 2 + d
    d_n = d - b[order]
    zero = np.int64(0)
    h0q = np.maximum(zero, d_t + 1) + np.maximum(zero, d_n + 1)
    h1q = np.maximum(zero, -d_t - 1) + np.maximum(zero, -d_n - 1)
    # suffix sums, F[s] = sum over t >= s
    F1 = np.concatenate([np.cumsum(h1q[::-1])[::-1], [0]])
    F0 = np.concatenate([np.cumsum(h0q[::-1])[::-1], [0]])
    hi = F1[:S]
    # Lindley recursion lo_s = max(lo_{s+1} - h0q_s, 0) + h1q_s unrolled:
    # lo_s = F1[s] - F0[s] + max_{j >= s} (F0[j] - F1[j+1])
    g = F0[:S] - F1[1:]
    suffix_max = np.maximum.accumulate(g[::-1])[::-1]
    lo = F1[:S] - F0[:S] + suffix_max
    exact = np.minimum(h0q, F1[1:]) == 0
    euler = int((d_t + d_n + 2).sum())
    return PeelArrays(d_t, d_n, h0q, h1q, exact, lo, hi, euler)


if numba is not None:

    @numba.njit(cache=True, nogil=True)
    def _peel_numba_impl(M, twist, order, b):
        n = M.shape[0]
        S = order.shape[0]
        D = np.zeros(n, dtype=np.int64)
        for r in range(n):
            acc = 0
            for c in range(n):
                acc += M[r, c] * twist[c]
            D[r] = acc
        d_t = np.empty(S, dtype=np.int64)
        d_n = np.empty(S, dtype=np.int64)
        h0q = np.empty(S, dtype=np.int64)
        h1q = np.empty(S, dtype=np.int64)
        for s in range(S):
            c = order[s]
            d = D[c]
            dt = 2 + d
            dn = d - b[c]
            d_t[s] = dt
            d_n[s] = dn
            h0q[s] = max(0, dt + 1) + max(0, dn + 1)
            h1q[s] = max(0, -dt - 1) + max(0, -dn - 1)
            for r in range(n):
                D[r] -= M[r, c]
        exact = np.empty(S, dtype=np.bool_)
        lo_out = np.empty(S, dtype=np.int64)
        hi_out = np.empty(S, dtype=np.int64)
        lo = 0
        hi = 0
        euler = 0
        for s in range(S - 1, -1, -1):
            exact[s] = min(h0q[s], hi) == 0
            lo = max(lo - h0q[s], 0) + h1q[s]
            hi = hi + h1q[s]
            lo_out[s] = lo
            hi_out[s] = hi
            euler += d_t[s] + d_n[s] + 2
        return d_t, d_n, h0q, h1q, exact, lo_out, hi_out, euler


def _peel_numba(M, twist, order, b) -> PeelArrays:
    out = _peel_numba_impl(
        np.asarray(M, dtype=np.int64),
        np.asarray(twist, dtype=np.int64),
        np.asarray(order, dtype=np.int64),
        np.asarray(b, dtype=np.int64),
    )
    return PeelArrays(*out[:-1], int(out[-1]))


def _fits_int64(M, twist, order) -> bool:
    row = max((sum(abs(v) for v in r) for r in M), default=0)
    tw = max((abs(t) for t in twist), default=0) + len(order)
    # |degree| <= row * tw + b + 2; h1 totals add at most 2*(|deg| + 1) per step
    deg = row * tw + row + 2
    return (len(order) + 1) * 2 * (deg + 1) < _INT64_SAFE


def backend_name() -> str:
    return "numba" if USE_NUMBA else "numpy"


def peel(
    M: Sequence[Sequence[int]], twist: Sequence[int], order: Sequence[int], b: Sequence[int], backend: str | None = None
) -> PeelArrays:
    """Run the peeling recursion.  ``backend`` overrides the env selection."""
    if backend is None:
        backend = backend_name() if _fits_int64(M, twist, order) else "python"
    if backend == "numba":
        if numba is None:  # pragma: no cover
            raise RuntimeError("numba backend requested but numba is not installed")
        return _peel_numba(M, twist, order, b)
    if backend == "numpy":
        return _peel_numpy(M, twist, order, b)
    if backend == "python":
        return _peel_python(M, twist, order, b)
    raise ValueError(f"unknown backend {backend!r}")
