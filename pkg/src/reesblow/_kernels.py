"""Monomial enumeration kernels.

Two implementations of each kernel live here: numba ``@njit`` loops and a
vectorised numpy path.  The numba path is used when numba imports and the
environment variable ``REESBLOW_DISABLE_NUMBA`` is unset (or ``0``).  Both
paths return identical arrays; the test suite checks this.

Exponent vectors are ``int64`` rows.  Enumeration output is in ascending
lexicographic order of the exponent vector.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("REESBLOW_DISABLE_NUMBA", "").strip().lower()
DISABLED = _flag not in ("", "0", "false", "no", "off")

try:
    if DISABLED:
        raise ImportError("numba disabled by REESBLOW_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"

_CHUNK = 4096


def _suffix_bounds(weights: np.ndarray, caps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    contrib = weights * caps
    lo = np.minimum(contrib, 0)[::-1].cumsum()[::-1]
    hi = np.maximum(contrib, 0)[::-1].cumsum()[::-1]
    zero = np.zeros(1, dtype=np.int64)
    return np.concatenate([lo, zero]).astype(np.int64), np.concatenate([hi, zero]).astype(np.int64)


# --- numpy ------------------------------------------------------------------

def enumerate_weighted_numpy(weights: np.ndarray, degree: int, caps: np.ndarray) -> np.ndarray:
    n = weights.shape[0]
    lo, hi = _suffix_bounds(weights, caps)
    partial = np.zeros((1, 0), dtype=np.int64)
    sums = np.zeros(1, dtype=np.int64)
    for i in range(n):
        if partial.shape[0] == 0:
            break
        e = np.arange(caps[i] + 1, dtype=np.int64)
        new_sums = (sums[:, None] + weights[i] * e[None, :]).ravel()
        rem = degree - new_sums
        keep = (rem >= lo[i + 1]) & (rem <= hi[i + 1])
        rows = np.repeat(partial, e.shape[0], axis=0)[keep]
        col = np.tile(e, partial.shape[0])[keep]
        partial = np.column_stack([rows, col]) if n else rows
        sums = new_sums[keep]
    if n == 0:
        return np.zeros((1 if degree == 0 else 0, 0), dtype=np.int64)
    if partial.shape[1] != n:
        return np.zeros((0, n), dtype=np.int64)
    return np.ascontiguousarray(partial[sums == degree], dtype=np.int64)


def standard_mask_numpy(monos: np.ndarray, leads: np.ndarray) -> np.ndarray:
    m = monos.shape[0]
    if leads.shape[0] == 0:
        return np.ones(m, dtype=np.bool_)
    out = np.empty(m, dtype=np.bool_)
    for start in range(0, m, _CHUNK):
        block = monos[start:start + _CHUNK]
        divisible = (block[:, None, :] >= leads[None, :, :]).all(axis=2).any(axis=1)
        out[start:start + _CHUNK] = ~divisible
    return out


# --- loops (compiled by numba when available) -------------------------------

def _walk(weights, degree, caps, lo, hi, out, fill):
    n = weights.shape[0]
    if n == 0:
        return 1 if degree == 0 else 0
    e = np.zeros(n, dtype=np.int64)
    sums = np.zeros(n + 1, dtype=np.int64)
    count = 0
    pos = 0
    e[0] = -1
    while pos >= 0:
        e[pos] += 1
        if e[pos] > caps[pos]:
            pos -= 1
            continue
        s = sums[pos] + weights[pos] * e[pos]
        sums[pos + 1] = s
        rem = degree - s
        if rem < lo[pos + 1] or rem > hi[pos + 1]:
            continue
        if pos == n - 1:
            if fill:
                for k in range(n):
                    out[count, k] = e[k]
            count += 1
        else:
            pos += 1
            e[pos] = -1
    return count


def _enumerate_loops(weights, degree, caps, lo, hi):
    n = weights.shape[0]
    dummy = np.zeros((0, n), dtype=np.int64)
    count = _walk(weights, degree, caps, lo, hi, dummy, False)
    out = np.zeros((count, n), dtype=np.int64)
    _walk(weights, degree, caps, lo, hi, out, True)
    return out


def _standard_mask_loops(monos, leads):
    m = monos.shape[0]
    k = leads.shape[0]
    n = monos.shape[1]
    out = np.ones(m, dtype=np.bool_)
    for i in range(m):
        for j in range(k):
            divides = True
            for v in range(n):
                if monos[i, v] < leads[j, v]:
                    divides = False
                    break
            if divides:
                out[i] = False
                break
    return out


if HAVE_NUMBA:
    _walk = njit(cache=True)(_walk)
    _enumerate_loops = njit(cache=True)(_enumerate_loops)
    _standard_mask_loops = njit(cache=True)(_standard_mask_loops)


def enumerate_weighted_loops(weights: np.ndarray, degree: int, caps: np.ndarray) -> np.ndarray:
    lo, hi = _suffix_bounds(weights, caps)
    return _enumerate_loops(weights, np.int64(degree), caps, lo, hi)


def standard_mask_loops(monos: np.ndarray, leads: np.ndarray) -> np.ndarray:
    return _standard_mask_loops(monos, leads)


# --- dispatch ----------------------------------------------------------------

def _as_rows(a, n: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64)
    return arr.reshape(-1, n) if arr.size or n else np.zeros((len(a), 0), dtype=np.int64)


def enumerate_weighted(weights, degree: int, caps) -> np.ndarray:
    """All exponent vectors ``e`` with ``0 <= e <= caps`` and ``weights . e == degree``."""
    w = np.asarray(weights, dtype=np.int64)
    c = np.asarray(caps, dtype=np.int64)
    if c.shape != w.shape or (c < 0).any():
        raise ValueError("caps must be non-negative and match weights")
    if HAVE_NUMBA:
        return enumerate_weighted_loops(w, degree, c)
    return enumerate_weighted_numpy(w, degree, c)


def standard_mask(monos, leads, n: int) -> np.ndarray:
    """``mask[i]`` is true iff no row of ``leads`` divides ``monos[i]``."""
    mo = _as_rows(monos, n)
    le = _as_rows(leads, n)
    if HAVE_NUMBA:
        return standard_mask_loops(mo, le)
    return standard_mask_numpy(mo, le)


def warmup() -> None:
    """Trigger JIT compilation outside timed regions."""
    w = np.array([1, -1, 0], dtype=np.int64)
    rows = enumerate_weighted(w, 1, np.array([2, 2, 1], dtype=np.int64))
    standard_mask(rows, np.array([[1, 1, 0]], dtype=np.int64), 3)
