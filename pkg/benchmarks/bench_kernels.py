"""Compare the numba and numpy monomial kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both implementations are called directly, so one process measures both.
Numba compile time is reported separately from steady-state timings.
"""

from __future__ import annotations

import argparse
import time
import timeit

import numpy as np

from reesblow import _kernels

CASES = [
    # (label, weights, degree, caps)
    ("5 vars, deg 8", [1, 1, 1, 1, 1], 8, [8] * 5),
    ("6 vars, deg 10", [1, 1, 1, 1, 1, 1], 10, [10] * 6),
    ("rees-like, deg 6", [0, 0, 0, 1, 1, 1, -1], 6, [4, 4, 4, 10, 10, 10, 4]),
    ("weighted, deg 24", [1, 2, 3, 4, 5], 24, [24, 12, 8, 6, 4]),
]


def _best(fn, repeat: int) -> float:
    number = max(1, int(0.05 / max(timeit.timeit(fn, number=1), 1e-7)))
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    t0 = time.perf_counter()
    _kernels.warmup()
    print(f"backend: {_kernels.BACKEND}; first call (compile or cache load): {time.perf_counter() - t0:.3f} s")
    loops = "numba" if _kernels.HAVE_NUMBA else "python"
    print(f"{'case':<20}{'rows':>9}{'enum ' + loops:>13}{'enum numpy':>13}{'mask ' + loops:>13}{'mask numpy':>13}")
    rng = np.random.default_rng(0)
    for label, w, d, c in CASES:
        w = np.array(w, dtype=np.int64)
        c = np.array(c, dtype=np.int64)
        rows = _kernels.enumerate_weighted_numpy(w, d, c)
        assert np.array_equal(rows, _kernels.enumerate_weighted_loops(w, d, c))
        leads = rng.integers(0, 4, size=(12, w.shape[0])).astype(np.int64)
        assert np.array_equal(_kernels.standard_mask_loops(rows, leads), _kernels.standard_mask_numpy(rows, leads))
        e_loop = _best(lambda: _kernels.enumerate_weighted_loops(w, d, c), args.repeat)
        e_np = _best(lambda: _kernels.enumerate_weighted_numpy(w, d, c), args.repeat)
        m_loop = _best(lambda: _kernels.standard_mask_loops(rows, leads), args.repeat)
        m_np = _best(lambda: _kernels.standard_mask_numpy(rows, leads), args.repeat)
        print(f"{label:<20}{rows.shape[0]:>9}{e_loop * 1e3:>11.3f}ms{e_np * 1e3:>11.3f}ms"
              f"{m_loop * 1e3:>11.3f}ms{m_np * 1e3:>11.3f}ms")


if __name__ == "__main__":
    main()
