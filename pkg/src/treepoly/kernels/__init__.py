"""Hot-loop kernels with two interchangeable backends.

The numba backend (``jit``) carries the inner loops that dominate a full
run: canonical-code construction for millions of candidate trees, the
brute-force subset enumeration, and the exact integer convolutions. The
``pure`` backend implements the same contract in plain Python/numpy and is
the fallback when numba is unavailable.

Selection happens once at import time via the ``TREEPOLY_KERNELS``
environment variable: ``numba`` (fail if unavailable), ``pure``, or
``auto``/unset (numba if importable, else pure). ``benchmarks/bench_kernels.py``
compares the two.

Backend contract (identical signatures and behavior, int64 lanes):

- ``free_code_packed(off, adj, n) -> int``            n <= 31
- ``child_codes_packed(off, adj, n) -> int64[n]``     n <= 30
- ``pivot_split_codes(off, adj, n) -> (codes1, codes2)``
- ``subset_counts(masks, n) -> int64[n+1]``           n <= 24
- ``convolve_i64(a, b) -> int64[]``                   raises OverflowError
- ``shift_add_i64(a, b) -> int64[]``                  raises OverflowError
- ``prufer_free_codes(n) -> int64[n**(n-2)]``
"""

from __future__ import annotations

import os

from . import pure


def _select():
    choice = os.environ.get("TREEPOLY_KERNELS", "auto").strip().lower()
    if choice in ("pure", "python", "numpy"):
        return pure, "pure"
    if choice in ("numba", "jit"):
        from . import jit

        return jit, "numba"
    if choice in ("auto", ""):
        try:
            from . import jit
        except ImportError:
            return pure, "pure"
        return jit, "numba"
    raise ValueError(
        f"TREEPOLY_KERNELS={choice!r} not recognized (use numba, pure, or auto)"
    )


_backend, backend_name = _select()

free_code_packed = _backend.free_code_packed
child_codes_packed = _backend.child_codes_packed
pivot_split_codes = _backend.pivot_split_codes
subset_counts = _backend.subset_counts
convolve_i64 = _backend.convolve_i64
shift_add_i64 = _backend.shift_add_i64
prufer_free_codes = _backend.prufer_free_codes


def warmup() -> None:
    """Force JIT compilation before forking workers (no-op on the pure path)."""
    import numpy as np

    off = np.array([0, 1, 2], dtype=np.int64)
    adj = np.array([1, 0], dtype=np.int64)
    free_code_packed(off, adj, 2)
    child_codes_packed(off, adj, 2)
    pivot_split_codes(off, adj, 2)
    subset_counts(np.array([2, 1], dtype=np.int64), 2)
    a = np.array([1, 1], dtype=np.int64)
    convolve_i64(a, a)
    shift_add_i64(a, a)
