"""In-place statevector gate kernels over a flat complex128 array.

Basis index bit k holds qubit k. Each kernel touches every affected
amplitude exactly once with a fixed per-element operation order, so
results are bitwise deterministic. Compiled with numba when available
(the kernels are memory-bound single passes); a numpy strided-slice
fallback computes the identical floating-point operations elementwise.
"""

from __future__ import annotations

import math

import numpy as np

_INV_SQRT2 = 1 / math.sqrt(2.0)

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False


if _HAVE_NUMBA:

    @njit(cache=True)
    def apply_h(amps: np.ndarray, q: int) -> None:
        s = 1 << q
        for base in range(0, amps.size, 2 * s):
            for i in range(base, base + s):
                a = amps[i]
                b = amps[i + s]
                amps[i] = (a + b) * _INV_SQRT2
                amps[i + s] = (a - b) * _INV_SQRT2

    @njit(cache=True)
    def apply_x(amps: np.ndarray, q: int) -> None:
        s = 1 << q
        for base in range(0, amps.size, 2 * s):
            for i in range(base, base + s):
                a = amps[i]
                amps[i] = amps[i + s]
                amps[i + s] = a

    @njit(cache=True)
    def apply_phase(amps: np.ndarray, q: int, w: complex) -> None:
        s = 1 << q
        for base in range(s, amps.size, 2 * s):
            for i in range(base, base + s):
                amps[i] = amps[i] * w

    @njit(cache=True)
    def apply_cnot(amps: np.ndarray, c: int, t: int) -> None:
        qa, qb = (c, t) if c > t else (t, c)
        sa, sb = 1 << qa, 1 << qb
        sc, st = 1 << c, 1 << t
        for hi in range(0, amps.size, 2 * sa):
            for mid in range(0, sa, 2 * sb):
                for lo in range(sb):
                    i0 = (hi + mid + lo) | sc
                    i1 = i0 | st
                    a = amps[i0]
                    amps[i0] = amps[i1]
                    amps[i1] = a

else:

    def _halves(amps: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
        v = amps.reshape(-1, 2, 1 << q)
        return v[:, 0, :], v[:, 1, :]

    def apply_h(amps: np.ndarray, q: int) -> None:
        lo, hi = _halves(amps, q)
        a = lo.copy()
        b = hi.copy()
        lo[...] = (a + b) * _INV_SQRT2
        hi[...] = (a - b) * _INV_SQRT2

    def apply_x(amps: np.ndarray, q: int) -> None:
        lo, hi = _halves(amps, q)
        a = lo.copy()
        lo[...] = hi
        hi[...] = a

    def apply_phase(amps: np.ndarray, q: int, w: complex) -> None:
        _, hi = _halves(amps, q)
        hi *= w

    def apply_cnot(amps: np.ndarray, c: int, t: int) -> None:
        n_bits = amps.size.bit_length() - 1
        view = amps.reshape((2,) * n_bits)
        idx0: list = [slice(None)] * n_bits
        idx1: list = [slice(None)] * n_bits
        idx0[n_bits - 1 - c] = 1
        idx1[n_bits - 1 - c] = 1
        idx0[n_bits - 1 - t] = 0
        idx1[n_bits - 1 - t] = 1
        a = view[tuple(idx0)].copy()
        view[tuple(idx0)] = view[tuple(idx1)]
        view[tuple(idx1)] = a
