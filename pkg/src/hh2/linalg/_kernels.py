"""Dense row reduction over GF(p) on int64 arrays.

Two interchangeable kernels: a numba-compiled loop and a vectorised numpy
fallback.  Set ``HH2_DISABLE_NUMBA=1`` to force the numpy path (also used
automatically when numba is not importable).  Both require ``p < 2**31`` so
that products fit in int64.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("HH2_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False

MAX_DENSE_PRIME = 2**31 - 1


def _rref_modp_numpy(a: np.ndarray, p: int):
    """In-place reduced row echelon form of ``a`` mod ``p``; returns pivot columns."""
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return np.array(pivots, dtype=np.int64)


def _rref_modp_loop(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = a[r, j]
                a[r, j] = a[k, j]
                a[k, j] = tmp
        # modular inverse by extended Euclid (pow(x, -1, p) is not available in nopython mode)
        t, new_t = 0, 1
        g, new_g = p, a[r, c]
        while new_g != 0:
            q = g // new_g
            t, new_t = new_t, t - q * new_t
            g, new_g = new_g, g - q * new_g
        inv = t % p
        for j in range(c, cols):
            a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r:
                f = a[i, c]
                if f != 0:
                    for j in range(c, cols):
                        if a[r, j] != 0:
                            a[i, j] = (a[i, j] - f * a[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return pivots[:npiv]


if HAVE_NUMBA:
    _rref_modp_numba = njit(cache=True, nogil=True)(_rref_modp_loop)
else:  # pragma: no cover
    _rref_modp_numba = None


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def rref_modp(a: np.ndarray, p: int, kernel: str | None = None):
    """Reduce ``a`` (int64, entries in range(p)) in place; return pivot columns.

    ``kernel`` overrides the environment choice: "numba" or "numpy".
    """
    if p > MAX_DENSE_PRIME:
        raise ValueError("dense kernel needs p < 2**31")
    kernel = kernel or backend()
    if a.size == 0:
        return np.zeros(0, dtype=np.int64)
    if kernel == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba kernel requested but numba is unavailable")
        return _rref_modp_numba(a, p)
    if kernel == "numpy":
        return _rref_modp_numpy(a, p)
    if kernel == "python":
        return _rref_modp_loop(a, p)
    raise ValueError(f"unknown kernel {kernel!r}")
