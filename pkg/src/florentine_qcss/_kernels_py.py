"""Numpy fallback for the compiled kernels in ``_kernels.pyx``."""
import numpy as np

# Cap on the size of the broadcast difference tensor built per chunk.
_CHUNK_ELEMENTS = 1 << 24


def shift_counts(X, n, tau):
    X = np.ascontiguousarray(X, dtype=np.int64)
    K, M, N = X.shape
    if tau < 0 or tau >= N:
        raise ValueError("shift out of range")
    left = X[:, :, : N - tau].reshape(K, -1)
    right = X[:, :, tau:].reshape(K, -1)
    width = left.shape[1]
    out = np.zeros((K, K, n), dtype=np.int64)
    step = max(1, _CHUNK_ELEMENTS // max(1, K * width))
    base = (np.arange(K, dtype=np.int64) * n)[None, :, None]
    for lo in range(0, K, step):
        hi = min(K, lo + step)
        diff = (left[lo:hi, None, :] - right[None, :, :]) % n
        idx = (diff + base).reshape(hi - lo, -1)
        for i in range(hi - lo):
            out[lo + i] = np.bincount(idx[i], minlength=K * n).reshape(K, n)
    return out


def norm_counts(C, n):
    C = np.ascontiguousarray(C, dtype=np.int64)
    if C.shape[1] != n:
        raise ValueError("count vectors must have length n")
    out = np.empty_like(C)
    for d in range(n):
        out[:, d] = np.sum(C * np.roll(C, d, axis=1), axis=1)
    return out
