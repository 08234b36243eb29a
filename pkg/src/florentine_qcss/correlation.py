"""Aperiodic correlation of Z_n phase sequences.

A correlation of unimodular sequences is a sum of n-th roots of unity, so it
is held exactly as a multiplicity vector ``counts`` (``counts[j]`` copies of
``w**j``, ``w = exp(2j*pi/n)``). Whether such a sum vanishes is decided by
reducing ``sum counts[j] x**j`` modulo the n-th cyclotomic polynomial.

Two scan backends compute the correlation of every ordered pair of sets at
every non-negative shift:

``exact``
    multiplicity vectors from :mod:`florentine_qcss.kernels`, zero tests and
    squared magnitudes carried out in ``Z[x]/Phi_n``;
``float``
    complex matrix products, one per shift; magnitudes below
    ``ZERO_TOL * M * N`` count as zero and are reported as 0.

Cost is ``O(K^2 * M * N^2)`` for either backend.
"""
from __future__ import annotations

import functools
import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .seqgen import QCSS, SequenceSet

MODES = ("float", "exact")
ZERO_TOL = 1e-6  # times M*N, float backend only
HIST_DECIMALS = 6


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FQCSS_WORKERS", "1")))
    except ValueError:
        return 1


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # Coefficients low to high; den must be monic.
    num = list(num)
    dd = len(den) - 1
    if len(num) <= dd:
        return [0], num
    quot = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if c:
            quot[i - dd] = c
            for j, dc in enumerate(den):
                num[i - dd + j] -= c * dc
    return quot, num[:dd]


@functools.lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_poly(d)))
            assert not any(rem)
    return tuple(poly)


def reduce_mod_cyclotomic(coeffs, n: int) -> list[int]:
    _, rem = _poly_divmod([int(c) for c in coeffs], list(cyclotomic_poly(n)))
    return rem + [0] * (len(cyclotomic_poly(n)) - 1 - len(rem))


@functools.lru_cache(maxsize=None)
def _reduction_matrix(n: int) -> np.ndarray:
    # Row j holds x**j mod Phi_n.
    phi = np.array([reduce_mod_cyclotomic([0] * j + [1], n) for j in range(n)], dtype=np.int64)
    phi.setflags(write=False)
    return phi


def _roots(n: int, count: int) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(count) / n)


@dataclass(frozen=True, eq=False)
class CorrelationValue:
    n: int
    counts: np.ndarray

    @property
    def complex_value(self) -> complex:
        return complex(np.dot(self.counts, _roots(self.n, self.n)))

    @property
    def magnitude(self) -> float:
        return abs(self.complex_value)

    def is_zero(self) -> bool:
        return exact_is_zero(self)

    def conjugate(self) -> "CorrelationValue":
        idx = (-np.arange(self.n)) % self.n
        return CorrelationValue(self.n, self.counts[idx])

    def __add__(self, other: "CorrelationValue") -> "CorrelationValue":
        return CorrelationValue(self.n, self.counts + other.counts)

    def __eq__(self, other):
        if not isinstance(other, CorrelationValue):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.counts, other.counts)


def exact_is_zero(v: CorrelationValue) -> bool:
    return not any(reduce_mod_cyclotomic(v.counts, v.n))


def acf(c, d, tau: int, n: int) -> CorrelationValue:
    """Aperiodic correlation ``sum_t c_t conj(d_{t+tau})`` of two exponent rows."""
    c = np.asarray(c, dtype=np.int64)
    d = np.asarray(d, dtype=np.int64)
    N = c.size
    if d.size != N:
        raise ValueError("rows must have equal length")
    if not -N < tau < N:
        raise ValueError(f"shift {tau} outside -{N - 1}..{N - 1}")
    if tau >= 0:
        diff = c[: N - tau] - d[tau:]
    else:
        diff = c[-tau:] - d[: N + tau]
    return CorrelationValue(n, np.bincount(diff % n, minlength=n).astype(np.int64))


def set_correlation(A: SequenceSet, B: SequenceSet, tau: int) -> CorrelationValue:
    if A.shape != B.shape or A.n != B.n:
        raise ValueError("sequence sets differ in shape or alphabet")
    counts = np.zeros(A.n, dtype=np.int64)
    for c, d in zip(A.exponents, B.exponents):
        counts += acf(c, d, tau, A.n).counts
    return CorrelationValue(A.n, counts)


@dataclass
class Scan:
    """Correlation magnitudes of all ordered set pairs, indexed ``[tau, a, b]``.

    ``reduced_norm`` (exact mode only) holds ``|R|^2`` reduced mod Phi_n, so
    ``|R| == v`` can be decided exactly for integer ``v``.
    """

    mode: str
    n: int
    magnitudes: np.ndarray
    zero: np.ndarray
    reduced_norm: np.ndarray | None = None

    def magnitude_equals(self, value: int) -> np.ndarray:
        if self.reduced_norm is None:
            raise ValueError("exact magnitude tests need an exact scan")
        target = np.array(reduce_mod_cyclotomic([value * value], self.n), dtype=np.int64)
        return np.all(self.reduced_norm == target, axis=-1)


def _exact_shift(X: np.ndarray, n: int, tau: int):
    K = X.shape[0]
    red = _reduction_matrix(n)
    counts = kernels.shift_counts(X, n, tau)
    zero = ~np.any(counts @ red, axis=-1)
    norm = kernels.norm_counts(counts.reshape(-1, n), n) @ red
    norm = norm.reshape(K, K, -1)
    values = (norm @ _roots(n, red.shape[1])).real
    mags = np.sqrt(np.clip(values, 0.0, None))
    mags[zero] = 0.0
    return mags, zero, norm


def _float_shift(E: np.ndarray, tau: int, tol: float):
    K, M, N = E.shape
    left = E[:, :, : N - tau].reshape(K, -1)
    right = E[:, :, tau:].reshape(K, -1)
    mags = np.abs(left @ right.conj().T)
    zero = mags < tol
    mags[zero] = 0.0
    return mags, zero, None


def scan(q: QCSS | np.ndarray, n: int | None = None, mode: str = "float") -> Scan:
    """Correlate every ordered pair of sets at shifts ``0..N-1``."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if isinstance(q, QCSS):
        X, n = q.exponent_stack(), q.n
    else:
        X = np.asarray(q, dtype=np.int64)
    X = np.ascontiguousarray(X, dtype=np.int64)
    K, M, N = X.shape
    if mode == "exact":
        job = functools.partial(_exact_shift, X, n)
    else:
        E = np.exp(2j * np.pi * X / n)
        job = functools.partial(_float_shift, E, tol=ZERO_TOL * M * N)
    workers = _workers()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(job, range(N)))
    else:
        parts = [job(tau) for tau in range(N)]
    mags = np.stack([p[0] for p in parts])
    zero = np.stack([p[1] for p in parts])
    norm = np.stack([p[2] for p in parts]) if mode == "exact" else None
    return Scan(mode, n, mags, zero, norm)


@dataclass
class CorrelationReport:
    params: tuple[int, int, int]
    delta_max: float
    argmax: tuple[int, int, int] | None
    histogram: list[tuple[float, int]]
    mode: str = "float"

    def to_dict(self) -> dict:
        K, M, N = self.params
        argmax = None
        if self.argmax is not None:
            a, b, tau = self.argmax
            argmax = {"set_a": a, "set_b": b, "tau": tau}
        return {
            "K": K,
            "M": M,
            "N": N,
            "delta_max": self.delta_max,
            "argmax": argmax,
            "histogram": [[m, c] for m, c in self.histogram],
        }


def delta_max(q: QCSS, mode: str = "float", scanned: Scan | None = None) -> CorrelationReport:
    """Largest set-correlation magnitude over ordered pairs and shifts ``0..N-1``,
    leaving out each set against itself at shift 0.

    Negative shifts repeat the magnitudes of the swapped pair. Ties resolve to
    the first entry in (set_a, set_b, tau) order.
    """
    K, M, N = q.params
    s = scanned if scanned is not None else scan(q, mode=mode)
    mags = s.magnitudes.copy()
    diag = np.arange(K)
    mags[0, diag, diag] = -1.0
    if K == 1 and N == 1:
        return CorrelationReport((K, M, N), 0.0, None, [], s.mode)
    top = float(mags.max())
    tol = 1e-9 * M * N
    taus, aa, bb = np.nonzero(mags >= top - tol)
    first = min(zip(aa.tolist(), bb.tolist(), taus.tolist()))
    valid = mags[mags >= 0]
    hist = Counter(np.round(valid, HIST_DECIMALS).tolist())
    histogram = sorted((abs(m), c) for m, c in hist.items())
    return CorrelationReport((K, M, N), top, first, histogram, s.mode)
