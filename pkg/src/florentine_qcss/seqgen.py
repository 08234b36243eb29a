"""Sequence sets built from a permutation family.

Flocks are stored as exponent matrices over Z_n: entry ``e`` stands for the
unimodular value ``exp(2j*pi*e/n)``. Complex values only appear in
:mod:`florentine_qcss.correlation`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .florentine import ParameterError, PermutationFamily


@dataclass(frozen=True, eq=False)
class SequenceSet:
    n: int
    exponents: np.ndarray
    k: int = 0
    m: int = 0

    def __post_init__(self):
        exps = np.array(self.exponents, dtype=np.int64)
        if exps.ndim != 2:
            raise ParameterError("exponents must be a 2-d matrix")
        if exps.size and (exps.min() < 0 or exps.max() >= self.n):
            raise ParameterError(f"exponents must lie in 0..{self.n - 1}")
        exps.setflags(write=False)
        object.__setattr__(self, "exponents", exps)

    def __eq__(self, other):
        if not isinstance(other, SequenceSet):
            return NotImplemented
        return (self.n, self.k, self.m) == (other.n, other.k, other.m) and np.array_equal(
            self.exponents, other.exponents
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.exponents.shape

    def to_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "m": self.m, "exponents": self.exponents.tolist()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SequenceSet":
        return cls(int(data["n"]), data["exponents"], int(data.get("k", 0)), int(data.get("m", 0)))

    @classmethod
    def from_json(cls, text: str) -> "SequenceSet":
        return cls.from_dict(json.loads(text))

    def render(self) -> list[str]:
        """One string per sequence: packed digits when n <= 10, else comma separated."""
        if self.n <= 10:
            return ["".join(str(e) for e in row) for row in self.exponents]
        return [",".join(str(e) for e in row) for row in self.exponents]


def phase_row(pi, m: int, s: int) -> np.ndarray:
    """Exponents ``s*pi(t) + m*t mod n`` for ``t = 0..n-1``."""
    pi = np.asarray(pi, dtype=np.int64)
    n = pi.size
    if not np.array_equal(np.sort(pi), np.arange(n)):
        raise ParameterError("pi is not a bijection on Z_n")
    t = np.arange(n, dtype=np.int64)
    return (s * pi + m * t) % n


def _flock(pi: np.ndarray, m: int) -> np.ndarray:
    n = pi.size
    s = np.arange(n, dtype=np.int64)[:, None]
    t = np.arange(n, dtype=np.int64)[None, :]
    return (s * pi[None, :] + m * t) % n


@dataclass(frozen=True)
class CCC:
    n: int
    k: int
    sets: tuple[SequenceSet, ...]

    def exponent_stack(self) -> np.ndarray:
        return np.stack([s.exponents for s in self.sets])


@dataclass(frozen=True)
class QCSS:
    n: int
    k_count: int
    sets: tuple[SequenceSet, ...]

    @property
    def params(self) -> tuple[int, int, int]:
        """``(K, M, N)``."""
        M, N = self.sets[0].shape
        return len(self.sets), M, N

    def exponent_stack(self) -> np.ndarray:
        return np.stack([s.exponents for s in self.sets])

    def to_dict(self) -> dict:
        K, M, N = self.params
        return {
            "K": K,
            "M": M,
            "N": N,
            "n": self.n,
            "ccc_count": self.k_count,
            "sets": [s.to_dict() for s in self.sets],
        }

    @classmethod
    def from_sets(cls, sets) -> "QCSS":
        sets = tuple(sets)
        if not sets:
            raise ParameterError("a QCSS needs at least one sequence set")
        n = sets[0].n
        shape = sets[0].shape
        for s in sets:
            if s.n != n or s.shape != shape:
                raise ParameterError("sequence sets disagree on alphabet or shape")
        return cls(n, len({s.k for s in sets}), sets)


def build_ccc(family: PermutationFamily, k: int) -> CCC:
    if not 0 <= k < family.f_value:
        raise ParameterError(f"k={k} outside 0..{family.f_value - 1}")
    pi = family.as_array()[k]
    sets = tuple(SequenceSet(family.n, _flock(pi, m), k, m) for m in range(family.n))
    return CCC(family.n, k, sets)


def build_qcss(family: PermutationFamily) -> QCSS:
    """Union of the CCCs of every permutation, CCC-major and m-ascending."""
    sets = tuple(s for k in range(family.f_value) for s in build_ccc(family, k).sets)
    return QCSS(family.n, family.f_value, sets)
