"""Florentine rectangles over Z_n.

Every public rectangle uses the symbols ``0..n-1``. Constructions that are
naturally stated over ``1..n`` or over the non-zero residues of ``Z_{n+1}``
are shifted down by one before they are returned, and every construction
re-runs :func:`is_tuscan_k` on its output before handing it back.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np


class ParameterError(ValueError):
    """An argument violates the precondition of a construction."""


class ConstructionError(RuntimeError):
    """A construction produced a rectangle that fails its own check."""


class RectangleFormatError(ValueError):
    """A rectangle file could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
        self.line = line
        self.column = column


class Construction(str, enum.Enum):
    PRIME_VATICAN = "prime_vatican"
    MULT_TABLE = "mult_table"
    EVEN_A = "even_a"
    EVEN_B = "even_b"
    ODD_EXTENSION = "odd_extension"
    HANDMADE = "handmade"


@dataclass(frozen=True)
class FlorentineRect:
    n: int
    rows: tuple[tuple[int, ...], ...]
    construction: Construction = Construction.HANDMADE
    source_modulus: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "construction", Construction(self.construction))
        if self.source_modulus is None:
            object.__setattr__(self, "source_modulus", self.n)
        if self.n < 1:
            raise ParameterError("n must be positive")
        if not rows:
            raise ParameterError("a rectangle needs at least one row")
        for i, row in enumerate(rows):
            if len(row) != self.n:
                raise ParameterError(f"row {i} has length {len(row)}, expected {self.n}")
            if any(x < 0 or x >= self.n for x in row):
                raise ParameterError(f"row {i} has symbols outside 0..{self.n - 1}")

    @property
    def r(self) -> int:
        return len(self.rows)

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [list(row) for row in self.rows],
            "construction": self.construction.value,
            "source_modulus": self.source_modulus,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "FlorentineRect":
        try:
            return cls(
                n=int(data["n"]),
                rows=data["rows"],
                construction=data.get("construction", Construction.HANDMADE.value),
                source_modulus=data.get("source_modulus"),
            )
        except KeyError as exc:
            raise RectangleFormatError(f"missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError) as exc:
            raise RectangleFormatError(str(exc)) from None

    @classmethod
    def from_json(cls, text: str) -> "FlorentineRect":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise RectangleFormatError(exc.msg, exc.lineno, exc.colno) from None
        if not isinstance(data, dict):
            raise RectangleFormatError("expected a JSON object", 1, 1)
        return cls.from_dict(data)

    @classmethod
    def from_text(cls, text: str) -> "FlorentineRect":
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            row = []
            col = 0
            for token in line.split():
                col = line.index(token, col) + 1
                try:
                    row.append(int(token))
                except ValueError:
                    raise RectangleFormatError(f"not an integer: {token!r}", lineno, col) from None
                col += len(token) - 1
            if rows and len(row) != len(rows[0]):
                raise RectangleFormatError(
                    f"row has {len(row)} entries, expected {len(rows[0])}", lineno, 1
                )
            rows.append(row)
        if not rows:
            raise RectangleFormatError("empty rectangle", 1, 1)
        n = len(rows[0])
        try:
            return cls(n=n, rows=rows)
        except ParameterError as exc:
            raise RectangleFormatError(str(exc)) from None

    @classmethod
    def load(cls, path) -> "FlorentineRect":
        with open(path) as fh:
            text = fh.read()
        if text.lstrip().startswith("{"):
            return cls.from_json(text)
        return cls.from_text(text)


@dataclass(frozen=True)
class Witness:
    """Why a rectangle fails the Tuscan check.

    For a repeated displaced pair, ``pair`` is ``(a, b)`` with ``b`` sitting
    ``displacement`` steps right of ``a`` at both ``locations`` (row, column
    of ``a``). For a row that is not a permutation, only ``row`` is set.
    """

    kind: str
    row: int | None = None
    displacement: int | None = None
    pair: tuple[int, int] | None = None
    locations: tuple[tuple[int, int], tuple[int, int]] | None = None

    def describe(self) -> str:
        if self.kind == "not_permutation":
            return f"row {self.row} is not a permutation"
        (r1, c1), (r2, c2) = self.locations
        a, b = self.pair
        return (
            f"pair ({a}, {b}) at displacement {self.displacement} "
            f"in row {r1} column {c1} and row {r2} column {c2}"
        )


@dataclass(frozen=True)
class TuscanResult:
    ok: bool
    witness: Witness | None = None

    def __bool__(self) -> bool:
        return self.ok


def _positions(arr: np.ndarray) -> np.ndarray:
    pos = np.empty_like(arr)
    cols = np.arange(arr.shape[1])
    for i, row in enumerate(arr):
        pos[i, row] = cols
    return pos


def is_tuscan_k(rect: FlorentineRect, k: int) -> TuscanResult:
    """Check that every row is a permutation and that no ordered pair of
    symbols appears at the same displacement ``1..k`` in two places.

    Two rows share a displaced pair ``(a, b)`` exactly when the column
    difference ``pos_i[x] - pos_l[x]`` takes the same value at ``a`` and
    ``b``, so each row pair costs one sort. The reported witness is the one
    with the smallest displacement, then the smallest row and column.
    """
    n = rect.n
    if not 1 <= k <= max(1, n - 1):
        raise ParameterError(f"k must lie in 1..{n - 1}")
    arr = rect.as_array()
    full = np.arange(n)
    for i, row in enumerate(arr):
        if not np.array_equal(np.sort(row), full):
            return TuscanResult(False, Witness("not_permutation", row=i))
    pos = _positions(arr)
    best = None
    for i in range(rect.r):
        for l in range(i + 1, rect.r):
            delta = pos[i] - pos[l]
            order = np.lexsort((pos[i], delta))
            same = delta[order][1:] == delta[order][:-1]
            gaps = pos[i][order][1:] - pos[i][order][:-1]
            for idx in np.flatnonzero(same & (gaps <= k)):
                a, b = int(order[idx]), int(order[idx + 1])
                key = (int(gaps[idx]), i, int(pos[i][a]), l, int(pos[l][a]))
                if best is None or key < best[0]:
                    best = (key, a, b)
    if best is None:
        return TuscanResult(True)
    (d, i, ci, l, cl), a, b = best
    return TuscanResult(
        False,
        Witness("repeated_pair", displacement=d, pair=(a, b), locations=((i, ci), (l, cl))),
    )


def is_florentine(rect: FlorentineRect) -> TuscanResult:
    return is_tuscan_k(rect, max(1, rect.n - 1))


def is_latin(rect: FlorentineRect) -> bool:
    if rect.r != rect.n:
        return False
    arr = rect.as_array()
    full = np.arange(rect.n)
    return all(np.array_equal(np.sort(v), full) for v in (*arr, *arr.T))


def is_vatican(rect: FlorentineRect) -> bool:
    return is_latin(rect) and bool(is_florentine(rect))


def _verified(rect: FlorentineRect) -> FlorentineRect:
    result = is_florentine(rect)
    if not result:
        raise ConstructionError(
            f"{rect.construction.value} construction for n={rect.n} failed: "
            + result.witness.describe()
        )
    return rect


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ParameterError("n must be at least 2")
    if n % 2 == 0:
        return 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return d
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def vatican_from_prime(p: int) -> FlorentineRect:
    """Multiplication table of the non-zero residues mod an odd prime ``p``,
    relabelled to the symbols ``0..p-2``."""
    if p % 2 == 0 or not is_prime(p):
        raise ParameterError(f"{p} is not an odd prime")
    units = np.arange(1, p)
    rows = (np.outer(units, units) % p) - 1
    return _verified(FlorentineRect(p - 1, rows.tolist(), Construction.PRIME_VATICAN, p))


def florentine_mult_table(n: int) -> FlorentineRect:
    """Rows ``(i+1)*j mod n`` for ``i+1`` below the smallest prime factor of n."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    p = smallest_prime_factor(n)
    rows = np.outer(np.arange(1, p), np.arange(n)) % n
    return _verified(FlorentineRect(n, rows.tolist(), Construction.MULT_TABLE, n))


def _four_row(n: int, second_half: Sequence[int]) -> list[list[int]]:
    # 1-indexed columns j = 1..n; index 0 of each list is unused.
    m = n // 2
    top = [0] * (n + 1)
    mid = [0] * (n + 1)
    for j in range(1, m + 1):
        top[j] = j
        mid[j] = second_half[j - 1]
    for j in range(m + 1, n + 1):
        top[j] = (n + 1) - top[n + 1 - j]
        mid[j] = (n + 1) - mid[n + 1 - j]
    rows = [top[1:], mid[1:]]
    rows.append([mid[n + 1 - j] for j in range(1, n + 1)])
    rows.append([top[n + 1 - j] for j in range(1, n + 1)])
    return [[x - 1 for x in row] for row in rows]


def _check_even(n: int, forbidden_residue: int) -> int:
    if n < 4 or n % 2:
        raise ParameterError(f"n={n} must be even and at least 4")
    m = n // 2
    if m % 3 == forbidden_residue:
        raise ParameterError(f"n={n}: m={m} is {forbidden_residue} mod 3")
    return m


def florentine_even_a(n: int) -> FlorentineRect:
    """Four rows for ``n = 2m``, ``m != 1 (mod 3)``: the ramp, the doubling
    map mod ``n+1`` and their reversals."""
    m = _check_even(n, 1)
    second = [(2 * j) % (n + 1) for j in range(1, m + 1)]
    return _verified(FlorentineRect(n, _four_row(n, second), Construction.EVEN_A, n + 1))


def florentine_even_b(n: int) -> FlorentineRect:
    """Four rows for ``n = 2m``, ``m != 0 (mod 3)``; the second row starts at
    ``m`` and steps by two mod ``n``."""
    m = _check_even(n, 0)
    second = [1 + ((2 * (j - 1) + m - 1) % n) for j in range(1, m + 1)]
    return _verified(FlorentineRect(n, _four_row(n, second), Construction.EVEN_B, n + 1))


def _even_four_row(n: int) -> FlorentineRect:
    if (n // 2) % 3 == 1:
        return florentine_even_b(n)
    return florentine_even_a(n)


def florentine_odd(n: int) -> FlorentineRect:
    """Four rows for odd ``n >= 5``: an even four-row rectangle on ``n-1``
    symbols with a constant last column holding the new symbol ``n-1``."""
    if n < 5 or n % 2 == 0:
        raise ParameterError(f"n={n} must be odd and at least 5")
    base = _even_four_row(n - 1)
    rows = [list(row) + [n - 1] for row in base.rows]
    return _verified(FlorentineRect(n, rows, Construction.ODD_EXTENSION, n))


def strip_and_shift(rect: FlorentineRect) -> FlorentineRect:
    """Drop the all-zero column and relabel ``1..n`` to ``0..n-1``."""
    arr = rect.as_array()
    zero_cols = np.flatnonzero((arr == 0).all(axis=0))
    if zero_cols.size == 0:
        raise ParameterError("rectangle has no all-zero column")
    rows = np.delete(arr, zero_cols[0], axis=1) - 1
    return _verified(FlorentineRect(rect.n - 1, rows.tolist(), rect.construction, rect.source_modulus))


@dataclass(frozen=True)
class PermutationFamily:
    """The rows of a Florentine rectangle read as permutations of Z_n."""

    n: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        perms = tuple(tuple(int(x) for x in p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if not perms:
            raise ParameterError("empty permutation family")
        full = list(range(self.n))
        for i, p in enumerate(perms):
            if sorted(p) != full:
                raise ParameterError(f"permutation {i} is not a bijection on Z_{self.n}")

    @property
    def f_value(self) -> int:
        return len(self.perms)

    def as_array(self) -> np.ndarray:
        return np.array(self.perms, dtype=np.int64)

    @classmethod
    def from_rect(cls, rect: FlorentineRect) -> "PermutationFamily":
        return cls(rect.n, rect.rows)

    def shift_solution_counts(self, k1: int, k2: int) -> np.ndarray:
        """``out[tau]`` = number of ``j`` with ``perm_k1[j] == perm_k2[j + tau]``
        and ``0 <= j + tau < n``, by direct enumeration."""
        p1 = np.asarray(self.perms[k1])
        p2 = np.asarray(self.perms[k2])
        eq = p1[:, None] == p2[None, :]
        return np.array([np.trace(eq, offset=tau) for tau in range(self.n)], dtype=np.int64)

    def pair_unique(self) -> bool:
        """At most one solution per shift for every pair of distinct permutations."""
        for k1 in range(self.f_value):
            for k2 in range(self.f_value):
                if k1 != k2 and self.shift_solution_counts(k1, k2).max() > 1:
                    return False
        return True


def _candidates(n: int) -> Iterator[tuple[int, Callable[[], FlorentineRect]]]:
    # Yielded in precedence order; the first candidate with the most rows wins.
    if is_prime(n + 1) and n + 1 > 2:
        yield n, lambda: vatican_from_prime(n + 1)
    if is_prime(n) and n > 2:
        yield n - 1, lambda: _prime_with_zero_column(n)
    p0 = smallest_prime_factor(n)
    e0 = smallest_prime_factor(n + 1)
    if max(p0, e0) >= 5:
        yield p0 - 1, lambda: florentine_mult_table(n)
        yield e0 - 1, lambda: strip_and_shift(florentine_mult_table(n + 1))
    if n >= 4:
        yield 4, lambda: _even_four_row(n) if n % 2 == 0 else florentine_odd(n)
    if n == 3:
        yield 2, lambda: florentine_mult_table(3)


def _prime_with_zero_column(p: int) -> FlorentineRect:
    units = np.arange(1, p)
    square = np.outer(units, units) % p
    rows = np.hstack([np.zeros((p - 1, 1), dtype=square.dtype), square])
    return _verified(FlorentineRect(p, rows.tolist(), Construction.PRIME_VATICAN, p))


def best_florentine(n: int) -> tuple[FlorentineRect, PermutationFamily]:
    """The largest systematically constructible Florentine rectangle on n symbols.

    Its row count is the F(n) used everywhere else in the package.
    """
    if n < 2:
        raise ParameterError("n must be at least 2")
    if n == 2:
        rect = _verified(FlorentineRect(2, [[0, 1], [1, 0]], Construction.PRIME_VATICAN, 3))
        return rect, PermutationFamily.from_rect(rect)
    rows, build = max(_candidates(n), key=lambda c: c[0])
    rect = build()
    if rect.r != rows:
        raise ConstructionError(f"expected {rows} rows for n={n}, got {rect.r}")
    return rect, PermutationFamily.from_rect(rect)


def f_value(n: int) -> int:
    """F(n) without materialising the rectangle."""
    if n == 2:
        return 2
    return max(rows for rows, _ in _candidates(n))


@dataclass
class SearchResult:
    rows_found: int
    rect: FlorentineRect
    proven: bool
    nodes: int = field(default=0)


SEARCH_CAP = 8


def max_florentine_search(
    n: int, row_limit: int | None = None, budget: int | None = None, cap: int = SEARCH_CAP
) -> SearchResult:
    """Backtracking search for a Florentine rectangle with as many rows as possible.

    Symbols are relabelled so the first row is the identity and later rows
    are kept in increasing lexicographic order. The search stops early once
    ``n`` rows are found (no Florentine rectangle has more). ``proven`` is
    False when ``budget`` nodes ran out before the tree was exhausted.
    """
    if n < 2 or n > cap:
        raise ParameterError(f"search supports 2 <= n <= {cap}")
    limit = n if row_limit is None else min(row_limit, n)
    used: set[tuple[int, int, int]] = set()
    rows: list[list[int]] = []
    best: list[list[int]] = []
    nodes = 0

    class _OutOfBudget(Exception):
        pass

    def add(row, mark):
        for u in range(n):
            for t in range(u + 1, n):
                key = (row[u], row[t], t - u)
                if mark:
                    used.add(key)
                else:
                    used.discard(key)

    def perms_after(prev):
        row = [0] * n
        free = [True] * n

        def place(t, tight):
            nonlocal nodes
            nodes += 1
            if budget is not None and nodes > budget:
                raise _OutOfBudget
            if t == n:
                if not tight:
                    yield list(row)
                return
            lo = prev[t] if tight else 0
            for sym in range(lo, n):
                if not free[sym]:
                    continue
                if any((row[u], sym, t - u) in used for u in range(t)):
                    continue
                row[t] = sym
                free[sym] = False
                yield from place(t + 1, tight and sym == prev[t])
                free[sym] = True

        yield from place(0, True)

    def extend():
        nonlocal best
        if len(rows) > len(best):
            best = [list(r) for r in rows]
        if len(best) >= limit:
            return True
        for row in perms_after(rows[-1]):
            rows.append(row)
            add(row, True)
            done = extend()
            add(row, False)
            rows.pop()
            if done:
                return True
        return False

    identity = list(range(n))
    rows.append(identity)
    add(identity, True)
    try:
        extend()
        exhausted = True
    except _OutOfBudget:
        exhausted = False
    rect = _verified(FlorentineRect(n, best, Construction.HANDMADE, n))
    # n rows is the absolute maximum; otherwise only a finished search proves it.
    proven = len(best) == n or (exhausted and len(best) < limit)
    return SearchResult(len(best), rect, proven, nodes)
