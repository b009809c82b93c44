from __future__ import annotations

import logging
import math
from itertools import combinations, permutations
from typing import Iterator, List, Optional, Sequence

import numpy as np

from .domain import CapExceededError, CoverageSummary
from .utils import parallel_map

logger = logging.getLogger(__name__)

FULL_COUNT_CAP = 5
REDUCED_COUNT_CAP = 6
MOLS_COUNT_CAP = 4
SATURATION = 3
VIOLATION_SAMPLE = 10
CHUNK = 1 << 16


class CoverageMap:
    """Occurrence counters over all t-subsets of [0, v), ranked in colex order.

    A sorted subset c_1 < ... < c_t has rank sum C(c_i, i). Counters saturate at 3,
    which is enough to tell 0, 1 and "more than once" apart; the exact total is kept
    separately.
    """

    def __init__(self, v: int, t: int):
        if t < 1 or v < t:
            raise ValueError(f"no {t}-subsets of {v} points")
        self.v = v
        self.t = t
        self.binom = np.array([[math.comb(n, k) for k in range(t + 1)] for n in range(v + 1)], dtype=np.int64)
        self.size = int(self.binom[v, t])
        self.counts = np.zeros(self.size, dtype=np.uint8)
        self.total = 0

    def rank(self, subsets: np.ndarray) -> np.ndarray:
        subsets = np.sort(np.asarray(subsets, dtype=np.int64).reshape(-1, self.t), axis=1)
        ranks = np.zeros(len(subsets), dtype=np.int64)
        for i in range(self.t):
            ranks += self.binom[subsets[:, i], i + 1]
        return ranks

    def unrank(self, ranks) -> np.ndarray:
        ranks = np.asarray(ranks, dtype=np.int64).copy()
        out = np.empty((len(ranks), self.t), dtype=np.int64)
        for i in range(self.t, 0, -1):
            c = np.searchsorted(self.binom[:, i], ranks, side="right") - 1
            out[:, i - 1] = c
            ranks -= self.binom[c, i]
        return out

    def _chunk_counts(self, blocks: np.ndarray) -> np.ndarray:
        counts = np.zeros(self.size, dtype=np.int64)
        for positions in combinations(range(blocks.shape[1]), self.t):
            counts += np.bincount(self.rank(blocks[:, positions]), minlength=self.size)
        return counts

    def add_blocks(self, blocks, n_jobs: Optional[int] = None) -> "CoverageMap":
        blocks = np.sort(np.asarray(blocks, dtype=np.int64), axis=1) if len(blocks) else np.empty((0, self.t), np.int64)
        if len(blocks) == 0:
            return self
        if blocks.min() < 0 or blocks.max() >= self.v:
            raise ValueError(f"block points outside [0, {self.v})")
        if (np.diff(blocks, axis=1) == 0).any():
            raise ValueError("block with a repeated point")
        chunks = [blocks[i:i + CHUNK] for i in range(0, len(blocks), CHUNK)]
        for counts in parallel_map(self._chunk_counts, chunks, n_jobs):
            self.counts = np.minimum(self.counts + np.minimum(counts, SATURATION), SATURATION).astype(np.uint8)
        self.total += len(blocks) * math.comb(blocks.shape[1], self.t)
        return self

    def all_subsets(self) -> np.ndarray:
        return self.unrank(np.arange(self.size))

    def summary(self, mask: Optional[np.ndarray] = None) -> CoverageSummary:
        inside = np.ones(self.size, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
        counts = self.counts[inside]
        histogram = np.bincount(counts, minlength=SATURATION + 1)
        wrong = np.flatnonzero(inside & (self.counts != 1))[:VIOLATION_SAMPLE]
        violations = [tuple(int(x) for x in s) for s in self.unrank(wrong)] if len(wrong) else []
        excluded_hits = int(np.count_nonzero(self.counts[~inside])) if mask is not None else 0
        return CoverageSummary(
            universe=int(inside.sum()),
            arity=self.t,
            minimum=int(counts.min()) if len(counts) else 0,
            maximum=int(counts.max()) if len(counts) else 0,
            histogram={k: int(n) for k, n in enumerate(histogram) if n},
            violations=violations,
            excluded_hits=excluded_hits,
            total=self.total,
        )

    # subset universes

    def transverse_mask(self, group_of: Sequence[int]) -> np.ndarray:
        """Subsets with all points in distinct groups (group -1: point in no group, excluded)."""
        labels = np.asarray(group_of, dtype=np.int64)[self.all_subsets()]
        ordered = np.sort(labels, axis=1)
        return (ordered[:, 0] >= 0) & (np.diff(ordered, axis=1) != 0).all(axis=1)

    def cross_mask(self, column_of: Sequence[int]) -> np.ndarray:
        """Subsets not inside a single column; label -1 marks points shared by every column."""
        labels = np.asarray(column_of, dtype=np.int64)[self.all_subsets()]
        filled = np.where(labels < 0, labels.max(axis=1, keepdims=True), labels)
        return filled.min(axis=1) != filled.max(axis=1)


def audit(blocks, v: int, t: int, mask: Optional[np.ndarray] = None, n_jobs: Optional[int] = None) -> CoverageSummary:
    coverage = CoverageMap(v, t).add_blocks(blocks, n_jobs)
    return coverage.summary(mask)


# latin square enumeration

def _permutations(q: int) -> np.ndarray:
    return np.array(list(permutations(range(q))), dtype=np.int64).reshape(-1, q)


def _extend_rows(perms: np.ndarray, used: np.ndarray, remaining: int, first_symbols: Optional[List[int]]) -> int:
    """Count completions of a latin rectangle given used[column, symbol]."""
    if remaining == 0:
        return 1
    q = perms.shape[1]
    ok = ~used[np.arange(q), perms].any(axis=1)
    if first_symbols is not None:
        ok &= perms[:, 0] == first_symbols[0]
    total = 0
    for perm in perms[ok]:
        used[np.arange(q), perm] = True
        total += _extend_rows(perms, used, remaining - 1, first_symbols[1:] if first_symbols is not None else None)
        used[np.arange(q), perm] = False
    return total


def count_latin_squares(q: int, reduced: bool = False, n_jobs: Optional[int] = None) -> int:
    """Row backtracking with the first row fixed to the identity.

    Symbol relabelling acts freely and every orbit holds one square with the identity as
    first row, so full counts are q! times the normalized count. Reduced counts also fix
    the first column.
    """
    cap = REDUCED_COUNT_CAP if reduced else FULL_COUNT_CAP
    if q > cap:
        raise CapExceededError(f"latin square counting is capped at q={cap}")
    if q <= 1:
        return 1
    perms = _permutations(q)
    used = np.zeros((q, q), dtype=bool)
    used[np.arange(q), np.arange(q)] = True
    firsts = list(range(1, q)) if reduced else None
    second = perms[~used[np.arange(q), perms].any(axis=1)]
    if reduced:
        second = second[second[:, 0] == 1]

    def branch(perm: np.ndarray) -> int:
        local = used.copy()
        local[np.arange(q), perm] = True
        return _extend_rows(perms, local, q - 2, firsts[1:] if firsts is not None else None)

    normalized = sum(parallel_map(branch, list(second), n_jobs))
    result = normalized if reduced else normalized * math.factorial(q)
    logger.debug(f"latin squares of order {q} (reduced={reduced}): {result}")
    return result


def _disjoint_permutations(perms: np.ndarray, chosen: np.ndarray, remaining: int) -> int:
    """Count ordered extensions by permutations disjoint from all chosen ones (chosen[row, col])."""
    if remaining == 0:
        return 1
    q = perms.shape[1]
    ok = ~chosen[np.arange(q), perms].any(axis=1)
    total = 0
    for perm in perms[ok]:
        chosen[np.arange(q), perm] = True
        total += _disjoint_permutations(perms, chosen, remaining - 1)
        chosen[np.arange(q), perm] = False
    return total


def count_latin_squares_by_symbols(q: int) -> int:
    """Symbol-major enumeration: a square is q disjoint permutation matrices.

    The cells of symbol 0 are fixed to the diagonal; column permutations act freely on
    that choice, so the full count is q! times the diagonal count.
    """
    if q > FULL_COUNT_CAP:
        raise CapExceededError(f"latin square counting is capped at q={FULL_COUNT_CAP}")
    if q <= 1:
        return 1
    perms = _permutations(q)
    chosen = np.eye(q, dtype=bool)
    return _disjoint_permutations(perms, chosen, q - 1) * math.factorial(q)


def latin_squares(q: int) -> Iterator[np.ndarray]:
    """Every latin square of order q, rows in lexicographic backtracking order."""
    if q > MOLS_COUNT_CAP:
        raise CapExceededError(f"latin square listing is capped at q={MOLS_COUNT_CAP}")
    perms = _permutations(q)
    used = np.zeros((q, q), dtype=bool)
    rows: List[np.ndarray] = []

    def walk() -> Iterator[np.ndarray]:
        if len(rows) == q:
            yield np.array(rows)
            return
        ok = ~used[np.arange(q), perms].any(axis=1)
        for perm in perms[ok]:
            used[np.arange(q), perm] = True
            rows.append(perm)
            yield from walk()
            rows.pop()
            used[np.arange(q), perm] = False

    yield from walk()


def count_mols_pairs(q: int) -> int:
    """Ordered orthogonal pairs among all latin squares of order q."""
    if q > MOLS_COUNT_CAP:
        raise CapExceededError(f"MOLS pair counting is capped at q={MOLS_COUNT_CAP}")
    squares = np.array([sq.ravel() for sq in latin_squares(q)], dtype=np.int64)
    if len(squares) == 0:
        return 0
    total = 0
    for first in squares:
        keys = np.sort(first[None, :] * q + squares, axis=1)
        total += int((np.diff(keys, axis=1) != 0).all(axis=1).sum())
    return total


def transversals(square: np.ndarray) -> np.ndarray:
    """All permutations sigma with square[i, sigma(i)] pairwise distinct, as rows."""
    square = np.asarray(square)
    q = square.shape[0]
    perms = _permutations(q)
    symbols = np.sort(square[np.arange(q), perms], axis=1)
    return perms[(np.diff(symbols, axis=1) != 0).all(axis=1)]


def count_transversals(square: np.ndarray) -> int:
    return int(len(transversals(square)))


def count_mols_pairs_by_transversals(q: int) -> int:
    """Mates of a square are ordered partitions of its cells into q disjoint transversals."""
    if q > MOLS_COUNT_CAP:
        raise CapExceededError(f"MOLS pair counting is capped at q={MOLS_COUNT_CAP}")
    total = 0
    for square in latin_squares(q):
        options = transversals(square)
        total += _disjoint_permutations(options, np.zeros((q, q), dtype=bool), q)
    return total
