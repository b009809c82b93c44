from __future__ import annotations

import logging
import math
import os
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .designs import bbd_build, verify_bbd
from .domain import (
    BBD,
    SQS,
    ConstructionError,
    SearchResult,
    Sqs8n2Ingredients,
    Sqs8n2Result,
    VerificationReport,
)
from .gf import Field, is_prime
from .mds import extend_code_to_distance2, linear_mds, restrict, verify_mds
from .oracle import CoverageMap
from .utils import DEFAULT_SEED

logger = logging.getLogger(__name__)

BACKTRACK_MAX_ORDER = 16
DEFAULT_SEARCH_BUDGET = 2_000_000
E1, E2 = 8, 9  # the two extra points of SQS(10)

# found blocks or None, steps, blocks placed, triples covered
SearchState = Tuple[Optional[List[Tuple[int, ...]]], int, int, int]


def sqs_block_count(v: int) -> int:
    return v * (v - 1) * (v - 2) // 24


def admissible_order(v: int) -> bool:
    return v % 6 in (2, 4)


def _coverage_report(kind: str, coverage: CoverageMap, stats: Dict[str, object]) -> VerificationReport:
    summary = coverage.summary()
    report = VerificationReport(kind, checked=summary.universe, stats=dict(stats))
    report.stats.update({"min": summary.minimum, "max": summary.maximum})
    if summary.histogram.get(0):
        report.stats["uncovered"] = summary.histogram[0]
    for subset in summary.violations:
        count = int(coverage.counts[coverage.rank(np.array([subset]))[0]])
        report.fail(triple=subset, count=count)
    return report


def verify_sqs(s: SQS) -> VerificationReport:
    """Every triple in exactly one block, and v(v-1)(v-2)/24 blocks."""
    blocks = np.asarray(s.blocks, dtype=np.int64).reshape(-1, 4)
    if s.v < 3:
        report = VerificationReport("sqs", stats={"v": s.v, "blocks": len(blocks)})
        return report if len(blocks) == 0 else report.fail(reason="blocks-without-triples")
    coverage = CoverageMap(s.v, 3).add_blocks(blocks)
    report = _coverage_report("sqs", coverage, {"v": s.v, "blocks": len(blocks)})
    report.checked += 1
    if len(blocks) and not admissible_order(s.v):
        report.fail(reason="order", v=s.v, residue=s.v % 6)
    if len(blocks) != sqs_block_count(s.v):
        report.fail(reason="block-count", found=len(blocks), expected=sqs_block_count(s.v))
    return report


def verify_steiner3(v: int, blocks: Sequence[Sequence[int]], sizes: Tuple[int, ...] = (4, 6)) -> VerificationReport:
    """S(3, K, v): blocks with sizes in K, every triple exactly once."""
    coverage = CoverageMap(v, 3)
    by_size: Dict[int, List[Sequence[int]]] = {}
    for block in blocks:
        if len(block) not in sizes:
            raise ValueError(f"block {tuple(block)} has a size outside {sizes}")
        by_size.setdefault(len(block), []).append(block)
    for group in by_size.values():
        coverage.add_blocks(np.array(group))
    stats = {"v": v, "blocks": len(blocks), "sizes": tuple(sorted(by_size))}
    return _coverage_report("steiner3", coverage, stats)


def boolean_sqs(a: int) -> SQS:
    """Points GF(2)^a; blocks are the 4-sets with zero XOR."""
    if a < 3:
        raise ConstructionError("Boolean SQS needs a >= 3")
    v = 2 ** a
    triples = np.array(list(combinations(range(v), 3)), dtype=np.int64)
    fourth = triples[:, 0] ^ triples[:, 1] ^ triples[:, 2]
    keep = fourth > triples[:, 2]
    return SQS.from_blocks(v, np.hstack([triples[keep], fourth[keep][:, None]]))


# search

class _Partial:
    """Blocks placed so far with the triple -> block index."""

    def __init__(self, v: int):
        self.v = v
        self.owner: Dict[Tuple[int, int, int], Tuple[int, ...]] = {}
        self.blocks: Set[Tuple[int, ...]] = set()

    def free(self, block: Tuple[int, ...]) -> bool:
        return all(t not in self.owner for t in combinations(block, 3))

    def add(self, block: Tuple[int, ...]) -> None:
        self.blocks.add(block)
        for t in combinations(block, 3):
            self.owner[t] = block

    def remove(self, block: Tuple[int, ...]) -> None:
        self.blocks.discard(block)
        for t in combinations(block, 3):
            del self.owner[t]


def _backtrack(v: int, rng: np.random.Generator, budget: int) -> SearchState:
    """Exact search; on failure the deepest partial system reached is reported."""
    partial = _Partial(v)
    triples = list(combinations(range(v), 3))
    steps = 0
    best = 0

    def first_uncovered(start: int) -> int:
        for i in range(start, len(triples)):
            if triples[i] not in partial.owner:
                return i
        return len(triples)

    def solve(start: int) -> bool:
        nonlocal steps, best
        index = first_uncovered(start)
        if index == len(triples):
            return True
        steps += 1
        if steps > budget:
            return False
        a, b, c = triples[index]
        candidates = [w for w in rng.permutation(v).tolist() if w not in (a, b, c)]
        for w in candidates:
            block = tuple(sorted((a, b, c, w)))
            if partial.free(block):
                partial.add(block)
                best = max(best, len(partial.blocks))
                if solve(index + 1):
                    return True
                partial.remove(block)
                if steps > budget:
                    return False
        return False

    found = solve(0)
    return (sorted(partial.blocks) if found else None), steps, best, 4 * best


def _clashing_blocks(partial: _Partial, triple: Tuple[int, int, int], w: int) -> Set[Tuple[int, ...]]:
    a, b, c = triple
    found = set()
    for pair in ((a, b), (a, c), (b, c)):
        owner = partial.owner.get(tuple(sorted(pair + (w,))))
        if owner is not None:
            found.add(owner)
    return found


def _hill_climb(v: int, rng: np.random.Generator, budget: int) -> SearchState:
    """Close an uncovered triple with a fourth point whose block clashes with at most one block.

    The clashing block is evicted. Triples with no such fourth point are skipped; after
    `v` skips in a row one triple is closed against two clashes, losing a block.
    """
    partial = _Partial(v)
    uncovered: Set[Tuple[int, int, int]] = set(combinations(range(v), 3))
    target = sqs_block_count(v)
    best = 0
    steps = 0
    stalls = 0
    while uncovered and steps < budget:
        steps += 1
        pool = sorted(uncovered) if len(uncovered) < 64 else None
        triple = pool[int(rng.integers(len(pool)))] if pool else _random_uncovered(uncovered, v, rng)
        options: Dict[int, List[Tuple[int, Set[Tuple[int, ...]]]]] = {0: [], 1: [], 2: [], 3: []}
        for w in range(v):
            if w not in triple:
                clash = _clashing_blocks(partial, triple, w)
                options[len(clash)].append((w, clash))
        moves = options[0] or options[1]
        if not moves:
            stalls += 1
            if stalls < v:
                continue
            moves = options[2]
        stalls = 0
        w, clash = moves[int(rng.integers(len(moves)))]
        for old in clash:
            partial.remove(old)
            uncovered.update(combinations(old, 3))
        block = tuple(sorted(triple + (w,)))
        partial.add(block)
        uncovered.difference_update(combinations(block, 3))
        if len(partial.blocks) > best:
            best = len(partial.blocks)
            if best % 100 == 0:
                logger.debug(f"hill climb v={v}: {best}/{target} blocks after {steps} steps")
    covered = math.comb(v, 3) - len(uncovered)
    return (sorted(partial.blocks) if not uncovered else None), steps, len(partial.blocks), covered


def _random_uncovered(uncovered: Set[Tuple[int, int, int]], v: int, rng: np.random.Generator) -> Tuple[int, int, int]:
    while True:
        triple = tuple(sorted(int(x) for x in rng.choice(v, size=3, replace=False)))
        if triple in uncovered:
            return triple  # type: ignore[return-value]


def search_sqs(v: int, seed: int = DEFAULT_SEED, budget: int = DEFAULT_SEARCH_BUDGET,
               method: Optional[str] = None) -> SearchResult:
    """Backtracking for small orders, conflict-repair hill climbing above."""
    if v < 2 or not admissible_order(v):
        raise ConstructionError(f"no SQS of order {v}: v must be 2 or 4 mod 6")
    method = method or ("backtrack" if v <= BACKTRACK_MAX_ORDER else "hillclimb")
    if method not in ("backtrack", "hillclimb"):
        raise ValueError(f"unknown search method {method}")
    triples_total = math.comb(v, 3)
    if v < 4:
        return SearchResult(v, seed, method, 0, 0, 0, triples_total, SQS.from_blocks(v, []))
    rng = np.random.default_rng(seed)
    runner = _backtrack if method == "backtrack" else _hill_climb
    blocks, steps, placed, covered = runner(v, rng, budget)
    if blocks is None:
        logger.info(f"search for SQS({v}) stopped after {steps} steps with {placed} blocks")
        return SearchResult(v, seed, method, steps, placed, covered, triples_total, None)
    sqs = SQS.from_blocks(v, blocks)
    verify_sqs(sqs).require()
    logger.info(f"found SQS({v}) by {method} in {steps} steps")
    return SearchResult(v, seed, method, steps, len(blocks), triples_total, triples_total, sqs)


def sqs10_with_spread(seed: int = DEFAULT_SEED) -> SQS:
    """SQS(10) whose blocks through {8, 9} are {2i, 2i+1, 8, 9}, i = 0..3."""
    result = search_sqs(10, seed)
    if result.sqs is None:
        raise ConstructionError("SQS(10) search failed")  # pragma: no cover
    through = [b for b in result.sqs.blocks.tolist() if b[0] == 0 and b[1] == 1]
    relabel = {0: E1, 1: E2}
    for i, block in enumerate(sorted(through)):
        relabel[block[2]] = 2 * i
        relabel[block[3]] = 2 * i + 1
    blocks = [[relabel[p] for p in b] for b in result.sqs.blocks.tolist()]
    sqs = SQS.from_blocks(10, blocks)
    verify_sqs(sqs).require()
    if spread_violations(sqs):
        raise ConstructionError("relabelled SQS(10) lost its spread")  # pragma: no cover
    return sqs


def spread_violations(s10: SQS) -> List[int]:
    return [i for i in range(4) if (2 * i, 2 * i + 1, E1, E2) not in s10.block_set]


def double_sqs(s: SQS, s2: SQS, bbd: BBD) -> SQS:
    """s on the first group, s2 on the second, plus the BBD blocks."""
    n = s.v
    if s2.v != n or bbd.n != 2 * n or len(bbd.g1) != n or len(bbd.g2) != n:
        raise ConstructionError("doubling needs two SQS(n) and a BBD on their 2n points")
    if n % 2:
        raise ConstructionError("doubling needs an even order")
    verify_sqs(s).require()
    verify_sqs(s2).require()
    verify_bbd(bbd).require()
    g1, g2 = np.asarray(bbd.g1), np.asarray(bbd.g2)
    blocks = np.vstack([g1[s.blocks], g2[s2.blocks], bbd.blocks])
    doubled = SQS.from_blocks(2 * n, blocks)
    logger.info(f"doubled SQS({n}) to SQS({2 * n}) with {len(doubled)} blocks")
    return doubled


# SQS(8n+2)

def prime_power(n: int) -> Tuple[int, int]:
    p = next((d for d in range(2, n + 1) if n % d == 0), None)
    k, rest = 0, n
    while p is not None and rest % p == 0:
        rest //= p
        k += 1
    if p is None or rest != 1 or not is_prime(p):
        raise ConstructionError(f"{n} is not a prime power")
    return p, k


def column_pairs() -> List[Tuple[int, int]]:
    """Ordered index pairs (s0, s1), s0 < s1, in different columns."""
    return [(s0, s1) for s0, s1 in combinations(range(8), 2) if s0 // 2 != s1 // 2]


def column_labels(n: int) -> np.ndarray:
    """Column of every point of Omega; the two extra points carry -1."""
    labels = np.repeat(np.arange(8) // 2, n)
    return np.concatenate([labels, [-1, -1]])


def load_d_map(n: int, ingredients_dir: Optional[str]) -> Optional[Dict[int, SQS]]:
    """SQS(2n+2) files sqs_<v>_<i>.txt, falling back to one shared sqs_<v>.txt."""
    from .formats import read_sqs_file

    if not ingredients_dir:
        return None
    v = 2 * n + 2
    shared = read_sqs_file(os.path.join(ingredients_dir, f"sqs_{v}.txt"))
    d_map: Dict[int, SQS] = {}
    for i in range(4):
        own = read_sqs_file(os.path.join(ingredients_dir, f"sqs_{v}_{i}.txt"))
        chosen = own or shared
        if chosen is None:
            logger.info(f"no SQS({v}) ingredient for column {i} in {ingredients_dir}")
            return None
        d_map[i] = chosen
    return d_map


def default_ingredients(n: int, ell: Optional[int] = None, ingredients_dir: Optional[str] = None,
                        seed: int = DEFAULT_SEED) -> Sqs8n2Ingredients:
    if n % 2 or n < 8:
        raise ConstructionError(f"SQS(8n+2) needs an even n >= 8, got {n}")
    p, k = prime_power(n)
    mds = linear_mds(Field(p, k), 8, 7)
    build = bbd_build(n, n // 4 if ell is None else ell)
    bbds = {pair: build.bbd for pair in column_pairs()}
    return Sqs8n2Ingredients(n, mds, bbds, boolean_sqs(3), sqs10_with_spread(seed), load_d_map(n, ingredients_dir))


def check_ingredients(ing: Sqs8n2Ingredients) -> None:
    n = ing.n
    if n % 2:
        raise ConstructionError(f"n must be even, got {n}")
    if ing.mds.d != 8 or ing.mds.rho != 7 or ing.mds.q != n:
        raise ConstructionError("the code must have length 8, distance 7 and order n")
    verify_mds(ing.mds).require()
    verify_sqs(ing.s8).require()
    verify_sqs(ing.s10).require()
    if ing.s8.v != 8 or ing.s10.v != 10 or spread_violations(ing.s10):
        raise ConstructionError("S8 must live on 8 points and S10 must carry the spread at {8, 9}")
    seen = set()
    for pair in column_pairs():
        bbd = ing.bbds.get(pair)
        if bbd is None or bbd.n != 2 * n:
            raise ConstructionError(f"missing BBD on 2n points for pair {pair}")
        if id(bbd) not in seen:
            verify_bbd(bbd).require()
            seen.add(id(bbd))


def _codeword_blocks(words: np.ndarray, n: int, pattern: Sequence[int]) -> np.ndarray:
    """Points s*n + b[s] of every codeword b, for the coordinates listed in `pattern`."""
    return np.stack([s * n + words[:, s] for s in pattern], axis=1)


def _family_r1(ing: Sqs8n2Ingredients) -> np.ndarray:
    n = ing.n
    out = []
    for block in ing.s8.blocks.tolist():
        extra = min(c for c in range(8) if c not in block)
        coords = sorted(block + [extra])
        five = restrict(ing.mds, coords)
        m_s, c_s = extend_code_to_distance2(five, coords.index(extra))
        fresh = np.array([w for w in c_s.words.tolist() if tuple(w) not in m_s.word_set], dtype=np.int64)
        out.append(fresh + (np.array(block) * n)[None, :])
    return np.vstack(out)


def _family_r2(ing: Sqs8n2Ingredients) -> np.ndarray:
    n = ing.n
    words = np.asarray(ing.mds.words)
    out = []
    for block in ing.s10.blocks.tolist():
        inner = [s for s in block if s < 8]
        if len(inner) == 4:
            out.append(_codeword_blocks(words, n, inner))
        elif len(inner) == 3:
            extra = 8 * n + (block[3] - E1)
            out.append(np.hstack([_codeword_blocks(words, n, inner), np.full((len(words), 1), extra)]))
    return np.vstack(out)


def _family_r3(ing: Sqs8n2Ingredients) -> np.ndarray:
    n = ing.n
    out = []
    for s0, s1 in column_pairs():
        bbd = ing.bbds[(s0, s1)]
        local = np.empty(bbd.n, dtype=np.int64)
        local[list(bbd.g1)] = s0 * n + np.arange(n)
        local[list(bbd.g2)] = s1 * n + np.arange(n)
        out.append(local[bbd.blocks])
    return np.vstack(out)


def _family_r4(ing: Sqs8n2Ingredients) -> np.ndarray:
    n = ing.n
    out = []
    for i in range(4):
        d = ing.d[i]
        if d.v != 2 * n + 2:
            raise ConstructionError(f"D_{i} must have order {2 * n + 2}")
        verify_sqs(d).require()
        local = np.concatenate([2 * i * n + np.arange(2 * n), [8 * n, 8 * n + 1]])
        out.append(local[d.blocks])
    return np.vstack(out)


def expected_family_sizes(n: int) -> Dict[str, int]:
    return {
        "R1": 14 * (n ** 3 - n ** 2),
        "R2": 26 * n ** 2,
        "R3": 6 * n ** 2 * (n - 1),
        "R4": (2 * n + 2) * (2 * n + 1) * n // 3,
    }


def build_8n2(ing: Sqs8n2Ingredients, mode: str = "partial") -> Sqs8n2Result:
    """Assemble the families R1..R4 of an SQS(8n+2) and audit the union.

    Group (i, delta) is index s = 2i + delta and owns the points s*n .. s*n + n - 1;
    the extra points are 8n and 8n + 1. Partial mode leaves the triples inside each
    column set A(i,0) + A(i,1) + {8n, 8n+1} uncovered; full mode fills them with D_i.
    """
    if mode not in ("partial", "full"):
        raise ValueError(f"unknown mode {mode}")
    if mode == "full" and ing.d is None:
        raise ConstructionError("full mode needs the SQS(2n+2) ingredients")
    check_ingredients(ing)
    n = ing.n
    v = 8 * n + 2
    families = {"R1": _family_r1(ing), "R2": _family_r2(ing), "R3": _family_r3(ing)}
    if mode == "full":
        families["R4"] = _family_r4(ing)
    for name, blocks in families.items():
        logger.info(f"family {name}: {len(blocks)} blocks")
    blocks = np.vstack(list(families.values()))
    expected = expected_family_sizes(n)
    sqs = None
    if mode == "full":
        sqs = SQS.from_blocks(v, blocks)
        report = verify_sqs(sqs)
    else:
        coverage = CoverageMap(v, 3).add_blocks(blocks)
        summary = coverage.summary(coverage.cross_mask(column_labels(n)))
        report = VerificationReport("sqs-8n2-partial", checked=summary.universe,
                                    stats={"v": v, "min": summary.minimum, "max": summary.maximum})
        for triple in summary.violations:
            report.fail(triple=triple)
        if summary.excluded_hits:
            report.fail(reason="intra-column-covered", hits=summary.excluded_hits)
    report.stats["n"] = n
    for name, found in ((k, len(b)) for k, b in families.items()):
        report.stats[name] = found
        if found != expected[name]:
            report.fail(reason="family-size", family=name, found=found, expected=expected[name])
    return Sqs8n2Result(n, mode, families, blocks, report, sqs)

