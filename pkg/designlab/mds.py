from __future__ import annotations

import logging
from itertools import combinations
from typing import Optional, Sequence, Tuple

import numpy as np

from .domain import (
    Code,
    ConstructionError,
    HDesign,
    LatinHypercube,
    LinearForm,
    OrthogonalSystem,
    Subcode,
    VerificationReport,
)
from .gf import Field
from .latin import check_orthogonal, verify_latin
from .utils import parallel_map

logger = logging.getLogger(__name__)

PAIRWISE_DISTANCE_LIMIT = 10 ** 4


def _messages(q: int, m: int) -> np.ndarray:
    """All of [0, q)^m in lexicographic order, shape (q^m, m)."""
    return np.indices((q,) * m).reshape(m, -1).T.astype(np.int64)


def code_from_generator(field: Field, generator: np.ndarray, rho: int) -> Code:
    """Words uG for every message u in GF(q)^m."""
    generator = np.asarray(generator, dtype=np.int64)
    m, d = generator.shape
    messages = _messages(field.q, m)
    words = np.zeros((len(messages), d), dtype=np.int64)
    for i in range(m):
        words = field.add_array(words, field.mul_array(messages[:, i:i + 1], generator[i][None, :]))
    return Code.from_words(d, field.q, rho, words, LinearForm(field, generator))


def _evaluation_generator(field: Field, points: Sequence[int], m: int, infinity: bool) -> np.ndarray:
    columns = []
    for x in points:
        columns.append([field.pow(x, i) for i in range(m)])
    if infinity:
        columns.append([0] * (m - 1) + [1])
    return np.array(columns, dtype=np.int64).T


def linear_mds(field: Field, d: int, rho: int) -> Code:
    """Linear MDS code of length d and distance rho over GF(p^k).

    Parity (rho=2) and repetition (rho=d) codes exist for every d. For 3 <= rho <= p and
    d <= p+1 the code evaluates polynomials of degree < m at points of the prime subfield,
    so its coefficients stay in GF(p). Otherwise the same evaluation runs over the whole
    field, which needs d <= q+1.
    """
    if d < 2 or not 2 <= rho <= d:
        raise ConstructionError(f"no code of length {d} with distance {rho}")
    m = d - rho + 1
    p, q = field.p, field.q
    if rho == d:
        generator = np.ones((1, d), dtype=np.int64)
    elif rho == 2:
        generator = np.hstack([np.eye(d - 1, dtype=np.int64), np.ones((d - 1, 1), dtype=np.int64)])
    elif 3 <= rho <= p and d <= p + 1:
        generator = _evaluation_generator(field, range(min(d, p)), m, infinity=d == p + 1)
    elif d <= q + 1:
        generator = _evaluation_generator(field, range(min(d, q)), m, infinity=d == q + 1)
    else:
        raise ConstructionError(f"no linear MDS code of length {d}, distance {rho} over GF({q})")
    code = code_from_generator(field, generator, rho)
    logger.info(f"linear MDS code d={d} rho={rho} q={q}: {len(code)} words")
    return code


def _projection_collision(words: np.ndarray, q: int, coords: Tuple[int, ...]) -> Optional[Tuple[int, int]]:
    keys = np.zeros(len(words), dtype=np.int64)
    for c in coords:
        keys = keys * q + words[:, c]
    order = np.argsort(keys, kind="stable")
    same = np.flatnonzero(np.diff(keys[order]) == 0)
    if len(same):
        return int(order[same[0]]), int(order[same[0] + 1])
    return None


def verify_mds(code: Code, n_jobs: Optional[int] = None) -> VerificationReport:
    """Cardinality q^m plus injectivity of every projection onto m coordinates."""
    words = np.asarray(code.words)
    if words.ndim != 2 or words.shape[1] != code.d:
        raise ValueError(f"words of shape {words.shape} do not have length {code.d}")
    if len(words) and (words.min() < 0 or words.max() >= code.q):
        raise ValueError(f"symbols outside [0, {code.q})")
    m = code.m
    report = VerificationReport("mds", stats={"d": code.d, "q": code.q, "rho": code.rho, "words": len(words)})
    report.checked += 1
    if m < 1:
        return report.fail(reason="distance exceeds length")
    expected = code.q ** m
    if len(words) != expected:
        report.fail(reason="cardinality", found=len(words), expected=expected)
    subsets = list(combinations(range(code.d), m))
    collisions = parallel_map(lambda coords: _projection_collision(words, code.q, coords), subsets, n_jobs)
    report.checked += len(subsets)
    for coords, pair in zip(subsets, collisions):
        if pair is not None:
            report.fail(projection=coords, first=tuple(words[pair[0]].tolist()), second=tuple(words[pair[1]].tolist()))
            break
    return report


def min_distance(code: Code, chunk: int = 256) -> int:
    words = np.asarray(code.words)
    if len(words) > PAIRWISE_DISTANCE_LIMIT:
        raise ValueError(f"pairwise distance is limited to {PAIRWISE_DISTANCE_LIMIT} words")
    best = code.d
    for start in range(0, len(words), chunk):
        block = words[start:start + chunk]
        dist = (block[:, None, :] != words[None, :, :]).sum(axis=2)
        rows = np.arange(len(block))
        dist[rows, start + rows] = code.d + 1
        best = min(best, int(dist.min()))
    return best


def is_additively_closed(code: Code, field: Field, pairs: Optional[int] = None, seed: int = 0) -> bool:
    """Closure of the word set under coordinate-wise field addition, on all or on sampled pairs."""
    words = np.asarray(code.words)
    if pairs is None:
        left = np.repeat(words, len(words), axis=0)
        right = np.tile(words, (len(words), 1))
    else:
        rng = np.random.default_rng(seed)
        left = words[rng.integers(0, len(words), pairs)]
        right = words[rng.integers(0, len(words), pairs)]
    sums = field.add_array(left, right)
    return all(tuple(w) in code.word_set for w in sums.tolist())


def restrict(code: Code, coords: Sequence[int]) -> Code:
    coords = list(coords)
    rho = code.rho - (code.d - len(coords))
    if rho < 1:
        raise ConstructionError(f"restriction to {len(coords)} coordinates loses the distance")
    linear = None
    if code.linear is not None:
        linear = LinearForm(code.linear.field, code.linear.generator[:, coords])
    return Code.from_words(len(coords), code.q, rho, code.words[:, coords], linear)


def project(code: Code, drop: int) -> Code:
    """Delete one coordinate; distance drops by one."""
    if code.rho < 3:
        raise ConstructionError("projection needs distance at least 3")
    if not 0 <= drop < code.d:
        raise ValueError(f"coordinate {drop} out of range")
    return restrict(code, [c for c in range(code.d) if c != drop])


def to_orthogonal_system(code: Code, s: int) -> OrthogonalSystem:
    if s != code.m:
        raise ConstructionError(f"arity {s} differs from d - rho + 1 = {code.m}")
    q = code.q
    words = np.asarray(code.words)
    functions = []
    args = tuple(words[:, i] for i in range(s))
    for c in range(s, code.d):
        f = np.full((q,) * s, -1, dtype=np.int64)
        f[args] = words[:, c]
        if (f < 0).any():
            raise ValueError("the first coordinates do not determine the words")
        functions.append(f)
    return OrthogonalSystem(s, q, tuple(functions), strong=True)


def from_orthogonal_system(system: OrthogonalSystem) -> Code:
    q, s = system.q, system.s
    grid = np.indices((q,) * s).reshape(s, -1).T
    values = [np.asarray(f).reshape(-1)[:, None] for f in system.functions]
    words = np.hstack([grid] + values)
    return Code.from_words(s + system.t, q, system.t + 1, words)


def code_from_latin(cube: LatinHypercube) -> Code:
    """{(x1..xd0, L(x))}: a code of length d0+1 and distance 2."""
    return from_orthogonal_system(OrthogonalSystem(cube.d0, cube.q, (np.asarray(cube.cells),)))


def extend_to_distance2(f: np.ndarray, g: np.ndarray, h: np.ndarray) -> Tuple[Code, Code]:
    """M' = {(x,y,f,g)} and C = {(x,y,u,v) : phi(u,v) = h(x,y)} with phi(f, g) = h."""
    f, g, h = (np.asarray(a, dtype=np.int64) for a in (f, g, h))
    n = f.shape[0]
    for name, square in zip("fgh", (f, g, h)):
        latin = verify_latin(LatinHypercube(2, n, square))
        if not latin.ok:
            raise ConstructionError(f"{name} is not a latin square: {latin.violations[0]}")
    report = check_orthogonal(OrthogonalSystem(2, n, (f, g, h)))
    if not report.ok:
        raise ConstructionError(f"phi is ill-defined: {report.violations[0]}")
    phi = np.full((n, n), -1, dtype=np.int64)
    phi[f, g] = h
    verify_latin(LatinHypercube(2, n, phi)).require()
    x, y = np.indices((n, n)).reshape(2, -1)
    mprime = Code.from_words(4, n, 3, np.stack([x, y, f[x, y], g[x, y]], axis=1))
    verify_mds(mprime).require()
    phi_inv = np.empty_like(phi)  # phi_inv[u, z] = v with phi(u, v) = z
    phi_inv[np.arange(n)[:, None], phi] = np.arange(n)[None, :]
    xs, ys, us = np.indices((n, n, n)).reshape(3, -1)
    vs = phi_inv[us, h[xs, ys]]
    extended = Code.from_words(4, n, 2, np.stack([xs, ys, us, vs], axis=1))
    if not mprime.word_set <= extended.word_set:
        raise ConstructionError("extension does not contain the projection")  # pragma: no cover
    return mprime, extended


def extend_code_to_distance2(code: Code, drop: int) -> Tuple[Code, Code]:
    """Distance-2 extension of the projection of a length-5, distance-4 code.

    The kept coordinates keep their order; the first two of them are the arguments
    and the dropped coordinate plays the part of h.
    """
    if code.d != 5 or code.rho != 4:
        raise ConstructionError("distance-2 extension applies to length-5 codes with distance 4")
    keep = [c for c in range(5) if c != drop]
    words = np.asarray(code.words)
    n = code.q
    x, y = words[:, keep[0]], words[:, keep[1]]
    arrays = []
    for c in (keep[2], keep[3], drop):
        a = np.full((n, n), -1, dtype=np.int64)
        a[x, y] = words[:, c]
        arrays.append(a)
    return extend_to_distance2(*arrays)


def subcode_order_admissible(q: int, rho: int, d: int, ell: int) -> bool:
    if not d > rho >= 3:
        raise ConstructionError(f"subcode order bounds need d > rho >= 3, got d={d}, rho={rho}")
    return rho <= ell and ell * rho <= q


def subcode(code: Code, alphabets: Sequence[Sequence[int]]) -> Subcode:
    """code ∩ (A1 x ... x Ad)."""
    if len(alphabets) != code.d or len({len(a) for a in alphabets}) != 1:
        raise ValueError("a subcode needs d alphabets of equal size")
    words = np.asarray(code.words)
    inside = np.ones(len(words), dtype=bool)
    for c, alphabet in enumerate(alphabets):
        inside &= np.isin(words[:, c], list(alphabet))
    return Subcode(code, tuple(tuple(int(x) for x in a) for a in alphabets), words[inside])


def verify_subcode(component: Subcode) -> VerificationReport:
    report = verify_mds(component.as_code())
    report.kind = "subcode"
    report.stats["order"] = component.order
    return report


def code_to_hdesign(code: Code) -> HDesign:
    """Point i*q + x for symbol x in coordinate i; every word is a block."""
    q, d = code.q, code.d
    blocks = np.asarray(code.words) + (np.arange(d) * q)[None, :]
    groups = tuple(tuple(range(i * q, (i + 1) * q)) for i in range(d))
    return HDesign(d, q, d, code.m, groups, np.sort(blocks, axis=1))
