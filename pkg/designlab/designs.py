from __future__ import annotations

import logging
from typing import Dict, Sequence, Tuple

import numpy as np

from .domain import (
    BBD,
    BbdBuild,
    Code,
    ConstructionError,
    HDesign,
    LatinHypercube,
    Subcode,
    VerificationReport,
)
from .latin import cyclic_cube, symmetric_unipotent_ls
from .mds import subcode, verify_mds
from .oracle import CoverageMap

logger = logging.getLogger(__name__)

# component patterns: 0 = K0, 1 = K1 per coordinate
SIGMAS = ("0101", "1001", "0110", "1010")
# the group generated by (12) and (34), each element paired with the pattern it sends 0101 to
UPSILON: Dict[str, Tuple[int, int, int, int]] = {
    "0101": (0, 1, 2, 3),
    "1001": (1, 0, 2, 3),
    "0110": (0, 1, 3, 2),
    "1010": (1, 0, 3, 2),
}


def _coverage_report(kind: str, coverage: CoverageMap, mask: np.ndarray, stats: Dict[str, object]) -> VerificationReport:
    summary = coverage.summary(mask)
    report = VerificationReport(kind, checked=summary.universe, stats=dict(stats))
    report.stats.update({"min": summary.minimum, "max": summary.maximum, "covered": summary.total})
    for subset in summary.violations:
        count = int(coverage.counts[coverage.rank(np.array([subset]))[0]])
        report.fail(subset=subset, count=count)
    if summary.excluded_hits:
        report.fail(reason="outside-universe", hits=summary.excluded_hits)
    return report


def verify_hdesign(design: HDesign) -> VerificationReport:
    """Every t-element transverse must lie in exactly one block."""
    group_of = np.full(design.v, -1, dtype=np.int64)
    for g, group in enumerate(design.groups):
        group_of[list(group)] = g
    blocks = np.asarray(design.blocks, dtype=np.int64)
    labels = np.sort(group_of[blocks], axis=1)
    if (labels[:, 0] < 0).any() or (np.diff(labels, axis=1) == 0).any():
        raise ValueError("H-design block is not a transverse")
    coverage = CoverageMap(design.v, design.t).add_blocks(blocks)
    stats = {"d": design.d, "q": design.q, "w": design.w, "t": design.t, "blocks": len(blocks)}
    return _coverage_report("hdesign", coverage, coverage.transverse_mask(group_of), stats)


def check_swap_closure(code: Code) -> VerificationReport:
    """(x,y,u,v) in M implies the three swapped words are in M; all (x,x,u,u) are in M."""
    report = VerificationReport("swap-closure", stats={"q": code.q, "words": len(code)})
    if code.d != 4:
        raise ValueError("swap closure applies to codes of length 4")
    words = np.asarray(code.words)
    for swap in ((1, 0, 2, 3), (0, 1, 3, 2), (1, 0, 3, 2)):
        report.checked += len(words)
        for w in words[:, swap].tolist():
            if tuple(w) not in code.word_set:
                return report.fail(missing=tuple(w), rule=swap)
    x, u = np.indices((code.q, code.q)).reshape(2, -1)
    for w in np.stack([x, x, u, u], axis=1).tolist():
        report.checked += 1
        if tuple(w) not in code.word_set:
            return report.fail(missing=tuple(w), rule="diagonal")
    return report


def code_to_bbd(code: Code) -> BBD:
    if code.d != 4 or code.rho != 2:
        raise ConstructionError("a BBD comes from a length-4 code with distance 2")
    q = code.q
    if q % 2:
        raise ConstructionError(f"BBD codes need even order, got {q}")
    report = check_swap_closure(code)
    if not report.ok:
        raise ConstructionError(f"swap closure violated: {report.violations[0]}")
    words = np.asarray(code.words)
    offdiag = words[words[:, 0] != words[:, 1]]
    if (offdiag[:, 2] == offdiag[:, 3]).any():
        raise ConstructionError("word with x != y but u == v")
    ondiag = words[words[:, 0] == words[:, 1]]
    if (ondiag[:, 2] != ondiag[:, 3]).any():
        raise ConstructionError("word with x == y but u != v")
    blocks = np.stack([offdiag[:, 0], offdiag[:, 1], q + offdiag[:, 2], q + offdiag[:, 3]], axis=1)
    return BBD.from_blocks(2 * q, range(q), range(q, 2 * q), blocks)


def bbd_to_code(bbd: BBD) -> Code:
    q = bbd.n // 2
    first = {p: i for i, p in enumerate(bbd.g1)}
    second = {p: i for i, p in enumerate(bbd.g2)}
    words = []
    for block in bbd.blocks.tolist():
        a, b = sorted(first[p] for p in block if p in first)
        c, d = sorted(second[p] for p in block if p in second)
        words += [(a, b, c, d), (b, a, c, d), (a, b, d, c), (b, a, d, c)]
    words += [(x, x, u, u) for x in range(q) for u in range(q)]
    return Code.from_words(4, q, 2, words)


def bbd_block_count(q: int) -> int:
    return q * q * (q - 1) // 4


def verify_bbd(bbd: BBD) -> VerificationReport:
    """Every 3-subset meeting both groups must lie in exactly one block."""
    label = np.full(bbd.n, -1, dtype=np.int64)
    label[list(bbd.g1)] = 0
    label[list(bbd.g2)] = 1
    if (label < 0).any():
        raise ValueError("BBD groups must partition the points")
    blocks = np.asarray(bbd.blocks, dtype=np.int64)
    if len(blocks) and ((label[blocks] == 0).sum(axis=1) != 2).any():
        raise ValueError("BBD block does not meet each group in two points")
    coverage = CoverageMap(bbd.n, 3).add_blocks(blocks)
    report = _coverage_report("bbd", coverage, coverage.cross_mask(label), {"n": bbd.n, "blocks": len(blocks)})
    expected = bbd_block_count(bbd.n // 2)
    report.checked += 1
    if len(blocks) != expected:
        report.fail(reason="block-count", found=len(blocks), expected=expected)
    return report


def quasigroup_code(square: LatinHypercube) -> Code:
    """M = {(x, y, u, v) : f(x, y) = f(u, v)}."""
    q = square.q
    f = np.asarray(square.cells)
    f_inv = np.empty_like(f)  # f_inv[u, z] = v with f(u, v) = z
    f_inv[np.arange(q)[:, None], f] = np.arange(q)[None, :]
    x, y, u = np.indices((q, q, q)).reshape(3, -1)
    return Code.from_words(4, q, 2, np.stack([x, y, u, f_inv[u, f[x, y]]], axis=1))


def bbd_build(q: int, ell: int) -> BbdBuild:
    square = symmetric_unipotent_ls(q, ell)
    code = quasigroup_code(square)
    k0 = tuple(range(ell))
    k1 = tuple(range(q - ell, q))
    components: Dict[str, Subcode] = {}
    if ell:
        for sigma in SIGMAS:
            alphabets = [k0 if s == "0" else k1 for s in sigma]
            component = subcode(code, alphabets)
            verify_mds(component.as_code()).require()
            if len(component) != ell ** 3:
                raise ConstructionError(f"component {sigma} has {len(component)} words")  # pragma: no cover
            components[sigma] = component
    bbd = code_to_bbd(code)
    verify_bbd(bbd).require()
    logger.info(f"BBD on {2 * q} points from q={q}, ell={ell}: {len(bbd)} blocks")
    return BbdBuild(q, ell, square, code, bbd, k0, k1, components)


def bbd_component_from_cube(cube: LatinHypercube, k0: Sequence[int], k1: Sequence[int]) -> Code:
    """MDS(1,4,ell) code on alphabets (K0, K1, K0, K1) from a latin 3-cube of order ell."""
    if cube.d0 != 3 or cube.q != len(k0) or len(k0) != len(k1):
        raise ValueError("component cubes are 3-dimensional of order |K0| = |K1|")
    a, b, c = np.indices(cube.cells.shape).reshape(3, -1)
    k0, k1 = np.asarray(k0), np.asarray(k1)
    words = np.stack([k0[a], k1[b], k0[c], k1[np.asarray(cube.cells)[a, b, c]]], axis=1)
    q = int(max(k0.max(), k1.max())) + 1
    return Code.from_words(4, q, 2, words)


def bbd_switch(build: BbdBuild, replacement: Code) -> BBD:
    """Exchange every B_(pi sigma) by C_pi for pi in the group generated by (12) and (34)."""
    if build.ell == 0:
        raise ConstructionError("a build without a subsquare has no components to switch")
    words = np.asarray(replacement.words)
    alphabets = (build.k0, build.k1, build.k0, build.k1)
    for c, alphabet in enumerate(alphabets):
        if not np.isin(words[:, c], alphabet).all():
            raise ConstructionError(f"replacement leaves the alphabet of coordinate {c}")
    candidate = Subcode(build.code, alphabets, words)
    if not verify_mds(candidate.as_code()).ok:
        raise ConstructionError("replacement is not an MDS code of the component order")
    removed = set()
    added = []
    for sigma, pi in UPSILON.items():
        removed |= build.components[sigma].word_set
        added.append(words[:, pi])
    keep = np.array([tuple(w) not in removed for w in build.code.words.tolist()], dtype=bool)
    switched = Code.from_words(4, build.q, 2, np.vstack([build.code.words[keep]] + added))
    bbd = code_to_bbd(switched)
    verify_bbd(bbd).require()
    return bbd


def default_replacements(build: BbdBuild) -> Dict[str, Code]:
    """The order-ell components given by cyclic and shifted cyclic 3-cubes."""
    ell = build.ell
    base = cyclic_cube(ell, 3)
    shifted = LatinHypercube(3, ell, (np.asarray(base.cells) + 1) % ell)
    return {
        "cyclic": bbd_component_from_cube(base, build.k0, build.k1),
        "shifted": bbd_component_from_cube(shifted, build.k0, build.k1),
    }


def bbd_diff(first: BBD, second: BBD) -> Tuple[int, int]:
    only_first = len(first.block_set - second.block_set)
    only_second = len(second.block_set - first.block_set)
    return only_first, only_second


def touches_k(block: Sequence[int], build: BbdBuild) -> bool:
    q = build.q
    k_points = set(build.k0) | set(build.k1) | {q + p for p in build.k0} | {q + p for p in build.k1}
    return any(p in k_points for p in block)
