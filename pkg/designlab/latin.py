from __future__ import annotations

import logging
from itertools import combinations
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from .domain import (
    CapExceededError,
    ConstructionError,
    LatinHypercube,
    OrthogonalSystem,
    VerificationReport,
)

logger = logging.getLogger(__name__)

ORTHOGONALITY_MAX_ARITY = 4
ORTHOGONALITY_MAX_ORDER = 32


def _check_shape(cube: LatinHypercube) -> np.ndarray:
    cells = np.asarray(cube.cells)
    if cube.d0 < 2 or cube.q < 1 or cells.shape != (cube.q,) * cube.d0:
        raise ValueError(f"cells of shape {cells.shape} do not form a {cube.d0}-cube of order {cube.q}")
    return cells


def verify_latin(cube: LatinHypercube) -> VerificationReport:
    """Every axis-parallel line must be a permutation of [0, q)."""
    cells = _check_shape(cube)
    q, d0 = cube.q, cube.d0
    report = VerificationReport("latin", stats={"d0": d0, "q": q})
    expected = np.arange(q)
    for axis in range(d0):
        lines = np.moveaxis(cells, axis, -1).reshape(-1, q)
        report.checked += lines.shape[0]
        bad = np.flatnonzero((np.sort(lines, axis=1) != expected).any(axis=1))
        if len(bad):
            rest = [int(i) for i in np.unravel_index(bad[0], (q,) * (d0 - 1))]
            line: List[object] = rest[:axis] + ["*"] + rest[axis:]
            report.fail(axis=axis, line=tuple(line), values=tuple(lines[bad[0]].tolist()))
            break
    return report


def subcube_check(cube: LatinHypercube, ell: int) -> VerificationReport:
    """The restriction to [0, ell)^d0 must be a latin cube on the symbols [0, ell)."""
    report = verify_latin(cube)
    report.kind = "latin+subcube"
    report.stats["ell"] = ell
    if ell == 0 or not report.ok:
        return report
    sub = cube.restrict(ell)
    outside = np.argwhere(sub.cells >= ell)
    report.checked += 1
    if len(outside):
        report.fail(cell=tuple(int(i) for i in outside[0]), symbol=int(sub.cells[tuple(outside[0])]))
        return report
    inner = verify_latin(sub)
    report.checked += inner.checked
    for violation in inner.violations:
        report.fail(subcube=True, **violation)
    return report


def cyclic_cube(q: int, d0: int) -> LatinHypercube:
    if q < 1 or d0 < 2:
        raise ValueError("cyclic cube needs q >= 1 and d0 >= 2")
    cells = np.indices((q,) * d0).sum(axis=0) % q
    return LatinHypercube(d0, q, cells.astype(np.int64))


def _complete_rows(rows: np.ndarray, q: int) -> np.ndarray:
    """Extend an r x q latin rectangle to a q x q square, one perfect matching per row."""
    square = np.full((q, q), -1, dtype=np.int64)
    square[: len(rows)] = rows
    used = np.zeros((q, q), dtype=bool)  # used[column, symbol]
    for row in rows:
        used[np.arange(q), row] = True
    for r in range(len(rows), q):
        graph = nx.Graph()
        columns = [("c", j) for j in range(q)]
        graph.add_nodes_from(columns, bipartite=0)
        graph.add_nodes_from((("s", s) for s in range(q)), bipartite=1)
        graph.add_edges_from((("c", j), ("s", int(s))) for j in range(q) for s in np.flatnonzero(~used[j]))
        matching = nx.bipartite.hopcroft_karp_matching(graph, top_nodes=columns)
        for j in range(q):
            s = matching[("c", j)][1]
            square[r, j] = s
            used[j, s] = True
    return square


def ls_with_subsquare(q: int, ell: int) -> LatinHypercube:
    if ell < 0 or 2 * ell > q:
        raise ConstructionError(f"no latin square of order {q} with a subsquare of order {ell}")
    rows = np.empty((ell, q), dtype=np.int64)
    for i in range(ell):
        for j in range(q):
            rows[i, j] = (i + j) % ell if j < ell else ell + (i + j - ell) % (q - ell)
    square = LatinHypercube(2, q, _complete_rows(rows, q))
    subcube_check(square, ell).require()
    logger.debug(f"latin square of order {q} with subsquare {ell} completed")
    return square


def compose_cube(square: LatinHypercube, d0: int) -> LatinHypercube:
    """g(x1..xd0) = L(...L(L(x1, x2), x3)..., xd0)."""
    cells = np.asarray(square.cells)
    table = cells
    for _ in range(d0 - 2):
        cells = table[cells[..., None], np.arange(square.q)]
    return LatinHypercube(d0, square.q, cells)


def cube_with_subcube(q: int, ell: int, d0: int) -> LatinHypercube:
    if d0 < 2:
        raise ValueError("d0 must be at least 2")
    cube = compose_cube(ls_with_subsquare(q, ell), d0)
    subcube_check(cube, ell).require()
    return cube


def _round_robin(m: int) -> np.ndarray:
    """1-factorization of K_m (m even) as an m x m color table, -1 on the diagonal."""
    colors = np.full((m, m), -1, dtype=np.int64)
    n = m - 1
    for i in range(n):
        for j in range(n):
            if i != j:
                colors[i, j] = (i + j) % n
        colors[i, n] = colors[n, i] = (2 * i) % n
    return colors


def _near_factorization(m: int) -> np.ndarray:
    """Near-1-factorization of K_m (m odd): color h misses vertex h."""
    half = pow(2, -1, m) if m > 1 else 0
    i, j = np.indices((m, m))
    colors = ((i + j) * half) % m if m > 1 else np.zeros((1, 1), dtype=np.int64)
    colors = colors.astype(np.int64)
    np.fill_diagonal(colors, -1)
    return colors


def symmetric_unipotent_ls(q: int, ell: int = 0) -> LatinHypercube:
    """Symmetric latin square with zero diagonal whose K0 x K1 block is latin on K1.

    The square is read as a 1-factorization of K_q on two halves A, B of size q/2:
    both halves share the internal colors, the bipartite edges are colored by a latin
    square carrying the order-ell subsquare, and K0, K1 sit in A and B respectively.
    """
    if q % 2 or q < 2:
        raise ConstructionError(f"symmetric unipotent squares need even order, got {q}")
    if ell < 0 or 4 * ell > q:
        raise ConstructionError(f"subsquare order {ell} exceeds q/4 for q={q}")
    m = q // 2
    raw = np.full((q, q), -1, dtype=np.int64)
    base = ls_with_subsquare(m, ell).cells
    if m % 2 == 0:
        internal = _round_robin(m)
        bipartite = (m - 1) + base
        k1_columns = list(range(ell))
        offset = m - 1
    else:
        internal = _near_factorization(m)
        large = m - 1
        pi = np.argmax(base == large, axis=1)  # column of `large` in each row
        bipartite_sym = base[:, pi]
        bipartite = m + bipartite_sym
        np.fill_diagonal(bipartite, np.arange(m))
        k1_columns = sorted(int(j) for j in np.flatnonzero(pi < ell))
        offset = m
    raw[:m, :m] = internal
    raw[m:, m:] = internal
    raw[:m, m:] = bipartite
    raw[m:, :m] = bipartite.T

    # points: A keeps its order, B is ordered so that K1 ends up on the top labels
    b_order = [j for j in range(m) if j not in k1_columns] + k1_columns
    relabel = np.empty(q, dtype=np.int64)
    relabel[:m] = np.arange(m)
    relabel[m + np.array(b_order, dtype=np.int64)] = np.arange(m, q)

    # colors: the subsquare colors become K1, the rest fill 1..q-ell-1 in order
    color_map = {}
    for s in range(ell):
        color_map[offset + s] = q - ell + s
    nxt = 1
    for c in range(q - 1):
        if c not in color_map:
            color_map[c] = nxt
            nxt += 1
    lookup = np.array([color_map[c] for c in range(q - 1)], dtype=np.int64)

    cells = np.zeros((q, q), dtype=np.int64)
    off = raw >= 0
    src_r, src_c = np.nonzero(off)
    cells[relabel[src_r], relabel[src_c]] = lookup[raw[off]]
    square = LatinHypercube(2, q, cells)
    symmetric_unipotent_check(square, ell).require()
    logger.debug(f"symmetric unipotent square q={q} ell={ell} built")
    return square


def symmetric_unipotent_check(square: LatinHypercube, ell: int) -> VerificationReport:
    report = verify_latin(square)
    report.kind = "symmetric-unipotent"
    report.stats["ell"] = ell
    cells = np.asarray(square.cells)
    q = square.q
    report.checked += 3
    asym = np.argwhere(cells != cells.T)
    if len(asym):
        report.fail(asymmetric=tuple(int(i) for i in asym[0]))
    diag = np.flatnonzero(np.diag(cells) != 0)
    if len(diag):
        report.fail(diagonal=int(diag[0]), symbol=int(cells[diag[0], diag[0]]))
    if ell:
        block = cells[:ell, q - ell:]
        expected = np.arange(q - ell, q)
        rows_ok = (np.sort(block, axis=1) == expected).all()
        cols_ok = (np.sort(block, axis=0) == expected[:, None]).all()
        if not (rows_ok and cols_ok):
            report.fail(block="K0xK1", values=tuple(block.ravel().tolist()))
    return report


def _system_arrays(system: OrthogonalSystem) -> List[np.ndarray]:
    if system.s > ORTHOGONALITY_MAX_ARITY or system.q > ORTHOGONALITY_MAX_ORDER:
        raise CapExceededError(
            f"orthogonality check capped at s<={ORTHOGONALITY_MAX_ARITY}, q<={ORTHOGONALITY_MAX_ORDER}")
    arrays = [np.asarray(f, dtype=np.int64) for f in system.functions]
    for f in arrays:
        if f.shape != (system.q,) * system.s:
            raise ValueError(f"function of shape {f.shape} is not {system.s}-ary over {system.q} symbols")
    return arrays


def _bijective_rows(arrays: Sequence[np.ndarray], q: int) -> np.ndarray:
    """arrays: (rows, q^u) each; True where the u functions jointly hit Q^u bijectively."""
    keys = np.zeros_like(arrays[0])
    for f in arrays:
        keys = keys * q + f
    ordered = np.sort(keys, axis=1)
    return (np.diff(ordered, axis=1) != 0).all(axis=1)


def check_orthogonal(system: OrthogonalSystem) -> VerificationReport:
    arrays = _system_arrays(system)
    s, q, t = system.s, system.q, system.t
    if t < s:
        raise ValueError(f"an orthogonal system needs at least s={s} functions, got {t}")
    report = VerificationReport("orthogonal", stats={"s": s, "q": q, "t": t, "strong": system.strong})
    fixed_sizes = range(s) if system.strong else [0]
    for r in fixed_sizes:
        u = s - r
        for fixed in combinations(range(s), r):
            free = [a for a in range(s) if a not in fixed]
            moved = [np.moveaxis(f, list(fixed) + free, list(range(s))).reshape(q ** r, q ** u) for f in arrays]
            for subset in combinations(range(t), u):
                ok = _bijective_rows([moved[i] for i in subset], q)
                report.checked += ok.size
                if not ok.all():
                    row = int(np.flatnonzero(~ok)[0])
                    assignment = tuple(int(c) for c in np.unravel_index(row, (q,) * r)) if r else ()
                    report.fail(functions=subset, fixed=fixed, constants=assignment)
                    return report
    return report


def mols_system(squares: Sequence[LatinHypercube], strong: bool = False) -> OrthogonalSystem:
    q = squares[0].q
    return OrthogonalSystem(2, q, tuple(np.asarray(sq.cells) for sq in squares), strong)


def orthogonal_pair_from_field(field, a: int = 1, b: int = 2) -> Tuple[LatinHypercube, LatinHypercube]:
    """x + a*y and x + b*y over a finite field: orthogonal whenever a != b."""
    xs = np.arange(field.q)
    first = field.add_array(xs[:, None], field.mul_array(np.int64(a), xs[None, :]))
    second = field.add_array(xs[:, None], field.mul_array(np.int64(b), xs[None, :]))
    return LatinHypercube(2, field.q, first), LatinHypercube(2, field.q, second)
