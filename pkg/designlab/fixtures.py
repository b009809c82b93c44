"""The worked switching example of order 9: two MOLS pairs and the switch between them.

Squares are written over GF(9) = GF(3)[x]/(x^2 + 1) with the element a + b*x encoded
as a + 3b. The first pair is x + y and 2x + y; the second pair differs from it on two
disjoint line components (rows and columns {1, 5, 6} in the first square, {0, 4, 8} in
the second).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .domain import Code, ConstructionError, LinearForm, Subcode
from .gf import Field
from .switching import line_subcode, switch_affine, switched_component

logger = logging.getLogger(__name__)

FIRST_PAIR = (
    np.array([
        [0, 1, 2, 3, 4, 5, 6, 7, 8],
        [1, 2, 0, 4, 5, 3, 7, 8, 6],
        [2, 0, 1, 5, 3, 4, 8, 6, 7],
        [3, 4, 5, 6, 7, 8, 0, 1, 2],
        [4, 5, 3, 7, 8, 6, 1, 2, 0],
        [5, 3, 4, 8, 6, 7, 2, 0, 1],
        [6, 7, 8, 0, 1, 2, 3, 4, 5],
        [7, 8, 6, 1, 2, 0, 4, 5, 3],
        [8, 6, 7, 2, 0, 1, 5, 3, 4],
    ]),
    np.array([
        [0, 1, 2, 3, 4, 5, 6, 7, 8],
        [2, 0, 1, 5, 3, 4, 8, 6, 7],
        [1, 2, 0, 4, 5, 3, 7, 8, 6],
        [6, 7, 8, 0, 1, 2, 3, 4, 5],
        [8, 6, 7, 2, 0, 1, 5, 3, 4],
        [7, 8, 6, 1, 2, 0, 4, 5, 3],
        [3, 4, 5, 6, 7, 8, 0, 1, 2],
        [5, 3, 4, 8, 6, 7, 2, 0, 1],
        [4, 5, 3, 7, 8, 6, 1, 2, 0],
    ]),
)

SWITCHED_PAIR = (
    np.array([
        [0, 1, 2, 3, 4, 5, 6, 7, 8],
        [1, 2, 0, 4, 5, 7, 3, 8, 6],
        [2, 0, 1, 5, 3, 4, 8, 6, 7],
        [3, 4, 5, 6, 7, 8, 0, 1, 2],
        [4, 5, 3, 7, 8, 6, 1, 2, 0],
        [5, 7, 4, 8, 6, 3, 2, 0, 1],
        [6, 3, 8, 0, 1, 2, 7, 4, 5],
        [7, 8, 6, 1, 2, 0, 4, 5, 3],
        [8, 6, 7, 2, 0, 1, 5, 3, 4],
    ]),
    np.array([
        [0, 1, 2, 3, 8, 5, 6, 7, 4],
        [2, 0, 1, 5, 3, 4, 8, 6, 7],
        [1, 2, 0, 4, 5, 3, 7, 8, 6],
        [6, 7, 8, 0, 1, 2, 3, 4, 5],
        [4, 6, 7, 2, 0, 1, 5, 3, 8],
        [7, 8, 6, 1, 2, 0, 4, 5, 3],
        [3, 4, 5, 6, 7, 8, 0, 1, 2],
        [5, 3, 4, 8, 6, 7, 2, 0, 1],
        [8, 5, 3, 7, 4, 6, 1, 2, 0],
    ]),
)

# cells of the marked components, (rows, columns)
FIRST_SQUARE_CELLS = ((1, 5, 6), (1, 5, 6))
SECOND_SQUARE_CELLS = ((0, 4, 8), (0, 4, 8))

FIRST_GENERATOR = np.array([[1, 0, 1, 2], [0, 1, 1, 1]])


@dataclass(frozen=True)
class RecoveredSwitch:
    component: Subcode
    coord: int
    alpha: int
    beta: int


def fixture_field() -> Field:
    return Field(3, 2, modulus=(1, 0, 1))


def pair_code(pair: Tuple[np.ndarray, np.ndarray], linear: bool = False) -> Code:
    """{(x, y, L1(x,y), L2(x,y))} for a pair of squares."""
    first, second = pair
    x, y = np.indices(first.shape).reshape(2, -1)
    words = np.stack([x, y, first[x, y], second[x, y]], axis=1)
    form = LinearForm(fixture_field(), FIRST_GENERATOR) if linear else None
    return Code.from_words(4, first.shape[0], 3, words, form)


def first_code() -> Code:
    return pair_code(FIRST_PAIR, linear=True)


def switched_code() -> Code:
    return pair_code(SWITCHED_PAIR)


def recover_switches(source: Code, target: Code) -> List[RecoveredSwitch]:
    """Find line components of `source` and affine moves on one coordinate that yield `target`."""
    field = source.linear.field
    removed = source.word_set - target.word_set
    added = target.word_set - source.word_set
    found: List[RecoveredSwitch] = []
    covered = set()
    for anchor in sorted(removed):
        if anchor in covered:
            continue
        for v in field.direction_representatives:
            component = line_subcode(source, anchor, v)
            match = _matching_move(component, removed - covered, added)
            if match is not None:
                found.append(match)
                covered |= component.word_set
                break
    current = source
    for move in found:
        current = switch_affine(current, move.component, move.coord, move.alpha, move.beta)
    if not current.same_words(target):
        raise ConstructionError("no sequence of line switches maps the source onto the target")
    logger.info(f"recovered {len(found)} switches between the example pairs")
    return found


def _matching_move(component: Subcode, removed, added) -> Optional[RecoveredSwitch]:
    """First move whose changed words leave `removed` and land in `added`; fixed points may stay."""
    p = component.parent.linear.field.p
    for coord in range(component.parent.d):
        for beta in range(1, p):
            for alpha in range(p):
                if alpha == 0 and beta == 1:
                    continue
                image = switched_component(component, coord, alpha, beta)
                gone = component.word_set - image.word_set
                if gone and gone <= removed and image.word_set - component.word_set <= added:
                    return RecoveredSwitch(component, coord, alpha, beta)
    return None


def component_cells(component: Subcode) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    rows = tuple(sorted({int(w[0]) for w in component.words}))
    cols = tuple(sorted({int(w[1]) for w in component.words}))
    return rows, cols
