from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from .domain import (
    BoundResult,
    BudgetNotReachedError,
    Code,
    ConstructionError,
    Subcode,
    SwitchPlan,
    Word,
)
from .gf import Field
from .mds import _messages, verify_mds
from .utils import DEFAULT_SEED

logger = logging.getLogger(__name__)

SAMPLED_ASSIGNMENT_LIMIT = 2 ** 20

Assignment = Tuple[int, ...]


def _line_field(code: Code) -> Field:
    if code.linear is None:
        raise ConstructionError("line subcodes need a code with a linear form")
    if not code.linear.over_prime_subfield:
        raise ConstructionError("line subcodes need coefficients in the prime subfield")
    return code.linear.field


def line_subcode(code: Code, anchor: Sequence[int], v: int) -> Subcode:
    """code ∩ (L(a1,v) x ... x L(ad,v)) for a codeword a."""
    field = _line_field(code)
    anchor = tuple(int(x) for x in anchor)
    if anchor not in code:
        raise ConstructionError(f"anchor {anchor} is not a codeword")
    if v == 0:
        raise ConstructionError("line direction must be nonzero")
    p = field.p
    prime_words = (_messages(p, code.m) @ code.linear.generator) % p
    words = field.add_array(np.array(anchor)[None, :], field.mul_array(prime_words, np.int64(v)))
    alphabets = tuple(field.line_points(a, v).points for a in anchor)
    component = Subcode(code, alphabets, np.unique(words, axis=0), anchor, int(v))
    missing = [w for w in component.word_set if w not in code.word_set]
    if missing:
        raise ConstructionError(f"line word {missing[0]} is not a codeword")  # pragma: no cover
    return component


def subcodes_through(code: Code, word: Sequence[int]) -> List[Subcode]:
    """One line subcode per direction class through the given codeword."""
    field = _line_field(code)
    return [line_subcode(code, word, v) for v in field.direction_representatives]


def _replace(code: Code, old: Set[Word], new: np.ndarray) -> Code:
    keep = np.array([tuple(w) not in old for w in code.words.tolist()], dtype=bool)
    words = np.vstack([code.words[keep], new])
    return Code.from_words(code.d, code.q, code.rho, words)


def _require_component(code: Code, component: Subcode) -> None:
    if not component.word_set <= code.word_set:
        raise ConstructionError("component is not a subcode of the code")


def switched_component(component: Subcode, coord: int = 0, alpha: int = 0, beta: int = 1) -> Subcode:
    """Image of a line component under z -> a_c + beta(z - a_c) + alpha*v on coordinate `coord`.

    beta = 1 with coord = 0 is the type (I) shift; beta = -1 reflects the line about a_c.
    """
    field = _line_field(component.parent)
    p = field.p
    alpha, beta = alpha % p, beta % p
    if beta == 0:
        raise ConstructionError("beta must be nonzero")
    if not 0 <= coord < component.parent.d:
        raise ValueError(f"coordinate {coord} out of range")
    center = component.anchor[coord]
    moved = component.words.copy()
    offset = field.sub_array(moved[:, coord], center)
    step = field.mul_array(np.int64(alpha), np.int64(component.direction))
    moved[:, coord] = field.add_array(center, field.add_array(field.mul_array(offset, np.int64(beta)), step))
    return Subcode(component.parent, component.alphabets, np.unique(moved, axis=0), component.anchor, component.direction)


def switch_affine(code: Code, component: Subcode, coord: int = 0, alpha: int = 0, beta: int = 1) -> Code:
    """Exchange a line component of `code` by its affine image on one coordinate."""
    _require_component(code, component)
    image = switched_component(component, coord, alpha, beta)
    if image.word_set == component.word_set:
        return code
    return _replace(code, component.word_set, image.words)


def switch_type1(code: Code, component: Subcode, alpha: int) -> Code:
    """(code minus C1) plus (C1 + (alpha*v, 0, ..., 0))."""
    return switch_affine(code, component, 0, alpha, 1)


def exchange(code: Code, component: Subcode, replacement: Union[Code, np.ndarray]) -> Code:
    """Replace a component by any code on the same alphabets with the same parameters."""
    _require_component(code, component)
    words = np.asarray(replacement.words if isinstance(replacement, Code) else replacement, dtype=np.int64)
    for c, alphabet in enumerate(component.alphabets):
        if not np.isin(words[:, c], alphabet).all():
            raise ConstructionError(f"replacement leaves the alphabet of coordinate {c}")
    candidate = Subcode(code, component.alphabets, words)
    verify_mds(candidate.as_code()).require()
    return _replace(code, component.word_set, words)


def apply_plan(plan: SwitchPlan) -> Code:
    code = plan.code
    for component, alpha in zip(plan.components, plan.moves):
        code = switch_type1(code, component, alpha)
    return code


def _disjoint(components: Sequence[Subcode]) -> bool:
    seen: Set[Word] = set()
    for component in components:
        if seen & component.word_set:
            return False
        seen |= component.word_set
    return True


def select_disjoint(code: Code, budget: int, eps: Optional[Fraction] = None, seed: int = DEFAULT_SEED) -> List[Subcode]:
    """Greedy pairwise-disjoint line subcodes over a seeded order of (anchor, direction) pairs."""
    field = _line_field(code)
    reps = field.direction_representatives
    try:
        guaranteed = lower_bound(field.p, field.k, code.d, code.rho, eps).t
    except (ConstructionError, ValueError):
        guaranteed = 0
    if budget > guaranteed:
        logger.info(f"budget {budget} exceeds the guaranteed {guaranteed} subcodes, selecting best effort")
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(code) * len(reps))
    words = code.words.tolist()
    covered: Set[Word] = set()
    selected: List[Subcode] = []
    for index in order:
        if len(selected) >= budget:
            break
        anchor = tuple(words[index // len(reps)])
        if anchor in covered:
            continue
        component = line_subcode(code, anchor, reps[index % len(reps)])
        if covered.isdisjoint(component.word_set):
            selected.append(component)
            covered |= component.word_set
            logger.debug(f"selected subcode {len(selected)} anchor={anchor} v={component.direction}")
    if len(selected) < budget:
        raise BudgetNotReachedError(f"found {len(selected)} of {budget} disjoint subcodes", selected)
    return selected


def _decode_assignment(index: int, p: int, length: int) -> Assignment:
    digits = []
    for _ in range(length):
        digits.append(index % p)
        index //= p
    return tuple(digits)


def enumerate_switched(code: Code, components: Sequence[Subcode], count: int,
                       seed: int = DEFAULT_SEED) -> Iterator[Tuple[Assignment, Code]]:
    """Codes for `count` distinct nonzero alpha-assignments, component 0 least significant."""
    field = _line_field(code)
    if not _disjoint(components):
        raise ConstructionError("components must be pairwise disjoint")
    total = field.p ** len(components)
    if count > total - 1:
        raise ConstructionError(f"only {total - 1} nonzero assignments exist, {count} requested")
    rng = np.random.default_rng(seed)
    if count == total - 1:
        indices = list(range(1, total))
    elif total - 1 <= SAMPLED_ASSIGNMENT_LIMIT:
        indices = sorted(int(i) + 1 for i in rng.choice(total - 1, size=count, replace=False))
    else:
        chosen: Set[Assignment] = set()
        while len(chosen) < count:
            candidate = tuple(int(a) for a in rng.integers(0, field.p, len(components)))
            if any(candidate):
                chosen.add(candidate)
        indices = sorted(sum(a * field.p ** i for i, a in enumerate(c)) for c in chosen)
    for index in indices:
        assignment = _decode_assignment(index, field.p, len(components))
        plan = SwitchPlan(code, list(components), list(assignment))
        yield assignment, apply_plan(plan)


def _prime_linear_admissible(p: int, d: int, rho: int) -> bool:
    return rho in (2, d) or (3 <= rho <= p and d <= p + 1)


def _as_fraction(value: Union[Fraction, float, int, str]) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def lower_bound(p: int, k: int, d: int, rho: int, eps: Optional[Union[Fraction, float, str]] = None) -> BoundResult:
    """ln of p^t w^t / t! for t greedy-disjoint subcodes with w alternatives each."""
    if not _prime_linear_admissible(p, d, rho):
        raise ConstructionError(f"no prime-subfield linear MDS code for p={p}, d={d}, rho={rho}")
    eps = Fraction(1, k) if eps is None else _as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    m = d - rho + 1
    subcodes = Fraction(p ** (k * (1 + m) - 1))
    t = math.floor((1 - eps) * subcodes / p ** (2 * m + k))
    w = eps * subcodes / p ** m
    vacuous = t < 1
    if vacuous:
        ln_bound = 0.0
    else:
        ln_w = math.log(w.numerator) - math.log(w.denominator)
        ln_bound = t * math.log(p) + t * ln_w - math.lgamma(t + 1)
    return BoundResult(p, k, d, rho, m, eps, t, w, ln_bound, vacuous)
