from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import pandas as pd

from .designs import bbd_build, bbd_diff, bbd_switch, default_replacements, verify_bbd
from .domain import (
    BBD,
    SQS,
    BbdBuild,
    Code,
    ConstructionError,
    LatinHypercube,
    Sqs8n2Result,
    VerificationReport,
)
from .fixtures import FIRST_PAIR, SWITCHED_PAIR, first_code, recover_switches, switched_code
from .formats import DesignObject, read_object
from .gf import Field
from .latin import (
    check_orthogonal,
    cube_with_subcube,
    cyclic_cube,
    mols_system,
    verify_latin,
)
from .mds import linear_mds, verify_mds
from .oracle import (
    FULL_COUNT_CAP,
    count_latin_squares,
    count_latin_squares_by_symbols,
    count_mols_pairs,
    count_mols_pairs_by_transversals,
)
from .switching import enumerate_switched, select_disjoint
from .sqs import boolean_sqs, build_8n2, default_ingredients, double_sqs, verify_sqs
from .utils import DEFAULT_SEED, load_artifact, save_artifact

logger = logging.getLogger(__name__)

CONSTRUCT_KINDS = ("latin", "mds", "bbd", "sqs-boolean", "sqs-double", "sqs-8n2")
COUNT_KINDS = ("latin", "latin-reduced", "mols")


def verify_object(obj: DesignObject) -> VerificationReport:
    if isinstance(obj, LatinHypercube):
        return verify_latin(obj)
    if isinstance(obj, Code):
        return verify_mds(obj)
    if isinstance(obj, BBD):
        return verify_bbd(obj)
    if isinstance(obj, SQS):
        return verify_sqs(obj)
    raise TypeError(f"nothing verifies a {type(obj).__name__}")


def verify_file(path: str) -> VerificationReport:
    report = verify_object(read_object(path))
    report.stats["file"] = path
    return report


# constructions

def construct_latin(q: int, d0: int = 2, ell: int = 0) -> LatinHypercube:
    cube = cube_with_subcube(q, ell, d0) if ell else cyclic_cube(q, d0)
    verify_latin(cube).require()
    return cube


def construct_mds(p: int, k: int, d: int, rho: int) -> Code:
    code = linear_mds(Field(p, k), d, rho)
    verify_mds(code).require()
    return code


def doubling_chain(v: int) -> SQS:
    """SQS(v) for v = 2^a >= 8: Boolean SQS(8) doubled with BBDs of growing order."""
    if v < 8 or v & (v - 1):
        raise ConstructionError(f"the doubling chain reaches powers of two from 8, not {v}")
    current = boolean_sqs(3)
    while current.v < v:
        n = current.v
        current = double_sqs(current, current, bbd_build(n, n // 4).bbd)
    verify_sqs(current).require()
    return current


def construct(kind: str, q: int = 8, d0: int = 2, ell: int = 0, p: int = 3, k: int = 1, d: int = 3,
              rho: int = 2, a: int = 3, v: int = 16, n: int = 16, mode: str = "partial",
              ingredients: Optional[str] = None, seed: int = DEFAULT_SEED) -> Union[DesignObject, Sqs8n2Result]:
    if kind == "latin":
        return construct_latin(q, d0, ell)
    if kind == "mds":
        return construct_mds(p, k, d, rho)
    if kind == "bbd":
        return bbd_build(q, ell).bbd
    if kind == "sqs-boolean":
        return boolean_sqs(a)
    if kind == "sqs-double":
        return doubling_chain(v)
    if kind == "sqs-8n2":
        return build_sqs_8n2(n, mode, ingredients, seed)
    raise ValueError(f"unknown construction {kind!r}, expected one of {', '.join(CONSTRUCT_KINDS)}")


def build_sqs_8n2(n: int = 16, mode: str = "partial", ingredients: Optional[str] = None,
                  seed: int = DEFAULT_SEED, ell: Optional[int] = None) -> Sqs8n2Result:
    ing = default_ingredients(n, ell, ingredients, seed)
    result = build_8n2(ing, mode)
    logger.info(f"SQS({8 * n + 2}) {mode}: {len(result.blocks)} blocks, ok={result.report.ok}")
    return result


def cached_family_sizes(n: int = 16, seed: int = DEFAULT_SEED) -> pd.DataFrame:
    """Family sizes of the partial build, cached through joblib between sessions."""
    name = f"sqs8n2_partial_n{n}_s{seed}"
    frame = load_artifact(name)
    if frame is None:
        frame = build_sqs_8n2(n, "partial", None, seed).to_frame()
        save_artifact(frame, name)
    return frame


# switching

def components_for(count: int, p: int) -> int:
    """Fewest components c with p^c - 1 >= count."""
    c = 1
    while p ** c - 1 < count:
        c += 1
    return c


def switch_codes(code: Code, count: int, eps: Optional[Union[Fraction, float, str]] = None,
                 seed: int = DEFAULT_SEED) -> List[Tuple[Tuple[int, ...], Code]]:
    if code.linear is None:
        raise ConstructionError("switching needs a code with a linear form")
    p = code.linear.field.p
    components = select_disjoint(code, components_for(count, p), eps, seed)
    return list(enumerate_switched(code, components, count, seed))


def assignment_index(assignment: Tuple[int, ...], p: int) -> int:
    return sum(a * p ** i for i, a in enumerate(assignment))


# 9x9 example

def worked_example() -> VerificationReport:
    """Checks both printed pairs and replays the switches between them."""
    report = VerificationReport("example")
    for label, pair in (("first", FIRST_PAIR), ("switched", SWITCHED_PAIR)):
        squares = [LatinHypercube(2, 9, sq) for sq in pair]
        for sq in squares:
            sub = verify_latin(sq)
            report.checked += sub.checked
            if not sub.ok:
                report.fail(pair=label, reason="not-latin")
        orth = check_orthogonal(mols_system(squares))
        report.checked += orth.checked
        if not orth.ok:
            report.fail(pair=label, reason="not-orthogonal")
    try:
        moves = recover_switches(first_code(), switched_code())
    except ConstructionError as exc:
        return report.fail(reason="switch-replay", detail=str(exc))
    report.stats["switches"] = len(moves)
    for i, move in enumerate(moves):
        report.stats[f"switch{i}"] = (move.coord, move.alpha, move.beta, move.component.anchor)
    return report


# counting

def count(kind: str, q: int, n_jobs: Optional[int] = None) -> Tuple[int, int]:
    """A count from the main enumeration and from an independent second one."""
    if kind == "latin":
        return count_latin_squares(q, False, n_jobs), count_latin_squares_by_symbols(q)
    if kind == "latin-reduced":
        reduced = count_latin_squares(q, True, n_jobs)
        if q > FULL_COUNT_CAP:
            logger.warning(f"no independent check for reduced squares of order {q}")
            return reduced, reduced
        normalisations = math.factorial(q) * math.factorial(q - 1)
        return reduced, count_latin_squares_by_symbols(q) // normalisations
    if kind == "mols":
        return count_mols_pairs(q), count_mols_pairs_by_transversals(q)
    raise ValueError(f"unknown count {kind!r}, expected one of {', '.join(COUNT_KINDS)}")


def count_table(max_q: int = 4) -> pd.DataFrame:
    rows = []
    for q in range(1, max_q + 1):
        latin, latin_check = count("latin", q)
        mols, mols_check = count("mols", q)
        rows.append({"q": q, "latin": latin, "latin_check": latin_check, "mols": mols, "mols_check": mols_check})
    return pd.DataFrame(rows)


# BBD switching

def bbd_variants(q: int, ell: int) -> Tuple[BbdBuild, Dict[str, BBD]]:
    build = bbd_build(q, ell)
    variants = {name: bbd_switch(build, code) for name, code in default_replacements(build).items()}
    return build, variants


def bbd_variant_frame(q: int, ell: int) -> pd.DataFrame:
    build, variants = bbd_variants(q, ell)
    rows = []
    for name, bbd in variants.items():
        removed, added = bbd_diff(build.bbd, bbd)
        rows.append({"replacement": name, "blocks": len(bbd), "removed": removed, "added": added,
                     "ok": verify_bbd(bbd).ok})
    return pd.DataFrame(rows)
