"""Plain-text formats for latin hypercubes, codes, BBDs and SQSs.

    LATIN <d0> <q>                 q^d0 integers, last coordinate fastest
    CODE <d> <q> <rho>             optional LINEAR <p> <k> <modulus...> and m rows of
                                   the coefficient matrix, then one word per line
    BBD <n> / G1 <ids> / G2 <ids>  then 4 ids per line
    SQS <v> <blockcount>           then 4 sorted ids per line

Blank lines are ignored; line numbers in errors count them.
"""
from __future__ import annotations

import logging
import os
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from .domain import BBD, SQS, Code, FormatError, LatinHypercube, LinearForm
from .gf import Field
from .utils import ensure_dir, safe_read_text

logger = logging.getLogger(__name__)

DesignObject = Union[LatinHypercube, Code, BBD, SQS]
KINDS = ("LATIN", "CODE", "BBD", "SQS")


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for number, line in enumerate(text.splitlines(), start=1):
        tokens = line.split()
        if tokens:
            yield number, tokens


def _ints(tokens: List[str], number: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise FormatError(f"expected integers, got {' '.join(tokens)!r}", number) from None


def _header(rows: List[Tuple[int, List[str]]], kind: str, arity: int) -> List[int]:
    if not rows:
        raise FormatError("empty file", 1)
    number, tokens = rows[0]
    if tokens[0] != kind or len(tokens) != arity + 1:
        raise FormatError(f"expected header {kind} with {arity} fields", number)
    return _ints(tokens[1:], number)


def _rows(rows: List[Tuple[int, List[str]]], width: int, limit: int) -> np.ndarray:
    out = []
    for number, tokens in rows:
        values = _ints(tokens, number)
        if len(values) != width:
            raise FormatError(f"expected {width} values, got {len(values)}", number)
        if min(values) < 0 or max(values) >= limit:
            raise FormatError(f"value outside [0, {limit})", number)
        out.append(values)
    return np.array(out, dtype=np.int64).reshape(-1, width)


# LATIN

def format_latin(cube: LatinHypercube) -> str:
    cells = np.asarray(cube.cells).reshape(-1, cube.q)
    body = "\n".join(" ".join(str(int(x)) for x in row) for row in cells)
    return f"LATIN {cube.d0} {cube.q}\n{body}\n"


def parse_latin(text: str) -> LatinHypercube:
    rows = list(_lines(text))
    d0, q = _header(rows, "LATIN", 2)
    if d0 < 1 or q < 1:
        raise FormatError("dimension and order must be positive", rows[0][0])
    values: List[int] = []
    for number, tokens in rows[1:]:
        chunk = _ints(tokens, number)
        if any(x < 0 or x >= q for x in chunk):
            raise FormatError(f"symbol outside [0, {q})", number)
        values.extend(chunk)
    if len(values) != q ** d0:
        raise FormatError(f"expected {q ** d0} cells, got {len(values)}", rows[-1][0])
    return LatinHypercube(d0, q, np.array(values, dtype=np.int64).reshape((q,) * d0))


# CODE

def format_code(code: Code) -> str:
    lines = [f"CODE {code.d} {code.q} {code.rho}"]
    if code.linear is not None:
        field = code.linear.field
        lines.append(" ".join(["LINEAR", str(field.p), str(field.k)] + [str(c) for c in field.modulus]))
        lines += [" ".join(str(int(x)) for x in row) for row in np.asarray(code.linear.generator)]
    lines += [" ".join(str(int(x)) for x in w) for w in np.asarray(code.words)]
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    rows = list(_lines(text))
    d, q, rho = _header(rows, "CODE", 3)
    if d < 1 or q < 1 or not 1 <= rho <= d:
        raise FormatError("inconsistent code parameters", rows[0][0])
    body = rows[1:]
    linear = None
    if body and body[0][1][0] == "LINEAR":
        number, tokens = body[0]
        params = _ints(tokens[1:], number)
        if len(params) < 2:
            raise FormatError("LINEAR needs p and k", number)
        p, k = params[:2]
        try:
            field = Field(p, k, modulus=params[2:] or None)
        except ValueError as exc:
            raise FormatError(str(exc), number) from None
        if field.q != q:
            raise FormatError(f"GF({p}^{k}) does not have order {q}", number)
        m = d - rho + 1
        if len(body) < 1 + m:
            raise FormatError("coefficient matrix is truncated", number)
        linear = LinearForm(field, _rows(body[1:1 + m], d, q))
        body = body[1 + m:]
    return Code.from_words(d, q, rho, _rows(body, d, q), linear)


# BBD

def format_bbd(bbd: BBD) -> str:
    lines = [f"BBD {bbd.n}", "G1 " + " ".join(map(str, bbd.g1)), "G2 " + " ".join(map(str, bbd.g2))]
    lines += [" ".join(str(int(x)) for x in b) for b in np.asarray(bbd.blocks)]
    return "\n".join(lines) + "\n"


def parse_bbd(text: str) -> BBD:
    rows = list(_lines(text))
    (n,) = _header(rows, "BBD", 1)
    groups = []
    for offset, label in ((1, "G1"), (2, "G2")):
        if len(rows) <= offset or rows[offset][1][0] != label:
            line = rows[offset][0] if offset < len(rows) else rows[-1][0] + 1
            raise FormatError(f"missing {label} line", line)
        number, tokens = rows[offset]
        ids = _ints(tokens[1:], number)
        if any(x < 0 or x >= n for x in ids):
            raise FormatError(f"point outside [0, {n})", number)
        groups.append(ids)
    return BBD.from_blocks(n, groups[0], groups[1], _rows(rows[3:], 4, n))


# SQS

def format_sqs(sqs: SQS) -> str:
    lines = [f"SQS {sqs.v} {len(sqs)}"]
    lines += [" ".join(str(int(x)) for x in b) for b in np.asarray(sqs.blocks)]
    return "\n".join(lines) + "\n"


def parse_sqs(text: str) -> SQS:
    rows = list(_lines(text))
    v, count = _header(rows, "SQS", 2)
    blocks = _rows(rows[1:], 4, max(v, 1))
    if len(blocks) != count:
        raise FormatError(f"header announces {count} blocks, found {len(blocks)}", rows[-1][0])
    for (number, _), block in zip(rows[1:], blocks.tolist()):
        if block != sorted(set(block)):
            raise FormatError("block ids must be distinct and sorted", number)
    return SQS.from_blocks(v, blocks)


# dispatch

_PARSERS = {"LATIN": parse_latin, "CODE": parse_code, "BBD": parse_bbd, "SQS": parse_sqs}


def format_object(obj: DesignObject) -> str:
    if isinstance(obj, LatinHypercube):
        return format_latin(obj)
    if isinstance(obj, Code):
        return format_code(obj)
    if isinstance(obj, BBD):
        return format_bbd(obj)
    if isinstance(obj, SQS):
        return format_sqs(obj)
    raise TypeError(f"no text format for {type(obj).__name__}")


def parse_object(text: str) -> DesignObject:
    for number, tokens in _lines(text):
        parser = _PARSERS.get(tokens[0])
        if parser is None:
            raise FormatError(f"unknown header {tokens[0]!r}, expected one of {', '.join(KINDS)}", number)
        return parser(text)
    raise FormatError("empty file", 1)


def write_object(obj: DesignObject, path: str) -> str:
    folder = os.path.dirname(os.path.abspath(path))
    ensure_dir(folder)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_object(obj))
    logger.debug(f"wrote {type(obj).__name__} to {path}")
    return path


def read_object(path: str) -> DesignObject:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_object(fh.read())


def read_sqs_file(path: str) -> Optional[SQS]:
    """SQS from a file, or None when the file is absent or malformed."""
    text = safe_read_text(path)
    if text is None:
        return None
    try:
        return parse_sqs(text)
    except FormatError as exc:
        logger.warning(f"ignoring {path}: {exc}")
        return None
