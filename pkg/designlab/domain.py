from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

if TYPE_CHECKING:  # pragma: no cover
    from .gf import Field

Word = Tuple[int, ...]


class DesignLabError(Exception):
    """Base class of every error raised by designlab."""


class FieldError(DesignLabError, ValueError):
    pass


class ConstructionError(DesignLabError, ValueError):
    pass


class CapExceededError(DesignLabError, ValueError):
    pass


class FormatError(DesignLabError, ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class VerificationError(DesignLabError):
    def __init__(self, report: "VerificationReport"):
        super().__init__(report.summary())
        self.report = report


class BudgetNotReachedError(DesignLabError):
    def __init__(self, message: str, selected: Sequence["Subcode"]):
        super().__init__(message)
        self.selected = list(selected)


def _format_value(value: object) -> str:
    if isinstance(value, (tuple, list)):
        return ",".join(_format_value(v) for v in value)
    if value is None:
        return "-"
    return str(value).replace(" ", "")


def _format_record(values: Dict[str, object]) -> str:
    return " ".join(f"{key}={_format_value(val)}" for key, val in values.items())


@dataclass
class VerificationReport:
    kind: str
    ok: bool = True
    checked: int = 0
    violations: List[Dict[str, object]] = field(default_factory=list)
    stats: Dict[str, object] = field(default_factory=dict)

    def fail(self, **record: object) -> "VerificationReport":
        self.ok = False
        self.violations.append(record)
        return self

    def summary(self) -> str:
        status = "ok" if self.ok else "fail"
        return f"{self.kind}: {status} ({self.checked} checks, {len(self.violations)} violations)"

    def to_records(self) -> List[str]:
        head: Dict[str, object] = {"kind": self.kind, "status": "ok" if self.ok else "fail", "checked": self.checked}
        head.update(self.stats)
        lines = [_format_record(head)]
        for index, violation in enumerate(self.violations, 1):
            lines.append(_format_record({"violation": index, **violation}))
        return lines

    def to_frame(self) -> pd.DataFrame:
        rows = [{"key": "kind", "value": self.kind}, {"key": "status", "value": "ok" if self.ok else "fail"},
                {"key": "checked", "value": self.checked}]
        rows += [{"key": k, "value": _format_value(v)} for k, v in self.stats.items()]
        rows += [{"key": f"violation {i}", "value": _format_record(v)} for i, v in enumerate(self.violations, 1)]
        return pd.DataFrame(rows)

    def require(self) -> "VerificationReport":
        if not self.ok:
            raise VerificationError(self)
        return self


@dataclass(frozen=True)
class Line:
    base: int
    direction: int
    points: Tuple[int, ...]

    def __contains__(self, element: int) -> bool:
        return element in self.points


@dataclass(frozen=True, eq=False)
class LatinHypercube:
    d0: int
    q: int
    cells: np.ndarray  # shape (q,)*d0, last coordinate fastest

    def __getitem__(self, index: Tuple[int, ...]) -> int:
        return int(self.cells[index])

    def restrict(self, size: int) -> "LatinHypercube":
        return LatinHypercube(self.d0, size, self.cells[(slice(0, size),) * self.d0].copy())

    def same_cells(self, other: "LatinHypercube") -> bool:
        return self.d0 == other.d0 and self.q == other.q and bool(np.array_equal(self.cells, other.cells))


@dataclass(frozen=True, eq=False)
class OrthogonalSystem:
    s: int
    q: int
    functions: Tuple[np.ndarray, ...]  # each of shape (q,)*s
    strong: bool = False

    @property
    def t(self) -> int:
        return len(self.functions)


@dataclass(frozen=True, eq=False)
class LinearForm:
    field: "Field"
    generator: np.ndarray  # m x d matrix of element encodings

    @property
    def over_prime_subfield(self) -> bool:
        return bool((self.generator < self.field.p).all())


@dataclass(frozen=True, eq=False)
class Code:
    d: int
    q: int
    rho: int
    words: np.ndarray  # (N, d), rows sorted lexicographically, no duplicates
    linear: Optional[LinearForm] = None

    @classmethod
    def from_words(cls, d: int, q: int, rho: int, words, linear: Optional[LinearForm] = None) -> "Code":
        arr = np.asarray(words, dtype=np.int64).reshape(-1, d)
        if len(arr):
            arr = np.unique(arr, axis=0)
        return cls(d, q, rho, arr, linear)

    @property
    def m(self) -> int:
        return self.d - self.rho + 1

    def __len__(self) -> int:
        return int(self.words.shape[0])

    @cached_property
    def word_set(self) -> FrozenSet[Word]:
        return frozenset(map(tuple, self.words.tolist()))

    def __contains__(self, word: Sequence[int]) -> bool:
        return tuple(int(x) for x in word) in self.word_set

    def same_words(self, other: "Code") -> bool:
        return self.d == other.d and self.word_set == other.word_set

    def keys(self, coords: Optional[Sequence[int]] = None) -> np.ndarray:
        """Base-q integer key of every word (restricted to `coords`)."""
        cols = list(range(self.d)) if coords is None else list(coords)
        if self.q ** len(cols) >= 2 ** 62:
            raise CapExceededError(f"keys over {len(cols)} coordinates of order {self.q} overflow int64")
        keys = np.zeros(len(self), dtype=np.int64)
        for c in cols:
            keys = keys * self.q + self.words[:, c]
        return keys


@dataclass(frozen=True, eq=False)
class Subcode:
    parent: Code
    alphabets: Tuple[Tuple[int, ...], ...]
    words: np.ndarray
    anchor: Optional[Word] = None
    direction: Optional[int] = None

    @property
    def order(self) -> int:
        return len(self.alphabets[0])

    def __len__(self) -> int:
        return int(self.words.shape[0])

    @cached_property
    def word_set(self) -> FrozenSet[Word]:
        return frozenset(map(tuple, self.words.tolist()))

    def as_code(self) -> Code:
        """The component relabelled onto [0, order) coordinate by coordinate."""
        relabelled = np.empty_like(self.words)
        for c, alphabet in enumerate(self.alphabets):
            lookup = {symbol: i for i, symbol in enumerate(alphabet)}
            relabelled[:, c] = [lookup[int(x)] for x in self.words[:, c]]
        return Code.from_words(self.parent.d, self.order, self.parent.rho, relabelled)


@dataclass
class SwitchPlan:
    code: Code
    components: List[Subcode]
    moves: List[int]


@dataclass(frozen=True, eq=False)
class HDesign:
    d: int
    q: int
    w: int
    t: int
    groups: Tuple[Tuple[int, ...], ...]
    blocks: np.ndarray

    @property
    def v(self) -> int:
        return self.d * self.q


def _canonical_blocks(blocks, width: int) -> np.ndarray:
    arr = np.sort(np.asarray(blocks, dtype=np.int64).reshape(-1, width), axis=1)
    if len(arr):
        arr = np.unique(arr, axis=0)
    return arr


@dataclass(frozen=True, eq=False)
class BBD:
    n: int
    g1: Tuple[int, ...]
    g2: Tuple[int, ...]
    blocks: np.ndarray

    @classmethod
    def from_blocks(cls, n: int, g1: Sequence[int], g2: Sequence[int], blocks) -> "BBD":
        return cls(n, tuple(g1), tuple(g2), _canonical_blocks(blocks, 4))

    def __len__(self) -> int:
        return int(self.blocks.shape[0])

    @cached_property
    def block_set(self) -> FrozenSet[Word]:
        return frozenset(map(tuple, self.blocks.tolist()))


@dataclass(frozen=True, eq=False)
class BbdBuild:
    q: int
    ell: int
    square: LatinHypercube
    code: Code
    bbd: BBD
    k0: Tuple[int, ...]
    k1: Tuple[int, ...]
    components: Dict[str, Subcode]


@dataclass(frozen=True, eq=False)
class SQS:
    v: int
    blocks: np.ndarray

    @classmethod
    def from_blocks(cls, v: int, blocks) -> "SQS":
        return cls(v, _canonical_blocks(blocks, 4))

    def __len__(self) -> int:
        return int(self.blocks.shape[0])

    @cached_property
    def block_set(self) -> FrozenSet[Word]:
        return frozenset(map(tuple, self.blocks.tolist()))


@dataclass
class Sqs8n2Ingredients:
    n: int
    mds: Code
    bbds: Dict[Tuple[int, int], BBD]
    s8: SQS
    s10: SQS
    d: Optional[Dict[int, SQS]] = None


@dataclass
class Sqs8n2Result:
    n: int
    mode: str
    families: Dict[str, np.ndarray]
    blocks: np.ndarray
    report: VerificationReport
    sqs: Optional[SQS] = None

    def family_sizes(self) -> Dict[str, int]:
        return {name: int(len(blocks)) for name, blocks in self.families.items()}

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"family": k, "blocks": v} for k, v in self.family_sizes().items()])


@dataclass(frozen=True)
class BoundResult:
    p: int
    k: int
    d: int
    rho: int
    m: int
    eps: Fraction
    t: int
    w: Fraction
    ln_bound: float
    vacuous: bool

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{"p": self.p, "k": self.k, "d": self.d, "rho": self.rho, "m": self.m,
                              "eps": float(self.eps), "t": self.t, "w": float(self.w),
                              "ln_bound": self.ln_bound, "vacuous": self.vacuous}])


@dataclass
class SearchResult:
    v: int
    seed: int
    method: str
    steps: int
    blocks_placed: int
    triples_covered: int
    triples_total: int
    sqs: Optional[SQS] = None

    @property
    def found(self) -> bool:
        return self.sqs is not None


@dataclass
class CoverageSummary:
    universe: int
    arity: int
    minimum: int
    maximum: int
    histogram: Dict[int, int]
    violations: List[Word]
    excluded_hits: int = 0
    total: int = 0

    @property
    def exact(self) -> bool:
        return self.minimum == 1 and self.maximum == 1 and self.excluded_hits == 0
