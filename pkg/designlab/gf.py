from __future__ import annotations

import logging
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .domain import CapExceededError, FieldError, Line
from .utils import FIELD_SIZE_CAP, TABLE_CAP

logger = logging.getLogger(__name__)

Poly = Tuple[int, ...]  # coefficients over GF(p), lowest degree first


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _trim(poly: Sequence[int]) -> List[int]:
    out = list(poly)
    while out and out[-1] == 0:
        out.pop()
    return out


def poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a by b over GF(p)."""
    rem = [c % p for c in _trim(a)]
    div = [c % p for c in _trim(b)]
    if not div:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = pow(div[-1], p - 2, p)
    while len(rem) >= len(div):
        factor = rem[-1] * lead_inv % p
        shift = len(rem) - len(div)
        for i, c in enumerate(div):
            rem[shift + i] = (rem[shift + i] - factor * c) % p
        rem = _trim(rem)
    return rem


def _monic_polys(p: int, degree: int) -> Iterator[Poly]:
    for low in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(low % p)
            low //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim([c % p for c in poly])
    degree = len(poly) - 1
    if degree < 1:
        return False
    for d in range(1, degree // 2 + 1):
        for divisor in _monic_polys(p, d):
            if not poly_mod(poly, divisor, p):
                return False
    return True


def default_modulus(p: int, k: int) -> Poly:
    """Least irreducible monic polynomial of degree k, ordered by its lower coefficients read base p."""
    for poly in _monic_polys(p, k):
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")  # pragma: no cover


class Field:
    """GF(p^k) with elements encoded as base-p integers, lowest coefficient first."""

    def __init__(self, p: int, k: int = 1, modulus: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError(f"extension degree must be >= 1, got {k}")
        if p ** k > FIELD_SIZE_CAP:
            raise CapExceededError(f"GF({p}^{k}) exceeds the field size cap {FIELD_SIZE_CAP}")
        self.p = p
        self.k = k
        self.q = p ** k
        if modulus is None:
            self.modulus: Poly = default_modulus(p, k)
        else:
            coeffs = _trim([int(c) % p for c in modulus])
            if len(coeffs) != k + 1:
                raise FieldError(f"modulus must have degree {k}")
            lead_inv = pow(coeffs[-1], p - 2, p)
            coeffs = [c * lead_inv % p for c in coeffs]
            if not is_irreducible(coeffs, p):
                raise FieldError(f"modulus {coeffs} is reducible over GF({p})")
            self.modulus = tuple(coeffs)
        self._weights = p ** np.arange(k, dtype=np.int64)
        self.digits = (np.arange(self.q, dtype=np.int64)[:, None] // self._weights) % p
        self._build_log_tables()
        if self.q <= TABLE_CAP:
            elems = np.arange(self.q)
            self.add_table = self.add_array(elems[:, None], elems[None, :])
            self.mul_table = self.mul_array(elems[:, None], elems[None, :])
        logger.debug(f"built GF({p}^{k}) modulus={self.modulus} primitive={self.primitive}")

    def __repr__(self) -> str:
        return f"Field(p={self.p}, k={self.k}, modulus={self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.modulus))

    # encodings

    def to_vector(self, a: int) -> Tuple[int, ...]:
        return tuple(int(c) for c in self.digits[a])

    def from_vector(self, coeffs: Sequence[int]) -> int:
        return int(sum((int(c) % self.p) * self.p ** i for i, c in enumerate(coeffs)))

    def _poly_mul(self, a: int, b: int) -> int:
        prod = [0] * (2 * self.k - 1)
        da, db = self.digits[a], self.digits[b]
        for i in range(self.k):
            if da[i]:
                for j in range(self.k):
                    prod[i + j] += int(da[i]) * int(db[j])
        return self.from_vector(poly_mod(prod, self.modulus, self.p) if self.k > 1 else [prod[0] % self.p])

    def _build_log_tables(self) -> None:
        order = self.q - 1
        for g in range(1, self.q):
            exp = np.empty(order, dtype=np.int64)
            x = 1
            period = order
            for i in range(order):
                exp[i] = x
                x = self._poly_mul(x, g)
                if x == 1 and i < order - 1:
                    period = i + 1
                    break
            if period == order:
                self.primitive = g
                self.exp = exp
                self.log = np.zeros(self.q, dtype=np.int64)
                self.log[exp] = np.arange(order)
                return
        raise FieldError("no primitive element found")  # pragma: no cover

    # vectorised arithmetic

    def add_array(self, a, b) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._weights

    def neg_array(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return ((-self.digits[a]) % self.p) @ self._weights

    def sub_array(self, a, b) -> np.ndarray:
        return self.add_array(a, self.neg_array(b))

    def mul_array(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    # scalar arithmetic

    def add(self, a: int, b: int) -> int:
        return int(self.add_array(a, b))

    def sub(self, a: int, b: int) -> int:
        return int(self.sub_array(a, b))

    def neg(self, a: int) -> int:
        return int(self.neg_array(a))

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_array(a, b))

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.exp[(-self.log[a]) % (self.q - 1)])

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            return 1 if n == 0 else 0
        return int(self.exp[(self.log[a] * n) % (self.q - 1)])

    # line geometry

    def line_points(self, a: int, v: int) -> Line:
        if v == 0:
            raise FieldError("line direction must be nonzero")
        alphas = np.arange(self.p)
        points = self.add_array(a, self.scale_array_many(alphas, v))
        return Line(int(a), int(v), tuple(int(x) for x in points))

    def scale_array_many(self, alphas, v: int) -> np.ndarray:
        return self.mul_array(np.asarray(alphas, dtype=np.int64), np.int64(v))

    @cached_property
    def direction_representatives(self) -> Tuple[int, ...]:
        """Least element of each class GF(p)*·v, one per 1-dimensional subspace."""
        reps = set()
        for v in range(1, self.q):
            reps.add(int(self.scale_array_many(np.arange(1, self.p), v).min()))
        return tuple(sorted(reps))

    def lines_through(self, a: int) -> List[Line]:
        return [self.line_points(a, v) for v in self.direction_representatives]


def field_make(p: int, k: int = 1, modulus: Optional[Sequence[int]] = None) -> Field:
    return Field(p, k, modulus)


def line_points(field: Field, a: int, v: int) -> Line:
    return field.line_points(a, v)
