"""Arithmetic in GF(p**m) on digit vectors, and the multiplication tensor.

Elements are numbered 1..N as in the usual tabulation: index ``i`` maps to
the base-``p`` digits of ``i mod N`` (most significant first), so index ``N``
is the zero element.  Internally an element is carried as its *value*
``i mod N``, the integer whose base-``p`` digits are the element's digits.
Addition is digit-wise mod ``p`` (no carries).
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._backend import kernels
from .errors import CompositeDimension, IndexOutOfRange, ZeroOperand


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return False
    return True


def _factorize(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class PrimePower:
    p: int
    m: int

    def __post_init__(self):
        if not _is_prime(self.p) or self.m < 1:
            raise CompositeDimension(f"p={self.p}, m={self.m} is not a prime power")

    @property
    def N(self) -> int:
        return self.p ** self.m

    def __str__(self):
        return f"{self.N} = {self.p}^{self.m}"


def parse_prime_power(N: int) -> PrimePower:
    """Factor ``N = p**m``; raise :class:`CompositeDimension` otherwise."""
    if int(N) != N or N < 2:
        raise CompositeDimension(f"{N} is not a prime power (need an integer >= 2)")
    N = int(N)
    factors = _factorize(N)
    if len(set(factors)) != 1:
        shown = "·".join(str(f) for f in factors)
        raise CompositeDimension(f"{N} = {shown} is not a prime power")
    return PrimePower(factors[0], len(factors))


def _divides(divisor, poly, p):
    # both monic, leading coefficient first
    r = list(poly)
    d = len(divisor) - 1
    for i in range(len(r) - d):
        f = r[i]
        if f:
            for j in range(d + 1):
                r[i + j] = (r[i + j] - f * divisor[j]) % p
    return not any(r[len(r) - d:])


def is_irreducible(poly, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree <= m/2."""
    m = len(poly) - 1
    if m == 1:
        return True
    for d in range(1, m // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if _divides((1,) + tail, poly, p):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree ``m``.

    Coefficients are returned leading first, so ``(1, 0, 1)`` is ``x^2 + 1``.
    """
    for tail in itertools.product(range(p), repeat=m):
        poly = (1,) + tail
        if is_irreducible(poly, p):
            return poly
    raise AssertionError("an irreducible polynomial exists for every degree")


@dataclass(frozen=True)
class FieldElement:
    digits: tuple[int, ...]
    p: int

    @property
    def m(self) -> int:
        return len(self.digits)

    @property
    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.p + d
        return v

    @property
    def index(self) -> int:
        """Position in the 1..N numbering; the zero element is number N."""
        return self.value or self.p ** self.m

    @property
    def is_zero(self) -> bool:
        return not any(self.digits)

    def vector(self) -> np.ndarray:
        return np.array(self.digits, dtype=np.int64)

    def __add__(self, other: FieldElement) -> FieldElement:
        return FieldElement(tuple((a + b) % self.p for a, b in zip(self.digits, other.digits)), self.p)

    def __sub__(self, other: FieldElement) -> FieldElement:
        return FieldElement(tuple((a - b) % self.p for a, b in zip(self.digits, other.digits)), self.p)


def value_to_digits(value: int, p: int, m: int) -> tuple[int, ...]:
    return tuple((value // p ** (m - 1 - j)) % p for j in range(m))


def index_to_digits(index: int, pp: PrimePower) -> FieldElement:
    if not 1 <= index <= pp.N:
        raise IndexOutOfRange(f"element index {index} outside [1, {pp.N}]")
    return FieldElement(value_to_digits(index % pp.N, pp.p, pp.m), pp.p)


def digits_to_index(element: FieldElement) -> int:
    return element.index


class GaloisField:
    """GF(p**m) built on the smallest irreducible modulus of degree m.

    Instances are immutable after construction; the multiplication table and
    tensor are computed lazily and cached.
    """

    def __init__(self, pp: PrimePower | int, poly: tuple[int, ...] | None = None):
        if not isinstance(pp, PrimePower):
            pp = parse_prime_power(pp)
        self.pp = pp
        if poly is None:
            poly = smallest_irreducible(pp.p, pp.m)
        elif len(poly) != pp.m + 1 or poly[0] != 1 or not is_irreducible(tuple(poly), pp.p):
            raise ValueError(f"{poly} is not a monic irreducible polynomial of degree {pp.m} over GF({pp.p})")
        self.poly = tuple(int(c) for c in poly)

    @property
    def p(self) -> int:
        return self.pp.p

    @property
    def m(self) -> int:
        return self.pp.m

    @property
    def N(self) -> int:
        return self.pp.N

    def __repr__(self):
        return f"GaloisField({self.p}**{self.m}, poly={self.poly})"

    def element(self, index: int) -> FieldElement:
        return index_to_digits(index, self.pp)

    def from_value(self, value: int) -> FieldElement:
        return FieldElement(value_to_digits(value, self.p, self.m), self.p)

    @property
    def zero(self) -> FieldElement:
        return self.from_value(0)

    @property
    def one(self) -> FieldElement:
        return self.from_value(1)

    def elements(self):
        """All elements in index order 1..N (zero last)."""
        return [self.element(i) for i in range(1, self.N + 1)]

    @cached_property
    def mul_table(self) -> np.ndarray:
        """``mul_table[a, b]`` is the value of the product of values a and b."""
        table = kernels.field_mul_table(self.p, self.m, np.array(self.poly, dtype=np.int64))
        table.setflags(write=False)
        return table

    def mul(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return self.from_value(int(self.mul_table[a.value, b.value]))

    def inverse(self, a: FieldElement) -> FieldElement:
        if a.is_zero:
            raise ZeroOperand("zero has no multiplicative inverse")
        row = self.mul_table[a.value]
        return self.from_value(int(np.flatnonzero(row == 1)[0]))

    @cached_property
    def alpha(self) -> np.ndarray:
        """The tensor ``alpha[j]`` with ``digit_j(a*b) = a^T alpha[j] b mod p``.

        Shape ``(m, m, m)``; every ``alpha[j]`` is symmetric.
        """
        m, p = self.m, self.p
        out = np.zeros((m, m, m), dtype=np.int64)
        for r in range(m):
            for c in range(m):
                prod = self.mul_table[p ** (m - 1 - r), p ** (m - 1 - c)]
                out[:, r, c] = value_to_digits(int(prod), p, m)
        out.setflags(write=False)
        return out

    def k_alpha(self, k: FieldElement) -> np.ndarray:
        """Integer matrix ``sum_j k_j alpha_j`` (not reduced mod p)."""
        return np.tensordot(k.vector(), self.alpha, axes=1)


def field_mul(a: FieldElement, b: FieldElement, field: GaloisField) -> FieldElement:
    return field.mul(a, b)


def alpha_tensor(field: GaloisField) -> np.ndarray:
    return field.alpha


def phase_exponent(u: FieldElement, k: FieldElement, l: FieldElement, field: GaloisField) -> int:
    """``(u^T (k.alpha) u + l^T u) mod p``."""
    uv = u.vector()
    return int((uv @ field.k_alpha(k) @ uv + l.vector() @ uv) % field.p)


def phase_sum(d: FieldElement, s: FieldElement, field: GaloisField) -> complex:
    """Normalised sum over all k of ``exp(c i d^T (k.alpha) s)``.

    ``c = 4 pi / p`` for odd ``p`` and ``pi`` for ``p = 2``.  For nonzero
    ``d`` and ``s`` the result vanishes, because ``d^T (k.alpha) s`` is the
    digit dot product of ``k`` with the nonzero product ``d*s``.
    """
    if d.is_zero or s.is_zero:
        raise ZeroOperand("phase_sum needs nonzero d and s")
    p = field.p
    dv, sv = d.vector(), s.vector()
    # bilinear value for each alpha_j, then combine with every k
    per_digit = np.array([int(dv @ field.alpha[j] @ sv) for j in range(field.m)], dtype=np.int64)
    total = 0j
    for k in field.elements():
        e = int(k.vector() @ per_digit) % p
        angle = (math.pi if p == 2 else 4 * math.pi / p) * e
        total += cmath.exp(1j * angle)
    return total / field.N


@dataclass(frozen=True)
class DigitSumRow:
    k: int
    k_digits: tuple[int, ...]
    terms: tuple[int, ...]
    total: int


def digit_sum_table(r_index: int, pp: PrimePower) -> list[DigitSumRow]:
    """Rows ``(k, k-digits, k_j r_j mod p, sum mod p)`` for k = 1..N."""
    r = index_to_digits(r_index, pp)
    rows = []
    for k in range(1, pp.N + 1):
        kd = index_to_digits(k, pp).digits
        terms = tuple((a * b) % pp.p for a, b in zip(kd, r.digits))
        rows.append(DigitSumRow(k, kd, terms, sum(terms) % pp.p))
    return rows
