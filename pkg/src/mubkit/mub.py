"""Complete sets of N+1 mutually unbiased bases for prime-power N.

Basis 0 is the standard basis.  For odd characteristic, component ``u`` of
vector ``l`` in basis ``k`` is ``exp(2 pi i/p [u^T (k.alpha) u + l^T u]) / sqrt(N)``.
In characteristic two those phases are real signs only and cannot give N+1
bases, so the quadratic part is read modulo 4 and used as a power of ``i``:
``i^(u^T (k.alpha) u) (-1)^(l^T u) / sqrt(N)``, with ``k.alpha`` formed over
the integers.

Two labelings are provided:

``"field"``
    basis ``k``, letter ``l`` and component ``u`` (all counted from 1) carry
    field element number ``k``, ``l``, ``u``; element number N is zero.
``"zero_first"``
    counting starts at the zero element, phases are complex-conjugated, and
    at N = 4 the letters of the complementary bases are permuted by
    :data:`ZERO_FIRST_LETTER_ORDER`.  This reproduces the explicit two-, three-
    and four-dimensional intermediate operators in their usual published form.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import IndexOutOfRange
from .field import GaloisField, PrimePower, parse_prime_power, value_to_digits

CONVENTIONS = ("field", "zero_first")

# Column order (letters 1..N) for complementary bases 1..N under "zero_first" at N=4.
ZERO_FIRST_LETTER_ORDER = {
    4: ((0, 1, 2, 3), (0, 1, 3, 2), (1, 0, 2, 3), (2, 3, 0, 1)),
}


@dataclass(frozen=True)
class MubSet:
    """N+1 orthonormal bases; ``bases[k][:, l]`` is vector ``l`` of basis ``k``.

    Letters and components are 0-based array positions.
    """

    pp: PrimePower
    bases: np.ndarray
    convention: str

    @property
    def N(self) -> int:
        return self.pp.N

    def vector(self, k: int, l: int) -> np.ndarray:
        self._check(k, l)
        return self.bases[k][:, l]

    def projector(self, k: int, l: int) -> np.ndarray:
        v = self.vector(k, l)
        return np.outer(v, v.conj())

    def projectors(self) -> np.ndarray:
        """All projectors, shape ``(N+1, N, N, N)`` indexed ``[k, l, row, col]``."""
        b = self.bases
        return np.einsum("kul,kvl->kluv", b, b.conj())

    def _check(self, k, l):
        if not 0 <= k <= self.N:
            raise IndexOutOfRange(f"basis index {k} outside [0, {self.N}]")
        if not 0 <= l < self.N:
            raise IndexOutOfRange(f"letter index {l} outside [0, {self.N - 1}]")


def _frozen(bases, pp, convention):
    bases = np.ascontiguousarray(bases, dtype=np.complex128)
    bases.setflags(write=False)
    return MubSet(pp, bases, convention)


def build_qubit_mubs() -> MubSet:
    """The three qubit bases: standard, (|0>+-|1>)/sqrt2, (|0>+-i|1>)/sqrt2."""
    r = 1 / np.sqrt(2)
    bases = np.array(
        [
            [[1, 0], [0, 1]],
            [[r, r], [r, -r]],
            [[r, r], [1j * r, -1j * r]],
        ],
        dtype=np.complex128,
    )
    return _frozen(bases, PrimePower(2, 1), "qubit")


def build_mub_set(pp: PrimePower | int, convention: str = "field", field: GaloisField | None = None) -> MubSet:
    if not isinstance(pp, PrimePower):
        pp = parse_prime_power(pp)
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; choose from {CONVENTIONS}")
    field = field or GaloisField(pp)
    p, m, N = pp.p, pp.m, pp.N

    if convention == "field":
        values = (np.arange(1, N + 1) % N).astype(np.int64)
    else:
        values = np.arange(N, dtype=np.int64)

    digits = np.array([value_to_digits(int(v), p, m) for v in values], dtype=np.int64)
    linear = (digits @ digits.T) % p  # [l, u] in position order
    modulus = 4 if p == 2 else p
    quad_by_value = kernels.quadratic_exponents(np.asarray(field.alpha), p, modulus)
    quad = quad_by_value[np.ix_(values, values)]  # [k, u] in position order

    bases = np.empty((N + 1, N, N), dtype=np.complex128)
    bases[0] = np.eye(N)
    norm = 1 / np.sqrt(N)
    for k in range(N):
        if p == 2:
            # powers of i from a lookup table: exact signs and units
            exponent = (quad[k][:, None] + 2 * linear.T) % 4
            block = np.array([1, 1j, -1, -1j])[exponent]
        else:
            exponent = (quad[k][:, None] + linear.T) % p
            block = np.exp(2j * np.pi * exponent / p)
        block = block * norm
        if convention == "zero_first":
            block = block.conj()
            order = ZERO_FIRST_LETTER_ORDER.get(N)
            if order is not None:
                block = block[:, list(order[k])]
        bases[k + 1] = block
    return _frozen(bases, pp, convention)


@dataclass(frozen=True)
class ComplementarityReport:
    max_same_basis_dev: float
    max_cross_basis_dev: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_same_basis_dev < self.tol and self.max_cross_basis_dev < self.tol


def verify_complementarity(mubs: MubSet, tol: float = 1e-10) -> ComplementarityReport:
    b = mubs.bases
    N = mubs.N
    same = cross = 0.0
    eye = np.eye(N)
    for a in range(N + 1):
        for c in range(a, N + 1):
            g = b[a].conj().T @ b[c]
            if a == c:
                same = max(same, float(np.abs(g - eye).max()))
            else:
                cross = max(cross, float(np.abs(np.abs(g) ** 2 - 1 / N).max()))
    return ComplementarityReport(same, cross, tol)


def overlap_sum(mubs: MubSet, m: int, u: int, q: int, n: int, v: int) -> complex:
    """``sum_{k != m} sum_l <m,u|k,l><k,l|m,q><m,n|k,l><k,l|m,v>``."""
    N = mubs.N
    if not 0 <= m <= N:
        raise IndexOutOfRange(f"basis index {m} outside [0, {N}]")
    for idx in (u, q, n, v):
        if not 0 <= idx < N:
            raise IndexOutOfRange(f"letter index {idx} outside [0, {N - 1}]")
    ref = mubs.bases[m]
    total = 0j
    for k in range(N + 1):
        if k == m:
            continue
        g = ref.conj().T @ mubs.bases[k]  # g[a, l] = <m,a|k,l>
        total += complex(np.sum(g[u] * g[q].conj() * g[n] * g[v].conj()))
    return total


def overlap_sum_tensor(mubs: MubSet, m: int) -> np.ndarray:
    """``overlap_sum`` for every ``(u, q, n, v)`` at once, shape ``(N,)*4``."""
    ref = mubs.bases[m]
    N = mubs.N
    out = np.zeros((N,) * 4, dtype=np.complex128)
    for k in range(N + 1):
        if k == m:
            continue
        g = ref.conj().T @ mubs.bases[k]
        out += np.einsum("ul,ql,nl,vl->uqnv", g, g.conj(), g, g.conj())
    return out
