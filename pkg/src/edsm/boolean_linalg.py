"""Dense Boolean and polynomial matrix products.

BoolMatrix packs each row into a Python int, so a Boolean product is a
word-parallel OR of rows.  Rectangular products decompose into square
blocks.  PolyMatrix products evaluate at roots of unity modulo the NTT
prime 998244353, multiply pointwise, and interpolate; a budget check
guarantees every output coefficient is recovered exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .eds_core import BitVector

__all__ = [
    "BoolMatrix",
    "PolyMatrix",
    "bool_matvec_batch",
    "bool_multiply",
    "poly_multiply",
    "rect_multiply",
]

_NTT_PRIME = 998244353  # 119 * 2^23 + 1
_NTT_ROOT = 3


@dataclass(frozen=True)
class BoolMatrix:
    """rows x cols Boolean matrix; row i packed with bit j-1 = cell (i, j)."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("dimensions must be positive")
        if len(self.data) != self.rows:
            raise ValueError("row count mismatch")
        limit = 1 << self.cols
        if any(not 0 <= r < limit for r in self.data):
            raise ValueError("row mask wider than cols")

    @classmethod
    def from_rows(cls, rows: list[list[int]]) -> "BoolMatrix":
        packed = []
        for row in rows:
            mask = 0
            for j, cell in enumerate(row):
                if cell:
                    mask |= 1 << j
            packed.append(mask)
        return cls(len(rows), len(rows[0]), tuple(packed))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "BoolMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BoolMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    def get(self, i: int, j: int) -> int:
        """1-indexed cell access."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexError(f"cell ({i},{j}) outside {self.rows}x{self.cols}")
        return (self.data[i - 1] >> (j - 1)) & 1

    def to_lists(self) -> list[list[int]]:
        return [
            [(mask >> j) & 1 for j in range(self.cols)] for mask in self.data
        ]


def bool_multiply(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    out = []
    bdata = b.data
    for mask in a.data:
        acc = 0
        k = 0
        while mask:
            tz = (mask & -mask).bit_length() - 1
            k += tz
            acc |= bdata[k]
            mask >>= tz + 1
            k += 1
        out.append(acc)
    return BoolMatrix(a.rows, b.cols, tuple(out))


def _submatrix(m: BoolMatrix, r0: int, c0: int, size: int) -> BoolMatrix:
    colmask = (1 << size) - 1
    rows = []
    for r in range(r0, r0 + size):
        rows.append((m.data[r] >> c0) & colmask if r < m.rows else 0)
    return BoolMatrix(size, size, tuple(rows))


def rect_multiply(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Square N x N times N x N' with N >= N', via N' x N' block products."""
    if a.rows != a.cols:
        raise ValueError("left factor must be square")
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    n, np_ = a.rows, b.cols
    if np_ > n:
        raise ValueError("right factor wider than the square side")
    if np_ == n:
        return bool_multiply(a, b)
    blocks = -(-n // np_)
    acc_rows = [0] * (blocks * np_)
    for bi in range(blocks):
        for bk in range(blocks):
            ablk = _submatrix(a, bi * np_, bk * np_, np_)
            bblk = _submatrix(b, bk * np_, 0, np_)
            prod = bool_multiply(ablk, bblk)
            base = bi * np_
            for r in range(np_):
                acc_rows[base + r] |= prod.data[r]
    return BoolMatrix(n, np_, tuple(acc_rows[:n]))


def bool_matvec_batch(
    m: BoolMatrix, vectors: list[BitVector], z: int
) -> list[BitVector]:
    """M x U_i for every i; batches of z go through rect_multiply."""
    if z < 1:
        raise ValueError("batch size must be positive")
    for u in vectors:
        if u.len != m.cols:
            raise ValueError(f"vector length {u.len} != cols {m.cols}")
    if not vectors:
        return []
    if len(vectors) < z or z == 1 or m.rows != m.cols or z > m.cols:
        # Short batch: plain per-vector products over the rows of M.
        out = []
        for u in vectors:
            acc = 0
            umask = u.mask
            for r, row in enumerate(m.data):
                if row & umask:
                    acc |= 1 << r
            out.append(BitVector(m.rows, acc))
        return out
    results: list[BitVector] = []
    for g0 in range(0, len(vectors), z):
        group = vectors[g0 : g0 + z]
        cols = [u.mask for u in group] + [0] * (z - len(group))
        right = BoolMatrix(m.cols, z, tuple(_transpose_cols(cols, m.cols)))
        prod = rect_multiply(m, right)
        for c in range(len(group)):
            mask = 0
            for r in range(m.rows):
                if (prod.data[r] >> c) & 1:
                    mask |= 1 << r
            results.append(BitVector(m.rows, mask))
    return results


def _transpose_cols(cols: list[int], nrows: int) -> list[int]:
    rows = []
    for r in range(nrows):
        mask = 0
        for c, col in enumerate(cols):
            if (col >> r) & 1:
                mask |= 1 << c
        rows.append(mask)
    return rows


@dataclass(frozen=True)
class PolyMatrix:
    """rows x cols matrix of polynomials; coeffs[i, j, t] = coefficient of x^t."""

    rows: int
    cols: int
    degree: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1 or self.degree < 0:
            raise ValueError("bad shape")
        if self.coeffs.shape != (self.rows, self.cols, self.degree + 1):
            raise ValueError("coefficient array shape mismatch")
        if self.coeffs.dtype != np.int64:
            raise ValueError("coefficients must be int64")
        if (self.coeffs < 0).any():
            raise ValueError("coefficients must be non-negative")

    @classmethod
    def zero(cls, rows: int, cols: int, degree: int) -> "PolyMatrix":
        return cls(rows, cols, degree, np.zeros((rows, cols, degree + 1), np.int64))

    def coeff(self, i: int, j: int, t: int) -> int:
        """1-indexed entry, 0-indexed power."""
        return int(self.coeffs[i - 1, j - 1, t])


def _ntt(a: np.ndarray, invert: bool) -> np.ndarray:
    """Iterative radix-2 NTT along the last axis; length must be a power of 2."""
    p = _NTT_PRIME
    n = a.shape[-1]
    if n == 1:
        return a % p
    a = a % p
    # Bit-reversal permutation.
    idx = np.arange(n)
    rev = np.zeros(n, np.int64)
    bits = n.bit_length() - 1
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    a = a[..., rev]
    length = 2
    while length <= n:
        w = pow(_NTT_ROOT, (p - 1) // length, p)
        if invert:
            w = pow(w, p - 2, p)
        ws = np.empty(length // 2, np.int64)
        acc = 1
        for i in range(length // 2):
            ws[i] = acc
            acc = acc * w % p
        blocks = a.reshape(*a.shape[:-1], n // length, length)
        lo = blocks[..., : length // 2]
        hi = blocks[..., length // 2 :]
        t = (hi * ws) % p  # operands < 2^30, products < 2^60: no overflow
        new_lo = (lo + t) % p
        new_hi = (lo - t) % p
        a = np.concatenate([new_lo, new_hi], axis=-1).reshape(*a.shape)
        length *= 2
    if invert:
        inv_n = pow(n, p - 2, p)
        a = a * inv_n % p
    return a


def poly_multiply(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise ValueError(f"inner dimensions differ: {a.cols} vs {b.rows}")
    d = max(a.degree, b.degree)
    max_a = int(a.coeffs.max(initial=0))
    max_b = int(b.coeffs.max(initial=0))
    budget = a.cols * (d + 1) * max_a * max_b
    if budget >= _NTT_PRIME:
        raise OverflowError(
            f"coefficient budget {budget} exceeds the exact transform modulus"
        )
    if a.cols > (1 << 18):
        raise OverflowError("inner dimension too large for int64 accumulation")
    out_deg = 2 * d
    n = 1
    while n < out_deg + 1:
        n *= 2
    fa = np.zeros((a.rows, a.cols, n), np.int64)
    fa[:, :, : a.degree + 1] = a.coeffs
    fb = np.zeros((b.rows, b.cols, n), np.int64)
    fb[:, :, : b.degree + 1] = b.coeffs
    fa = _ntt(fa, invert=False)
    fb = _ntt(fb, invert=False)
    # Pointwise matrix products mod p; split into 15-bit halves so the
    # int64 accumulation never overflows.
    p = _NTT_PRIME
    a_hi, a_lo = fa >> 15, fa & 0x7FFF
    prod = (
        np.einsum("ikt,kjt->ijt", a_hi, fb) % p * (1 << 15)
        + np.einsum("ikt,kjt->ijt", a_lo, fb)
    ) % p
    out = _ntt(prod, invert=True)[:, :, : out_deg + 1]
    return PolyMatrix(a.rows, b.cols, out_deg, out.astype(np.int64))
