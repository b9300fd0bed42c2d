"""Circulant and dense d x d matrix algebra.

A circulant matrix is stored by its first row only; row i is the (i-1)-fold
cyclic permutation of that row. Products and powers of circulants stay
circulant and reduce to cyclic convolutions of first rows, so powering
costs O(d^2 log n) instead of O(d^3 log n). The dense representation
exists for the decomposition residual M0 and for verification paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from .errors import DimensionMismatch, MethodUnavailable
from .polynomials import (
    EXACT,
    FLOAT,
    Number,
    ResidueVector,
    _coerce,
    _one,
    _zero,
    mul_mod,
    pow_residue,
)


def cyclic_permutation(v: tuple) -> tuple:
    """Rotate right: (v0, ..., v_{d-1}) -> (v_{d-1}, v0, ..., v_{d-2})."""
    if not v:
        raise ValueError("cannot permute an empty vector")
    return (v[-1],) + tuple(v[:-1])


@dataclass(frozen=True)
class CirculantMatrix:
    """circ(v): the d x d matrix whose i-th row is the (i-1)-fold rotation of v."""

    d: int
    first_row: tuple[Number, ...]
    mode: str = EXACT

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"circulant dimension must be >= 2, got {self.d}")
        row = _coerce(self.first_row, self.mode)
        if len(row) != self.d:
            raise ValueError(f"first row must have {self.d} entries, got {len(row)}")
        object.__setattr__(self, "first_row", row)

    def rows(self) -> list[tuple[Number, ...]]:
        out = [self.first_row]
        for _ in range(self.d - 1):
            out.append(cyclic_permutation(out[-1]))
        return out

    def to_dense(self) -> "DenseMatrix":
        return DenseMatrix(self.d, tuple(self.rows()), self.mode)

    def to_residue(self) -> ResidueVector:
        return ResidueVector(self.d, self.first_row, self.mode)


@dataclass(frozen=True)
class DenseMatrix:
    """Plain d x d grid of coefficients, same numeric modes as Polynomial."""

    d: int
    entries: tuple[tuple[Number, ...], ...]
    mode: str = EXACT

    def __post_init__(self):
        if self.d < 1:
            raise ValueError(f"dimension must be >= 1, got {self.d}")
        grid = tuple(_coerce(row, self.mode) for row in self.entries)
        if len(grid) != self.d or any(len(row) != self.d for row in grid):
            raise ValueError(f"entries must form a {self.d}x{self.d} grid")
        object.__setattr__(self, "entries", grid)

    def to_dense(self) -> "DenseMatrix":
        return self


Matrix = Union[CirculantMatrix, DenseMatrix]


def identity_matrix(d: int, mode: str = EXACT) -> DenseMatrix:
    one, zero = _one(mode), _zero(mode)
    rows = tuple(tuple(one if i == j else zero for j in range(d)) for i in range(d))
    return DenseMatrix(d, rows, mode)


def ones_matrix(d: int, mode: str = EXACT) -> DenseMatrix:
    """U: every entry 1."""
    one = _one(mode)
    return DenseMatrix(d, tuple((one,) * d for _ in range(d)), mode)


def uniform_matrix(d: int, mode: str = EXACT) -> DenseMatrix:
    """J = U/d: the doubly stochastic matrix with every entry 1/d."""
    entry = Fraction(1, d) if mode == EXACT else 1.0 / d
    return DenseMatrix(d, tuple((entry,) * d for _ in range(d)), mode)


def from_residue(v: ResidueVector) -> CirculantMatrix:
    """circ(r(p)); doubly stochastic when v is nonnegative with sum 1."""
    return CirculantMatrix(v.d, v.coeffs, v.mode)


def _check_compatible(a: Matrix, b: Matrix):
    if a.d != b.d:
        raise DimensionMismatch(f"dimensions differ: {a.d} vs {b.d}")
    if a.mode != b.mode:
        raise ValueError(f"numeric modes differ: {a.mode} vs {b.mode}")


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Matrix product; two circulants multiply in O(d^2) via their first rows."""
    _check_compatible(a, b)
    if isinstance(a, CirculantMatrix) and isinstance(b, CirculantMatrix):
        row = mul_mod(a.to_residue(), b.to_residue())
        return CirculantMatrix(a.d, row.coeffs, a.mode)
    ad, bd = a.to_dense(), b.to_dense()
    d = a.d
    zero = _zero(a.mode)
    cols = list(zip(*bd.entries))
    out = tuple(
        tuple(sum((x * y for x, y in zip(row, col)), zero) for col in cols)
        for row in ad.entries
    )
    return DenseMatrix(d, out, a.mode)


def mat_pow(a: Matrix, n: int) -> Matrix:
    """a^n by square-and-multiply; n = 0 gives the identity."""
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    if isinstance(a, CirculantMatrix):
        row = pow_residue(a.to_residue(), n)
        return CirculantMatrix(a.d, row.coeffs, a.mode)
    result = identity_matrix(a.d, a.mode)
    base = a
    while n:
        if n & 1:
            result = mat_mul(result, base)
        n >>= 1
        if n:
            base = mat_mul(base, base)
    return result


def is_doubly_stochastic(m: Matrix, tol: float = 1e-9) -> bool:
    """Entries nonnegative, every row and column sum equal to 1.

    Exact mode compares exactly and ignores tol; float mode allows |sum - 1|
    and negative dips up to tol.
    """
    if tol < 0:
        raise ValueError(f"tolerance must be >= 0, got {tol}")
    exact = m.mode == EXACT
    if isinstance(m, CirculantMatrix):
        # Every row and column of a circulant is a permutation of the first row.
        row_sum = sum(m.first_row, _zero(m.mode))
        if exact:
            return all(c >= 0 for c in m.first_row) and row_sum == 1
        return all(c >= -tol for c in m.first_row) and abs(row_sum - 1) <= tol
    grid = m.entries
    one = _one(m.mode)
    sums = [sum(row, _zero(m.mode)) for row in grid]
    col_sums = [sum(col, _zero(m.mode)) for col in zip(*grid)]
    if exact:
        return (
            all(c >= 0 for row in grid for c in row)
            and all(s == one for s in sums)
            and all(s == one for s in col_sums)
        )
    return (
        all(c >= -tol for row in grid for c in row)
        and all(abs(s - 1) <= tol for s in sums)
        and all(abs(s - 1) <= tol for s in col_sums)
    )


def max_norm(m: Matrix) -> Number:
    """Entrywise max norm ||M||_max = max |M_ij| (not submultiplicative)."""
    if isinstance(m, CirculantMatrix):
        return max(abs(c) for c in m.first_row)
    return max(abs(c) for row in m.entries for c in row)


def max_norm_dist(a: Matrix, b: Matrix) -> Number:
    """max_ij |A_ij - B_ij|."""
    _check_compatible(a, b)
    if isinstance(a, CirculantMatrix) and isinstance(b, CirculantMatrix):
        # A - B is circulant, and the entries of a circulant are exactly
        # the entries of its first row.
        return max(abs(x - y) for x, y in zip(a.first_row, b.first_row))
    ad, bd = a.to_dense(), b.to_dense()
    return max(
        abs(x - y)
        for row_a, row_b in zip(ad.entries, bd.entries)
        for x, y in zip(row_a, row_b)
    )


def product_norm_bound(a: Matrix, b: Matrix) -> Number:
    """d * ||A||_max * ||B||_max, an upper bound for ||AB||_max.

    The max norm itself is not submultiplicative; the dimension factor
    repairs the product inequality.
    """
    _check_compatible(a, b)
    return a.d * max_norm(a) * max_norm(b)


def dft_pow(v: ResidueVector, n: int) -> ResidueVector:
    """n-th cyclic-convolution power through the discrete Fourier basis.

    Circulants are diagonalized by the DFT, so powering acts entrywise on
    the spectrum of the first row. Float mode only: the eigenvalues involve
    d-th roots of unity, which are irrational for d >= 3.
    """
    if v.mode != FLOAT:
        raise MethodUnavailable("dft_pow requires float mode; exact mode has no eigenvalue path")
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    spectrum = np.fft.fft(np.asarray(v.coeffs, dtype=np.float64))
    powered = spectrum**n
    back = np.fft.ifft(powered).real
    return ResidueVector(v.d, tuple(float(x) for x in back), FLOAT)
