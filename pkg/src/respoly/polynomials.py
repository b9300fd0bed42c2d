"""Dense polynomial arithmetic and reduction modulo x^d - 1.

A polynomial is an immutable coefficient tuple in ascending degree order,
either over exact rationals (fractions.Fraction) or over binary64 floats.
The numeric mode is a property of the polynomial; the two are never mixed
inside one value. Reducing modulo x^d - 1 folds the coefficient at
exponent i onto residue class i mod d, so the length-d residue vector of
p^n carries exactly the d strided coefficient sums of p^n.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import BadModulus, ModulusMismatch, TooLarge, ZeroSum

Number = Union[Fraction, float]

EXACT = "exact"
FLOAT = "float"

# pow_mod_naive materializes the full expansion of p^n; cap its term count.
NAIVE_TERM_GUARD = 10**6


def guards_lifted() -> bool:
    return os.environ.get("RESPOLY_GUARD_OVERRIDE") == "1"


def _as_exact(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError(
            "exact mode does not accept binary floats; "
            "pass an int, Fraction, or a string such as '1/3' or '0.25'"
        )
    return Fraction(value)


def _as_float(value) -> float:
    out = float(value)
    if not math.isfinite(out):
        raise ValueError(f"float coefficients must be finite, got {out!r}")
    return out


def _coerce(values, mode) -> tuple[Number, ...]:
    if mode == EXACT:
        return tuple(_as_exact(v) for v in values)
    if mode == FLOAT:
        return tuple(_as_float(v) for v in values)
    raise ValueError(f"unknown mode {mode!r}")


def _zero(mode) -> Number:
    return Fraction(0) if mode == EXACT else 0.0


def _one(mode) -> Number:
    return Fraction(1) if mode == EXACT else 1.0


@dataclass(frozen=True)
class Polynomial:
    """Canonical dense polynomial: no trailing zero coefficients.

    The zero polynomial is the single tuple (0,). Coefficients are coerced
    on construction, so Polynomial(("1/2", "1/2")) and Polynomial((1, 2, 1))
    both work in exact mode.
    """

    coeffs: tuple[Number, ...]
    mode: str = EXACT

    def __post_init__(self):
        coeffs = _coerce(self.coeffs, self.mode)
        if not coeffs:
            raise ValueError("a polynomial needs at least one coefficient")
        end = len(coeffs)
        while end > 1 and coeffs[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "coeffs", coeffs[:end])

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0

    def coefficient_sum(self) -> Number:
        """p(1), the total coefficient mass."""
        return sum(self.coeffs, _zero(self.mode))


@dataclass(frozen=True)
class ResidueVector:
    """Length-d coefficient vector of r(p), the remainder modulo x^d - 1.

    Unlike Polynomial, the length is pinned to d even when high entries
    are zero: this is a fixed-dimension algebra object.
    """

    d: int
    coeffs: tuple[Number, ...]
    mode: str = EXACT

    def __post_init__(self):
        if self.d < 2:
            raise BadModulus(f"modulus must be >= 2, got {self.d}")
        coeffs = _coerce(self.coeffs, self.mode)
        if len(coeffs) != self.d:
            raise ValueError(f"residue vector must have exactly d={self.d} entries, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def __len__(self) -> int:
        return self.d

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, j: int) -> Number:
        return self.coeffs[j]

    def total(self) -> Number:
        return sum(self.coeffs, _zero(self.mode))

    def is_positive(self) -> bool:
        return all(c > 0 for c in self.coeffs)


def identity_residue(d: int, mode: str = EXACT) -> ResidueVector:
    """The multiplicative identity (1, 0, ..., 0) of R[x]/(x^d - 1)."""
    one, zero = _one(mode), _zero(mode)
    return ResidueVector(d, (one,) + (zero,) * (d - 1), mode)


def classify(p: Polynomial) -> str:
    """One of 'zero', 'positive', 'nonnegative', 'mixed-sign'.

    'positive' means every coefficient up to the degree is > 0;
    'nonnegative' means all >= 0 with at least one zero coefficient.
    """
    if p.is_zero():
        return "zero"
    if all(c > 0 for c in p.coeffs):
        return "positive"
    if all(c >= 0 for c in p.coeffs):
        return "nonnegative"
    return "mixed-sign"


def normalize(p: Polynomial) -> tuple[Number, Polynomial]:
    """Split p as p(1) * p' where p' has coefficient sum 1 (stochastic)."""
    scale = p.coefficient_sum()
    if scale == 0:
        raise ZeroSum("coefficients sum to 0; normalization is undefined")
    prime = Polynomial(tuple(c / scale for c in p.coeffs), p.mode)
    return scale, prime


def residue(p: Polynomial, d: int) -> ResidueVector:
    """Remainder of p modulo x^d - 1: entry j collects all p_i with i = j mod d."""
    if d < 2:
        raise BadModulus(f"modulus must be >= 2, got {d}")
    out = [_zero(p.mode)] * d
    for i, c in enumerate(p.coeffs):
        out[i % d] += c
    return ResidueVector(d, tuple(out), p.mode)


def mul_mod(a: ResidueVector, b: ResidueVector) -> ResidueVector:
    """Cyclic convolution: multiplication in R[x]/(x^d - 1)."""
    if a.d != b.d:
        raise ModulusMismatch(f"moduli differ: {a.d} vs {b.d}")
    if a.mode != b.mode:
        raise ValueError(f"numeric modes differ: {a.mode} vs {b.mode}")
    d = a.d
    out = [_zero(a.mode)] * d
    for i, ai in enumerate(a.coeffs):
        if ai == 0:
            continue
        for j, bj in enumerate(b.coeffs):
            k = i + j
            if k >= d:
                k -= d
            out[k] += ai * bj
    return ResidueVector(d, tuple(out), a.mode)


def _int_conv(a: list[int], b: list[int], d: int) -> list[int]:
    out = [0] * d
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    if k >= d:
                        k -= d
                    out[k] += ai * bj
    return out


def _exact_pow(v: ResidueVector, n: int) -> ResidueVector:
    # Square-and-multiply over a common denominator: integer convolutions
    # avoid per-product gcd reduction, which dominates Fraction arithmetic.
    d = v.d
    den = math.lcm(*(c.denominator for c in v.coeffs))
    base = [int(c * den) for c in v.coeffs]
    base_den = den
    result = [1] + [0] * (d - 1)
    result_den = 1
    while n:
        if n & 1:
            result = _int_conv(result, base, d)
            result_den *= base_den
        n >>= 1
        if n:
            base = _int_conv(base, base, d)
            base_den *= base_den
    return ResidueVector(d, tuple(Fraction(x, result_den) for x in result), EXACT)


def _float_pow(v: ResidueVector, n: int) -> ResidueVector:
    d = v.d
    base = list(v.coeffs)
    result = [1.0] + [0.0] * (d - 1)
    while n:
        if n & 1:
            result = _float_conv(result, base, d)
        n >>= 1
        if n:
            base = _float_conv(base, base, d)
    return ResidueVector(d, tuple(result), FLOAT)


def _float_conv(a: list[float], b: list[float], d: int) -> list[float]:
    out = [0.0] * d
    for i, ai in enumerate(a):
        if ai != 0.0:
            for j, bj in enumerate(b):
                k = i + j
                if k >= d:
                    k -= d
                out[k] += ai * bj
    return out


def pow_residue(v: ResidueVector, n: int) -> ResidueVector:
    """n-th power of a residue vector by square-and-multiply (O(log n) convolutions)."""
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    if n == 0:
        return identity_residue(v.d, v.mode)
    if v.mode == EXACT:
        return _exact_pow(v, n)
    return _float_pow(v, n)


def pow_mod(p: Polynomial, n: int, d: int) -> ResidueVector:
    """r(p^n), computed without ever expanding p^n."""
    return pow_residue(residue(p, d), n)


def _poly_mul(a: list[Number], b: tuple[Number, ...], zero: Number) -> list[Number]:
    out = [zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def pow_mod_naive(p: Polynomial, n: int, d: int) -> ResidueVector:
    """Brute-force oracle: expand p^n fully, then reduce once.

    Exact mode results match pow_mod bit for bit. Refuses expansions
    beyond NAIVE_TERM_GUARD terms unless guards are lifted.
    """
    if d < 2:
        raise BadModulus(f"modulus must be >= 2, got {d}")
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    terms = p.degree() * n + 1
    if terms > NAIVE_TERM_GUARD and not guards_lifted():
        raise TooLarge(
            f"naive expansion needs {terms} terms (> {NAIVE_TERM_GUARD}); "
            "set RESPOLY_GUARD_OVERRIDE=1 to proceed anyway"
        )
    zero = _zero(p.mode)
    full = [_one(p.mode)]
    for _ in range(n):
        full = _poly_mul(full, p.coeffs, zero)
    out = [zero] * d
    for i, c in enumerate(full):
        out[i % d] += c
    return ResidueVector(d, tuple(out), p.mode)
