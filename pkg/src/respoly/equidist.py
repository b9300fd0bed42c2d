"""Eventual positivity certificates and equidistribution of strided sums.

Three layers build on each other. A positivity certificate (two positive
residue entries whose index gap is coprime to d) guarantees that r(p^n)
is strictly positive from some small power on. Any positive doubly
stochastic matrix M splits as lambda*J + (1-lambda)*M0 with J the uniform
matrix, which yields the geometric bound ||M^n - J||_max <= (1-lambda)^n.
Applied to the circulant of r(p), this drives every strided coefficient
sum of p^n to 1/d and quantifies the rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .circulant import (
    CirculantMatrix,
    DenseMatrix,
    Matrix,
    is_doubly_stochastic,
    uniform_matrix,
)
from .errors import (
    BadLambda,
    BadModulus,
    ConstantPolynomial,
    NoCertificate,
    NotDoublyStochastic,
    NotNonnegative,
    NotPositive,
    NotStochastic,
    RespolyError,
    ZeroPolynomial,
)
from .polynomials import (
    EXACT,
    FLOAT,
    Number,
    Polynomial,
    ResidueVector,
    classify,
    mul_mod,
    pow_mod,
    pow_residue,
    residue,
)

STOCHASTIC_TOL = 1e-9  # float-mode slack for "coefficients sum to 1"


@dataclass(frozen=True)
class PositivityCertificate:
    """Witness that r(p^n) is eventually strictly positive.

    k < l index strictly positive entries of r(p) with gcd(d, l-k) = 1;
    threshold is the first power, scanned upward from d-1, at which
    r(p^n) was verified entrywise positive.
    """

    k: int
    l: int
    h: int
    threshold: int


@dataclass(frozen=True)
class LambdaDecomposition:
    """M = lam*J + (1-lam)*m0 with m0 doubly stochastic.

    lam = d * (minimum entry of M) is the largest weight admitting the
    split, so (1-lam)^n is the tightest bound this decomposition gives.
    special_case_j marks M = J, where lam = 1 and the split is trivial.
    """

    lam: Number
    m0: DenseMatrix
    special_case_j: bool = False


@dataclass(frozen=True)
class StridedSumProfile:
    """Entry j holds the sum of coefficients of p^n at exponents = j mod d."""

    d: int
    j_sums: tuple[Number, ...]


@dataclass(frozen=True)
class SubsequenceTrace:
    """Distances along the arithmetic subsequence n = (d-1)*t + offset.

    bounds carries d * ||C^{(d-1)t} - J||_max * ||C^offset||_max, the
    dimension-repaired product bound for the interleaving argument.
    """

    offset: int
    n_values: tuple[int, ...]
    distances: tuple[Number, ...]
    bounds: tuple[Number, ...]


@dataclass(frozen=True)
class ConvergenceReport:
    """Per-power strided-sum profiles, their distances to 1/d, and bounds.

    lam and m0 are attached when some power m0 <= d of the circulant is
    entrywise positive; bound[i] is then (1-lam)^floor(n_grid[i]/m0).
    n_star is the first n whose max distance drops below the tolerance.
    nonconvergent flags a trace with no certificate that never met the
    tolerance; it is not a proof of divergence.
    """

    d: int
    n_grid: tuple[int, ...]
    sums: tuple[StridedSumProfile, ...]
    distances: tuple[Number, ...]
    lam: Optional[Number] = None
    m0: Optional[int] = None
    bound: Optional[tuple[Number, ...]] = None
    n_star: Optional[int] = None
    nonconvergent: bool = False
    subsequences: tuple[SubsequenceTrace, ...] = ()


def _require_nonnegative_nonzero(p: Polynomial):
    kind = classify(p)
    if kind == "zero":
        raise ZeroPolynomial("the zero polynomial has no positive residue entries")
    if kind == "mixed-sign":
        raise NotNonnegative("a negative coefficient is present")


def _first_positive_from(r: ResidueVector, start: int) -> tuple[int, ResidueVector]:
    """First n >= start with r(p^n) entrywise positive; certificate holders reach it by n = d."""
    cur = pow_residue(r, start)
    n = start
    while not cur.is_positive():
        if n >= r.d:
            raise RespolyError(
                f"residue power not positive by n = d = {r.d}; certificate logic violated"
            )
        cur = mul_mod(cur, r)
        n += 1
    return n, cur


def lemma1_certificate(p: Polynomial, d: int) -> Optional[PositivityCertificate]:
    """Search r(p) for positive entries k < l with gcd(d, l-k) = 1.

    Returns the lexicographically first qualifying pair (smallest k, then
    smallest l) together with the verified positivity threshold, or None
    when no pair qualifies. The threshold scan starts at n = d-1.
    """
    _require_nonnegative_nonzero(p)
    r = residue(p, d)
    support = [j for j in range(d) if r[j] > 0]
    for a, k in enumerate(support):
        for l in support[a + 1 :]:
            if math.gcd(d, l - k) == 1:
                threshold, _ = _first_positive_from(r, d - 1)
                return PositivityCertificate(k=k, l=l, h=l - k, threshold=threshold)
    return None


def binomial_support_check(h: int, d: int) -> bool:
    """Does (1 + x^h)^(d-1) reduce mod x^d - 1 with all d entries nonzero?

    Expands by the binomial theorem: term i contributes C(d-1, i) at
    exponent h*i, which lands in residue class h*i mod d. All d classes
    are hit exactly when gcd(h, d) = 1, since h*i = h*j mod d then forces
    i = j within 0..d-1.
    """
    if not 1 <= h <= d - 1:
        raise ValueError(f"need 1 <= h <= d-1, got h={h}, d={d}")
    counts = [0] * d
    for i in range(d):
        counts[(h * i) % d] += math.comb(d - 1, i)
    return all(c > 0 for c in counts)


def lambda_decomposition(m: Matrix) -> LambdaDecomposition:
    """Split a positive doubly stochastic M as lam*J + (1-lam)*M0.

    lam = d * min(M); M0 = (M - lam*J) / (1-lam) is verified nonnegative
    and doubly stochastic with at least one zero entry (where M attains
    its minimum). M = J short-circuits with lam = 1.
    """
    dense = m.to_dense()
    d = dense.d
    entries = [c for row in dense.entries for c in row]
    if not all(c > 0 for c in entries):
        raise NotPositive("the decomposition needs strictly positive entries")
    if not is_doubly_stochastic(m):
        raise NotDoublyStochastic("row or column sums differ from 1")
    exact = m.mode == EXACT
    if all(c == entries[0] for c in entries):
        one = Fraction(1) if exact else 1.0
        return LambdaDecomposition(lam=one, m0=uniform_matrix(d, m.mode), special_case_j=True)
    lam = d * min(entries)
    if not exact and lam >= 1.0:
        # Numerically indistinguishable from J.
        return LambdaDecomposition(lam=1.0, m0=uniform_matrix(d, m.mode), special_case_j=True)
    j_entry = Fraction(1, d) if exact else 1.0 / d
    scale = 1 - lam
    residual = tuple(
        tuple((c - lam * j_entry) / scale for c in row) for row in dense.entries
    )
    m0 = DenseMatrix(d, residual, m.mode)
    zero_tol = 0 if exact else 1e-12
    if not is_doubly_stochastic(m0):
        raise NotDoublyStochastic("residual M0 failed the doubly stochastic check")
    if not any(abs(c) <= zero_tol for row in m0.entries for c in row):
        raise RespolyError("residual M0 has no zero entry; lam was not maximal")
    return LambdaDecomposition(lam=lam, m0=m0, special_case_j=False)


def convergence_bound(lam: Number, n: int) -> Number:
    """(1 - lam)^n, the guaranteed decay of ||M^n - J||_max.

    From M^n = (1-lam)^n (M0^n - J) + J: the entries of M0^n lie in [0, 1]
    and J's are 1/d, so the bracket has max norm at most 1.
    """
    if not 0 < lam <= 1:
        raise BadLambda(f"need 0 < lambda <= 1, got {lam}")
    if n < 0:
        raise ValueError(f"exponent must be >= 0, got {n}")
    return (1 - lam) ** n


def strided_sums(p: Polynomial, n: int, d: int) -> StridedSumProfile:
    """Strided coefficient sums of p^n: entry j = sum of (p^n)_k over k = j mod d.

    Computed as r(p^n) without expanding p^n; the fold and the residue
    are the same linear map.
    """
    v = pow_mod(p, n, d)
    return StridedSumProfile(d, v.coeffs)


def _check_stochastic(p: Polynomial):
    total = p.coefficient_sum()
    if p.mode == EXACT:
        if total != 1:
            raise NotStochastic(f"coefficients must sum to 1, got {total}")
    elif abs(total - 1) > STOCHASTIC_TOL:
        raise NotStochastic(f"coefficients must sum to 1 within {STOCHASTIC_TOL}, got {total}")


class _ExactTrace:
    """Incremental exact powers of a residue vector over a common denominator.

    Convolving integer numerators sidesteps Fraction's per-product gcd
    normalization; entries are reduced only when a profile is emitted.
    """

    def __init__(self, r: ResidueVector):
        self.d = r.d
        den = math.lcm(*(c.denominator for c in r.coeffs))
        self.base = [int(c * den) for c in r.coeffs]
        self.base_den = den
        self.nums = list(self.base)
        self.den = den

    def step(self):
        d = self.d
        out = [0] * d
        for i, ai in enumerate(self.nums):
            if ai:
                for j, bj in enumerate(self.base):
                    if bj:
                        k = i + j
                        if k >= d:
                            k -= d
                        out[k] += ai * bj
        self.nums = out
        self.den *= self.base_den

    def profile(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def distance(self) -> Fraction:
        # max_j |nums[j]/den - 1/d| without building d intermediate Fractions
        worst = max(abs(self.d * x - self.den) for x in self.nums)
        return Fraction(worst, self.d * self.den)

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.nums)

    def min_entry(self) -> Fraction:
        return Fraction(min(self.nums), self.den)


class _FloatTrace:
    def __init__(self, r: ResidueVector):
        self.d = r.d
        self.base = list(r.coeffs)
        self.nums = list(self.base)

    def step(self):
        d = self.d
        out = [0.0] * d
        for i, ai in enumerate(self.nums):
            if ai != 0.0:
                for j, bj in enumerate(self.base):
                    k = i + j
                    if k >= d:
                        k -= d
                    out[k] += ai * bj
        self.nums = out

    def profile(self) -> tuple[float, ...]:
        return tuple(self.nums)

    def distance(self) -> float:
        target = 1.0 / self.d
        return max(abs(x - target) for x in self.nums)

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.nums)

    def min_entry(self) -> float:
        return min(self.nums)


def _run_trace(r: ResidueVector, n_max: int):
    """Profiles and distances for n = 1..n_max plus the first positive power <= d."""
    tracer = _ExactTrace(r) if r.mode == EXACT else _FloatTrace(r)
    profiles: list[StridedSumProfile] = []
    distances: list[Number] = []
    m0: Optional[int] = None
    lam: Optional[Number] = None
    for n in range(1, n_max + 1):
        if n > 1:
            tracer.step()
        profiles.append(StridedSumProfile(r.d, tracer.profile()))
        distances.append(tracer.distance())
        if m0 is None and n <= r.d and tracer.is_positive():
            m0 = n
            lam = r.d * tracer.min_entry()
    return profiles, distances, m0, lam


def _geometric_bounds(lam: Number, m0: int, n_max: int) -> tuple[Number, ...]:
    decay = 1 - lam
    powers = [decay**0]
    for _ in range(n_max // m0):
        powers.append(powers[-1] * decay)
    return tuple(powers[n // m0] for n in range(1, n_max + 1))


def converge_trace(p: Polynomial, d: int, n_max: int, tol: float = 1e-6) -> ConvergenceReport:
    """Trace the strided sums of p^n toward 1/d for n = 1..n_max.

    One cyclic convolution per step. When some power m0 <= d of the
    circulant of r(p) is entrywise positive, the report carries
    lam = d * min(r(p^m0)) and the bound (1-lam)^floor(n/m0). n_star is
    the first n whose max deviation from 1/d falls below tol.
    """
    if d < 2:
        raise BadModulus(f"modulus must be >= 2, got {d}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    _require_nonnegative_nonzero(p)
    if p.degree() == 0:
        raise ConstantPolynomial("r(p^n) stays (1, 0, ..., 0) for a constant p")
    _check_stochastic(p)

    r = residue(p, d)
    profiles, distances, m0, lam = _run_trace(r, n_max)
    bound = _geometric_bounds(lam, m0, n_max) if m0 is not None else None
    n_star = next((n for n, dist in enumerate(distances, start=1) if dist < tol), None)
    certificate = lemma1_certificate(p, d)
    return ConvergenceReport(
        d=d,
        n_grid=tuple(range(1, n_max + 1)),
        sums=tuple(profiles),
        distances=tuple(distances),
        lam=lam,
        m0=m0,
        bound=bound,
        n_star=n_star,
        nonconvergent=certificate is None and n_star is None,
    )


def corollary_check(p: Polynomial, d: int, n_max: int, tol: float = 1e-6) -> ConvergenceReport:
    """Full-sequence convergence for certified nonnegative p.

    Interleaves the d-1 arithmetic subsequences n = (d-1)*t + i,
    i = 0..d-2: each inherits convergence from the positive subsequence
    C^{(d-1)t} -> J, with the product step bounded by
    d * ||C^{(d-1)t} - J||_max * ||C^i||_max (the max norm needs the
    dimension factor to bound products). Raises NoCertificate when the
    positivity hypothesis cannot be established.
    """
    if d < 2:
        raise BadModulus(f"modulus must be >= 2, got {d}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    certificate = lemma1_certificate(p, d)
    if certificate is None:
        raise NoCertificate(
            "no index pair (k, l) with positive residue entries and gcd(d, l-k) = 1"
        )
    _check_stochastic(p)

    r = residue(p, d)
    profiles, distances, m0, lam = _run_trace(r, n_max)
    bound = _geometric_bounds(lam, m0, n_max) if m0 is not None else None
    n_star = next((n for n, dist in enumerate(distances, start=1) if dist < tol), None)

    one = Fraction(1) if p.mode == EXACT else 1.0
    block = d - 1
    subsequences = []
    for i in range(block):
        shift_norm = one if i == 0 else max(profiles[i - 1].j_sums)
        ns, dists, bounds = [], [], []
        t = 1
        while block * t + i <= n_max:
            n = block * t + i
            ns.append(n)
            dists.append(distances[n - 1])
            bounds.append(d * distances[block * t - 1] * shift_norm)
            t += 1
        subsequences.append(
            SubsequenceTrace(
                offset=i,
                n_values=tuple(ns),
                distances=tuple(dists),
                bounds=tuple(bounds),
            )
        )

    return ConvergenceReport(
        d=d,
        n_grid=tuple(range(1, n_max + 1)),
        sums=tuple(profiles),
        distances=tuple(distances),
        lam=lam,
        m0=m0,
        bound=bound,
        n_star=n_star,
        nonconvergent=False,
        subsequences=tuple(subsequences),
    )
