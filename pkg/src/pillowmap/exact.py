"""Exact rational scalars, 2x2 integer/rational matrices, and quadratic surds.

Everything in this module is pure and exact: no floating point is used
except in the explicitly labelled binary64 approximations.  All values are
immutable, so they can be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and g = a*x + b*y."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        return -old_r, -old_s, -old_t
    return old_r, old_s, old_t


@dataclass(frozen=True)
class IntMat2:
    """2x2 integer matrix [[a, b], [c, d]], row-major."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def adjugate(self) -> IntMat2:
        return IntMat2(self.d, -self.b, -self.c, self.a)

    def __matmul__(self, other: IntMat2) -> IntMat2:
        return IntMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, v: tuple[int, int]) -> tuple[int, int]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def scaled(self, k: int) -> IntMat2:
        return IntMat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @staticmethod
    def identity() -> IntMat2:
        return IntMat2(1, 0, 0, 1)


@dataclass(frozen=True)
class RatMat2:
    """2x2 matrix with exact rational entries."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: RatMat2) -> RatMat2:
        return RatMat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def apply(self, v: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    @staticmethod
    def from_int(m: IntMat2, denominator: int = 1) -> RatMat2:
        return RatMat2(
            Fraction(m.a, denominator),
            Fraction(m.b, denominator),
            Fraction(m.c, denominator),
            Fraction(m.d, denominator),
        )

    @staticmethod
    def identity() -> RatMat2:
        one, zero = Fraction(1), Fraction(0)
        return RatMat2(one, zero, zero, one)


def mat_pow(m: IntMat2, n: int) -> IntMat2:
    """Exact n-th power of a 2x2 integer matrix, n >= 0."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = IntMat2.identity()
    base = m
    while n:
        if n & 1:
            result = result @ base
        base = base @ base
        n >>= 1
    return result


def inv_pow(m: IntMat2, n: int) -> RatMat2:
    """Exact inverse power m**(-n) as a rational matrix, n >= 0.

    Computed as adjugate(m**n) / det(m**n), so the identity
    mat_pow(m, n) @ inv_pow(m, n) == I holds exactly.
    """
    det = m.det()
    if det == 0:
        raise ValueError("non-invertible")
    p = mat_pow(m, n)
    return RatMat2.from_int(p.adjugate(), p.det())


def linf_norm(m: RatMat2) -> Fraction:
    """Operator norm of m acting on the plane with the max norm.

    Equals the maximum over rows of the sum of absolute entry values.
    """
    return max(abs(m.a) + abs(m.b), abs(m.c) + abs(m.d))


def _square_free_split(r: int) -> tuple[int, int]:
    """Write r = s*s * r0 with r0 square free; return (s, r0)."""
    if r < 0:
        raise ValueError("radicand must be non-negative")
    s, r0 = 1, r
    k = 2
    while k * k <= r0:
        k2 = k * k
        while r0 % k2 == 0:
            r0 //= k2
            s *= k
        k += 1
    return s, r0


@dataclass(frozen=True, init=False)
class AlgebraicModulus:
    """Non-negative real of the form p + q*sqrt(r), held exactly.

    p and q are rationals and r is a square-free non-negative integer
    (r == 0 exactly when the value is rational).  The class supports
    exact multiplication, integer powers, inversion and ordering within
    a fixed radical, so downstream comparisons never touch floats.
    """

    p: Fraction
    q: Fraction
    r: int

    def __init__(self, p, q=0, r: int = 0):
        p, q = Fraction(p), Fraction(q)
        if r < 0:
            raise ValueError("radicand must be non-negative")
        s, r0 = _square_free_split(r)
        q *= s
        if r0 <= 1:
            p, q, r0 = p + q * (1 if r0 == 1 else 0), Fraction(0), 0
        if q == 0:
            r0 = 0
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "r", r0)
        if self._sign() < 0:
            raise ValueError("modulus must be non-negative")

    @property
    def kind(self) -> str:
        if self.q == 0:
            return "integer" if self.p.denominator == 1 else "rational"
        if self.p == 0:
            return "sqrt-of-rational"
        return "half-sum-with-sqrt"

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError("value is irrational")
        return self.p

    def squared(self):
        """Exact square; a Fraction whenever the square is rational."""
        cross = 2 * self.p * self.q
        body = self.p * self.p + self.q * self.q * self.r
        if cross == 0:
            return body
        return AlgebraicModulus(body, cross, self.r)

    def _sign(self) -> int:
        p, q, r = self.p, self.q, self.r
        if q == 0:
            return (p > 0) - (p < 0)
        if p == 0:
            return (q > 0) - (q < 0)
        if p > 0 and q > 0:
            return 1
        if p < 0 and q < 0:
            return -1
        # opposite signs: compare p*p against q*q*r
        lead = 1 if p > 0 else -1
        diff = p * p - q * q * r
        if diff == 0:
            return 0
        return lead if diff > 0 else -lead

    def _coerced(self, other) -> tuple[Fraction, Fraction, int]:
        if isinstance(other, AlgebraicModulus):
            if other.r not in (0, self.r) and self.r != 0:
                raise ValueError("incompatible radicals")
            return other.p, other.q, other.r
        return Fraction(other), Fraction(0), 0

    def _cmp(self, other) -> int:
        op, oq, orr = self._coerced(other)
        r = self.r if self.r else orr
        diff = AlgebraicModulus.__new__(AlgebraicModulus)
        object.__setattr__(diff, "p", self.p - op)
        object.__setattr__(diff, "q", self.q - oq)
        object.__setattr__(diff, "r", r)
        return diff._sign()

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __le__(self, other) -> bool:
        return self._cmp(other) <= 0

    def __gt__(self, other) -> bool:
        return self._cmp(other) > 0

    def __ge__(self, other) -> bool:
        return self._cmp(other) >= 0

    def __mul__(self, other) -> AlgebraicModulus:
        op, oq, orr = self._coerced(other)
        r = self.r if self.r else orr
        return AlgebraicModulus(
            self.p * op + self.q * oq * r, self.p * oq + self.q * op, r
        )

    __rmul__ = __mul__

    def inverse(self) -> AlgebraicModulus:
        # p*p == q*q*r forces p == q == 0 because r is square free
        denom = self.p * self.p - self.q * self.q * self.r
        if denom == 0:
            raise ZeroDivisionError("inverse of zero")
        return AlgebraicModulus(self.p / denom, -self.q / denom, self.r)

    def __pow__(self, k: int) -> AlgebraicModulus:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        out = AlgebraicModulus(1)
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __float__(self) -> float:
        if self.q == 0:
            return float(self.p)
        p, q = float(self.p), float(self.q)
        root = math.sqrt(self.r)
        if (self.p > 0) == (self.q > 0) or self.p == 0:
            return p + q * root
        # opposite signs cancel; route through the conjugate to keep
        # the relative error at a few ulps
        num = float(self.p * self.p - self.q * self.q * self.r)
        return num / (p - q * root)

    def __repr__(self) -> str:
        if self.q == 0:
            return f"AlgebraicModulus({self.p})"
        return f"AlgebraicModulus({self.p} + {self.q}*sqrt({self.r}))"


def eig_min_modulus(m: IntMat2) -> AlgebraicModulus:
    """Minimum absolute value of the eigenvalues of m, det(m) > 0.

    For a negative discriminant the eigenvalues form a conjugate pair of
    modulus sqrt(det).  Otherwise both roots are real and the smaller
    absolute value of (tr +- sqrt(disc)) / 2 is returned, exactly.
    """
    det = m.det()
    if det <= 0:
        raise ValueError("determinant must be positive")
    tr = m.trace()
    disc = tr * tr - 4 * det
    if disc < 0:
        return AlgebraicModulus(0, 1, det)
    s = math.isqrt(disc)
    if s * s == disc:
        return AlgebraicModulus(Fraction(min(abs(tr - s), abs(tr + s)), 2))
    half = Fraction(1, 2)
    roots = [
        AlgebraicModulus(tr * half, half, disc),
        AlgebraicModulus(tr * half, -half, disc),
    ]
    mods = []
    for root in roots:
        if root._sign() < 0:
            root = AlgebraicModulus(-root.p, -root.q, root.r)
        mods.append(root)
    return min(mods)


_ROTATION_ORDERS = {2: 1, -2: 2, -1: 3, 0: 4, 1: 6}


def rotation_order(u: IntMat2) -> int:
    """Finite order of a unimodular matrix acting as a lattice rotation.

    The trace pins the candidate order in {1, 2, 3, 4, 6}; the power is
    then verified so shears with trace +-2 are rejected.
    """
    if u.det() != 1:
        raise ValueError("determinant must be 1")
    order = _ROTATION_ORDERS.get(u.trace())
    if order is None or mat_pow(u, order) != IntMat2.identity():
        raise ValueError("infinite order")
    return order


def column_hnf(m: IntMat2) -> tuple[int, int, int]:
    """Column Hermite form of m as (h11, h21, h22).

    The form is lower triangular with positive diagonal and
    0 <= h21 < h22; the column lattice of m is preserved.
    """
    det = m.det()
    if det == 0:
        raise ValueError("matrix is singular")
    g, x, y = _xgcd(m.a, m.b)
    h11 = g
    h21 = x * m.c + y * m.d
    h22 = abs(det) // g
    return h11, h21 % h22, h22


def hnf_residue_from(hnf: tuple[int, int, int], v: tuple[int, int]) -> tuple[int, int]:
    """Residue of v in the fundamental box of a precomputed Hermite form."""
    h11, h21, h22 = hnf
    k = v[0] // h11
    return (v[0] - k * h11, (v[1] - k * h21) % h22)


def hnf_residue(m: IntMat2, v: tuple[int, int]) -> tuple[int, int]:
    """Canonical representative of v modulo the column lattice of m.

    The representative lies in the half-open box [0, h11) x [0, h22) of
    the column Hermite form; the reduction is idempotent.
    """
    return hnf_residue_from(column_hnf(m), v)
