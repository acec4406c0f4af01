"""Exact arithmetic in the cyclotomic field Q(w), w a primitive p-th root of unity.

Elements are stored in the power basis {1, w, ..., w^(p-2)} as integer
numerators over one common positive denominator, reduced by their gcd.  The
relation 1 + w + ... + w^(p-1) = 0 makes that representation unique, so
equality is plain tuple equality.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Sequence

from ..errors import AlphabetMismatch
from .fields import PrimeField


class CycloRational:
    __slots__ = ("p", "nums", "den", "_hash")

    def __init__(self, p: int, nums: Sequence[int], den: int = 1):
        if len(nums) != p - 1:
            raise ValueError(f"need {p - 1} basis coefficients for p={p}, got {len(nums)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            nums = [-n for n in nums]
            den = -den
        if den != 1:
            g = den
            for n in nums:
                g = gcd(g, n)
                if g == 1:
                    break
            if g > 1:
                nums = [n // g for n in nums]
                den //= g
        self.p = p
        self.nums = tuple(nums)
        self.den = den
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def from_rational(cls, p: int, value) -> "CycloRational":
        value = Fraction(value)
        return cls(p, (value.numerator,) + (0,) * (p - 2), value.denominator)

    @classmethod
    def from_fractions(cls, p: int, coeffs: Sequence) -> "CycloRational":
        coeffs = [Fraction(c) for c in coeffs]
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        return cls(p, [int(c * den) for c in coeffs], den)

    @staticmethod
    def zero(p: int) -> "CycloRational":
        return _zero(p)

    @staticmethod
    def one(p: int) -> "CycloRational":
        return _one(p)

    def _coerce(self, other) -> "CycloRational":
        if isinstance(other, CycloRational):
            if other.p != self.p:
                raise AlphabetMismatch(f"cannot mix Q(w_{self.p}) and Q(w_{other.p})")
            return other
        if isinstance(other, (int, Rational)):
            return CycloRational.from_rational(self.p, other)
        return NotImplemented

    # -- queries ------------------------------------------------------
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(n, self.den) for n in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return not any(self.nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.nums[0], self.den)

    def __complex__(self):
        w = cmath.exp(2j * cmath.pi / self.p)
        return sum(n * w**i for i, n in enumerate(self.nums)) / self.den

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return CycloRational(self.p, [a + b for a, b in zip(self.nums, other.nums)], self.den)
        d1, d2 = self.den, other.den
        return CycloRational(self.p, [a * d2 + b * d1 for a, b in zip(self.nums, other.nums)], d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return CycloRational(self.p, [-a for a in self.nums], self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloRational(self.p, [a * other for a in self.nums], self.den)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        if p == 2:
            return CycloRational(2, [self.nums[0] * other.nums[0]], self.den * other.den)
        if other.is_rational():
            c = other.nums[0]
            return CycloRational(p, [a * c for a in self.nums], self.den * other.den)
        if self.is_rational():
            c = self.nums[0]
            return CycloRational(p, [a * c for a in other.nums], self.den * other.den)
        acc = [0] * p
        for i, a in enumerate(self.nums):
            if not a:
                continue
            for j, b in enumerate(other.nums):
                if b:
                    acc[(i + j) % p] += a * b
        top = acc[p - 1]
        return CycloRational(p, [c - top for c in acc[: p - 1]], self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycloRational):
            if not other.is_rational():
                return self * other.inverse()
            other = other.to_fraction()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return CycloRational(self.p, [a * other.denominator for a in self.nums], self.den * other.numerator)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = _one(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, t: int) -> "CycloRational":
        """Apply the automorphism w -> w^t (t coprime to p)."""
        p = self.p
        acc = [0] * p
        for i, a in enumerate(self.nums):
            acc[(i * t) % p] += a
        top = acc[p - 1]
        return CycloRational(p, [c - top for c in acc[: p - 1]], self.den)

    def conjugate(self) -> "CycloRational":
        return self.galois(self.p - 1)

    def norm(self) -> Fraction:
        """Product of all Galois conjugates (a rational number)."""
        prod = _one(self.p)
        for t in range(1, self.p):
            prod = prod * self.galois(t)
        return prod.to_fraction()

    def inverse(self) -> "CycloRational":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloRational.from_rational(self.p, 1 / self.to_fraction())
        others = _one(self.p)
        for t in range(2, self.p):
            others = others * self.galois(t)
        return others / (self * others).to_fraction()

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, CycloRational):
            return self.p == other.p and self.den == other.den and self.nums == other.nums
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self.nums[0], self.den) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self.nums[0], self.den))
            else:
                self._hash = hash((self.p, self.nums, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"CycloRational({self.p}, {list(self.nums)}, {self.den})"

    def __str__(self):
        if self.is_rational():
            return str(Fraction(self.nums[0], self.den))
        parts = []
        for i, c in enumerate(self.coefficients()):
            if c == 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if mono and c == 1:
                term = mono
            elif mono and c == -1:
                term = "-" + mono
            else:
                cs = str(c) if "/" not in str(c) else f"({c})"
                term = cs + ("*" + mono if mono else "")
            parts.append(term)
        return "+".join(parts).replace("+-", "-")


@lru_cache(maxsize=None)
def _zero(p: int) -> CycloRational:
    PrimeField(p)
    return CycloRational(p, (0,) * (p - 1))


@lru_cache(maxsize=None)
def _one(p: int) -> CycloRational:
    PrimeField(p)
    return CycloRational(p, (1,) + (0,) * (p - 2))


@lru_cache(maxsize=None)
def _omega_table(p: int) -> tuple[CycloRational, ...]:
    PrimeField(p)
    out = []
    for k in range(p):
        if k == p - 1:
            out.append(CycloRational(p, (-1,) * (p - 1)))
        else:
            nums = [0] * (p - 1)
            nums[k] = 1
            out.append(CycloRational(p, nums))
    return tuple(out)


def omega_pow(p: int, k: int) -> CycloRational:
    """Canonical form of w^(k mod p)."""
    return _omega_table(p)[k % p]
