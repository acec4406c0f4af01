"""Prime fields and finite vector alphabets over them."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from ..errors import AlphabetMismatch, ValidationError


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field Z_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p >= 1 << 16 or not is_prime(self.p):
            raise ValidationError(f"p={self.p!r} is not a prime below 2^16")

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse in Z_p")
        return pow(a, self.p - 2, self.p)

    def elements(self) -> range:
        return range(self.p)


@dataclass(frozen=True)
class Alphabet:
    """The vector space (Z_p)^dim.

    Elements are enumerated lexicographically with the *first* coordinate
    varying fastest, so for (Z_2)^2 the order is 00, 10, 01, 11.  Every matrix
    and tensor in the package indexes its axes by this order.
    """

    p: int
    dim: int

    def __post_init__(self):
        PrimeField(self.p)
        if self.dim < 0:
            raise ValidationError("alphabet dimension must be nonnegative")

    @property
    def field(self) -> PrimeField:
        return PrimeField(self.p)

    @property
    def size(self) -> int:
        return self.p**self.dim

    def __len__(self):
        return self.size

    def vector(self, index: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.dim):
            index, r = divmod(index, self.p)
            out.append(r)
        return tuple(out)

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != self.dim:
            raise AlphabetMismatch(f"expected {self.dim} coordinates, got {len(coords)}")
        idx = 0
        for c in reversed(coords):
            if not 0 <= c < self.p:
                raise ValidationError(f"coordinate {c} not in [0, {self.p})")
            idx = idx * self.p + c
        return idx

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        for i in range(self.size):
            yield self.vector(i)

    def label(self, coords: Sequence[int]) -> str:
        """Compact string label, e.g. ``"10"``; comma separated when p > 10."""
        sep = "" if self.p <= 10 else ","
        return sep.join(str(c) for c in coords)

    def parse_label(self, label: str) -> tuple[int, ...]:
        if self.p > 10:
            parts = [int(t) for t in label.split(",")] if label else []
        else:
            parts = [int(ch) for ch in label]
        self.index(parts)
        return tuple(parts)

    def labels(self) -> list[str]:
        return [self.label(v) for v in self]

    def neg_index(self, index: int) -> int:
        return self.index([(-c) % self.p for c in self.vector(index)])


@dataclass(frozen=True)
class Vec:
    """An element of an :class:`Alphabet`."""

    alphabet: Alphabet
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))
        self.alphabet.index(self.coords)

    @classmethod
    def of(cls, p: int, coords: Sequence[int]) -> "Vec":
        return cls(Alphabet(p, len(coords)), tuple(coords))

    def __add__(self, other: "Vec") -> "Vec":
        _check_same(self, other)
        p = self.alphabet.p
        return Vec(self.alphabet, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Vec":
        p = self.alphabet.p
        return Vec(self.alphabet, tuple((-a) % p for a in self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def weight(self) -> int:
        return sum(1 for c in self.coords if c)

    def __str__(self):
        return self.alphabet.label(self.coords)


def _check_same(a: Vec, b: Vec):
    if a.alphabet != b.alphabet:
        raise AlphabetMismatch(f"{a.alphabet} vs {b.alphabet}")


def inner_product(a: Vec, ahat: Vec) -> int:
    """Componentwise dot product <ahat, a> mod p."""
    _check_same(a, ahat)
    return sum(x * y for x, y in zip(a.coords, ahat.coords)) % a.alphabet.p
