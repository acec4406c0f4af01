"""Linear block codes over vector alphabets (Z_p)^m.

A code lives in A_0 x ... x A_{n-1}; internally every codeword is flattened
into its scalar coordinates and the code is stored as the reduced row-echelon
basis of its span, which is also the canonical form used for equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Alphabet, PrimeField, Vec
from .errors import CapExceeded, ValidationError

DEFAULT_ENUM_CAP = 1 << 24


# ---------------------------------------------------------------------------
# linear algebra over Z_p


def rref(rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form of ``rows`` over Z_p; returns (basis, pivots)."""
    m = [[x % p for x in r] for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        if inv != 1:
            m[r] = [(x * inv) % p for x in m[r]]
        row = m[r]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[list[int]]:
    """Basis of {v : row . v = 0 for every row}."""
    basis, pivots = rref(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    out = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(basis, pivots):
            v[pc] = (-row[f]) % p
        out.append(v)
    return out


def rank(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref(rows, p)[0])


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Codeword:
    symbols: tuple[Vec, ...]

    @property
    def flat(self) -> tuple[int, ...]:
        return tuple(c for s in self.symbols for c in s.coords)

    def weight(self, per_symbol: bool = False) -> int:
        if per_symbol:
            return sum(1 for s in self.symbols if not s.is_zero())
        return sum(s.weight() for s in self.symbols)

    def __str__(self):
        return " ".join(str(s) for s in self.symbols)


class LinearCode:
    """A subspace of the product of alphabets (Z_p)^{d_0} x ... x (Z_p)^{d_{n-1}}."""

    def __init__(self, p: int, profile: Sequence[int], flat_rows: Sequence[Sequence[int]] = ()):
        PrimeField(p)
        self.p = p
        self.profile = tuple(int(d) for d in profile)
        if any(d < 0 for d in self.profile):
            raise ValidationError("profile dimensions must be nonnegative")
        self.n_scalars = sum(self.profile)
        rows = []
        for r in flat_rows:
            r = list(r)
            if len(r) != self.n_scalars:
                raise ValidationError(f"row of length {len(r)} does not match profile total {self.n_scalars}")
            if any(not 0 <= x < p for x in r):
                raise ValidationError(f"row {r} has entries outside [0, {p})")
            rows.append(r)
        basis, pivots = rref(rows, p, self.n_scalars)
        self.basis = tuple(tuple(r) for r in basis)
        self.pivots = tuple(pivots)

    # -- construction helpers ------------------------------------------
    @classmethod
    def from_generators(cls, p: int, profile: Sequence[int], rows: Sequence) -> "LinearCode":
        return code_from_generators(profile, rows, p)

    @classmethod
    def universe(cls, p: int, profile: Sequence[int]) -> "LinearCode":
        n = sum(profile)
        return cls(p, profile, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, p: int, profile: Sequence[int]) -> "LinearCode":
        return cls(p, profile, [])

    # -- properties -----------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def length(self) -> int:
        return len(self.profile)

    @property
    def cardinality(self) -> int:
        return self.p**self.dim

    def __len__(self):
        return self.cardinality

    @property
    def alphabets(self) -> tuple[Alphabet, ...]:
        return tuple(Alphabet(self.p, d) for d in self.profile)

    @property
    def ambient_size(self) -> int:
        return self.p**self.n_scalars

    def split(self, flat: Sequence[int]) -> tuple[tuple[int, ...], ...]:
        out, i = [], 0
        for d in self.profile:
            out.append(tuple(flat[i : i + d]))
            i += d
        return tuple(out)

    def to_codeword(self, flat: Sequence[int]) -> Codeword:
        return Codeword(tuple(Vec(a, s) for a, s in zip(self.alphabets, self.split(flat))))

    def contains(self, word) -> bool:
        flat = _flatten_word(word, self.profile, self.p)
        w = list(flat)
        for row, pc in zip(self.basis, self.pivots):
            f = w[pc]
            if f:
                w = [(a - f * b) % self.p for a, b in zip(w, row)]
        return not any(w)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, LinearCode):
            return NotImplemented
        return self.p == other.p and self.profile == other.profile and self.basis == other.basis

    def __hash__(self):
        return hash((self.p, self.profile, self.basis))

    def __repr__(self):
        return f"LinearCode(p={self.p}, profile={list(self.profile)}, dim={self.dim})"

    def generator_rows(self) -> list[list[tuple[int, ...]]]:
        return [list(self.split(r)) for r in self.basis]

    def flat_words(self, cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
        """All codewords, flattened, in lexicographic message order."""
        if self.cardinality > cap:
            raise CapExceeded("code enumeration", self.cardinality, cap)
        p, k, n = self.p, self.dim, self.n_scalars
        word = [0] * n
        digits = [0] * k
        yield tuple(word)
        for _ in range(self.cardinality - 1):
            j = 0
            while True:
                b = self.basis[j]
                for i in range(n):
                    if b[i]:
                        word[i] = (word[i] + b[i]) % p
                if digits[j] == p - 1:
                    digits[j] = 0
                    j += 1
                else:
                    digits[j] += 1
                    break
            yield tuple(word)

    def __iter__(self):
        return enumerate_code(self)

    def min_distance(self, cap: int = DEFAULT_ENUM_CAP) -> int | None:
        best = None
        for w in self.flat_words(cap):
            wt = sum(1 for c in w if c)
            if wt and (best is None or wt < best):
                best = wt
        return best

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.p,
            "profile": list(self.profile),
            "generators": [[list(s) for s in self.split(r)] for r in self.basis],
        }

    @classmethod
    def from_json(cls, data) -> "LinearCode":
        return code_from_generators(data["profile"], data.get("generators", []), int(data["p"]))


def _flatten_word(word, profile: Sequence[int], p: int) -> list[int]:
    if isinstance(word, Codeword):
        word = word.symbols
    word = list(word)
    if len(word) == sum(profile) and all(isinstance(c, int) for c in word):
        return [c % p for c in word]
    if len(word) != len(profile):
        raise ValidationError(f"word has {len(word)} symbols, profile has {len(profile)}")
    flat = []
    for sym, d in zip(word, profile):
        coords = sym.coords if isinstance(sym, Vec) else tuple(sym)
        if isinstance(sym, Vec) and sym.alphabet.p != p:
            raise ValidationError("symbol over a different field")
        if len(coords) != d:
            raise ValidationError(f"symbol {coords} does not have dimension {d}")
        if any(not 0 <= c < p for c in coords):
            raise ValidationError(f"symbol {coords} has entries outside [0, {p})")
        flat.extend(coords)
    return flat


def code_from_generators(profile: Sequence[int], rows: Sequence, p: int) -> LinearCode:
    """Span of ``rows``; each row is a sequence of symbols matching ``profile``."""
    profile = [int(d) for d in profile]
    flat_rows = [_flatten_word(r, profile, p) for r in rows]
    return LinearCode(p, profile, flat_rows)


def dual_code(code: LinearCode) -> LinearCode:
    """Orthogonal code under the componentwise inner product."""
    return LinearCode(code.p, code.profile, nullspace(code.basis, code.p, code.n_scalars))


def enumerate_code(code: LinearCode, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Codeword]:
    for flat in code.flat_words(cap):
        yield code.to_codeword(flat)


def weight_distribution(code: LinearCode, per_symbol: bool = False, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Number of codewords of each Hamming weight, indexed by weight.

    Weight counts nonzero scalar coordinates unless ``per_symbol`` is set, in
    which case each nonzero alphabet symbol counts once.
    """
    n = code.length if per_symbol else code.n_scalars
    counts = [0] * (n + 1)
    bounds = []
    i = 0
    for d in code.profile:
        bounds.append((i, i + d))
        i += d
    for w in code.flat_words(cap):
        if per_symbol:
            wt = sum(1 for a, b in bounds if any(w[a:b]))
        else:
            wt = sum(1 for c in w if c)
        counts[wt] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts
