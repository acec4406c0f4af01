"""Fourier transforms over finite vector alphabets, as dense exact tensors.

Every tensor axis is indexed by its alphabet's enumeration order (see
:class:`~nfgcodes.algebra.Alphabet`).  The dual alphabet of (Z_p)^m is
identified with (Z_p)^m itself through the dot product, so a transform keeps
the axis alphabet unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .algebra import Alphabet, CycloRational, Polynomial, omega_pow, poly_scale_equal
from .errors import CapExceeded, ValidationError
from .lincode import LinearCode, dual_code

DEFAULT_TENSOR_CAP = 1 << 20

FORWARD = "forward"
CONJUGATE = "conjugate"
INVERSE = "inverse"  # conjugate kernel divided by |A|


def _check_cap(size: int, cap: int, what: str):
    if size > cap:
        raise CapExceeded(what, size, cap)


class FactorTensor:
    """A function on A_1 x ... x A_k stored as a dense numpy object array.

    Entries are :class:`CycloRational` or :class:`Polynomial` values over the
    same prime ``p``.
    """

    __slots__ = ("alphabets", "values", "p")

    def __init__(self, alphabets: Sequence[Alphabet], values, p: int | None = None):
        self.alphabets = tuple(alphabets)
        if p is None:
            if not self.alphabets:
                raise ValidationError("p must be given for a 0-ary tensor")
            p = self.alphabets[0].p
        if any(a.p != p for a in self.alphabets):
            raise ValidationError("all axes of a tensor must share the prime p")
        self.p = p
        shape = tuple(a.size for a in self.alphabets)
        arr = np.empty(shape, dtype=object)
        src = np.asarray(values, dtype=object)
        if src.size != arr.size:
            raise ValidationError(f"table has {src.size} entries, axes need {arr.size}")
        flat_src = src.reshape(-1)
        flat = arr.reshape(-1)
        for i in range(arr.size):
            flat[i] = _as_value(p, flat_src[i])
        self.values = arr

    @classmethod
    def _wrap(cls, alphabets, arr, p) -> "FactorTensor":
        obj = cls.__new__(cls)
        obj.alphabets = tuple(alphabets)
        obj.values = arr
        obj.p = p
        return obj

    @classmethod
    def from_function(cls, alphabets: Sequence[Alphabet], fn: Callable, p: int | None = None) -> "FactorTensor":
        """Tabulate ``fn(*coordinate_tuples)`` over the product space."""
        alphabets = tuple(alphabets)
        shape = tuple(a.size for a in alphabets)
        arr = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            arr[idx] = fn(*(a.vector(i) for a, i in zip(alphabets, idx)))
        return cls(alphabets, arr, p)

    @classmethod
    def constant(cls, alphabets: Sequence[Alphabet], value=1, p: int | None = None) -> "FactorTensor":
        alphabets = tuple(alphabets)
        p = p if p is not None else alphabets[0].p
        arr = np.empty(tuple(a.size for a in alphabets), dtype=object)
        arr.fill(_as_value(p, value))
        return cls._wrap(alphabets, arr, p)

    @classmethod
    def indicator(cls, code: LinearCode) -> "FactorTensor":
        """(0,1)-valued indicator of a code, one axis per code symbol."""
        alphabets = code.alphabets
        p = code.p
        one = CycloRational.one(p)
        arr = np.empty(tuple(a.size for a in alphabets), dtype=object)
        arr.fill(CycloRational.zero(p))
        for w in code.flat_words():
            idx = tuple(a.index(s) for a, s in zip(alphabets, code.split(w)))
            arr[idx] = one
        return cls._wrap(alphabets, arr, p)

    @classmethod
    def equality(cls, alphabet: Alphabet, arity: int) -> "FactorTensor":
        return cls.from_function([alphabet] * arity, lambda *v: int(all(x == v[0] for x in v)))

    @property
    def arity(self) -> int:
        return len(self.alphabets)

    @property
    def size(self) -> int:
        return int(self.values.size)

    def __getitem__(self, idx):
        return self.values[idx]

    def __eq__(self, other):
        if not isinstance(other, FactorTensor):
            return NotImplemented
        return (
            self.alphabets == other.alphabets
            and self.values.shape == other.values.shape
            and all(a == b for a, b in zip(self.values.flat, other.values.flat))
        )

    def __repr__(self):
        return f"FactorTensor({[a.dim for a in self.alphabets]}, p={self.p})"

    def scale(self, alpha) -> "FactorTensor":
        arr = np.empty(self.values.shape, dtype=object)
        for idx in np.ndindex(*self.values.shape):
            arr[idx] = self.values[idx] * alpha
        return FactorTensor._wrap(self.alphabets, arr, self.p)

    def transform_axis(self, axis: int, flavor: str = FORWARD) -> "FactorTensor":
        mat = fourier_matrix(self.alphabets[axis], flavor).entries
        arr = np.moveaxis(np.tensordot(mat, self.values, axes=([1], [axis])), 0, axis)
        return FactorTensor._wrap(self.alphabets, arr, self.p)

    def transform(self, flavor: str = FORWARD, axes: Sequence[int] | None = None) -> "FactorTensor":
        out = self
        for ax in range(self.arity) if axes is None else axes:
            out = out.transform_axis(ax, flavor)
        return out

    def negate_axis(self, axis: int) -> "FactorTensor":
        """Compose with a -> -a on one axis."""
        alph = self.alphabets[axis]
        perm = [alph.neg_index(i) for i in range(alph.size)]
        arr = np.take(self.values, perm, axis=axis)
        return FactorTensor._wrap(self.alphabets, arr, self.p)

    def to_json(self) -> list:
        return [_value_json(v) for v in self.values.reshape(-1)]


def _as_value(p: int, v):
    if isinstance(v, (CycloRational, Polynomial)):
        if v.p != p:
            raise ValidationError(f"value over p={v.p} in a tensor over p={p}")
        return v
    if isinstance(v, (int, Fraction, np.integer)):
        return CycloRational.from_rational(p, int(v) if isinstance(v, np.integer) else v)
    raise ValidationError(f"unsupported tensor value {v!r}")


def _value_json(v):
    if isinstance(v, Polynomial):
        return v.to_json()
    if v.is_rational():
        return str(v.to_fraction())
    return {"num": [str(n) for n in v.nums], "den": str(v.den)}


def value_from_json(p: int, data):
    if isinstance(data, dict) and "terms" in data:
        return Polynomial.from_json(data)
    if isinstance(data, dict):
        return CycloRational(p, [int(n) for n in data["num"]], int(data.get("den", 1)))
    if isinstance(data, list):
        return CycloRational.from_fractions(p, [Fraction(s) for s in data])
    return CycloRational.from_rational(p, Fraction(str(data)))


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformMatrix:
    alphabet: Alphabet
    flavor: str
    entries: np.ndarray = field(compare=False, repr=False)

    def __getitem__(self, idx):
        return self.entries[idx]

    def is_symmetric(self) -> bool:
        return all(a == b for a, b in zip(self.entries.flat, self.entries.T.flat))


@lru_cache(maxsize=256)
def _fourier_entries(alphabet: Alphabet, sign: int) -> np.ndarray:
    n = alphabet.size
    p = alphabet.p
    vecs = [alphabet.vector(i) for i in range(n)]
    arr = np.empty((n, n), dtype=object)
    for i, ah in enumerate(vecs):
        for j, a in enumerate(vecs[: i + 1]):
            w = omega_pow(p, sign * sum(x * y for x, y in zip(ah, a)))
            arr[i, j] = w
            arr[j, i] = w
    arr.flags.writeable = False
    return arr


def fourier_matrix(alphabet: Alphabet, flavor: str = FORWARD, cap: int = DEFAULT_TENSOR_CAP) -> TransformMatrix:
    """Character matrix [w^(+-<ahat, a>)] indexed (ahat, a)."""
    _check_cap(alphabet.size**2, cap, "Fourier matrix entries")
    if flavor == FORWARD:
        return TransformMatrix(alphabet, flavor, _fourier_entries(alphabet, 1))
    if flavor == CONJUGATE:
        return TransformMatrix(alphabet, flavor, _fourier_entries(alphabet, -1))
    if flavor == INVERSE:
        base = _fourier_entries(alphabet, -1)
        arr = np.empty(base.shape, dtype=object)
        for idx in np.ndindex(*base.shape):
            arr[idx] = base[idx] / alphabet.size
        return TransformMatrix(alphabet, flavor, arr)
    raise ValidationError(f"unknown transform flavor {flavor!r}")


def sign_inverter(alphabet: Alphabet) -> FactorTensor:
    """Indicator of a' = -a on A x A."""
    p = alphabet.p
    return FactorTensor.from_function(
        [alphabet, alphabet], lambda a, b: int(all((x + y) % p == 0 for x, y in zip(a, b)))
    )


def transform_function(f: FactorTensor, flavor: str = FORWARD) -> FactorTensor:
    if f.arity != 1:
        raise ValidationError(f"transform_function needs a unary function, got arity {f.arity}")
    return f.transform_axis(0, flavor)


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.tensordot(a, b, axes=([1], [0]))


def identity_matrix(p: int, n: int) -> np.ndarray:
    arr = np.empty((n, n), dtype=object)
    zero, one = CycloRational.zero(p), CycloRational.one(p)
    for i in range(n):
        for j in range(n):
            arr[i, j] = one if i == j else zero
    return arr


def matrix_scale_equal(a, b) -> Fraction | None:
    """alpha > 0 with a = alpha * b entrywise, else None (both zero -> 1)."""
    a = np.asarray(a, dtype=object)
    b = np.asarray(b, dtype=object)
    if a.shape != b.shape:
        return None
    alpha = None
    for x, y in zip(a.flat, b.flat):
        if _is_zero(y):
            if not _is_zero(x):
                return None
            continue
        if alpha is None:
            alpha = _entry_ratio(x, y)
            if alpha is None:
                return None
        if x != y * alpha:
            return None
    return Fraction(1) if alpha is None else alpha


def _is_zero(v) -> bool:
    if isinstance(v, (CycloRational, Polynomial)):
        return v.is_zero()
    return v == 0


def _entry_ratio(x, y) -> Fraction | None:
    if isinstance(x, Polynomial) or isinstance(y, Polynomial):
        px = x if isinstance(x, Polynomial) else Polynomial.const(y.p, x)
        py = y if isinstance(y, Polynomial) else Polynomial.const(x.p, y)
        return poly_scale_equal(px, py)
    if _is_zero(x):
        return None
    for cx, cy in zip(x.coefficients(), y.coefficients()):
        if cy != 0:
            r = cx / cy
            return r if r > 0 else None
    return None


# ---------------------------------------------------------------------------


@dataclass
class IdentityCheck:
    name: str
    passed: bool
    witness: Fraction | None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "witness": None if self.witness is None else str(self.witness)}


@dataclass
class IdentityReport:
    alphabet: Alphabet
    checks: list[IdentityCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def witness(self, name: str) -> Fraction | None:
        return next(c.witness for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {
            "p": self.alphabet.p,
            "dim": self.alphabet.dim,
            "passed": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def verify_identity_suite(alphabet: Alphabet, cap: int = DEFAULT_TENSOR_CAP) -> IdentityReport:
    """Check F*F = |A| I, F^2 ~ sign inverter, F^3 ~ F*, F^4 ~ I with witnesses."""
    F = fourier_matrix(alphabet, FORWARD, cap).entries
    Fc = fourier_matrix(alphabet, CONJUGATE, cap).entries
    I = identity_matrix(alphabet.p, alphabet.size)
    neg = sign_inverter(alphabet).values
    F2 = matmul(F, F)
    F3 = matmul(F2, F)
    F4 = matmul(F3, F)
    checks = []
    for name, lhs, rhs in (
        ("conjugate*forward = |A| I", matmul(Fc, F), I),
        ("forward^2 ~ sign_inverter", F2, neg),
        ("forward^3 ~ conjugate", F3, Fc),
        ("forward^4 ~ identity", F4, I),
    ):
        alpha = matrix_scale_equal(lhs, rhs)
        checks.append(IdentityCheck(name, alpha is not None, alpha))
    return IdentityReport(alphabet, checks)


def subspace_character_sum(code: LinearCode, ahat: Sequence[int]) -> CycloRational:
    """sum over a in B of w^<ahat, a>, with B and ahat flattened."""
    p = code.p
    total = CycloRational.zero(p)
    for w in code.flat_words():
        total = total + omega_pow(p, sum(x * y for x, y in zip(ahat, w)))
    return total


@dataclass
class PoissonReport:
    lhs: object
    transform_sum: object
    scale: Fraction
    passed: bool

    @property
    def rhs(self):
        return self.transform_sum * self.scale

    def to_json(self) -> dict:
        return {
            "lhs": _value_json(self.lhs),
            "transform_sum": _value_json(self.transform_sum),
            "scale": str(self.scale),
            "rhs": _value_json(self.rhs),
            "passed": self.passed,
        }


def poisson_check(code: LinearCode, f: FactorTensor) -> PoissonReport:
    """Check sum_{a in B} f(a) = (1/|B^perp|) sum_{ahat in B^perp} F(ahat), F = forward transform of f.

    ``f`` is unary over the flattened ambient space (Z_p)^n of ``code``.
    """
    flat = Alphabet(code.p, code.n_scalars)
    if f.arity != 1 or f.alphabets[0] != flat:
        raise ValidationError(f"poisson_check needs a unary function on {flat}")
    F = transform_function(f, FORWARD)
    dual = dual_code(code)
    lhs = sum((f.values[flat.index(w)] for w in code.flat_words()), CycloRational.zero(code.p))
    tsum = sum((F.values[flat.index(w)] for w in dual.flat_words()), CycloRational.zero(code.p))
    scale = Fraction(1, dual.cardinality)
    return PoissonReport(lhs, tsum, scale, lhs == tsum * scale)
