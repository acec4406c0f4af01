"""Sparse multivariate polynomials with cyclotomic-rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Mapping

from ..errors import AlphabetMismatch, ValidationError
from .cyclo import CycloRational

Monomial = tuple  # sorted tuple of (name, exponent) pairs, exponents > 0


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for name, e in m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Polynomial:
    """Immutable sparse polynomial over Q(w_p).

    ``terms`` maps a monomial (sorted ``(name, exponent)`` pairs) to a nonzero
    :class:`CycloRational`.  Zero coefficients are never stored.
    """

    __slots__ = ("p", "terms", "_hash")

    def __init__(self, p: int, terms: Mapping[Monomial, object] | None = None):
        self.p = p
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _as_coeff(p, c)
                if not c.is_zero():
                    for _, e in mono:
                        if not isinstance(e, int) or e <= 0:
                            raise ValidationError(f"bad exponent in monomial {mono!r}")
                    clean[mono] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, p: int, terms: dict) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.p = p
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, p: int, c=1) -> "Polynomial":
        return cls(p, {(): c})

    @classmethod
    def zero(cls, p: int) -> "Polynomial":
        return cls._raw(p, {})

    @classmethod
    def var(cls, p: int, name: str, exponent: int = 1) -> "Polynomial":
        if exponent == 0:
            return cls.const(p)
        return cls(p, {((name, exponent),): 1})

    @classmethod
    def monomial(cls, p: int, powers: Mapping[str, int], coeff=1) -> "Polynomial":
        mono = tuple(sorted((n, e) for n, e in powers.items() if e))
        return cls(p, {mono: coeff})

    @classmethod
    def univariate(cls, p: int, name: str, coeffs: Iterable) -> "Polynomial":
        """Build ``sum c_i * name^i`` from a coefficient list."""
        terms = {}
        for i, c in enumerate(coeffs):
            terms[((name, i),) if i else ()] = c
        return cls(p, terms)

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.p != self.p:
                raise AlphabetMismatch(f"polynomials over different rings: p={self.p} vs p={other.p}")
            return other
        if isinstance(other, (int, Rational, CycloRational)):
            return Polynomial.const(self.p, other)
        return NotImplemented

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def variables(self) -> set[str]:
        return {n for mono in self.terms for n, _ in mono}

    def total_degree(self) -> int:
        return max((_mono_degree(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        return max((dict(m).get(name, 0) for m in self.terms), default=-1)

    def coefficient(self, powers: Mapping[str, int] | Monomial = ()) -> CycloRational:
        mono = powers if isinstance(powers, tuple) else tuple(sorted((n, e) for n, e in powers.items() if e))
        return self.terms.get(mono, CycloRational.zero(self.p))

    def constant_term(self) -> CycloRational:
        return self.coefficient(())

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def coefficient_list(self, name: str) -> list:
        """Coefficients of a univariate polynomial in ``name`` as Fractions.

        Raises if other variables appear or a coefficient is irrational.
        """
        extra = self.variables() - {name}
        if extra:
            raise ValidationError(f"not univariate in {name!r}: also has {sorted(extra)}")
        out = [Fraction(0)] * (self.degree_in(name) + 1)
        for mono, c in self.terms.items():
            out[dict(mono).get(name, 0)] = c.to_fraction()
        return out

    def coefficient_sum(self) -> CycloRational:
        """Value at all indeterminates equal to 1."""
        total = CycloRational.zero(self.p)
        for c in self.terms.values():
            total = total + c
        return total

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            if mono in terms:
                s = terms[mono] + c
                if s.is_zero():
                    del terms[mono]
                else:
                    terms[mono] = s
            else:
                terms[mono] = c
        return Polynomial._raw(self.p, terms)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.p, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational, CycloRational)):
            c0 = _as_coeff(self.p, other)
            if c0.is_zero():
                return Polynomial.zero(self.p)
            return Polynomial._raw(self.p, {m: c * c0 for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                if m in terms:
                    terms[m] = terms[m] + c
                else:
                    terms[m] = c
        return Polynomial._raw(self.p, {m: c for m, c in terms.items() if not c.is_zero()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        if isinstance(scalar, Polynomial):
            if not scalar.is_constant() or scalar.is_zero():
                raise ValidationError("can only divide by a nonzero constant")
            scalar = scalar.constant_term()
        return Polynomial._raw(self.p, {m: c / scalar for m, c in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.p)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, max_degree: int) -> "Polynomial":
        """Drop every monomial of total degree above ``max_degree``."""
        return Polynomial._raw(self.p, {m: c for m, c in self.terms.items() if _mono_degree(m) <= max_degree})

    def rename(self, mapping: Mapping[str, str] | Callable[[str], str]) -> "Polynomial":
        fn = mapping if callable(mapping) else (lambda n: mapping.get(n, n))
        out = Polynomial.zero(self.p)
        for mono, c in self.terms.items():
            out = out + Polynomial.monomial(self.p, _merge_powers((fn(n), e) for n, e in mono), c)
        return out

    def substitute(self, subst: Mapping[str, object]) -> "Polynomial":
        return poly_substitute(self, subst)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at scalar values (missing variables raise)."""
        total = CycloRational.zero(self.p)
        for mono, c in self.terms.items():
            term = c
            for name, e in mono:
                term = term * (_as_coeff(self.p, values[name]) ** e)
            total = total + term
        return total

    # -- comparison / display -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.p == other.p and self.terms == other.terms
        if isinstance(other, (int, Rational, CycloRational)):
            return self == Polynomial.const(self.p, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.p, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (_mono_degree(t[0]), t[0]))

    def __repr__(self):
        return f"Polynomial({self.p}, {str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            mono_s = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if not mono_s:
                parts.append(cs)
            elif c == 1:
                parts.append(mono_s)
            elif c == -1:
                parts.append("-" + mono_s)
            else:
                parts.append(f"{cs}*{mono_s}")
        return " + ".join(parts).replace("+ -", "- ")

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        terms = []
        for mono, c in sorted(self.terms.items(), key=lambda t: t[0]):
            terms.append(
                {
                    "coeff": {"num": [str(n) for n in c.nums], "den": str(c.den)},
                    "monomial": {n: e for n, e in mono},
                }
            )
        return {"p": self.p, "terms": terms}

    @classmethod
    def from_json(cls, data: Mapping) -> "Polynomial":
        p = int(data["p"])
        terms = {}
        for t in data["terms"]:
            coeff = t["coeff"]
            if isinstance(coeff, Mapping):
                c = CycloRational(p, [int(n) for n in coeff["num"]], int(coeff.get("den", "1")))
            elif isinstance(coeff, list):
                c = CycloRational.from_fractions(p, [Fraction(s) for s in coeff])
            else:
                c = CycloRational.from_rational(p, Fraction(coeff))
            mono = tuple(sorted((n, int(e)) for n, e in t.get("monomial", {}).items() if int(e)))
            terms[mono] = terms.get(mono, CycloRational.zero(p)) + c
        return cls(p, terms)


def _merge_powers(pairs) -> dict:
    d: dict = {}
    for n, e in pairs:
        d[n] = d.get(n, 0) + e
    return d


def _as_coeff(p: int, c) -> CycloRational:
    if isinstance(c, CycloRational):
        if c.p != p:
            raise AlphabetMismatch(f"coefficient over p={c.p} in ring over p={p}")
        return c
    return CycloRational.from_rational(p, c)


def poly_substitute(f: Polynomial, subst: Mapping[str, object]) -> Polynomial:
    """Replace indeterminates by polynomials; unmapped names stay fixed."""
    cache: dict = {}

    def power(name: str, e: int) -> Polynomial:
        key = (name, e)
        if key not in cache:
            if name in subst:
                base = subst[name]
                if not isinstance(base, Polynomial):
                    base = Polynomial.const(f.p, base)
            else:
                base = Polynomial.var(f.p, name)
            cache[key] = base**e
        return cache[key]

    acc: dict = {}
    for mono, c in f.terms.items():
        term = Polynomial.const(f.p, c)
        for name, e in mono:
            term = term * power(name, e)
        for m, t in term.terms.items():
            acc[m] = acc[m] + t if m in acc else t
    return Polynomial._raw(f.p, {m: c for m, c in acc.items() if not c.is_zero()})


def poly_scale_equal(f: Polynomial, g: Polynomial) -> Fraction | None:
    """Return alpha > 0 (rational) with f = alpha * g, or None."""
    if f.p != g.p:
        return None
    if f.is_zero() and g.is_zero():
        return Fraction(1)
    if f.is_zero() or g.is_zero() or f.terms.keys() != g.terms.keys():
        return None
    mono, gc = next(iter(g.terms.items()))
    fc = f.terms[mono]
    alpha = None
    for a, b in zip(fc.coefficients(), gc.coefficients()):
        if b != 0:
            alpha = a / b
            break
    if alpha is None or alpha <= 0:
        return None
    return alpha if f == g * alpha else None
