"""Weight generating functions, weight adjacency matrices and MacWilliams transforms.

Indeterminate names:

* EXACT: ``x[k][a]`` for symbol label ``a`` at position ``k``;
* COMPLETE: ``x[c]`` for a field element ``c``, one factor per scalar;
* HAMMING: a single ``x`` marking a nonzero scalar.

Dual objects use the same names with ``X`` in place of ``x``.  For the
Hamming route a second indeterminate ``y`` (``Y``) marks zero scalars while a
polynomial is temporarily homogenized.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .algebra import (
    Alphabet,
    CycloRational,
    Polynomial,
    complete_name,
    exact_name,
    hamming_names,
    omega_pow,
    poly_scale_equal,
    poly_substitute,
    undual_name,
)
from .errors import ValidationError
from .lincode import DEFAULT_ENUM_CAP, LinearCode


class WgfKind(str, enum.Enum):
    EXACT = "exact"
    COMPLETE = "complete"
    HAMMING = "hamming"

    @classmethod
    def parse(cls, value) -> "WgfKind":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValidationError(f"unknown weight kind {value!r} (exact, complete or hamming)") from None


EXACT, COMPLETE, HAMMING = WgfKind.EXACT, WgfKind.COMPLETE, WgfKind.HAMMING


# ---------------------------------------------------------------------------
# monomials of single symbols


def symbol_monomial(alphabet: Alphabet, coords: Sequence[int], kind, position: int = 0, dual: bool = False) -> Polynomial:
    """Weight monomial of one symbol under ``kind``."""
    kind = WgfKind.parse(kind)
    p = alphabet.p
    if kind is EXACT:
        return Polynomial.var(p, exact_name(position, alphabet.label(coords), dual))
    if kind is COMPLETE:
        powers: dict[str, int] = {}
        for c in coords:
            name = complete_name(c, dual)
            powers[name] = powers.get(name, 0) + 1
        return Polynomial.monomial(p, powers)
    x, _ = hamming_names(dual)
    return Polynomial.var(p, x, sum(1 for c in coords if c))


def wgf(code: LinearCode, kind, cap: int = DEFAULT_ENUM_CAP) -> Polynomial:
    """Weight generating function of a block code, by enumeration."""
    kind = WgfKind.parse(kind)
    p = code.p
    if kind is HAMMING:
        counts: dict[int, int] = {}
        for w in code.flat_words(cap):
            wt = sum(1 for c in w if c)
            counts[wt] = counts.get(wt, 0) + 1
        x, _ = hamming_names()
        return Polynomial(p, {((x, w),) if w else (): c for w, c in counts.items()})
    alphabets = code.alphabets
    terms: dict = {}
    for w in code.flat_words(cap):
        if kind is EXACT:
            mono = tuple(
                sorted((exact_name(k, a.label(s)), 1) for k, (a, s) in enumerate(zip(alphabets, code.split(w))))
            )
        else:
            powers: dict[str, int] = {}
            for c in w:
                name = complete_name(c)
                powers[name] = powers.get(name, 0) + 1
            mono = tuple(sorted(powers.items()))
        terms[mono] = terms.get(mono, 0) + 1
    return Polynomial(p, terms)


# ---------------------------------------------------------------------------
# specializations


def exact_to_complete(g: Polynomial, profile: Sequence[int], dual: bool = False) -> Polynomial:
    """Replace x[k][a] by the product of x[c] over the scalars c of a."""
    subst = {}
    for k, d in enumerate(profile):
        a = Alphabet(g.p, d)
        for coords in a:
            subst[exact_name(k, a.label(coords), dual)] = symbol_monomial(a, coords, COMPLETE, dual=dual)
    _check_names(g, subst.keys(), "exact")
    return poly_substitute(g, subst)


def complete_to_hamming(g: Polynomial, dual: bool = False) -> Polynomial:
    """Replace x[0] by 1 and every other x[c] by x."""
    x, _ = hamming_names(dual)
    subst = {complete_name(0, dual): 1}
    for c in range(1, g.p):
        subst[complete_name(c, dual)] = Polynomial.var(g.p, x)
    _check_names(g, subst.keys(), "complete")
    return poly_substitute(g, subst)


def _check_names(g: Polynomial, allowed, what: str):
    extra = g.variables() - set(allowed)
    if extra:
        raise ValidationError(f"indeterminates {sorted(extra)} do not conform to a {what} enumerator")


def homogenize(g: Polynomial, n: int, dual: bool = False) -> Polynomial:
    """y^n g(x/y) for a univariate Hamming enumerator of length n."""
    x, y = hamming_names(dual)
    _check_names(g, {x}, "Hamming")
    terms = {}
    for mono, c in g.terms.items():
        w = dict(mono).get(x, 0)
        if w > n:
            raise ValidationError(f"Hamming enumerator has degree {w} > length {n}")
        terms[tuple(sorted(((x, w),) * bool(w) + ((y, n - w),) * bool(n - w)))] = c
    return Polynomial(g.p, terms)


def dehomogenize(g: Polynomial, dual: bool = False) -> Polynomial:
    _, y = hamming_names(dual)
    return poly_substitute(g, {y: 1})


# ---------------------------------------------------------------------------
# MacWilliams for block-code enumerators


def _conjugate_substitution(kind: WgfKind, p: int, profile: Sequence[int], scale=1) -> dict[str, Polynomial]:
    """x <- scale * F* X for every primal indeterminate of ``kind``."""
    subst = {}
    if kind is EXACT:
        for k, d in enumerate(profile):
            a = Alphabet(p, d)
            for coords in a:
                acc = Polynomial.zero(p)
                for hat in a:
                    e = -sum(u * v for u, v in zip(coords, hat))
                    acc = acc + Polynomial.var(p, exact_name(k, a.label(hat), True)) * omega_pow(p, e)
                subst[exact_name(k, a.label(coords))] = acc * scale
    elif kind is COMPLETE:
        for c in range(p):
            acc = Polynomial.zero(p)
            for h in range(p):
                acc = acc + Polynomial.var(p, complete_name(h, True)) * omega_pow(p, -c * h)
            subst[complete_name(c)] = acc * scale
    else:
        x, y = hamming_names()
        X, Y = hamming_names(True)
        vX, vY = Polynomial.var(p, X), Polynomial.var(p, Y)
        subst[y] = (vY + vX * (p - 1)) * scale
        subst[x] = (vY - vX) * scale
    return subst


def macwilliams_wgf(g: Polynomial, kind, profile: Sequence[int]) -> tuple[Polynomial, Fraction]:
    """Enumerator of the dual code, with its scale witness.

    Returns ``(h, alpha)`` where ``h`` uses the dual (X-prefixed) names and
    ``g(F* X) = alpha * h(X)``; alpha is |C| = g(1, ..., 1).  For HAMMING,
    ``profile`` gives the block length as the total scalar count.
    """
    kind = WgfKind.parse(kind)
    p = g.p
    size = g.coefficient_sum()
    if not size.is_rational() or size.to_fraction() <= 0:
        raise ValidationError("enumerator must have a positive rational coefficient sum")
    alpha = size.to_fraction()
    subst = _conjugate_substitution(kind, p, profile)
    if kind is HAMMING:
        n = sum(profile)
        raw = poly_substitute(homogenize(g, n), subst)
        return dehomogenize(raw / alpha, dual=True), alpha
    _check_names(g, subst.keys(), kind.value)
    raw = poly_substitute(g, subst)
    return raw / alpha, alpha


def rename_dual(g: Polynomial) -> Polynomial:
    """Move a dual enumerator back into the primal namespace (X -> x)."""
    return g.rename(undual_name)


# ---------------------------------------------------------------------------
# weight adjacency matrices


@dataclass(frozen=True)
class WeightAdjacencyMatrix:
    """State-indexed matrix of local weight enumerators.

    ``symbol_dim`` is the number of scalars per symbol; the Hamming
    MacWilliams route needs it to homogenize entries.
    """

    kind: WgfKind
    p: int
    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[Polynomial, ...], ...]
    state_dim: int
    symbol_dim: int
    next_state_dim: int | None = None
    dual: bool = False

    def __post_init__(self):
        if len(self.entries) != len(self.rows) or any(len(r) != len(self.cols) for r in self.entries):
            raise ValidationError("entry table does not match row/column labels")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    @property
    def col_state_dim(self) -> int:
        return self.state_dim if self.next_state_dim is None else self.next_state_dim

    def __getitem__(self, idx):
        i, j = idx
        if isinstance(i, str):
            i = self.rows.index(i)
        if isinstance(j, str):
            j = self.cols.index(j)
        return self.entries[i][j]

    def _with(self, entries, rows=None, cols=None, **kw) -> "WeightAdjacencyMatrix":
        fields = dict(
            kind=self.kind,
            p=self.p,
            rows=self.rows if rows is None else tuple(rows),
            cols=self.cols if cols is None else tuple(cols),
            entries=tuple(tuple(r) for r in entries),
            state_dim=self.state_dim,
            symbol_dim=self.symbol_dim,
            next_state_dim=self.next_state_dim,
            dual=self.dual,
        )
        fields.update(kw)
        return WeightAdjacencyMatrix(**fields)

    def map(self, fn: Callable[[Polynomial], Polynomial], **kw) -> "WeightAdjacencyMatrix":
        return self._with([[fn(e) for e in row] for row in self.entries], **kw)

    def transpose(self) -> "WeightAdjacencyMatrix":
        t = [[self.entries[i][j] for i in range(len(self.rows))] for j in range(len(self.cols))]
        return self._with(t, rows=self.cols, cols=self.rows, state_dim=self.col_state_dim, next_state_dim=self.state_dim)

    def truncate(self, d_max: int) -> "WeightAdjacencyMatrix":
        return self.map(lambda e: e.truncate(d_max))

    def __matmul__(self, other: "WeightAdjacencyMatrix") -> "WeightAdjacencyMatrix":
        return self.multiply(other)

    def multiply(self, other: "WeightAdjacencyMatrix", d_max: int | None = None) -> "WeightAdjacencyMatrix":
        if self.cols != other.rows:
            raise ValidationError("inner state labels do not agree")
        if self.kind != other.kind or self.p != other.p:
            raise ValidationError("cannot multiply matrices of different kinds or fields")
        prod = _matmul(self.entries, other.entries, self.p, d_max)
        return self._with(
            prod, cols=other.cols, next_state_dim=other.col_state_dim, symbol_dim=self.symbol_dim + other.symbol_dim
        )

    def trace(self) -> Polynomial:
        if self.rows != self.cols:
            raise ValidationError("trace needs a square matrix with matching labels")
        out = Polynomial.zero(self.p)
        for i in range(len(self.rows)):
            out = out + self.entries[i][i]
        return out

    def total(self) -> Polynomial:
        out = Polynomial.zero(self.p)
        for row in self.entries:
            for e in row:
                out = out + e
        return out

    def reorder(self, rows: Sequence[str] | None = None, cols: Sequence[str] | None = None) -> "WeightAdjacencyMatrix":
        rows = list(self.rows if rows is None else rows)
        cols = list(self.cols if cols is None else cols)
        if sorted(rows) != sorted(self.rows) or sorted(cols) != sorted(self.cols):
            raise ValidationError("state order must be a permutation of the state labels")
        entries = [[self[r, c] for c in cols] for r in rows]
        return self._with(entries, rows=rows, cols=cols)

    def undual(self) -> "WeightAdjacencyMatrix":
        return self.map(rename_dual, dual=False)

    def __eq__(self, other):
        if not isinstance(other, WeightAdjacencyMatrix):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.p == other.p
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.kind, self.p, self.rows, self.cols, self.entries))

    def to_json(self) -> dict:
        out = {
            "kind": self.kind.value,
            "p": self.p,
            "rows": list(self.rows),
            "cols": list(self.cols),
            "entries": [[e.to_json() for e in row] for row in self.entries],
            "state_dim": self.state_dim,
            "symbol_dim": self.symbol_dim,
            "dual": self.dual,
        }
        if self.next_state_dim is not None and self.next_state_dim != self.state_dim:
            out["next_state_dim"] = self.next_state_dim
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "WeightAdjacencyMatrix":
        try:
            p = int(data["p"])
            entries = []
            for row in data["entries"]:
                out_row = []
                for e in row:
                    if isinstance(e, Mapping):
                        e = dict(e)
                        e.setdefault("p", p)
                        out_row.append(Polynomial.from_json(e))
                    else:
                        out_row.append(Polynomial.const(p, Fraction(str(e))))
                entries.append(out_row)
            rows = [str(r) for r in data["rows"]]
            cols = [str(c) for c in data.get("cols", rows)]
            state_dim = int(data.get("state_dim", _label_dim(rows)))
            nxt = data.get("next_state_dim")
            return cls(
                kind=WgfKind.parse(data["kind"]),
                p=p,
                rows=tuple(rows),
                cols=tuple(cols),
                entries=tuple(tuple(r) for r in entries),
                state_dim=state_dim,
                symbol_dim=int(data["symbol_dim"]),
                next_state_dim=None if nxt is None else int(nxt),
                dual=bool(data.get("dual", False)),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"malformed WAM JSON: {exc!r}") from exc

    def __str__(self):
        width = max([len(r) for r in self.rows] + [3])
        cells = [[str(e) for e in row] for row in self.entries]
        colw = [max([len(c)] + [len(cells[i][j]) for i in range(len(self.rows))]) for j, c in enumerate(self.cols)]
        lines = [" " * width + " | " + " | ".join(c.ljust(w) for c, w in zip(self.cols, colw))]
        for r, row in zip(self.rows, cells):
            lines.append(r.ljust(width) + " | " + " | ".join(c.ljust(w) for c, w in zip(row, colw)))
        return "\n".join(lines)


def _label_dim(labels: Sequence[str]) -> int:
    return max((len(l.split(",")) if "," in l else len(l) for l in labels), default=0)


def _matmul(a, b, p: int, d_max: int | None = None):
    n, m, k = len(a), len(b[0]) if b else 0, len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = Polynomial.zero(p)
            for t in range(k):
                x, y = a[i][t], b[t][j]
                if x.terms and y.terms:
                    acc = acc + x * y
            row.append(acc if d_max is None else acc.truncate(d_max))
        out.append(row)
    return out


def wam(section, kind, state_order: Sequence[str] | None = None, position: int = 0) -> WeightAdjacencyMatrix:
    """Weight adjacency matrix of a trellis section.

    ``section`` needs ``code`` (over S x A x S'), ``state_dim``,
    ``symbol_dim`` and ``next_state_dim``.  Rows and columns follow
    ``state_order`` (labels), else the section's own order.
    """
    kind = WgfKind.parse(kind)
    code = section.code
    p = code.p
    S, A, T = (Alphabet(p, d) for d in code.profile)
    rows = list(state_order or getattr(section, "state_order", None) or S.labels())
    cols = list(state_order or getattr(section, "next_state_order", None) or T.labels())
    if sorted(rows) != sorted(S.labels()) or sorted(cols) != sorted(T.labels()):
        raise ValidationError(f"state order {rows} is not a permutation of {S.labels()}")
    ri = {S.parse_label(l): i for i, l in enumerate(rows)}
    ci = {T.parse_label(l): j for j, l in enumerate(cols)}
    acc: list[list[Polynomial]] = [[Polynomial.zero(p) for _ in cols] for _ in rows]
    for w in code.flat_words():
        s, a, t = code.split(w)
        i, j = ri[s], ci[t]
        acc[i][j] = acc[i][j] + symbol_monomial(A, a, kind, position)
    return WeightAdjacencyMatrix(
        kind=kind,
        p=p,
        rows=tuple(rows),
        cols=tuple(cols),
        entries=tuple(tuple(r) for r in acc),
        state_dim=S.dim,
        symbol_dim=A.dim,
        next_state_dim=T.dim,
    )


def macwilliams_wam(lam: WeightAdjacencyMatrix) -> tuple[WeightAdjacencyMatrix, Fraction]:
    """Weight adjacency matrix of the dual section, with its scale witness.

    Returns ``(dual, alpha)`` with
    ``dual = alpha * (F_S*)^T Lam(x <- F* X / |A|) (F_S')^T``, i.e. the
    entries are expressed through x = F^{-1} X and alpha = |A| / |C|, |C|
    being the number of transitions.  Dual rows/columns reuse the primal
    state labels.
    """
    p = lam.p
    A = Alphabet(p, lam.symbol_dim)
    size = lam.total().coefficient_sum()
    if not size.is_rational() or size.to_fraction() <= 0:
        raise ValidationError("weight adjacency matrix must count a nonempty transition set")
    alpha = Fraction(A.size) / size.to_fraction()
    if lam.kind is EXACT:
        positions = sorted({_exact_position(v) for row in lam.entries for e in row for v in e.variables()})
        subst = {}
        for k in positions:
            profile = [0] * k + [lam.symbol_dim]
            sub = _conjugate_substitution(EXACT, p, profile, Fraction(1, A.size))
            subst.update({n: v for n, v in sub.items() if n.startswith(f"x[{k}]")})
        _check_names_matrix(lam, subst.keys())
        entry = lambda e: poly_substitute(e, subst)  # noqa: E731
    elif lam.kind is COMPLETE:
        subst = _conjugate_substitution(COMPLETE, p, (), Fraction(1, p))
        _check_names_matrix(lam, subst.keys())
        entry = lambda e: poly_substitute(e, subst)  # noqa: E731
    else:
        subst = _conjugate_substitution(HAMMING, p, (), Fraction(1, p))
        entry = lambda e: poly_substitute(homogenize(e, lam.symbol_dim), subst)  # noqa: E731
    sub = [[entry(e) for e in row] for row in lam.entries]
    S = Alphabet(p, lam.state_dim)
    T = Alphabet(p, lam.col_state_dim)
    rvec = [S.parse_label(l) for l in lam.rows]
    cvec = [T.parse_label(l) for l in lam.cols]

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    left = [[omega_pow(p, -dot(sh, s)) for s in rvec] for sh in rvec]
    right = [[omega_pow(p, dot(th, t)) for th in cvec] for t in cvec]
    tmp = _scalar_matmul_left(left, sub, p)
    out = _scalar_matmul_right(tmp, right, p)
    out = [[e * alpha for e in row] for row in out]
    if lam.kind is HAMMING:
        out = [[dehomogenize(e, dual=True) for e in row] for row in out]
    dual = lam._with(out, dual=True)
    return dual, alpha


def _exact_position(name: str) -> int:
    if not name.startswith("x[") or "][" not in name:
        raise ValidationError(f"indeterminate {name!r} is not an exact-weight name")
    return int(name[2 : name.index("]")])


def _check_names_matrix(lam: WeightAdjacencyMatrix, allowed):
    allowed = set(allowed)
    for row in lam.entries:
        for e in row:
            extra = e.variables() - allowed
            if extra:
                raise ValidationError(f"indeterminates {sorted(extra)} do not conform to a {lam.kind.value} matrix")


def _scalar_matmul_left(m: list[list[CycloRational]], polys, p: int):
    out = []
    for i in range(len(m)):
        row = []
        for j in range(len(polys[0])):
            acc = Polynomial.zero(p)
            for t in range(len(polys)):
                if polys[t][j].terms:
                    acc = acc + polys[t][j] * m[i][t]
            row.append(acc)
        out.append(row)
    return out


def _scalar_matmul_right(polys, m: list[list[CycloRational]], p: int):
    out = []
    for i in range(len(polys)):
        row = []
        for j in range(len(m[0])):
            acc = Polynomial.zero(p)
            for t in range(len(m)):
                if polys[i][t].terms:
                    acc = acc + polys[i][t] * m[t][j]
            row.append(acc)
        out.append(row)
    return out


def wam_scale_equal(a: WeightAdjacencyMatrix, b: WeightAdjacencyMatrix) -> Fraction | None:
    """alpha with a = alpha * b entrywise, if any."""
    if a.shape != b.shape:
        return None
    alpha = None
    for ra, rb in zip(a.entries, b.entries):
        for x, y in zip(ra, rb):
            if x.is_zero() and y.is_zero():
                continue
            r = poly_scale_equal(x, y)
            if r is None or (alpha is not None and r != alpha):
                return None
            alpha = r
    return Fraction(1) if alpha is None else alpha
