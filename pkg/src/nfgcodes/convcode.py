"""Time-invariant convolutional codes described by a single trellis section.

A section is a linear constraint code on S x A x S' whose codewords are the
valid (state, symbol, next state) transitions.  From it we build terminated
block codes, weight adjacency matrix powers, free distance spectra and the
dual section.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import Alphabet, Polynomial, hamming_names
from .errors import ValidationError
from .lincode import DEFAULT_ENUM_CAP, LinearCode, dual_code, nullspace, rref
from .nfg import Factor, NormalFactorGraph
from .transform import FactorTensor
from .wgf import HAMMING, WeightAdjacencyMatrix, WgfKind, symbol_monomial, wam


class TerminationMode(str, enum.Enum):
    SUBCODE = "subcode"
    PROJECTION = "projection"
    TRUNCATED = "truncated"
    REVERSE_TRUNCATED = "rtruncated"
    TAILBITING = "tailbiting"

    @classmethod
    def parse(cls, value) -> "TerminationMode":
        if isinstance(value, cls):
            return value
        aliases = {"reverse_truncated": "rtruncated", "reverse-truncated": "rtruncated", "tail-biting": "tailbiting"}
        v = str(value).lower()
        try:
            return cls(aliases.get(v, v))
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ValidationError(f"unknown termination mode {value!r} ({names})") from None


SUBCODE = TerminationMode.SUBCODE
PROJECTION = TerminationMode.PROJECTION
TRUNCATED = TerminationMode.TRUNCATED
REVERSE_TRUNCATED = TerminationMode.REVERSE_TRUNCATED
TAILBITING = TerminationMode.TAILBITING

# dual of each termination mode, applied to the dual section
DUAL_MODE = {
    SUBCODE: PROJECTION,
    PROJECTION: SUBCODE,
    TRUNCATED: REVERSE_TRUNCATED,
    REVERSE_TRUNCATED: TRUNCATED,
    TAILBITING: TAILBITING,
}


@dataclass(frozen=True)
class TrellisSection:
    """Constraint code on S x A x S', with an optional state display order."""

    code: LinearCode
    state_order: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.code.length != 3:
            raise ValidationError("a trellis section code has exactly three blocks: state, symbol, next state")
        if self.state_order is not None:
            labels = self.state_alphabet.labels()
            if sorted(self.state_order) != sorted(labels):
                raise ValidationError(f"state order {list(self.state_order)} is not a permutation of {labels}")
            object.__setattr__(self, "state_order", tuple(self.state_order))

    @classmethod
    def from_generators(cls, p: int, dims: Sequence[int], rows: Sequence, state_order=None) -> "TrellisSection":
        """Section spanned by (state, symbol, next state) rows."""
        return cls(LinearCode.from_generators(p, dims, rows), state_order)

    @property
    def p(self) -> int:
        return self.code.p

    @property
    def state_dim(self) -> int:
        return self.code.profile[0]

    @property
    def symbol_dim(self) -> int:
        return self.code.profile[1]

    @property
    def next_state_dim(self) -> int:
        return self.code.profile[2]

    @property
    def state_alphabet(self) -> Alphabet:
        return Alphabet(self.p, self.state_dim)

    @property
    def symbol_alphabet(self) -> Alphabet:
        return Alphabet(self.p, self.symbol_dim)

    @property
    def next_state_alphabet(self) -> Alphabet:
        return Alphabet(self.p, self.next_state_dim)

    @property
    def is_time_invariant(self) -> bool:
        return self.state_dim == self.next_state_dim

    @property
    def next_state_order(self) -> tuple[str, ...] | None:
        return self.state_order if self.is_time_invariant else None

    def transitions(self, cap: int = DEFAULT_ENUM_CAP):
        """Yield every (s, a, s') transition as coordinate tuples."""
        for w in self.code.flat_words(cap):
            yield self.code.split(w)

    def zero_weight_cycles(self) -> bool:
        """True if some zero-symbol cycle avoids the trivial 0 -> 0 loop."""
        zero_a, zero_s = (0,) * self.symbol_dim, (0,) * self.state_dim
        edges: dict[tuple, list[tuple]] = {}
        for s, a, t in self.transitions():
            if a == zero_a and not s == t == zero_s:
                edges.setdefault(s, []).append(t)
        color: dict[tuple, int] = {}

        def visit(u) -> bool:
            color[u] = 1
            for v in edges.get(u, ()):
                c = color.get(v, 0)
                if c == 1 or (c == 0 and visit(v)):
                    return True
            color[u] = 2
            return False

        return any(color.get(u, 0) == 0 and visit(u) for u in list(edges))

    def check_zero_state(self) -> None:
        """Raise unless the all-zero symbol sequence forces the all-zero state sequence."""
        if not self.is_time_invariant:
            raise ValidationError("zero-state check needs S = S'")
        if self.zero_weight_cycles():
            raise ValidationError("section has a zero-symbol cycle through nonzero states (catastrophic)")

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "state_dim": self.state_dim,
            "symbol_dim": self.symbol_dim,
            "next_state_dim": self.next_state_dim,
            "generators": [[list(b) for b in row] for row in self.code.generator_rows()],
        }
        if self.state_order is not None:
            out["state_order"] = list(self.state_order)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "TrellisSection":
        """Accept either a section document or an encoder document."""
        try:
            if "inputs" in data:
                return encoder_from_json(data)
            p = int(data["p"])
            dims = (int(data["state_dim"]), int(data["symbol_dim"]), int(data.get("next_state_dim", data["state_dim"])))
            order = data.get("state_order")
            return cls.from_generators(p, dims, data.get("generators", []), tuple(order) if order else None)
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed section JSON: {exc!r}") from exc


# ---------------------------------------------------------------------------
# construction from encoders


def section_from_generators(p: int, responses: Sequence[Sequence[Sequence[int]]], state_order=None) -> TrellisSection:
    """Shift-register section from per-input impulse responses.

    ``responses[j]`` lists the output symbols b_0, ..., b_nu of input j.
    The state holds, per input and in input order, the inputs of ages
    1..nu_j; every input j and age t contributes the transition
    (unit state at age t, b_t, unit state at age t+1), where ages 0 and
    nu_j + 1 mean the zero state.
    """
    if not responses or any(len(r) == 0 for r in responses):
        raise ValidationError("each input needs a nonempty impulse response")
    n = len(responses[0][0])
    for r in responses:
        for b in r:
            if len(b) != n:
                raise ValidationError("all response symbols must have the same length")
            if any(not 0 <= c < p for c in b):
                raise ValidationError(f"response symbol {list(b)} has entries outside [0, {p})")
    nus = [len(r) - 1 for r in responses]
    mu = sum(nus)
    offsets = [sum(nus[:j]) for j in range(len(nus))]

    def unit(j: int, age: int) -> list[int]:
        v = [0] * mu
        if 1 <= age <= nus[j]:
            v[offsets[j] + age - 1] = 1
        return v

    rows = []
    for j, r in enumerate(responses):
        for t, b in enumerate(r):
            rows.append([unit(j, t), list(b), unit(j, t + 1)])
    return TrellisSection.from_generators(p, (mu, n, mu), rows, state_order)


def responses_from_polynomials(gens: Sequence[Sequence[Sequence[int]]]) -> list[list[tuple[int, ...]]]:
    """Impulse responses from D-transform generators.

    ``gens[j][i]`` is the coefficient list (lowest degree first) of output i
    for input j; e.g. 1 + D^2 is ``[1, 0, 1]``.
    """
    out = []
    for g in gens:
        nu = max(len(c) for c in g) - 1
        out.append([tuple(c[t] if t < len(c) else 0 for c in g) for t in range(nu + 1)])
    return out


def section_from_polynomials(p: int, gens, state_order=None) -> TrellisSection:
    return section_from_generators(p, responses_from_polynomials(gens), state_order)


def encoder_from_json(data: Mapping) -> TrellisSection:
    """Encoder document: {"p", "inputs": [{"response": [[coords]...]}], "n"}."""
    p = int(data["p"])
    responses = [[tuple(int(c) for c in b) for b in inp["response"]] for inp in data["inputs"]]
    if "n" in data and any(len(b) != int(data["n"]) for r in responses for b in r):
        raise ValidationError("response symbol length does not match n")
    order = data.get("state_order")
    return section_from_generators(p, responses, tuple(order) if order else None)


def encoder_to_json(p: int, responses) -> dict:
    return {
        "p": p,
        "n": len(responses[0][0]),
        "inputs": [{"response": [list(b) for b in r]} for r in responses],
    }


# ---------------------------------------------------------------------------
# duality and time reversal


def dual_section(section: TrellisSection) -> TrellisSection:
    """Section of the dual code.

    Transitions are (s^, a^, s^') with (s^, a^, -s^') in the orthogonal
    constraint code: the sign inverter on each state edge is absorbed into
    the next-state block.  The dual state basis follows the primal one.
    """
    d = dual_code(section.code)
    p = section.p
    mu, n = section.state_dim, section.symbol_dim
    rows = [list(r[: mu + n]) + [(-x) % p for x in r[mu + n :]] for r in d.basis]
    return TrellisSection(LinearCode(p, section.code.profile, rows), section.state_order)


def time_reverse(section: TrellisSection) -> TrellisSection:
    """Swap the state and next-state blocks of every transition."""
    c = section.code
    mu, n, nu = c.profile
    rows = [list(r[mu + n :]) + list(r[mu : mu + n]) + list(r[:mu]) for r in c.basis]
    return TrellisSection(LinearCode(c.p, (nu, n, mu), rows), section.next_state_order)


# ---------------------------------------------------------------------------
# termination


def _behavior(section: TrellisSection, N: int, mode: TerminationMode) -> tuple[list[list[int]], int, list[int]]:
    """Basis of the terminated behavior on (s_0, a_0, s_1, ..., a_{N-1}, s_N).

    Returns (basis rows, number of variables, symbol column indices).
    """
    if N < 1:
        raise ValidationError("block length N must be at least 1")
    if not section.is_time_invariant:
        raise ValidationError("termination needs S = S'")
    p = section.p
    mu, n = section.state_dim, section.symbol_dim
    checks = dual_code(section.code).basis
    stride = mu + n
    nvars = N * stride + mu
    rows = []
    for k in range(N):
        base = k * stride
        for h in checks:
            row = [0] * nvars
            row[base : base + stride + mu] = h
            rows.append(row)
    end = N * stride
    if mode in (SUBCODE, TRUNCATED):
        for i in range(mu):
            row = [0] * nvars
            row[i] = 1
            rows.append(row)
    if mode in (SUBCODE, REVERSE_TRUNCATED):
        for i in range(mu):
            row = [0] * nvars
            row[end + i] = 1
            rows.append(row)
    if mode is TAILBITING:
        for i in range(mu):
            row = [0] * nvars
            row[i] = 1
            row[end + i] = p - 1
            rows.append(row)
    symbols = [k * stride + mu + j for k in range(N) for j in range(n)]
    return nullspace(rows, p, nvars), nvars, symbols


def terminate(section: TrellisSection, N: int, mode) -> LinearCode:
    """Block code of length N cut from the trellis under a termination mode."""
    mode = TerminationMode.parse(mode)
    basis, _, symbols = _behavior(section, N, mode)
    rows = [[r[i] for i in symbols] for r in basis]
    return LinearCode(section.p, [section.symbol_dim] * N, rows)


def termination_multiplicity(section: TrellisSection, N: int, mode) -> int:
    """Number of state sequences carrying the all-zero symbol sequence.

    Matrix extractions count (symbols, states) pairs, so they equal this
    multiplicity times the enumerator of the terminated code.
    """
    mode = TerminationMode.parse(mode)
    basis, _, symbols = _behavior(section, N, mode)
    projected = rref([[r[i] for i in symbols] for r in basis], section.p, len(symbols))[0]
    return section.p ** (len(basis) - len(projected))


def trellis_nfg(section: TrellisSection, N: int, mode=None, kind=HAMMING) -> NormalFactorGraph:
    """Normal factor graph of N trellis sections with weight factors attached.

    Factors ``C{k}`` are the section indicators on (s{k}, a{k}, s{k+1}) and
    ``w{k}`` the weight monomials on a{k}.  With ``mode=None`` the boundary
    states s0 and s{N} stay external; otherwise the mode's boundary
    constraint is imposed and the graph has no externals.
    """
    if N < 1:
        raise ValidationError("block length N must be at least 1")
    kind = WgfKind.parse(kind)
    S, A = section.state_alphabet, section.symbol_alphabet
    ind = FactorTensor.indicator(section.code)
    weight = FactorTensor.from_function([A], lambda a: symbol_monomial(A, a, kind), section.p)
    last = f"s{N}"
    mode = None if mode is None else TerminationMode.parse(mode)
    if mode is TAILBITING:
        last = "s0"
    factors = []
    for k in range(N):
        nxt = last if k == N - 1 else f"s{k + 1}"
        factors.append(Factor(f"C{k}", ind, (f"s{k}", f"a{k}", nxt)))
        factors.append(Factor(f"w{k}", weight, (f"a{k}",)))
    internals = [(f"a{k}", A) for k in range(N)] + [(f"s{k}", S) for k in range(1, N)]
    if mode is None:
        return NormalFactorGraph(section.p, [("s0", S), (f"s{N}", S)], internals, factors)
    internals.append(("s0", S))
    if mode is not TAILBITING:
        internals.append((last, S))
        zero = FactorTensor.from_function([S], lambda s: int(not any(s)), section.p)
        ones = FactorTensor.constant([S], 1, section.p)
        factors.append(Factor("start", zero if mode in (SUBCODE, TRUNCATED) else ones, ("s0",)))
        factors.append(Factor("end", zero if mode in (SUBCODE, REVERSE_TRUNCATED) else ones, (last,)))
    return NormalFactorGraph(section.p, [], internals, factors)


# ---------------------------------------------------------------------------
# weight adjacency matrix powers


def wam_power(lam: WeightAdjacencyMatrix, N: int, d_max: int | None = None) -> WeightAdjacencyMatrix:
    """Lam^N by repeated squaring; with ``d_max`` every entry is kept mod degree d_max + 1."""
    if lam.rows != lam.cols:
        raise ValidationError("matrix power needs a square matrix with matching labels")
    if N < 1:
        raise ValidationError("N must be at least 1")
    base = lam if d_max is None else lam.truncate(d_max)
    result = None
    while N:
        if N & 1:
            result = base if result is None else result.multiply(base, d_max)
        N >>= 1
        if N:
            base = base.multiply(base, d_max)
    return result


def terminated_hwgf(lam_n: WeightAdjacencyMatrix, mode) -> Polynomial:
    """Extract a terminated enumerator from the global matrix Lam^N.

    The zero state is the row/column whose label is all zeros.
    """
    mode = TerminationMode.parse(mode)
    if lam_n.rows != lam_n.cols:
        raise ValidationError("extraction needs a square matrix with matching labels")
    z = _zero_index(lam_n.rows)
    p = lam_n.p
    if mode is SUBCODE:
        return lam_n.entries[z][z]
    if mode is PROJECTION:
        return lam_n.total()
    if mode is TAILBITING:
        return lam_n.trace()
    if mode is TRUNCATED:
        return sum(lam_n.entries[z], Polynomial.zero(p))
    return sum((row[z] for row in lam_n.entries), Polynomial.zero(p))


def _zero_index(labels: Sequence[str]) -> int:
    for i, l in enumerate(labels):
        if all(ch in "0," for ch in l):
            return i
    raise ValidationError("no zero state label found")


# ---------------------------------------------------------------------------
# spectra


@dataclass
class Spectrum:
    """Weight -> count map, optionally normalized by a divisor."""

    counts: dict[int, Fraction]
    d_max: int
    divisor: int | None = None
    meta: dict = field(default_factory=dict)

    @property
    def d_free(self) -> int | None:
        return min((d for d, c in self.counts.items() if d >= 1 and c), default=None)

    def as_list(self) -> list[Fraction]:
        return [self.counts.get(d, Fraction(0)) for d in range(self.d_max + 1)]

    def nonzero(self) -> dict[int, Fraction]:
        return {d: c for d, c in sorted(self.counts.items()) if c}

    def __eq__(self, other):
        if not isinstance(other, Spectrum):
            return NotImplemented
        return self.d_max == other.d_max and self.nonzero() == other.nonzero()

    def to_polynomial(self, p: int = 2) -> Polynomial:
        x, _ = hamming_names()
        return Polynomial(p, {((x, d),) if d else (): c for d, c in self.counts.items() if c})

    def to_json(self) -> dict:
        return {
            "counts": {str(d): str(c) for d, c in self.nonzero().items()},
            "d_free": self.d_free,
            "d_max": self.d_max,
            "divisor": self.divisor,
        }


def _hamming_int_matrix(section: TrellisSection, d_max: int) -> tuple[list[tuple[int, ...]], list[list[list[int]]]]:
    """Hamming adjacency matrix as integer coefficient lists, truncated at d_max."""
    S = section.state_alphabet
    states = list(S)
    idx = {s: i for i, s in enumerate(states)}
    m = [[[0] * (d_max + 1) for _ in states] for _ in states]
    for s, a, t in section.transitions():
        w = sum(1 for c in a if c)
        if w <= d_max:
            m[idx[s]][idx[t]][w] += 1
    return states, m


def _pmul(a: list[int], b: list[int], d_max: int) -> list[int]:
    out = [0] * (d_max + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(d_max + 1 - i):
                if b[j]:
                    out[i + j] += x * b[j]
    return out


def _padd(a: list[int], b: list[int]) -> list[int]:
    return [x + y for x, y in zip(a, b)]


def _int_matmul(a, b, d_max: int):
    n, k, m = len(a), len(b), len(b[0])
    zero = [0] * (d_max + 1)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for t in range(k):
                if any(a[i][t]) and any(b[t][j]):
                    acc = _padd(acc, _pmul(a[i][t], b[t][j], d_max))
            row.append(acc)
        out.append(row)
    return out


def free_distance_spectrum(section: TrellisSection, d_max: int) -> Spectrum:
    """Counts of zero-to-zero paths with no intermediate zero state, by weight.

    Transfer-function method: split the zero state, then accumulate
    v Lam[nz, 0] while v <- v Lam[nz, nz], mod x^(d_max + 1), until v
    vanishes.  Every cycle through nonzero states has positive weight once
    the zero-state check passes, so the loop ends.
    """
    if d_max < 1:
        raise ValidationError("d_max must be at least 1")
    section.check_zero_state()
    states, m = _hamming_int_matrix(section, d_max)
    z = states.index((0,) * section.state_dim)
    nz = [i for i in range(len(states)) if i != z]
    counts = list(m[z][z])
    counts[0] -= 1  # the trivial zero loop
    v = [m[z][j] for j in nz]
    steps = 0
    limit = (d_max + 2) * (len(states) + 1)
    while any(any(c) for c in v):
        for i, vi in zip(nz, v):
            counts = _padd(counts, _pmul(vi, m[i][z], d_max))
        v = [
            _sum_lists([_pmul(vi, m[i][j], d_max) for i, vi in zip(nz, v)], d_max) for j in nz
        ]
        steps += 1
        if steps > limit:
            raise ValidationError("path enumeration did not terminate; zero-weight cycle suspected")
    return Spectrum({d: Fraction(c) for d, c in enumerate(counts) if c}, d_max, meta={"iterations": steps})


def _sum_lists(ls, d_max: int) -> list[int]:
    out = [0] * (d_max + 1)
    for l in ls:
        out = _padd(out, l)
    return out


def tailbiting_trace(section: TrellisSection, N: int, d_max: int) -> list[int]:
    """Coefficients of Tr(Lam^N) up to x^d_max, in integer arithmetic."""
    if N < 1:
        raise ValidationError("N must be at least 1")
    _, m = _hamming_int_matrix(section, d_max)
    result = None
    base = m
    k = N
    while k:
        if k & 1:
            result = base if result is None else _int_matmul(result, base, d_max)
        k >>= 1
        if k:
            base = _int_matmul(base, base, d_max)
    return _sum_lists([result[i][i] for i in range(len(result))], d_max)


def normalized_tailbiting_spectrum(section: TrellisSection, N: int, d_max: int) -> Spectrum:
    """(Tr(Lam^N) - 1) / N, truncated at d_max."""
    tr = tailbiting_trace(section, N, d_max)
    counts = {d: Fraction(c, N) for d, c in enumerate(tr) if d >= 1 and c}
    return Spectrum(counts, d_max, divisor=N, meta={"constant_term": tr[0]})


def hamming_wam(section: TrellisSection, state_order=None) -> WeightAdjacencyMatrix:
    return wam(section, HAMMING, state_order)
