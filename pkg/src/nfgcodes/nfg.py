"""Normal factor graphs and their partition functions.

A graph has external variables (half-edges, one factor each), internal
variables (edges, exactly two factors each) and factors given as dense
:class:`~nfgcodes.transform.FactorTensor` tables.  Its partition function is
the sum over internal configurations of the product of all factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

from .algebra import Alphabet, CycloRational, Polynomial
from .errors import CapExceeded, ValidationError
from .transform import FORWARD, FactorTensor, matrix_scale_equal, sign_inverter, value_from_json

DEFAULT_BRUTE_CAP = 1 << 20


@dataclass(frozen=True)
class Factor:
    id: str
    tensor: FactorTensor
    vars: tuple[str, ...]


def _prod(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out *= x
    return out


class Realization:
    """Sum-of-products form with no degree restrictions on variables."""

    def __init__(
        self,
        p: int,
        externals: Sequence[tuple[str, Alphabet]],
        internals: Sequence[tuple[str, Alphabet]],
        factors: Sequence[Factor | tuple],
    ):
        self.p = p
        self.externals = tuple((str(i), a) for i, a in externals)
        self.internals = tuple((str(i), a) for i, a in internals)
        self.factors = tuple(f if isinstance(f, Factor) else Factor(f[0], f[1], tuple(f[2])) for f in factors)
        self._check_conformity()

    @property
    def alphabet_of(self) -> dict[str, Alphabet]:
        return dict(self.externals + self.internals)

    def _check_conformity(self):
        ids = [i for i, _ in self.externals + self.internals]
        if len(set(ids)) != len(ids):
            raise ValidationError("variable ids must be unique")
        fids = [f.id for f in self.factors]
        if len(set(fids)) != len(fids):
            raise ValidationError("factor ids must be unique")
        alph = self.alphabet_of
        for a in alph.values():
            if a.p != self.p:
                raise ValidationError(f"alphabet {a} is not over p={self.p}")
        for f in self.factors:
            if len(set(f.vars)) != len(f.vars):
                raise ValidationError(f"factor {f.id} lists a variable twice")
            if f.tensor.p != self.p:
                raise ValidationError(f"factor {f.id} is not over p={self.p}")
            if len(f.vars) != f.tensor.arity:
                raise ValidationError(f"factor {f.id}: {len(f.vars)} variables but tensor arity {f.tensor.arity}")
            for v, a in zip(f.vars, f.tensor.alphabets):
                if v not in alph:
                    raise ValidationError(f"factor {f.id} uses unknown variable {v!r}")
                if alph[v] != a:
                    raise ValidationError(f"factor {f.id}: axis for {v!r} is {a}, variable alphabet is {alph[v]}")

    def degrees(self) -> dict[str, int]:
        deg = {i: 0 for i, _ in self.externals + self.internals}
        for f in self.factors:
            for v in f.vars:
                deg[v] += 1
        return deg

    def incidence(self) -> dict[str, list[tuple[str, int]]]:
        """variable id -> [(factor id, axis)] in factor order."""
        inc: dict[str, list[tuple[str, int]]] = {i: [] for i, _ in self.externals + self.internals}
        for f in self.factors:
            for ax, v in enumerate(f.vars):
                inc[v].append((f.id, ax))
        return inc

    def factor(self, fid: str) -> Factor:
        for f in self.factors:
            if f.id == fid:
                return f
        raise KeyError(fid)

    def brute_force(self, cap: int = DEFAULT_BRUTE_CAP) -> "PartitionFunction":
        return brute_force_partition(self, cap)


class NormalFactorGraph(Realization):
    """A realization in which externals have degree 1 and internals degree 2.

    ``orientation`` optionally names, per internal variable, the factor at its
    positive end; dualization puts the sign inverter's other side at the
    negative end.  By default the first incident factor is positive.
    """

    def __init__(self, p, externals, internals, factors, orientation: Mapping[str, str] | None = None):
        super().__init__(p, externals, internals, factors)
        deg = self.degrees()
        for i, _ in self.externals:
            if deg[i] != 1:
                raise ValidationError(f"external variable {i!r} is in {deg[i]} factors (must be exactly 1)")
        for i, _ in self.internals:
            if deg[i] != 2:
                raise ValidationError(f"internal variable {i!r} is in {deg[i]} factors (must be exactly 2)")
        inc = self.incidence()
        self.orientation = {}
        for i, _ in self.internals:
            ends = [fid for fid, _ in inc[i]]
            pos = (orientation or {}).get(i, ends[0])
            if pos not in ends:
                raise ValidationError(f"orientation of {i!r} names factor {pos!r}, which is not incident")
            self.orientation[i] = pos

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        return {
            "p": self.p,
            "externals": [{"id": i, "dim": a.dim} for i, a in self.externals],
            "internals": [{"id": i, "dim": a.dim} for i, a in self.internals],
            "factors": [{"id": f.id, "vars": list(f.vars), "table": f.tensor.to_json()} for f in self.factors],
            "orientation": dict(sorted(self.orientation.items())),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NormalFactorGraph":
        p, ext, internal, factors = _parse_graph_json(data)
        return cls(p, ext, internal, factors, data.get("orientation"))


def _parse_graph_json(data: Mapping):
    try:
        p = int(data["p"])
        ext = [(str(v["id"]), Alphabet(p, int(v["dim"]))) for v in data.get("externals", [])]
        internal = [(str(v["id"]), Alphabet(p, int(v["dim"]))) for v in data.get("internals", [])]
        alph = dict(ext + internal)
        factors = []
        for f in data["factors"]:
            vars_ = [str(v) for v in f["vars"]]
            missing = [v for v in vars_ if v not in alph]
            if missing:
                raise ValidationError(f"factor {f['id']} uses unknown variables {missing}")
            table = [value_from_json(p, t) for t in f["table"]]
            factors.append(Factor(str(f["id"]), FactorTensor([alph[v] for v in vars_], table, p), tuple(vars_)))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed graph JSON: {exc!r}") from exc
    return p, ext, internal, factors


def realization_from_json(data: Mapping) -> Realization:
    return Realization(*_parse_graph_json(data))


# ---------------------------------------------------------------------------


@dataclass
class PartitionFunction:
    """Table of Z over the external configuration space (axes in external order)."""

    ids: tuple[str, ...]
    alphabets: tuple[Alphabet, ...]
    table: np.ndarray
    witness: Fraction | None = None
    p: int = 0

    def __getitem__(self, coords_per_axis):
        idx = tuple(a.index(c) for a, c in zip(self.alphabets, coords_per_axis))
        return self.table[idx]

    def __eq__(self, other):
        if not isinstance(other, PartitionFunction):
            return NotImplemented
        return (
            self.alphabets == other.alphabets
            and self.table.shape == other.table.shape
            and all(a == b for a, b in zip(self.table.flat, other.table.flat))
        )

    def scale_to(self, other: "PartitionFunction") -> Fraction | None:
        """alpha with self = alpha * other, if any."""
        if self.alphabets != other.alphabets:
            return None
        return matrix_scale_equal(self.table, other.table)

    def as_tensor(self) -> FactorTensor:
        return FactorTensor._wrap(self.alphabets, self.table, self.p)

    def to_json(self) -> dict:
        return {
            "externals": [{"id": i, "dim": a.dim} for i, a in zip(self.ids, self.alphabets)],
            "table": FactorTensor._wrap(self.alphabets, self.table, self.p).to_json(),
            "witness": None if self.witness is None else str(self.witness),
        }


def brute_force_partition(r: Realization, cap: int = DEFAULT_BRUTE_CAP) -> PartitionFunction:
    """Reference evaluator: explicit sum over every joint configuration."""
    ext = r.externals
    internal = r.internals
    total = _prod(a.size for _, a in ext) * _prod(a.size for _, a in internal)
    if total > cap:
        raise CapExceeded("brute-force configurations", total, cap)
    pos = {v: k for k, (v, _) in enumerate(ext + internal)}
    plan = [(f.tensor.values, [pos[v] for v in f.vars]) for f in r.factors]
    shape = tuple(a.size for _, a in ext)
    table = np.empty(shape, dtype=object)
    zero = CycloRational.zero(r.p)
    table.fill(zero)
    ranges = [range(a.size) for _, a in ext + internal]
    n_ext = len(ext)
    for cfg in itertools.product(*ranges):
        term = None
        for vals, axes in plan:
            v = vals[tuple(cfg[k] for k in axes)]
            if isinstance(v, CycloRational) and v.is_zero():
                term = zero
                break
            term = v if term is None else term * v
        if term is None:
            term = CycloRational.one(r.p)
        key = cfg[:n_ext]
        table[key] = table[key] + term
    return PartitionFunction(tuple(i for i, _ in ext), tuple(a for _, a in ext), table, p=r.p)


def _contract(
    factors: Sequence[tuple[np.ndarray, list[str]]],
    eliminate: Sequence[str],
    keep: Sequence[str],
    sizes: Mapping[str, int],
    p: int,
    fixed_order: bool = False,
) -> np.ndarray:
    """Sum out ``eliminate`` by pairwise tensordot; return axes in ``keep`` order.

    Unless ``fixed_order`` is set, the next variable is chosen greedily to keep
    the intermediate tensor small.
    """
    work = [(arr, list(labels)) for arr, labels in factors]
    todo = list(eliminate)
    while todo:
        if fixed_order:
            v = todo[0]
        else:
            v, best_cost = None, None
            for u in todo:
                labels = set()
                for _, lab in work:
                    if u in lab:
                        labels.update(lab)
                labels.discard(u)
                cost = _prod(sizes[l] for l in labels)
                if best_cost is None or cost < best_cost:
                    v, best_cost = u, cost
        todo.remove(v)
        holders = [k for k, (_, lab) in enumerate(work) if v in lab]
        if len(holders) == 1:
            arr, lab = work[holders[0]]
            i, j = [k for k, l in enumerate(lab) if l == v]
            arr = _sum_last(np.diagonal(arr, axis1=i, axis2=j))
            lab = [l for k, l in enumerate(lab) if k not in (i, j)]
            work[holders[0]] = (arr, lab)
        elif len(holders) == 2:
            (a1, l1), (a2, l2) = work[holders[0]], work[holders[1]]
            arr = _object(np.tensordot(a1, a2, axes=([l1.index(v)], [l2.index(v)])))
            lab = [l for l in l1 if l != v] + [l for l in l2 if l != v]
            work = [w for k, w in enumerate(work) if k not in holders] + [(arr, lab)]
        else:
            raise ValidationError(f"variable {v!r} appears {len(holders)} times during contraction")
    out = _object(CycloRational.one(p))
    labels: list[str] = []
    for arr, lab in work:
        out = _object(np.multiply.outer(out, arr))
        labels += lab
    if sorted(labels) != sorted(keep):
        raise ValidationError(f"open variables {labels} do not match {list(keep)}")
    return np.transpose(out, [labels.index(k) for k in keep])


def _object(x) -> np.ndarray:
    if isinstance(x, np.ndarray) and x.dtype == object:
        return x
    out = np.empty(np.shape(x), dtype=object)
    if out.shape == ():
        out[()] = x[()] if isinstance(x, np.ndarray) else x
    else:
        out[...] = x
    return out


def _sum_last(arr: np.ndarray) -> np.ndarray:
    out = np.empty(arr.shape[:-1], dtype=object)
    for idx in np.ndindex(*arr.shape[:-1]):
        s = arr[idx + (0,)]
        for k in range(1, arr.shape[-1]):
            s = s + arr[idx + (k,)]
        out[idx] = s
    return out


def partition_function(
    g: Realization,
    order: Sequence[str] | None = None,
    method: str = "eliminate",
    cap: int = DEFAULT_BRUTE_CAP,
) -> PartitionFunction:
    """Partition function of ``g``.

    ``method="eliminate"`` sums out internal variables one at a time (the
    ``order`` if given, otherwise greedily); ``method="brute"`` enumerates every
    configuration and is subject to ``cap``.
    """
    if method == "brute":
        return brute_force_partition(g, cap)
    if method != "eliminate":
        raise ValidationError(f"unknown evaluation method {method!r}")
    if not isinstance(g, NormalFactorGraph):
        g = normalize(g)
    internal_ids = [i for i, _ in g.internals]
    if order is not None:
        if sorted(order) != sorted(internal_ids):
            raise ValidationError("contraction order must list every internal variable exactly once")
        elim = list(order)
    else:
        elim = internal_ids
    sizes = {i: a.size for i, a in g.externals + g.internals}
    factors = [(f.tensor.values, list(f.vars)) for f in g.factors]
    table = _contract(factors, elim, [i for i, _ in g.externals], sizes, g.p, fixed_order=order is not None)
    return PartitionFunction(tuple(i for i, _ in g.externals), tuple(a for _, a in g.externals), table, p=g.p)


# ---------------------------------------------------------------------------


def normalize(r: Realization) -> NormalFactorGraph:
    """Convert any realization into an equivalent normal factor graph.

    An external variable in d >= 2 factors is replaced there by replicas tied
    to it by an equality factor; an internal variable in q >= 3 factors gets
    replicas and an equality factor; q = 1 gets a dummy all-ones factor.
    Already-normal variables are left untouched.
    """
    if isinstance(r, NormalFactorGraph):
        return r
    inc = r.incidence()
    alph = r.alphabet_of
    rename: dict[tuple[str, str], str] = {}  # (factor id, var) -> replacement var
    new_internals = []
    new_factors = []
    taken = set(alph) | {f.id for f in r.factors}

    def fresh(base: str) -> str:
        name = base
        k = 1
        while name in taken:
            name = f"{base}~{k}"
            k += 1
        taken.add(name)
        return name

    for vid, a in r.externals:
        ends = inc[vid]
        if len(ends) == 1:
            continue
        if not ends:
            new_factors.append(Factor(fresh(f"{vid}.one"), FactorTensor.constant([a], 1), (vid,)))
            continue
        replicas = []
        for ell, (fid, _) in enumerate(ends, 1):
            rid = fresh(f"{vid}.{ell}")
            rename[(fid, vid)] = rid
            replicas.append(rid)
            new_internals.append((rid, a))
        new_factors.append(Factor(fresh(f"{vid}.eq"), FactorTensor.equality(a, len(ends) + 1), (vid, *replicas)))

    kept_internals = []
    for vid, a in r.internals:
        ends = inc[vid]
        if len(ends) == 2:
            kept_internals.append((vid, a))
        elif len(ends) >= 3:
            replicas = []
            for ell, (fid, _) in enumerate(ends, 1):
                rid = fresh(f"{vid}.{ell}")
                rename[(fid, vid)] = rid
                replicas.append(rid)
                new_internals.append((rid, a))
            new_factors.append(Factor(fresh(f"{vid}.eq"), FactorTensor.equality(a, len(ends)), tuple(replicas)))
        else:
            kept_internals.append((vid, a))
            for _ in range(2 - len(ends)):
                new_factors.append(Factor(fresh(f"{vid}.one"), FactorTensor.constant([a], 1), (vid,)))

    factors = [Factor(f.id, f.tensor, tuple(rename.get((f.id, v), v) for v in f.vars)) for f in r.factors]
    return NormalFactorGraph(r.p, r.externals, kept_internals + new_internals, factors + new_factors)


def contract_fragment(
    g: Realization, factor_ids: Sequence[str], axis_order: Sequence[str] | None = None
) -> FactorTensor:
    """Partition function of a sub-collection of factors.

    Variables touched twice inside the fragment are summed; variables touched
    once become axes of the result, in ``axis_order`` or by first appearance.
    """
    if not factor_ids:
        raise ValidationError("fragment must contain at least one factor")
    chosen = [g.factor(fid) for fid in factor_ids]
    counts: dict[str, int] = {}
    appearance: list[str] = []
    for f in chosen:
        for v in f.vars:
            if v not in counts:
                appearance.append(v)
            counts[v] = counts.get(v, 0) + 1
    if any(c > 2 for c in counts.values()):
        raise ValidationError("fragment variables may appear at most twice")
    inner = [v for v in appearance if counts[v] == 2]
    outer = [v for v in appearance if counts[v] == 1]
    if axis_order is not None:
        if sorted(axis_order) != sorted(outer):
            raise ValidationError(f"axis_order must list exactly the fragment's open variables {outer}")
        outer = list(axis_order)
    alph = g.alphabet_of
    sizes = {v: alph[v].size for v in appearance}
    arr = _contract([(f.tensor.values, list(f.vars)) for f in chosen], inner, outer, sizes, g.p)
    return FactorTensor._wrap([alph[v] for v in outer], arr, g.p)


# ---------------------------------------------------------------------------


def dualize(g: NormalFactorGraph) -> NormalFactorGraph:
    """Dual graph: transform every factor on every axis (forward kernel) and
    put a sign inverter in the middle of every internal edge.

    The positive end of edge ``s`` keeps the id ``s``; the negative end is
    renamed ``s.neg`` and a factor ``s.sign`` joins the two (a numeric
    suffix is appended if either name is already taken).
    """
    taken = {i for i, _ in g.externals + g.internals} | {f.id for f in g.factors}

    def fresh(base: str) -> str:
        name, k = base, 1
        while name in taken:
            k += 1
            name = f"{base}{k}"
        taken.add(name)
        return name

    neg_name = {vid: fresh(f"{vid}.neg") for vid, _ in g.internals}
    sign_name = {vid: fresh(f"{vid}.sign") for vid, _ in g.internals}
    factors = []
    for f in g.factors:
        vars_ = []
        for v in f.vars:
            if v in g.orientation and g.orientation[v] != f.id:
                vars_.append(neg_name[v])
            else:
                vars_.append(v)
        factors.append(Factor(f.id, f.tensor.transform(FORWARD), tuple(vars_)))
    internals = []
    orientation = {}
    for vid, a in g.internals:
        internals.append((vid, a))
        internals.append((neg_name[vid], a))
        sid = sign_name[vid]
        factors.append(Factor(sid, sign_inverter(a), (vid, neg_name[vid])))
        orientation[vid] = g.orientation[vid]
        orientation[neg_name[vid]] = sid
    return NormalFactorGraph(g.p, g.externals, internals, factors, orientation)


def fourier_transform_table(z: PartitionFunction, flavor: str = FORWARD) -> PartitionFunction:
    """Multidimensional transform of a partition-function table."""
    t = z.as_tensor().transform(flavor)
    return PartitionFunction(z.ids, z.alphabets, t.values, p=z.p)


@dataclass
class DualityReport:
    primal: PartitionFunction
    transform: PartitionFunction
    dual: PartitionFunction
    expected_witness: Fraction
    witness: Fraction | None
    passed: bool = field(init=False)

    def __post_init__(self):
        self.passed = self.witness is not None and self.witness == self.expected_witness

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "expected_witness": str(self.expected_witness),
            "witness": None if self.witness is None else str(self.witness),
            "primal": self.primal.to_json(),
            "transform": self.transform.to_json(),
            "dual": self.dual.to_json(),
        }


def verify_duality(g: NormalFactorGraph, cap: int = DEFAULT_BRUTE_CAP, dual_method: str = "eliminate") -> DualityReport:
    """Check Z_dual = (prod_j |S_j|) * FT(Z) exactly."""
    z = brute_force_partition(g, cap)
    zhat = fourier_transform_table(z)
    zdual = partition_function(dualize(g), method=dual_method, cap=cap)
    expected = Fraction(_prod(a.size for _, a in g.internals))
    if all(_zero(v) for v in zhat.table.flat) and all(_zero(v) for v in zdual.table.flat):
        witness = expected  # both sides vanish, any scale fits
    else:
        witness = zdual.scale_to(zhat)
    return DualityReport(z, zhat, zdual, expected, witness)


def _zero(v) -> bool:
    return v.is_zero() if isinstance(v, (CycloRational, Polynomial)) else v == 0
