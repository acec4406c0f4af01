import json
import random
from fractions import Fraction

import numpy as np
import pytest

from nfgcodes.algebra import Alphabet, CycloRational
from nfgcodes.errors import CapExceeded, ValidationError
from nfgcodes.lincode import code_from_generators, dual_code
from nfgcodes.nfg import (
    Factor,
    NormalFactorGraph,
    Realization,
    brute_force_partition,
    contract_fragment,
    dualize,
    fourier_transform_table,
    normalize,
    partition_function,
    realization_from_json,
    verify_duality,
)
from nfgcodes.transform import FactorTensor

from randgen import random_nfg

B = Alphabet(2, 1)
T = Alphabet(3, 1)


def chain(p=3):
    """a -- f -- s -- g -- b with arbitrary tables."""
    a = Alphabet(p, 1)
    f = FactorTensor.from_function([a, a], lambda u, v: 1 + u[0] + 2 * v[0])
    g = FactorTensor.from_function([a, a], lambda u, v: (u[0] + 1) * (v[0] - 1))
    return NormalFactorGraph(p, [("a", a), ("b", a)], [("s", a)], [Factor("f", f, ("a", "s")), Factor("g", g, ("s", "b"))])


def test_chain_is_a_matrix_product():
    g = chain()
    z = partition_function(g)
    f = g.factor("f").tensor.values
    h = g.factor("g").tensor.values
    expect = f.dot(h)
    assert all(x == y for x, y in zip(z.table.flat, expect.flat))


def test_degree_validation():
    with pytest.raises(ValidationError, match="exactly 2"):
        NormalFactorGraph(2, [], [("s", B)], [Factor("f", FactorTensor.equality(B, 1), ("s",))])
    with pytest.raises(ValidationError, match="exactly 1"):
        NormalFactorGraph(
            2,
            [("a", B)],
            [],
            [Factor("f", FactorTensor.equality(B, 1), ("a",)), Factor("g", FactorTensor.equality(B, 1), ("a",))],
        )


def test_axis_alphabet_mismatch():
    with pytest.raises(ValidationError, match="axis"):
        Realization(2, [("a", Alphabet(2, 2))], [], [Factor("f", FactorTensor.equality(B, 1), ("a",))])


def test_brute_force_cap():
    g = chain()
    with pytest.raises(CapExceeded):
        brute_force_partition(g, cap=5)


def test_contraction_order_is_irrelevant():
    rng = random.Random(7)
    for _ in range(20):
        g = random_nfg(rng)
        ref = brute_force_partition(g)
        ids = [i for i, _ in g.internals]
        assert partition_function(g) == ref
        assert partition_function(g, order=list(reversed(ids))) == ref


def test_normalize_replicates_high_degree_variables():
    a = T
    r = Realization(
        3,
        [("x", a)],
        [("s", a), ("u", a), ("lone", a)],
        [
            Factor("f", FactorTensor.from_function([a, a], lambda x, s: x[0] + s[0] + 1), ("x", "s")),
            Factor("g", FactorTensor.from_function([a, a], lambda x, s: 2 * x[0] - s[0]), ("x", "s")),
            Factor("h", FactorTensor.from_function([a, a, a], lambda s, u, l: 1 + s[0] * u[0] + l[0]), ("s", "u", "lone")),
            Factor("k", FactorTensor.from_function([a], lambda u: u[0] + 3), ("u",)),
        ],
    )
    n = normalize(r)
    assert isinstance(n, NormalFactorGraph)
    names = {i for i, _ in n.internals}
    assert {"x.1", "x.2", "s.1", "s.2", "s.3"} <= names
    assert partition_function(n) == brute_force_partition(r)


def test_code_graph_partition_function_is_indicator():
    # single-factor graph for the (3, 2) even-weight code
    c = code_from_generators([1, 1, 1], [[[1], [1], [0]], [[0], [1], [1]]], 2)
    ind = FactorTensor.indicator(c)
    g = NormalFactorGraph(2, [("a0", B), ("a1", B), ("a2", B)], [], [Factor("c", ind, ("a0", "a1", "a2"))])
    z = partition_function(g)
    dual = partition_function(dualize(g))
    assert dual == NormalFactorGraph(
        2, [("a0", B), ("a1", B), ("a2", B)], [], [Factor("c", FactorTensor.indicator(dual_code(c)).scale(4), ("a0", "a1", "a2"))]
    ).brute_force()
    assert z.table.shape == (2, 2, 2)


def test_fragment_of_a_chain():
    g = chain()
    frag = contract_fragment(g, ["f", "g"])
    assert frag.alphabets == (T, T)
    assert all(x == y for x, y in zip(frag.values.flat, partition_function(g).table.flat))
    one = contract_fragment(g, ["f"], ["s", "a"])
    assert one.values[1, 0] == g.factor("f").tensor.values[0, 1]


def test_duality_small_chain():
    rep = verify_duality(chain())
    assert rep.passed
    assert rep.witness == 3


def test_orientation_is_validated():
    g = chain()
    with pytest.raises(ValidationError, match="orientation"):
        NormalFactorGraph(g.p, g.externals, g.internals, g.factors, {"s": "nope"})


def test_either_orientation_gives_the_same_dual_partition_function():
    g = chain()
    flipped = NormalFactorGraph(g.p, g.externals, g.internals, g.factors, {"s": "g"})
    assert partition_function(dualize(g)) == partition_function(dualize(flipped))


def test_double_dual_negates_and_scales():
    rng = random.Random(3)
    for _ in range(15):
        g = random_nfg(rng, max_configs=256)
        z = brute_force_partition(g)
        zz = partition_function(dualize(dualize(g)))
        s = 1
        for _, a in g.internals:
            s *= a.size
        ext = 1
        for _, a in g.externals:
            ext *= a.size
        neg = np.empty_like(z.table)
        for idx in np.ndindex(*z.table.shape):
            nidx = tuple(a.neg_index(i) for a, i in zip(z.alphabets, idx))
            neg[idx] = z.table[nidx]
        expect = Fraction(s**3 * ext)
        for x, y in zip(zz.table.flat, neg.flat):
            assert x == y * expect


def test_random_duality_property():
    rng = random.Random(11)
    for _ in range(40):
        g = random_nfg(rng)
        rep = verify_duality(g)
        assert rep.passed, (rep.witness, rep.expected_witness)


def test_json_round_trip():
    g = chain()
    data = json.loads(json.dumps(g.to_json()))
    back = NormalFactorGraph.from_json(data)
    assert partition_function(back) == partition_function(g)
    assert realization_from_json(data).degrees() == g.degrees()


def test_json_rejects_unknown_variable():
    data = chain().to_json()
    data["factors"][0]["vars"] = ["a", "zz"]
    with pytest.raises(ValidationError, match="unknown"):
        NormalFactorGraph.from_json(data)


def test_transform_table_matches_definition():
    z = partition_function(chain())
    zh = fourier_transform_table(z)
    from nfgcodes.algebra import omega_pow

    for i in range(3):
        for j in range(3):
            acc = CycloRational.zero(3)
            for u in range(3):
                for v in range(3):
                    acc = acc + z.table[u, v] * omega_pow(3, i * u + j * v)
            assert zh.table[i, j] == acc
