import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nfgcodes.errors import CapExceeded, ValidationError
from nfgcodes.lincode import LinearCode, code_from_generators, dual_code, nullspace, rank, rref, weight_distribution


@st.composite
def codes(draw, max_len=6):
    p = draw(st.sampled_from([2, 3]))
    profile = draw(st.lists(st.integers(1, 2), min_size=1, max_size=4))
    n = sum(profile)
    if n > max_len:
        profile = [1] * max_len
        n = max_len
    k = draw(st.integers(0, n))
    rows = [draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)) for _ in range(k)]
    return LinearCode(p, profile, rows)


def brute_dual(code):
    words = list(code.flat_words())
    out = []
    for v in itertools.product(range(code.p), repeat=code.n_scalars):
        if all(sum(a * b for a, b in zip(v, w)) % code.p == 0 for w in words):
            out.append(v)
    return sorted(out)


def test_rref_and_rank():
    basis, pivots = rref([[1, 1, 0], [1, 1, 0], [0, 1, 1]], 2)
    assert basis == [[1, 0, 1], [0, 1, 1]]
    assert pivots == [0, 1]
    assert rank([[1, 2], [2, 1]], 3) == 1


def test_nullspace_is_orthogonal():
    rows = [[1, 2, 0, 1], [0, 1, 1, 2]]
    for v in nullspace(rows, 3, 4):
        for r in rows:
            assert sum(a * b for a, b in zip(r, v)) % 3 == 0


def test_repetition_code():
    c = code_from_generators([1, 1, 1], [[[1], [1], [1]]], 2)
    assert c.dim == 1
    assert weight_distribution(c) == [1, 0, 0, 1]
    assert dual_code(c).dim == 2
    assert [0, 1, 1] in dual_code(c)


def test_vector_symbols_and_weights():
    c = code_from_generators([2, 2], [[(1, 1), (0, 1)]], 3)
    assert weight_distribution(c) == [1, 0, 0, 2]
    assert weight_distribution(c, per_symbol=True) == [1, 0, 2]


def test_enumeration_cap():
    c = LinearCode.universe(2, [1] * 10)
    with pytest.raises(CapExceeded, match="cap 16"):
        list(c.flat_words(cap=16))


def test_bad_rows_rejected():
    with pytest.raises(ValidationError):
        LinearCode(2, [2], [[1, 0, 1]])
    with pytest.raises(ValidationError):
        code_from_generators([1, 1], [[[2], [0]]], 2)


def test_json_round_trip():
    c = code_from_generators([2, 1], [[(1, 2), (1,)], [(0, 1), (2,)]], 3)
    assert LinearCode.from_json(c.to_json()) == c


@given(codes())
def test_dual_matches_brute_force(c):
    d = dual_code(c)
    assert sorted(d.flat_words()) == brute_dual(c)
    assert c.cardinality * d.cardinality == c.ambient_size
    assert dual_code(d) == c


@given(codes())
def test_enumeration_is_the_span(c):
    words = set(c.flat_words())
    assert len(words) == c.cardinality
    rnd = random.Random(0)
    for _ in range(5):
        a, b = rnd.choice(sorted(words)), rnd.choice(sorted(words))
        assert tuple((x + y) % c.p for x, y in zip(a, b)) in words
