from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nfgcodes.algebra import Alphabet, CycloRational, omega_pow
from nfgcodes.errors import CapExceeded
from nfgcodes.lincode import LinearCode, code_from_generators, dual_code
from nfgcodes.transform import (
    CONJUGATE,
    FORWARD,
    INVERSE,
    FactorTensor,
    fourier_matrix,
    matrix_scale_equal,
    poisson_check,
    sign_inverter,
    subspace_character_sum,
    verify_identity_suite,
)


@pytest.mark.parametrize("p,dim", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)])
def test_identity_suite(p, dim):
    rep = verify_identity_suite(Alphabet(p, dim))
    size = p**dim
    assert rep.passed
    assert rep.witness("conjugate*forward = |A| I") == size
    assert rep.witness("forward^2 ~ sign_inverter") == size
    assert rep.witness("forward^3 ~ conjugate") == size
    assert rep.witness("forward^4 ~ identity") == size * size


def test_binary_hadamard():
    f = fourier_matrix(Alphabet(2, 1)).entries
    assert [[int(v.to_fraction()) for v in row] for row in f] == [[1, 1], [1, -1]]
    f2 = fourier_matrix(Alphabet(2, 2)).entries
    # rows and columns in the 00, 10, 01, 11 order
    assert [int(v.to_fraction()) for v in f2[1]] == [1, -1, 1, -1]
    assert [int(v.to_fraction()) for v in f2[2]] == [1, 1, -1, -1]


def test_ternary_matrix_entries():
    f = fourier_matrix(Alphabet(3, 1)).entries
    assert f[1, 2] == omega_pow(3, 2)
    assert fourier_matrix(Alphabet(3, 1), CONJUGATE).entries[1, 2] == omega_pow(3, 1)
    assert fourier_matrix(Alphabet(3, 1)).is_symmetric()


def test_transform_cap():
    with pytest.raises(CapExceeded):
        fourier_matrix(Alphabet(2, 12), cap=1000)


def test_inverse_undoes_forward():
    a = Alphabet(3, 1)
    f = FactorTensor.from_function([a, a], lambda u, v: u[0] + 2 * v[0] + 1)
    assert f.transform(FORWARD).transform(INVERSE) == f


def test_sign_inverter_is_negation_permutation():
    s = sign_inverter(Alphabet(3, 1))
    assert [[int(v.to_fraction()) for v in row] for row in s.values] == [[1, 0, 0], [0, 0, 1], [0, 1, 0]]


def test_indicator_of_code_transforms_to_dual_indicator():
    c = code_from_generators([1, 1, 1], [[[1], [2], [0]], [[0], [1], [1]]], 3)
    ind = FactorTensor.indicator(c).transform(FORWARD)
    dual = FactorTensor.indicator(dual_code(c))
    assert matrix_scale_equal(ind.values, dual.values) == c.cardinality


def test_character_sum_of_subspace():
    c = code_from_generators([1, 1], [[[1], [1]]], 3)
    assert subspace_character_sum(c, (1, 2)) == 3
    assert subspace_character_sum(c, (1, 1)) == 0


@st.composite
def code_and_function(draw):
    p = draw(st.sampled_from([2, 3]))
    n = draw(st.integers(1, 3))
    k = draw(st.integers(0, n))
    rows = [draw(st.lists(st.integers(0, p - 1), min_size=n, max_size=n)) for _ in range(k)]
    code = LinearCode(p, [1] * n, rows)
    vals = draw(st.lists(st.integers(-4, 4), min_size=p**n, max_size=p**n))
    return code, FactorTensor([Alphabet(p, n)], vals, p)


@given(code_and_function())
def test_poisson_summation(cf):
    code, f = cf
    rep = poisson_check(code, f)
    assert rep.passed
    assert rep.scale == Fraction(1, dual_code(code).cardinality)


def test_poisson_with_unequal_sizes():
    # |B| != |B^perp| is where the normalization matters
    code = code_from_generators([1, 1, 1], [[[1], [1], [1]]], 2)
    f = FactorTensor([Alphabet(2, 3)], list(range(8)), 2)
    rep = poisson_check(code, f)
    assert rep.lhs == 0 + 7
    assert rep.passed


def test_tensor_json_values():
    a = Alphabet(3, 1)
    t = FactorTensor([a], [omega_pow(3, 1), Fraction(1, 2), 0], 3)
    assert isinstance(t.to_json(), list)
    assert FactorTensor([a], t.values.reshape(-1), 3) == t
    assert np.asarray(t.values).shape == (3,)
    assert t[1] == CycloRational.from_rational(3, Fraction(1, 2))
