import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nfgcodes import Polynomial
from nfgcodes.convcode import (
    DUAL_MODE,
    TerminationMode,
    TrellisSection,
    dual_section,
    encoder_from_json,
    encoder_to_json,
    free_distance_spectrum,
    hamming_wam,
    normalized_tailbiting_spectrum,
    responses_from_polynomials,
    section_from_generators,
    section_from_polynomials,
    tailbiting_trace,
    terminate,
    terminated_hwgf,
    termination_multiplicity,
    time_reverse,
    trellis_nfg,
    wam_power,
)
from nfgcodes.errors import ValidationError
from nfgcodes.lincode import LinearCode, code_from_generators, dual_code, weight_distribution
from nfgcodes.nfg import contract_fragment, partition_function
from nfgcodes.wgf import macwilliams_wgf, rename_dual, wam, wgf

from conftest import hx, poly_matrix

ORDER = ["00", "10", "01", "11"]


def blocks(text: str) -> list[list[int]]:
    return [[int(c) for c in chunk] for chunk in text.split()]


def span(p, profile, *rows):
    return code_from_generators(profile, [blocks(r) for r in rows], p)


@st.composite
def sections(draw):
    p = draw(st.sampled_from([2, 2, 3]))
    mu = draw(st.integers(0, 2 if p == 3 else 3))
    n = draw(st.integers(1, 2 if p == 3 else 3))
    width = 2 * mu + n
    k = draw(st.integers(1, width))
    rows = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=width, max_size=width), min_size=k, max_size=k))
    return TrellisSection(LinearCode(p, [mu, n, mu], rows))


# --- construction ---------------------------------------------------------------


def test_example3_section(ex3):
    assert ex3.code == span(2, [2, 2, 2], "00 11 10", "10 01 01", "01 11 00")
    assert ex3.code.cardinality == 8


def test_example4_section(ex4):
    assert ex4.code == span(3, [2, 3, 2], "00 120 10", "10 010 01", "01 100 00", "00 102 00")


def test_example6_section(sm_pair):
    c1, _ = sm_pair
    assert c1.code == span(2, [1, 3, 1], "0 110 1", "1 011 0")


def test_responses_from_polynomials():
    assert responses_from_polynomials([[[1, 0, 1], [1, 1, 1]]]) == [[(1, 1), (0, 1), (1, 1)]]


def test_section_rejects_empty_response_list():
    with pytest.raises(ValidationError):
        section_from_generators(2, [])


def test_encoder_json_round_trip(ex4):
    resp = responses_from_polynomials([[[1, 0, 1], [2, 1], [0]], [[1], [0], [2]]])
    doc = json.loads(json.dumps(encoder_to_json(3, resp)))
    assert encoder_from_json(doc).code == ex4.code


def test_section_json_round_trip(ex3):
    sec = section_from_polynomials(2, [[[1, 0, 1], [1, 1, 1]]], ORDER)
    back = TrellisSection.from_json(json.loads(json.dumps(sec.to_json())))
    assert back == sec


# --- duality ----------------------------------------------------------------------


def test_example3_dual_section(ex3):
    assert dual_section(ex3).code == span(2, [2, 2, 2], "00 11 01", "01 10 10", "10 11 00")


def test_example4_dual_section(ex4):
    printed = span(3, [2, 3, 2], "00 010 12", "21 202 11", "22 111 00")
    assert dual_code(ex4.code) == printed
    negated = LinearCode(3, [2, 3, 2], [r[:5] + [(-c) % 3 for c in r[5:]] for r in map(list, printed.basis)])
    assert dual_section(ex4).code == negated


def test_dual_of_memoryless_universe_is_zero():
    sec = TrellisSection(LinearCode.universe(3, [0, 2, 0]))
    assert dual_section(sec).code == LinearCode.zero(3, [0, 2, 0])


def same_subcodes(a, b, n_max=6):
    return all(terminate(a, N, "subcode") == terminate(b, N, "subcode") for N in range(1, n_max + 1))


def test_example3_reversed_dual_is_the_mirror_encoder(ex3):
    mirror = section_from_polynomials(2, [[[1, 1, 1], [1, 0, 1]]])
    assert same_subcodes(time_reverse(dual_section(ex3)), mirror)


def test_example4_reversed_dual(ex4):
    expect = section_from_polynomials(3, [[[1, 2], [1, 0, 1], [1, 2]]])
    assert same_subcodes(time_reverse(dual_section(ex4)), expect)


@settings(max_examples=50)
@given(sections())
def test_time_reverse_is_an_involution(sec):
    assert time_reverse(time_reverse(sec)) == sec


# --- terminations -------------------------------------------------------------------


def test_example3_terminations(ex3):
    p8 = [2] * 4
    assert terminate(ex3, 4, "subcode") == span(2, p8, "11 01 11 00", "00 11 01 11")
    assert terminate(ex3, 4, "truncated") == span(2, p8, "11 01 11 00", "00 11 01 11", "00 00 11 01", "00 00 00 11")
    assert terminate(ex3, 4, "tailbiting") == span(
        2, p8, "11 01 11 00", "00 11 01 11", "11 00 11 01", "01 11 00 11"
    )


def test_example3_dual_terminations(ex3):
    d = dual_section(ex3)
    p8 = [2] * 4
    assert terminate(d, 4, "projection") == span(
        2, p8, "11 00 00 00", "10 11 00 00", "11 10 11 00", "00 11 10 11", "00 00 11 10", "00 00 00 11"
    )
    assert terminate(d, 4, "rtruncated") == span(2, p8, "11 00 00 00", "10 11 00 00", "11 10 11 00", "00 11 10 11")
    assert terminate(d, 4, "tailbiting") == span(
        2, p8, "11 10 11 00", "00 11 10 11", "11 00 11 10", "10 11 00 11"
    )


def test_tailbiting_distance(ex3):
    assert terminate(ex3, 4, "tailbiting").min_distance() == 2
    assert terminate(ex3, 10, "tailbiting").min_distance() == 5


def test_termination_validation(ex3):
    with pytest.raises(ValidationError):
        terminate(ex3, 0, "subcode")
    with pytest.raises(ValidationError):
        TerminationMode.parse("sideways")


@settings(max_examples=50)
@given(sections(), st.integers(1, 5), st.sampled_from(list(TerminationMode)))
def test_termination_duality(sec, N, mode):
    assert dual_code(terminate(sec, N, mode)) == terminate(dual_section(sec), N, DUAL_MODE[mode])


@settings(max_examples=40)
@given(sections(), st.integers(1, 4), st.sampled_from(list(TerminationMode)))
def test_extraction_matches_enumeration(sec, N, mode):
    lam_n = wam_power(wam(sec, "hamming"), N)
    mult = termination_multiplicity(sec, N, mode)
    assert terminated_hwgf(lam_n, mode) == wgf(terminate(sec, N, mode), "hamming") * mult


@pytest.mark.parametrize("mode", list(TerminationMode))
def test_example3_extraction_has_unit_multiplicity(ex3, mode):
    lam_n = wam_power(wam(ex3, "hamming", ORDER), 5)
    assert termination_multiplicity(ex3, 5, mode) == 1
    assert terminated_hwgf(lam_n, mode) == wgf(terminate(ex3, 5, mode), "hamming")


@pytest.mark.parametrize("mode", [None, *TerminationMode])
def test_trellis_graph_agrees_with_matrix_product(ex3, mode):
    g = trellis_nfg(ex3, 3, mode)
    z = partition_function(g)
    if mode is None:
        lam3 = wam_power(wam(ex3, "hamming"), 3)
        assert [list(r) for r in z.table] == [list(r) for r in lam3.entries]
    else:
        assert z.table[()] == wgf(terminate(ex3, 3, mode), "hamming")


def test_fragment_is_matrix_power(ex3):
    g = trellis_nfg(ex3, 4)
    ids = [f.id for f in g.factors]
    frag = contract_fragment(g, ids, ["s0", "s4"])
    lam4 = wam_power(wam(ex3, "hamming"), 4)
    assert [list(r) for r in frag.values] == [list(r) for r in lam4.entries]


# --- matrix powers --------------------------------------------------------------------


def test_example3_square(ex3):
    lam2 = wam_power(wam(ex3, "hamming", ORDER), 2)
    expect = poly_matrix(
        [
            [1, {2: 1}, {3: 1}, {3: 1}],
            [{3: 1}, {1: 1}, {2: 1}, {2: 1}],
            [{2: 1}, {4: 1}, {1: 1}, {1: 1}],
            [{3: 1}, {1: 1}, {2: 1}, {2: 1}],
        ]
    )
    assert lam2.entries == expect


def test_example3_fourth_power(ex3):
    lam4 = wam_power(wam(ex3, "hamming", ORDER), 4)
    a = {0: 1, 5: 2, 6: 1}
    b = {2: 1, 3: 1, 4: 1, 7: 1}
    c = {3: 1, 4: 2, 5: 1}
    d = {2: 1, 3: 1, 5: 1, 6: 1}
    e = {3: 2, 4: 1, 6: 1}
    f = {2: 1, 4: 1, 5: 2}
    expect = poly_matrix([[a, b, c, c], [c, d, e, e], [b, f, d, d], [c, d, e, e]])
    assert lam4.entries == expect


def test_power_one_is_identity_op(ex4):
    lam = wam(ex4, "hamming")
    assert wam_power(lam, 1) == lam
    with pytest.raises(ValidationError):
        wam_power(lam, 0)


def test_example3_tailbiting_trace_and_self_duality(ex3):
    lam4 = wam_power(wam(ex3, "hamming", ORDER), 4)
    tr = terminated_hwgf(lam4, "tailbiting")
    assert tr == hx({0: 1, 2: 2, 3: 4, 4: 1, 5: 4, 6: 4})
    h, alpha = macwilliams_wgf(tr, "hamming", [8])
    assert alpha == 16
    assert rename_dual(h) == tr
    dual4 = wam_power(wam(dual_section(ex3), "hamming", ORDER), 4)
    assert dual4 == lam4.transpose()


def test_example3_sixteenth_power_truncated(ex3):
    lam16 = wam_power(wam(ex3, "hamming", ORDER), 16, d_max=7)
    r0 = [{0: 1, 5: 14, 6: 25, 7: 44}, {2: 1, 3: 1, 4: 2, 5: 4, 6: 8, 7: 29}, {3: 1, 4: 2, 5: 4, 6: 8, 7: 16}]
    r0.append(r0[2])
    r1 = [{3: 1, 4: 2, 5: 4, 6: 8, 7: 16}, {5: 1, 6: 3, 7: 8}, {6: 1, 7: 4}, {6: 1, 7: 4}]
    r2 = [{2: 1, 3: 1, 4: 2, 5: 4, 6: 8, 7: 29}, {4: 1, 5: 2, 6: 5, 7: 12}, {5: 1, 6: 3, 7: 8}, {5: 1, 6: 3, 7: 8}]
    assert lam16.entries == poly_matrix([r0, r1, r2, r1])
    assert lam16.trace() == hx({0: 1, 5: 16, 6: 32, 7: 64})


# --- spectra ---------------------------------------------------------------------------


def test_example3_free_spectrum(ex3):
    spec = free_distance_spectrum(ex3, 10)
    assert spec.d_free == 5
    assert spec.nonzero() == {5: 1, 6: 2, 7: 4, 8: 8, 9: 16, 10: 32}


def test_spectrum_rejects_bad_dmax(ex3):
    with pytest.raises(ValidationError):
        free_distance_spectrum(ex3, 0)


def test_example3_normalized_spectrum(ex3):
    free = free_distance_spectrum(ex3, 7)
    assert normalized_tailbiting_spectrum(ex3, 16, 7) == free
    assert normalized_tailbiting_spectrum(ex3, 4, 7) != free
    assert normalized_tailbiting_spectrum(ex3, 4, 7).counts[2] == Fraction(2, 4)


@pytest.mark.parametrize("N, below", [(16, 8), (20, 10), (24, 10)])
def test_trace_is_n_times_spectrum(ex3, N, below):
    tr = tailbiting_trace(ex3, N, 9)
    free = free_distance_spectrum(ex3, 9)
    for d in range(5, below):
        assert tr[d] == N * free.counts.get(d, 0)


def test_slow_cycle_adds_words_at_weight_n_over_two(ex3):
    # 10 -> 01 -> 10 costs one unit of weight every two steps
    assert tailbiting_trace(ex3, 16, 9)[8] == 16 * 8 + 2


def test_spectrum_json(ex3):
    doc = free_distance_spectrum(ex3, 7).to_json()
    assert doc["counts"] == {"5": "1", "6": "2", "7": "4"}
    assert doc["d_free"] == 5


# --- two encoders with the same spectrum ---------------------------------------------


def test_example6_matrices(sm_pair):
    c1, c2 = sm_pair
    assert hamming_wam(c1).entries == poly_matrix([[1, {2: 1}], [{2: 1}, {2: 1}]])
    assert hamming_wam(c2).entries == poly_matrix([[1, {1: 1}], [{3: 1}, {2: 1}]])


def test_example6_free_spectra_agree(sm_pair):
    c1, c2 = sm_pair
    assert free_distance_spectrum(c1, 12) == free_distance_spectrum(c2, 12)


def test_example6_dual_spectra_differ(sm_pair):
    c1, c2 = sm_pair
    assert free_distance_spectrum(dual_section(c1), 8) != free_distance_spectrum(dual_section(c2), 8)


def test_example6_terminations(sm_pair):
    c1, c2 = sm_pair
    l1, l2 = hamming_wam(c1), hamming_wam(c2)
    d1, d2 = hamming_wam(dual_section(c1)), hamming_wam(dual_section(c2))
    assert l1.total() == hx({0: 1, 2: 3})
    assert l2.total() == hx({0: 1, 1: 1, 2: 1, 3: 1})
    for N in range(1, 13):
        p1, p2 = wam_power(l1, N), wam_power(l2, N)
        assert terminated_hwgf(p1, "subcode") == terminated_hwgf(p2, "subcode")
        assert terminated_hwgf(p1, "tailbiting") == terminated_hwgf(p2, "tailbiting")
        assert normalized_tailbiting_spectrum(c1, N, 12) == normalized_tailbiting_spectrum(c2, N, 12)
        assert wam_power(d1, N).trace() == wam_power(d2, N).trace()


# --- the block code trellis ---------------------------------------------------------------


def test_reed_muller_trellis_product():
    x = lambda e: hx({e: 1})
    one, z = Polynomial.const(2, 1), Polynomial.zero(2)
    m = [[one, x(2), z, z], [x(2), one, z, z], [z, z, x(1), x(1)], [z, z, x(1), x(1)]]
    v = [one, x(2), x(1), x(1)]
    mid = [[sum((m[i][k] * m[k][j] for k in range(4)), z) for j in range(4)] for i in range(4)]
    total = sum((v[i] * mid[i][j] * v[j] for i in range(4) for j in range(4)), z)
    assert total == hx({0: 1, 4: 14, 8: 1})
    rm = code_from_generators([1] * 8, [[[int(c)] for c in r] for r in ("11111111", "00001111", "00110011", "01010101")], 2)
    assert weight_distribution(rm) == [1, 0, 0, 0, 14, 0, 0, 0, 1]
