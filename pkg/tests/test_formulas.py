import itertools

import pytest
from hypothesis import given, settings, strategies as st

from qlozenge.enumeration import count_tilings, gen_function
from qlozenge.formulas import (
    FormulaResult,
    hex_M1,
    hex_M2,
    k_region_M2,
    macmahon_q,
    magnet_M2,
    magnet_M3,
    semihex_dents_M2,
    theorem_main,
    theorem_qmain,
)
from qlozenge.lattice import (
    BadDents,
    RegionParams,
    build_hexagon,
    build_k_region,
    build_magnet_bar,
    build_q_region,
    build_semihexagon_dented,
)
from qlozenge.qalgebra import parse_poly, poly_eval
from qlozenge.weights import WeightAssignment as W, f_exponent, g_exponent


def test_macmahon_frozen_values():
    assert macmahon_q(1, 1, 1).poly == parse_poly("1 + q")
    assert macmahon_q(2, 1, 1).poly == parse_poly("1 + q + q^2")
    for b, c in itertools.product(range(4), repeat=2):
        assert macmahon_q(0, b, c).poly == parse_poly("1")
    assert macmahon_q(1, 1, 1).prefactor_exponent == 0


def test_macmahon_counts_small_boxes():
    for a, b, c in itertools.product(range(3), repeat=3):
        boxed = poly_eval(macmahon_q(a, b, c).poly, 1)
        assert boxed == count_tilings(build_hexagon(a, b, c)), (a, b, c)


def test_macmahon_is_palindromic():
    # complementing a pile in the box mirrors the volume
    for a, b, c in itertools.product(range(4), repeat=3):
        terms = macmahon_q(a, b, c).poly.terms
        top = a * b * c
        assert all(terms[e] == terms.get(top - e) for e in terms), (a, b, c)


def test_theorem_main_trivial_and_frozen():
    assert theorem_main(RegionParams(0, 0, 0, 0, 0, 0, 0, 0)) == 1
    assert theorem_main(RegionParams(1, 1, 1, 1, 1, 0, 0, 0)) == 4


def test_theorem_main_reduces_to_the_box_count():
    for x, y, z, t in itertools.product(range(3), repeat=4):
        p = RegionParams(x, y, z, t, 0, 0, 0, 0)
        expected = poly_eval(macmahon_q(z, x + y, t).poly, 1)
        assert theorem_main(p) == expected, p


def test_qmain_trivial():
    assert theorem_qmain(RegionParams(0, 0, 0, 0, 0, 0, 0, 0)).poly == parse_poly("1")


def test_qmain_reduces_to_macmahon():
    for x, y, z, t in itertools.product(range(3), repeat=4):
        p = RegionParams(x, y, z, t, 0, 0, 0, 0)
        assert theorem_qmain(p).poly == macmahon_q(z, x + y, t).poly, p


def test_qmain_matches_count_and_q1_on_the_unit_cube_sweep():
    for raw in itertools.product(range(2), repeat=8):
        p = RegionParams(*raw)
        n = theorem_main(p)
        assert poly_eval(theorem_qmain(p).poly, 1) == n, p
        assert count_tilings(build_q_region(p)) == n, p


def test_qmain_is_the_volume_generating_function_when_all_ones():
    p = RegionParams(1, 1, 1, 1, 1, 1, 1, 1)
    region = build_q_region(p)
    assert gen_function(region, W.WT0).poly == theorem_qmain(p).poly


def test_qmain_weight_relations_all_ones():
    p = RegionParams(1, 1, 1, 1, 1, 1, 1, 1)
    region = build_q_region(p)
    qm = theorem_qmain(p).poly
    assert gen_function(region, W.WT1).poly == qm.shift(f_exponent(p))
    assert gen_function(region, W.WT2).poly == qm.shift(g_exponent(p))


def test_hexagon_formulas():
    assert hex_M2(1, 1, 1).poly == parse_poly("q + q^2")
    assert hex_M2(1, 1, 1).prefactor_exponent == 1
    for a, c in itertools.product(range(4), repeat=2):
        assert hex_M1(a, 0, c).poly == parse_poly("1")
    for a, b, c in itertools.product(range(3), repeat=3):
        region = build_hexagon(a, b, c)
        assert hex_M1(a, b, c).poly == gen_function(region, W.WT1).poly, (a, b, c)
        assert hex_M2(a, b, c).poly == gen_function(region, W.WT2).poly, (a, b, c)
        if a == b:
            assert hex_M1(a, b, c) == hex_M2(a, b, c)


def test_semihex_frozen_values():
    for b in range(4):
        assert semihex_dents_M2(1, b, [1]).poly == parse_poly("1")
    assert semihex_dents_M2(1, 3, [4]).poly == parse_poly("q^3")
    assert semihex_dents_M2(2, 1, [1, 3]).poly == parse_poly("q + q^2")
    assert semihex_dents_M2(2, 1, [1, 3]).prefactor_exponent == 1


def test_semihex_matches_the_region_for_every_dent_set():
    for a, b in ((1, 2), (2, 1), (2, 2), (3, 1)):
        for dents in itertools.combinations(range(1, a + b + 1), a):
            region = build_semihexagon_dented(a, b, list(dents))
            got = semihex_dents_M2(a, b, list(dents)).poly
            assert got == gen_function(region, W.WT2).poly, (a, b, dents)


def test_semihex_dent_order_does_not_matter():
    assert semihex_dents_M2(2, 1, [3, 1]) == semihex_dents_M2(2, 1, [1, 3])


def test_semihex_rejects_bad_dents():
    with pytest.raises(BadDents):
        semihex_dents_M2(2, 1, [1, 1])
    with pytest.raises(BadDents):
        semihex_dents_M2(2, 1, [1])
    with pytest.raises(BadDents):
        semihex_dents_M2(2, 1, [1, 4])


def test_k_region_formula():
    assert k_region_M2(0, 0, 0, 0, 0).poly == parse_poly("1")
    for raw in itertools.product(range(2), repeat=5):
        region = build_k_region(*raw)
        assert k_region_M2(*raw).poly == gen_function(region, W.WT2).poly, raw


def test_k_region_without_a_lobe_is_the_hexagon_formula():
    for x, y, z, t in itertools.product(range(3), repeat=4):
        assert k_region_M2(0, x, y, z, t) == hex_M2(z, x + y, t), (x, y, z, t)


def test_bar_formulas_match_the_region():
    assert magnet_M2(0, 0, 0, 0, 0, 0).poly == parse_poly("1")
    assert magnet_M3(0, 0, 0, 0, 0, 0).poly == parse_poly("1")
    for raw in itertools.product(range(2), repeat=6):
        region = build_magnet_bar(*raw)
        assert magnet_M2(*raw).poly == gen_function(region, W.WT2).poly, raw
        assert magnet_M3(*raw).poly == gen_function(region, W.WT3).poly, raw


def test_bar_formula_without_a_core_is_the_one_lobe_formula():
    for raw in itertools.product(range(2), repeat=5):
        a, x, y, z, t = raw
        assert magnet_M2(0, a, x, y, z, t).poly == k_region_M2(a, x, y, z, t).poly


@given(
    m=st.integers(0, 3),
    a=st.integers(0, 3),
    x=st.integers(0, 3),
    y=st.integers(0, 3),
    z=st.integers(0, 3),
    t=st.integers(0, 3),
)
@settings(max_examples=60, deadline=None)
def test_bar_formulas_differ_by_a_pure_q_power(m, a, x, y, z, t):
    m2 = magnet_M2(m, a, x, y, z, t)
    m3 = magnet_M3(m, a, x, y, z, t)
    assert m2.poly.shift(m3.prefactor_exponent) == m3.poly.shift(m2.prefactor_exponent)


@given(
    raw=st.tuples(*[st.integers(0, 2)] * 8),
)
@settings(max_examples=60, deadline=None)
def test_qmain_expands_exactly_and_counts_at_q1(raw):
    p = RegionParams(*raw)
    result = theorem_qmain(p)
    assert isinstance(result, FormulaResult)
    assert all(coef > 0 for coef in result.poly.terms.values())
    assert poly_eval(result.poly, 1) == theorem_main(p)
