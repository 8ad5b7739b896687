import csv
import math
from decimal import Decimal, getcontext
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rrcodes.counting import binom, count_family, multiset_coeff
from rrcodes.divisors import CurveDescriptor, FamilySpec, InfeasibleFamily
from rrcodes.params import (
    RRDim,
    ambient_dim,
    code_parameters,
    genus_one_formulas,
    log_q,
    proof_min_distance,
    rate,
    rate_row,
    riemann_roch_dim,
    round6,
    stated_min_distance,
    table3,
    table_csv,
)

REFERENCE = Path(__file__).parent / "data" / "table3_reference.csv"


def spec(family, n, s, w=None, k=5, g=1, q=16):
    return FamilySpec(family, CurveDescriptor(q=q, n=n, g=g), k, s, w)


def reference_rows():
    with REFERENCE.open() as fh:
        return {(int(r["n"]), int(r["s"])): r for r in csv.DictReader(fh)}


def test_riemann_roch_examples():
    assert riemann_roch_dim(10, 1) == RRDim(10, True)
    assert riemann_roch_dim(0, 3) == RRDim(1, True)
    assert riemann_roch_dim(-2, 0) == RRDim(0, True)
    assert riemann_roch_dim(2, 2) == RRDim(1, False)


@given(st.integers(-20, 40), st.integers(0, 6))
def test_riemann_roch_regimes(deg, g):
    val, exact = riemann_roch_dim(deg, g)
    assert val >= 0
    assert exact == (deg <= 0 or deg > 2 * g - 2)
    if deg > 2 * g - 2 and deg >= 0:
        assert val == deg + 1 - g


def test_ambient_dim_examples():
    assert ambient_dim(spec("H", 8, 1)) == 40 + 1 - 1
    assert ambient_dim(spec("A", 3, 2, k=1, g=0)) == 7
    assert ambient_dim(spec("B", 8, 1, 3)) == 120


def test_code_parameters_A_8_2():
    p = code_parameters(spec("A", 8, 2))
    assert p.codeword_dim == 10
    assert p.ambient_dim == 80  # n*k*s + 1 - g
    assert p.count == 36
    assert p.log_size == pytest.approx(1.292481, abs=5e-7)
    assert round6(p.rate) == "0.001616"


def test_code_parameters_H_genus_one():
    for n in range(3, 9):
        for s in range(1, n):
            for k in (1, 3, 5):
                p = code_parameters(spec("H", n, s, k=k))
                assert p.normalized_weight == pytest.approx(s / n, rel=1e-12)
                assert p.normalized_min_distance == pytest.approx(1 / s, rel=1e-12)


def test_code_parameters_flags_stated_vs_proof():
    p = code_parameters(spec("A", 3, 3, k=2, g=0, q=2))
    assert p.codeword_dim == 7
    assert p.min_distance_stated == 6
    assert p.min_distance_proof == 4
    assert any("differs" in w for w in p.validity_warnings)
    assert p.delta_lower_bound is None


def test_code_parameters_quiet_when_consistent():
    p = code_parameters(spec("B", 8, 2, 3, g=0))
    assert p.min_distance_stated == p.min_distance_proof == 10
    assert not any("differs" in w for w in p.validity_warnings)


def test_code_parameters_infeasible():
    with pytest.raises(InfeasibleFamily):
        code_parameters(spec("H", 4, 5))


def test_low_degree_warnings():
    p = code_parameters(spec("A", 3, 1, k=1, g=3))
    joined = " ".join(p.validity_warnings)
    assert "ks <= 2g-2" in joined
    q = code_parameters(spec("A", 5, 3, k=2, g=3))
    assert not q.__dict__["validity_warnings"] == []
    assert proof_min_distance(spec("A", 5, 3, k=2, g=3))[1] is False


def test_distance_branches():
    for g in (0, 1, 2):
        assert stated_min_distance(spec("A", 5, 1, k=4, g=g)) == 8
        assert stated_min_distance(spec("A", 5, 2, k=4, g=g)) == 2 * (5 - g)
        assert stated_min_distance(spec("C", 5, 2, 2, k=4, g=g)) == 8
        # s = 1: the two codewords share only the constants
        assert proof_min_distance(spec("A", 5, 1, k=4, g=g)) == (2 * (4 - g), True)
    assert proof_min_distance(spec("A", 5, 3, k=4, g=1)) == (8, True)


def test_rate_examples():
    assert round6(rate(spec("H", 8, 1))) == "0.003750"
    assert round6(rate(spec("B", 8, 1, 3))) == "0.001250"
    assert round6(rate(spec("C", 8, 1, 3))) == "0.008732"
    # printed as 0.000635; the exact value rounds to 0.000633
    assert round6(rate(spec("C", 14, 13, 3))) == "0.000633"


def test_table_rows():
    assert rate_row(16, 8, 1, 5, 3, 1).csv() == "8,1,0.003750,0.003750,0.001250,0.008732"
    assert rate_row(16, 12, 6, 5, 3, 1).csv() == "12,6,0.001368,0.000315,0.000624,0.001461"
    assert rate_row(16, 14, 13, 5, 3, 1).csv().startswith("14,13,0.000209,0.000099,0.000403,")


def test_table3_shape_and_format():
    rows = table3()
    assert len(rows) == 70
    assert [(r.n, r.s) for r in rows] == [(n, s) for n in range(8, 15) for s in range(1, n)]
    text = table_csv(rows)
    lines = text.splitlines()
    assert lines[0] == "n,s,H,A,B,C"
    assert all(len(cell) == 8 and cell.startswith("0.") for line in lines[1:] for cell in line.split(",")[2:])
    with pytest.raises(ValueError):
        table3("table9")


def test_table3_matches_reference_below_n13():
    ref = reference_rows()
    for row in table3():
        if row.n >= 13:
            continue
        expected = ref[(row.n, row.s)]
        assert row.csv().split(",")[2:] == [expected[c] for c in "HABC"]


def test_round6_is_half_up():
    assert round6(0.0000005) == "0.000001"
    assert round6(0.0012345) == "0.001235"
    assert round6(0.1) == "0.100000"


def test_genus_one_formulas_match_general():
    for n in range(8, 15):
        for s in range(1, n):
            for fam, w in (("H", None), ("A", None), ("B", 3), ("C", 3)):
                sp = spec(fam, n, s, w)
                p = code_parameters(sp)
                g1 = genus_one_formulas(sp)
                assert g1["normalized_weight"] == pytest.approx(p.normalized_weight, rel=1e-12)
                assert g1["rate"] == pytest.approx(p.rate, rel=1e-12)
                assert g1["normalized_min_distance"] == pytest.approx(p.normalized_min_distance, rel=1e-12)
                assert g1["rate_denominator"] == p.ambient_dim * p.codeword_dim


def test_genus_one_formulas_reject_other_genus():
    with pytest.raises(ValueError):
        genus_one_formulas(spec("H", 8, 1, g=0))


@pytest.mark.parametrize("g", [0, 1, 2])
def test_A_equals_H_at_s1(g):
    for n in range(2, 10):
        h, a = spec("H", n, 1, g=g), spec("A", n, 1, g=g)
        assert binom(n, 1) == multiset_coeff(n, 1) == count_family(h) == count_family(a)
        ph, pa = code_parameters(h), code_parameters(a)
        assert ph.ambient_dim == pa.ambient_dim  # multiplier k*s = k
        assert ph.rate == pa.rate
        assert ph.min_distance_stated == pa.min_distance_stated


def test_delta_identity():
    for g in range(0, 4):
        for k in range(max(2 * g - 1, 1), 2 * g + 6):
            for s in range(1, 11):
                ell = k * s + 1 - g
                delta = 1 / (s + (1 - g) / k)
                assert delta == pytest.approx(2 * k / (2 * ell), rel=1e-14)


def test_delta_lower_bound():
    # delta >= bound  <=>  k(g-1)(s-1) <= (2g-1)(g-1), so for g >= 2 the
    # bound only survives while k(s-1) <= 2g-1
    for g in (1, 2, 3):
        for k in range(2 * g - 1, 2 * g + 6):
            for s in range(1, 11):
                p = code_parameters(spec("A", 12, s, k=k, g=g))
                bound = Fraction(2 * g - 1, (s + 1) * g - 1)
                delta = Fraction(k, k * s + 1 - g)
                assert p.delta_lower_bound == pytest.approx(float(bound))
                assert p.normalized_min_distance == pytest.approx(float(delta), rel=1e-14)
                holds = g == 1 or k * (s - 1) <= 2 * g - 1
                assert (delta >= bound) == holds
                flagged = any("below the stated lower bound" in w for w in p.validity_warnings)
                assert flagged == (not holds)


def test_delta_lower_bound_counterexample():
    p = code_parameters(spec("A", 12, 3, k=3, g=2))
    assert p.normalized_min_distance == pytest.approx(3 / 8)
    assert p.delta_lower_bound == pytest.approx(3 / 7)


def test_rate_C_decreasing_in_s():
    for n in range(8, 15):
        rates = [rate(spec("C", n, s, 3)) for s in range(1, n)]
        assert all(a > b for a, b in zip(rates, rates[1:]))


def _decimal_log(x: int, q: int) -> Decimal:
    getcontext().prec = 60
    return Decimal(x).ln() / Decimal(q).ln()


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**400), st.sampled_from([2, 3, 4, 16, 256]))
def test_log_q_relative_error(x, q):
    exact = _decimal_log(x, q)
    got = Decimal(log_q(x, q))
    if exact == 0:
        assert got == 0
    else:
        assert abs(got - exact) / abs(exact) < Decimal("1e-12")


def test_log_q_big_counts():
    assert log_q(2**1000, 2) == pytest.approx(1000.0, rel=1e-15)
    assert log_q(16, 16) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        log_q(0, 2)
    assert math.isclose(log_q(36, 16), math.log(36, 16), rel_tol=1e-14)


def test_to_dict_is_json_ready():
    d = code_parameters(spec("C", 8, 1, 3)).to_dict()
    assert d["count"] == "2035800"
    assert d["count_formula"] == "U'"
    assert d["spec"]["family"] == "C"
