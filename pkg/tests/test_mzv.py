from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nestsum import DomainError, format_expr, parse
from nestsum.mzv import (
    admissible_indices, check_double_shuffle, counting_sequences, cyc_infinity, cyc_infinity_value,
    derivation_check, duality, duality_check, mzv_value, nielsen_check, ramanujan_dilog_check,
    repeated_argument, ssum_infinity, ssum_infinity_value, ssum_table_check, sum_theorem_check,
    zeta_direct, zeta_numeric, zeta_shuffle,
)
from nestsum.numerics.evaluate import eval_expr
from nestsum.relations import duplicate_ssum
from nestsum.expr import SSum

PI = mpmath.pi


def test_values():
    assert abs(zeta_numeric((2, 1)) - mpmath.zeta(3)) < 1e-12
    assert abs(zeta_numeric((2,)) - PI**2 / 6) < 1e-15
    assert abs(zeta_numeric((3, 1)) - PI**4 / 360) < 1e-12
    with pytest.raises(DomainError):
        zeta_numeric((1, 2))


@pytest.mark.parametrize("key", [(2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_direct_sum_bounds(key):
    # truncated sums approach from below, slowly
    part = zeta_direct(key, 400)
    assert part < zeta_numeric(key)
    # tail is O(log^(d-1) M / M)
    assert zeta_numeric(key) - part < 0.02 * mpmath.log(400) ** (len(key) - 1)


def test_duality_examples():
    assert duality((2, 1)) == (3,)
    assert duality((2, 2)) == (2, 2)
    assert duality((3, 1)) == (3, 1)
    rep = duality_check(5)
    assert len(rep.relations) == 15 and rep.ok


def test_double_shuffle():
    assert format_expr(zeta_shuffle((2, 1), (2,))) == "z[2,1,2] + 3*z[2,2,1] + 6*z[3,1,1]"
    for w in (4, 5):
        assert check_double_shuffle(w).ok
    rel = parse("z[3,1,1] - 1/6*(z[4,1] + z[2,3] - z[2,2,1])")
    assert abs(mzv_value(rel)) < 1e-12
    assert abs(mzv_value(parse("z2*z2 - 2*z[2,2] - z4"))) < 1e-12


def test_sum_theorem():
    for n in range(3, 8):
        for k in range(2, n):
            assert sum_theorem_check(n, k).ok
    with pytest.raises(DomainError):
        sum_theorem_check(8, 2)


@pytest.mark.parametrize("key", [k for w in range(2, 6) for k in admissible_indices(w)])
def test_derivation(key):
    assert derivation_check(key).ok


def test_nielsen():
    assert nielsen_check().ok


def test_repeated_arguments():
    for fam, n in [("2,1", 1), ("2,1", 2), ("3,1", 1), ("3,1", 2), ("2", 1), ("2", 2), ("10", 1)]:
        r = repeated_argument(fam, n)
        assert abs(r.implemented - r.oracle) < 1e-10
    assert not repeated_argument("2", 1).printed_matches
    assert abs(repeated_argument("2", 1).printed - 2 * PI**2 / 3) < 1e-12
    assert not repeated_argument("10", 1).printed_matches
    assert repeated_argument("3,1", 1).printed_matches
    with pytest.raises(DomainError):
        repeated_argument("10", 2)


def test_ssum_table():
    assert ssum_table_check().ok
    assert format_expr(ssum_infinity(((2, 1), (Fraction(1, 2), 1)))) == "-1/2*ln2*z2 + z3"
    assert format_expr(ssum_infinity(((3,), (Fraction(1, 2),)))) == "li3half"
    with pytest.raises(DomainError, match="power"):
        ssum_infinity(((1,), (Fraction(2),)))
    with pytest.raises(DomainError, match="sigma0"):
        ssum_infinity(((1, 2), (1, Fraction(1, 2))))


def test_printed_s1_eighth_relation_does_not_hold():
    lhs = ssum_infinity_value(((1,), (Fraction(1, 8),)))
    rhs = eval_expr(parse("-S[-1](inf)")) + ssum_infinity_value(((1,), (Fraction(-1, 2),)))
    assert abs(lhs - mpmath.log(mpmath.mpf(8) / 7)) < 1e-15
    assert abs(rhs - mpmath.log(mpmath.mpf(4) / 3)) < 1e-15
    holds = eval_expr(parse("-S[-1](inf)")) + ssum_infinity_value(((1,), (Fraction(-3, 4),)))
    assert abs(lhs - holds) < 1e-15


def test_ssum_duplication_exact():
    lhs, rhs = duplicate_ssum(SSum((2, 1), (Fraction(1), Fraction(1, 2)), "N"))
    for n in range(1, 8):
        assert abs(eval_expr(lhs, {"N": n}) - eval_expr(rhs, {"N": n})) < 1e-14


def test_cyclotomic_infinity():
    assert format_expr(cyc_infinity((((2, 1, 2),), (-1,)))) == "-1 + catalan"
    assert abs(cyc_infinity_value((((2, 1, 2),), (-1,))) - (mpmath.catalan - 1)) < 1e-12
    assert format_expr(cyc_infinity((((1, 0, 2),), (1,)))) == "z2"
    assert abs(cyc_infinity_value((((2, 1, 1),), (-1,))) - (PI / 4 - 1)) < 1e-12
    with pytest.raises(DomainError, match="sigma0"):
        cyc_infinity((((2, 1, 1),), (1,)))


def test_cyclotomic_infinity_depth2():
    # nested: sum_k (-1)^k/(2k+1)^2 * sum_{j<=k} (-1)^j/j, checked by brute force with a tail bound
    v = cyc_infinity_value((((2, 1, 2), (1, 0, 1)), (-1, -1)))
    with mpmath.workdps(20):
        inner, total = mpmath.mpf(0), mpmath.mpf(0)
        for k in range(1, 20001):
            inner += mpmath.mpf(-1) ** k / k
            total += mpmath.mpf(-1) ** k / (2 * k + 1) ** 2 * inner
    assert abs(v - total) < 1e-8


def test_ramanujan_report():
    rep = ramanujan_dilog_check()
    assert [e["ok"] for e in rep] == [False, True, True, True, False]
    assert rep[0]["variants"][0]["coeff"] == "-1/6"
    assert abs(rep[1]["lhs"] + 0.4293541) < 1e-7
    assert rep[4]["variants"][0]["coeff"] == "1"


def test_counting_sequences():
    assert [counting_sequences("fibonacci", n) for n in range(1, 7)] == [1, 1, 2, 3, 5, 8]
    assert [counting_sequences("perrin", n) for n in range(4, 8)] == [2, 5, 5, 7]
    assert counting_sequences("lucas", 4) == 7
    assert [counting_sequences("lyndon01", n) for n in range(2, 9)] == [1, 1, 0, 1, 0, 1, 1]
    assert [counting_sequences("lyndon01m1", n) for n in range(1, 5)] == [1, 1, 1, 1]
    with pytest.raises(DomainError):
        counting_sequences("catalan", 3)


@given(n=st.integers(4, 30))
def test_recurrences(n):
    assert counting_sequences("perrin", n) == counting_sequences("perrin", n - 2) + counting_sequences("perrin", n - 3)
    assert counting_sequences("lucas", n) == counting_sequences("lucas", n - 1) + counting_sequences("lucas", n - 2)
