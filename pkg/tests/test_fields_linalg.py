import pytest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from arknit.fields import QQ, Field, field_from_name
from arknit import linalg as la


def test_field_from_name_spellings():
    assert field_from_name("QQ") is not None and field_from_name("QQ").p == 0
    assert field_from_name("Q").p == 0
    assert field_from_name("0").p == 0
    assert field_from_name("rationals").p == 0
    assert field_from_name("GF(7)").p == 7
    assert field_from_name("7").p == 7
    with pytest.raises(ValueError):
        field_from_name("GF(6)")


def test_prime_field_arithmetic():
    F = Field(5)
    assert F.add(3, 4) == 2
    assert F.inv(2) == 3
    assert F.of(Fraction(1, 2)) == 3
    assert F.parse("7") == 2
    assert F.of("3/4") == F.div(3, 4)


def test_rational_codec_round_trip():
    for s in ("3", "-2/7", "0", "10/4"):
        x = QQ.parse(s)
        assert QQ.parse(QQ.fmt(x)) == x


small = st.integers(min_value=-6, max_value=6)


def mats(n, m):
    return st.lists(st.lists(small, min_size=m, max_size=m),
                    min_size=n, max_size=n)


@settings(max_examples=60, deadline=None)
@given(mats(3, 4).map(lambda a: [[Fraction(x) for x in r] for r in a]))
def test_rank_nullity(a):
    r = la.rank(a, QQ)
    k = la.kernel_basis(a, QQ)
    assert r + len(k) == 4
    for v in k:
        assert all(x == 0 for x in la.mat_vec(a, v, QQ))


@settings(max_examples=40, deadline=None)
@given(mats(3, 3).map(lambda a: [[Fraction(x) for x in r] for r in a]),
       mats(3, 3).map(lambda a: [[Fraction(x) for x in r] for r in a]))
def test_rank_of_product_bounded(a, b):
    ra, rb = la.rank(a, QQ), la.rank(b, QQ)
    assert la.rank(la.mat_mul(a, b, QQ), QQ) <= min(ra, rb)


def test_solve_and_inverse():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(1)]]
    b = [Fraction(3), Fraction(2)]
    x = la.solve(a, b, QQ)
    assert la.mat_vec(a, x, QQ) == b
    ai = la.inverse(a, QQ)
    assert la.mat_mul(a, ai, QQ) == la.identity(2, QQ)


def test_solve_reports_inconsistency():
    a = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(1)]]
    assert la.solve(a, [Fraction(0), Fraction(1)], QQ) is None


def test_min_poly_of_nilpotent_block():
    F = QQ
    a = [[F.zero, F.one], [F.zero, F.zero]]
    coeffs = la.min_poly(a, F)
    # x^2: lowest degree first or highest? pin the end behaviour instead
    assert la.is_zero_mat(la.poly_eval_mat(coeffs, a, F), F)


def test_empty_shapes():
    assert la.rank([], QQ, ncols=0) == 0
    assert la.kernel_basis([], QQ, ncols=3) and len(la.kernel_basis([], QQ, ncols=3)) == 3


def test_rref_idempotent():
    a = [[Fraction(x) for x in row] for row in ((2, 4, 1), (1, 2, 0))]
    r1, piv1 = la.rref(a, QQ)
    r2, piv2 = la.rref(r1, QQ)
    assert r1 == r2 and piv1 == piv2
