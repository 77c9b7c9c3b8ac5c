from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from lattcert.errors import NotSquarefree
from lattcert.exact.poly import RatPoly, parse_poly
from lattcert.exact.sturm import sturm_real_roots


def test_cubic_has_three_real_roots():
    n, ivs = sturm_real_roots(parse_poly("t^3 - 5t^2 + 6t - 1"), width=Fraction(1, 10**6))
    assert n == 3
    approx = [float(iv.low) for iv in ivs]
    assert approx == pytest.approx([0.198062, 1.554958, 3.246980], abs=1e-5)
    assert all(iv.width < Fraction(1, 10**6) for iv in ivs)


def test_no_real_roots():
    assert sturm_real_roots(parse_poly("t^2 + 1")) == (0, [])
    assert sturm_real_roots(RatPoly([3])) == (0, [])


def test_rational_roots_are_bracketed():
    n, ivs = sturm_real_roots(parse_poly("(t - 1)(t - 2)(t + 1/2)"), width=Fraction(1, 100))
    assert n == 3
    for iv, r in zip(ivs, [Fraction(-1, 2), 1, 2]):
        assert iv.low < r < iv.high


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        sturm_real_roots(parse_poly("(t - 1)^2"))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=7))
def test_count_matches_sympy(cs):
    f = RatPoly(cs + [1])
    if not f.is_squarefree():
        return
    x = sympy.Symbol("x")
    expected = len(sympy.Poly(list(reversed(cs + [1])), x).real_roots())
    n, ivs = sturm_real_roots(f)
    assert n == expected == len(ivs)
    for a, b in zip(ivs, ivs[1:]):
        assert a.high <= b.low
