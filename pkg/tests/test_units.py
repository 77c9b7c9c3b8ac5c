from fractions import Fraction
from math import lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattcert.errors import (
    DoesNotSplit, InsufficientPrecision, IntervalTooWide, NotIrreducible, NotSquarefree,
    PreconditionError, Ramified,
)
from lattcert.exact.padic import vp
from lattcert.exact.poly import parse_poly
from lattcert.matrix import (
    CentralizerElement, QMatrix, check_irreducible, common_ordering, companion,
    det_centralizer, multiplicative_rank, qp_eigenvalues, unit_search, valuation_vector,
)

from oracles import brute_roots

CUBIC = parse_poly("t^3 - 5t^2 + 6t - 1")
M = companion(CUBIC)
G_M = CentralizerElement(M, (0, 1, 0), 1, "M")
G_M2 = CentralizerElement(M, (1, -1, 0), 1, "M2")
G_M3 = CentralizerElement(M, (4, 5, 1), 13, "M3")
G_M4 = CentralizerElement(M, (4, 3, 2), 13, "M4")


def as_element(A: QMatrix, name=""):
    # for a companion matrix, M^i e_1 = e_{i+1}, so the first column of
    # A in Q[M] lists its coefficients in the basis I, M, M^2, ...
    col = A.column(0)
    D = lcm(*(x.denominator for x in col))
    return CentralizerElement(M, tuple(int(x * D) for x in col), D, name)


def test_as_element_round_trip():
    for g in (G_M, G_M2, G_M3, G_M4):
        assert as_element(g.matrix).matrix == g.matrix


def test_centralizer_commutes_and_dets():
    assert det_centralizer(CentralizerElement(M, (1,))) == 1
    for g in (G_M, G_M2, G_M3, G_M4):
        assert g.matrix * M == M * g.matrix
        assert det_centralizer(g) == 1
    assert G_M2.matrix == QMatrix.identity(3) - M
    assert G_M3.matrix == (M * M + M.scale(5) + QMatrix.identity(3).scale(4)).scale(Fraction(1, 13))
    assert G_M3.denominator_primes() == {13}


def test_check_irreducible():
    assert check_irreducible(CUBIC) == "proved"
    with pytest.raises(NotIrreducible):
        check_irreducible(parse_poly("(t - 1)(t^2 + 1)"))
    with pytest.raises(PreconditionError):
        check_irreducible(parse_poly("t^4 + 1"))
    assert check_irreducible(parse_poly("t^4 + 1"), assume=True) == "assumed"


def test_qp_eigenvalues_example():
    roots = qp_eigenvalues(M, 13, 10)
    assert len(roots) == 3
    assert [r.valuation() for r in roots] == [0, 0, 0]
    residues = [r.to_residue() for r in roots]
    assert len({x % 13 for x in residues}) == 3
    for x in residues:
        assert CUBIC(x) % 13**10 == 0


def test_qp_eigenvalues_non_integral():
    roots = qp_eigenvalues(companion(parse_poly("t^2 - t/2 + 1")), 2, 12)
    assert sorted(r.valuation() for r in roots) == [-1, 1]
    prod = roots[0] * roots[1]
    assert prod.valuation() == 0
    assert prod.to_residue() % 2**prod.absprec == 1


def test_qp_eigenvalue_errors():
    with pytest.raises(NotSquarefree):
        qp_eigenvalues(QMatrix.identity(2), 5)
    with pytest.raises(Ramified):
        qp_eigenvalues(M, 7)
    with pytest.raises(DoesNotSplit):
        qp_eigenvalues(M, 11)


@pytest.mark.parametrize("p", [29, 41])
def test_qp_eigenvalues_brute_force_mod_p2(p):
    roots = qp_eigenvalues(M, p, 2)
    assert sorted(r.to_residue() for r in roots) == brute_roots([-1, 6, -5, 1], p * p)


def test_valuation_vectors_example():
    assert valuation_vector(G_M, 13).entries == (0, 0, 0)
    assert valuation_vector(G_M2, 13).entries == (0, 0, 0)
    phi3 = valuation_vector(G_M3, 13).entries
    phi4 = valuation_vector(G_M4, 13).entries
    assert sorted(phi3) == [-1, 0, 1]
    assert common_ordering([phi3, phi4], [(0, 1, -1), (-1, -1, 2)]) is not None
    assert common_ordering([phi3, phi4], [(0, 1, -1), (2, -1, -1)]) is None


def test_valuation_vector_records_ordering():
    vv = valuation_vector(G_M3, 13)
    assert vv.order == ((0, 9), (0, 10), (0, 12))
    assert vv.to_json()["entries"] == list(vv.entries)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=3), st.integers(1, 200))
def test_valuation_sum_is_vp_det(coeffs, denom):
    g = CentralizerElement(M, coeffs, denom)
    det = g.det()
    if det == 0:
        return
    try:
        vv = valuation_vector(g, 13, 12)
    except InsufficientPrecision:
        return
    assert sum(vv.entries) == vp(det, 13)


def test_rank_examples():
    assert multiplicative_rank([G_M, G_M2], [13])[0] == 2
    rank, cert = multiplicative_rank([G_M, G_M2, G_M3, G_M4], [13])
    assert rank == 4 and cert.upper_bound == 4 and cert.exact_rank == 2
    rank, cert = multiplicative_rank([G_M3, G_M4], [13])
    assert rank == 2 and cert.exact_rank == 2 and not cert.interval_pivots


def test_rank_dependence_is_never_overcounted():
    # intervals cannot certify an exact relation, so the rank stays unresolved
    sq = as_element(G_M.matrix * G_M.matrix * G_M2.matrix, "M^2 M2")
    with pytest.raises(IntervalTooWide, match="certified rank 2 below upper bound 3"):
        multiplicative_rank([G_M, G_M2, sq], [13], max_refinements=1)


def test_rank_rejects_non_units():
    with pytest.raises(PreconditionError):
        multiplicative_rank([CentralizerElement(M, (2,))], [13])


@pytest.mark.parametrize("variant", ["inverse", "product", "permute"])
def test_rank_invariance(variant):
    gens = [G_M, G_M2, G_M3, G_M4]
    if variant == "inverse":
        gens[2] = as_element(G_M3.matrix.inverse(), "M3^-1")
    elif variant == "product":
        gens[1] = as_element(G_M2.matrix * G_M4.matrix, "M2 M4")
    else:
        gens = gens[::-1]
    assert multiplicative_rank(gens, [13])[0] == 4


def test_unit_search_examples():
    found = {g.coeffs for g in unit_search(M, 13, 0, 1)}
    assert {(1, 0, 0), (0, 1, 0), (1, -1, 0)} <= found
    found = {g.coeffs for g in unit_search(M, 13, 1, 5)}
    assert found == {(4, 3, 2), (4, 5, 1)}
    assert unit_search(M, 13, 1, 0) == []


def test_unit_search_is_exhaustive(backend):
    # brute-force determinant over the whole box
    expected = set()
    for a in range(-2, 3):
        for b in range(-2, 3):
            for c in range(-2, 3):
                if CentralizerElement(M, (a, b, c)).det() == 1:
                    expected.add((a, b, c))
    assert {g.coeffs for g in unit_search(M, 13, 0, 2)} == expected


def test_unit_search_even_dimension_dedup():
    A = companion(parse_poly("t^2 - 3t + 1"))
    found = [g.coeffs for g in unit_search(A, 2, 0, 3)]
    assert len(found) == len(set(found))
    for a in found:
        assert next(x for x in a if x) > 0
