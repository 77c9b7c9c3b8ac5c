import json
import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lattcert.constructions import (
    FAILED, PARTIAL, VERIFIED, GroupDescriptor, canonical_json, gamma_descriptor, growth,
    growth_compare, growth_flags, lamplighter_descriptor, lamplighter_pair, primes_up_to, replay,
    sl2_lattice_certificate, splitting_prime_set, torus_lattice_certificate, validate_schema,
    worked_example, write_growth_csv,
)
from lattcert.constructions.example import UNITS
from lattcert.errors import InsufficientPrecision, NotIrreducible, NotSquarefree, PreconditionError
from lattcert.exact.poly import parse_poly
from lattcert.matrix import QMatrix, companion

from oracles import lamplighter_ball_oracle

CUBIC = parse_poly("t^3 - 5t^2 + 6t - 1")
M = companion(CUBIC)
CANDIDATES = [{"name": n, "coeffs": list(c), "denom": m} for n, (c, m) in UNITS.items()]


def assert_replayable(cert):
    doc = json.loads(cert.dumps())
    assert validate_schema(doc) == []
    assert all(replay(item) for item in doc["checklist"])
    return doc


# -- splitting primes ----------------------------------------------------------


def test_primes_up_to():
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(1) == []
    assert len(primes_up_to(10**4)) == 1229


def test_splitting_primes_of_the_cubic():
    report = splitting_prime_set(CUBIC, 50)
    # brute force: three distinct roots mod p and p does not divide disc = 49
    brute = [p for p in primes_up_to(50) if p != 7
             and sum(1 for x in range(p) if (x**3 - 5 * x * x + 6 * x - 1) % p == 0) == 3]
    assert report.primes == brute == [13, 29, 41, 43]
    assert report.ramified == [7]
    assert all(p >= 13 for p in report.primes)


def test_splitting_primes_gaussian():
    report = splitting_prime_set(parse_poly("t^2 + 1"), 30)
    assert report.primes == [5, 13, 17, 29] and report.ramified == [2]
    assert report.expected == Fraction(1, 2)


def test_splitting_density():
    report = splitting_prime_set(CUBIC, 10**4)
    assert report.expected == Fraction(1, 3)
    assert 0.30 <= float(report.density) <= 0.37
    assert report.to_json()["density"]["primes_up_to_bound"] == 1229


def test_splitting_errors():
    with pytest.raises(NotIrreducible):
        splitting_prime_set(parse_poly("t^3 - 1"), 20)
    with pytest.raises(NotSquarefree):
        splitting_prime_set(parse_poly("(t - 1)^2 (t + 1)"), 20)
    with pytest.raises(PreconditionError):
        splitting_prime_set(parse_poly("t^2 + 1/2"), 20)


# -- SL(2) lattices ------------------------------------------------------------


def test_sl2_certificate_half():
    cert = sl2_lattice_certificate(QMatrix.parse("0,-1;1,1/2"))
    assert cert.overall == VERIFIED and cert.passed_count() == 8
    assert cert.group["description"] == "Z[1/2]^2 x|_M Z"
    assert cert.envelope["factors"][1] == {"type": "IsomDL", "branchings": [2, 2]}
    assert_replayable(cert)


@pytest.mark.parametrize("rows, failing", [
    ("0,-1;1,0", {"infinite order", "trace denominator"}),
    ("2,1;1,1", {"R-bounded", "trace denominator"}),
])
def test_sl2_certificate_failures(rows, failing):
    cert = sl2_lattice_certificate(QMatrix.parse(rows))
    assert cert.overall == FAILED
    assert failing <= set(cert.failed_names())
    assert_replayable(cert)


def test_sl2_certificate_wrong_size():
    cert = sl2_lattice_certificate(M)
    assert cert.overall == FAILED and cert.failed_names() == ["2x2 matrix"]


@pytest.mark.parametrize("n", range(2, 11))
def test_lamplighter_pair(n):
    cert = lamplighter_pair(n)
    assert cert.overall == VERIFIED
    assert cert.group["lambda"]["description"] == f"Z^2 x (Z/{n} wr Z)"
    names = [i.name for i in cert.checklist]
    assert ("lamplighter action" in names) == (n in (2, 3, 5, 7))
    assert_replayable(cert)


def test_lamplighter_pair_rejects_small_n():
    with pytest.raises(PreconditionError):
        lamplighter_pair(1)


def test_tampered_item_does_not_replay():
    doc = json.loads(lamplighter_pair(2).dumps())
    item = next(i for i in doc["checklist"] if i["name"] == "module")
    item["args"]["n"] = 3
    assert not replay(item)


def test_schema_problems_are_reported():
    doc = json.loads(lamplighter_pair(2).dumps())
    doc["overall"] = "Failed"
    assert "overall status disagrees with checklist" in validate_schema(doc)
    del doc["checklist"][0]["anchor"]
    assert any("lacks 'anchor'" in p for p in validate_schema(doc))


def test_certificate_json_is_canonical():
    a = lamplighter_pair(3).dumps()
    b = lamplighter_pair(3).dumps()
    assert a == b == canonical_json(json.loads(a))


# -- torus lattices --------------------------------------------------------------


def test_torus_example_verifies():
    cert = torus_lattice_certificate(M, [13], CANDIDATES)
    assert cert.overall == VERIFIED
    assert cert.group["description"] == "Z[1/13]^3 x| Z^4"
    assert cert.group["rank"] == cert.group["expected_rank"] == 4
    assert_replayable(cert)


def test_torus_partial_with_too_few_units():
    cert = torus_lattice_certificate(M, [13], CANDIDATES[:2])
    assert cert.overall == PARTIAL
    assert cert.failed_names() == ["full rank"]
    assert_replayable(cert)


def test_torus_rank_is_monotone_in_candidates():
    ranks = []
    for k in range(1, 5):
        cert = torus_lattice_certificate(M, [13], CANDIDATES[:k])
        ranks.append(cert.group["rank"])
    assert ranks == sorted(ranks) and ranks[-1] == 4


def test_torus_without_primes_is_polycyclic():
    A = QMatrix.parse("2,1;1,1")
    cert = torus_lattice_certificate(A, [], [{"coeffs": [0, 1], "denom": 1}])
    assert cert.overall == VERIFIED
    assert cert.group["kind"] == "Polycyclic" and cert.group["description"] == "Z^2 x| Z^1"


def test_torus_rejects_bad_primes():
    cert = torus_lattice_certificate(M, [7, 13], CANDIDATES)
    assert cert.overall == FAILED and "primes split" in cert.failed_names()


# -- worked example ----------------------------------------------------------------


def test_worked_example():
    cert = worked_example()
    assert cert.overall == VERIFIED and cert.passed_count() == 9 == len(cert.checklist)
    doc = assert_replayable(cert)
    phi = next(i for i in doc["checklist"] if i["check"] == "example_phi")
    assert sorted(phi["witness"]["phi_M3"]) == [-1, 0, 1]


def test_worked_example_perturbed_fails():
    cert = worked_example(poly="t^3 - 5t^2 + 6t - 2")
    assert cert.overall == FAILED
    assert_replayable(cert)


def test_worked_example_low_precision():
    with pytest.raises(InsufficientPrecision):
        worked_example(N=2)


# -- groups and growth ---------------------------------------------------------------


def test_lamplighter_oracle_small_cases():
    # radius 1: e, a, t, t^-1; radius 2 adds at, ta, at^-1, t^-1a, t^2, t^-2
    assert lamplighter_ball_oracle(2, 2) == [1, 4, 10]
    assert lamplighter_ball_oracle(3, 1) == [1, 5]


@pytest.mark.parametrize("q, r", [(2, 10), (3, 7)])
def test_lamplighter_growth_matches_oracle(q, r):
    expected = lamplighter_ball_oracle(q, r)
    assert growth(lamplighter_descriptor(q), r) == expected
    assert growth(GroupDescriptor("Lambda", {"d": 2, "q": q}), r) == expected


def test_gamma_growth_is_flagged():
    sizes = growth(gamma_descriptor(2), 12)
    assert sizes[:6] == [1, 7, 29, 99, 281, 711]
    assert growth_flags(sizes)["superpolynomial"]


def test_polynomial_growth_not_flagged():
    Z3 = GroupDescriptor("Polycyclic", {"matrices": [QMatrix.identity(2).to_json()]})
    sizes = growth(Z3, 10)
    # ball of radius r in Z^3 with the l1 metric
    oracle = [sum(comb(3, k) * comb(R, k) * 2**k for k in range(4)) for R in range(11)]
    assert sizes == oracle
    assert not growth_flags(sizes)["superpolynomial"]


def test_growth_compare_and_csv(tmp_path):
    rows, report = growth_compare(gamma_descriptor(2), lamplighter_descriptor(2, free_rank=2), 4)
    assert {r["group"] for r in rows} == {"a", "b"}
    assert report["a"]["strictly_increasing"] and report["b"]["strictly_increasing"]
    path = tmp_path / "growth.csv"
    write_growth_csv(path, rows)
    lines = path.read_text().splitlines()
    assert lines[0] == "group,radius,ball_size,sphere_size"
    assert len(lines) == 1 + len(rows)


def group_words(G, rng, length):
    gens = G.generators()
    gens = gens + [G.inverse(g) for g in gens]
    out = G.identity()
    for _ in range(length if gens else 0):
        out = G.mul(out, rng.choice(gens))
    return out


@pytest.mark.parametrize("G", [
    gamma_descriptor(2), gamma_descriptor(6), lamplighter_descriptor(3, free_rank=2),
    GroupDescriptor("Lambda", {"d": 3, "q": 3}), GroupDescriptor("Trivial"),
], ids=["gamma2", "gamma6", "product", "lambda33", "trivial"])
@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_group_axioms(G, seed):
    rng = random.Random(seed)
    x, y, z = (group_words(G, rng, rng.randint(0, 8)) for _ in range(3))
    e = G.identity()
    assert G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z))
    assert G.mul(x, G.inverse(x)) == e == G.mul(G.inverse(x), x)
    assert G.mul(e, x) == x


def test_unknown_group_kind():
    with pytest.raises(PreconditionError):
        GroupDescriptor("Free")
