"""Acceptance gate: eleven numbered criteria, one PASS/FAIL line each in the summary.

Run with ``pytest tests/test_acceptance.py`` (or ``python tests/test_acceptance.py``).
"""
import json
import random
import sys
import time
from fractions import Fraction
from importlib import resources

import pytest

from lattcert.constructions import (
    VERIFIED, GroupDescriptor, growth, lamplighter_pair, replay, splitting_prime_set,
    torus_lattice_certificate, worked_example,
)
from lattcert.dl import (
    DLVertex, affine_act, ball_edges, check_lattice_conditions, compose, coverage_constant, dl_ball,
    dl_degree, inverse, lambda_embed, lambda_mul, orbit_bfs, random_affine_map, switch_walk_generators,
)
from lattcert.dl.lamplighter import random_lambda
from lattcert.exact.poly import RatPoly, parse_poly
from lattcert.exact.roots import hensel_lift, roots_mod_p
from lattcert.matrix import QMatrix, companion, generated_module, is_qp_bounded_sl2, verify_module_witness

from oracles import (
    brute_force_degrees, dl_adjacent, lamplighter_ball_oracle, orbit_bounded, random_sl2_zp,
)

CUBIC = parse_poly("t^3 - 5t^2 + 6t - 1")


def criterion(number, title):
    return pytest.mark.criterion(number, title)


@criterion(1, "worked example: 9/9 checks in under 10 s")
def test_worked_example():
    start = time.perf_counter()
    cert = worked_example(N=10)
    elapsed = time.perf_counter() - start
    doc = json.loads(cert.dumps())
    assert cert.overall == VERIFIED and doc["passed"] == doc["total"] == 9
    assert all(replay(item) for item in doc["checklist"])
    witness = {i["check"]: i["witness"] for i in doc["checklist"]}
    assert witness["example_interlacing"]["roots_per_interval"] == [1, 1, 1]
    assert witness["example_m2"]["h"] == str(-CUBIC.compose(RatPoly([1, -1])))
    assert witness["example_dets"] == {"M3": "1", "M4": "1"}
    assert witness["example_kernel"] == {"M": [0, 0, 0], "M2": [0, 0, 0]}
    sigma = witness["example_phi"]["ordering"]
    assert [witness["example_phi"]["phi_M3"][s] for s in sigma] == [0, 1, -1]
    assert [witness["example_phi"]["phi_M4"][s] for s in sigma] == [-1, -1, 2]
    rank_items = [i for i in doc["checklist"] if i["check"] == "example_rank"]
    assert sorted(i["witness"]["rank"] for i in rank_items) == [2, 4]
    assert elapsed < 10


@criterion(2, "splitting primes of the cubic up to 50 are {13, 29, 41}, ramified {7}, in under 1 s")
def test_splitting_primes():
    start = time.perf_counter()
    report = splitting_prime_set(CUBIC, 50)
    elapsed = time.perf_counter() - start
    assert report.ramified == [7]
    assert all(p >= 13 for p in report.primes)
    assert set(report.primes) == {13, 29, 41}
    assert elapsed < 1


@criterion(3, "splitting density up to 10^4 lies in [0.30, 0.37], in under 30 s")
def test_splitting_density():
    start = time.perf_counter()
    report = splitting_prime_set(CUBIC, 10**4)
    elapsed = time.perf_counter() - start
    assert report.prime_count == 1229
    assert Fraction(30, 100) <= report.density <= Fraction(37, 100)
    assert elapsed < 30


@criterion(4, "trace criterion agrees with the power-orbit oracle on 200 matrices")
def test_trace_criterion_oracle():
    rng = random.Random(2024)
    agree = 0
    for k in range(200):
        p = (2, 3, 5)[k % 3]
        M = random_sl2_zp(rng, p)
        agree += is_qp_bounded_sl2(M, p) == orbit_bounded(M, p, J=40, c=1)
    assert agree == 200


@criterion(5, "generated module is Z[1/n]^2 for n = 2, 3, 6 with J <= 10")
def test_generated_module():
    for n in (2, 3, 6):
        M = companion(RatPoly([1, Fraction(-1, n), 1]))
        cert = generated_module(M, n, J=10)
        assert cert.status == "Proved" and cert.search_bound <= 10
        assert set(cert.witnesses) == {0, 1}
        assert all(verify_module_witness(M, n, i, w) for i, w in cert.witnesses.items())


@criterion(6, "DL degree (d-1) * sum(n_i) at every interior vertex of radius-4 truncations")
def test_dl_degree_formula():
    for d, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        branchings = (n,) * d
        degrees = brute_force_degrees(branchings, radius=4)
        assert degrees
        assert all(deg == dl_degree(branchings) == (d - 1) * d * n for deg in degrees.values())


@criterion(7, "truncated lattice conditions pass with index exactly q")
def test_lattice_conditions():
    for d, q in ((2, 2), (2, 3), (3, 3)):
        report = check_lattice_conditions(d, q)
        assert report["passed"]
        assert report["index"]["values"] == [q] * d


@criterion(8, "affine action preserves edges and level sums and inverts, 100 maps per graph")
def test_affine_action():
    rng = random.Random(8)
    for d, q in ((2, 2), (3, 3)):
        verts, _ = dl_ball(DLVertex.base((q,) * d), 3)
        edges = ball_edges(verts)
        for k in range(100):
            g = random_affine_map(rng, ("laurent", "padic")[k % 2], q, d)
            g_inv = inverse(g)
            image = {v: affine_act(g, v) for v in verts}
            assert all(sum(w.levels) == 0 for w in image.values())
            assert all(dl_adjacent(image[a], image[b]) for a, b in edges)
            assert all(affine_act(g_inv, w) == v for v, w in image.items())


@criterion(9, "lamplighter growth, embedding homomorphism and orbit coverage C <= 2")
def test_lamplighter_concordance():
    assert growth(GroupDescriptor("Lambda", {"d": 2, "q": 2}), 10) == lamplighter_ball_oracle(2, 10)
    rng = random.Random(9)
    for _ in range(50):
        a, b = random_lambda(rng, 2, 2), random_lambda(rng, 2, 2)
        assert lambda_embed(lambda_mul(a, b), 12).agrees(compose(lambda_embed(a, 12), lambda_embed(b, 12)))
    gens = [lambda_embed(g, 24) for g in switch_walk_generators(2)]
    orbit = orbit_bfs(gens, DLVertex.base((2, 2)), 8)
    C, contained = coverage_constant(orbit)
    assert C <= 2 and contained


@criterion(10, "lamplighter pairs for n = 2..10 and the shipped torus data verify with rank 4")
def test_certificates():
    for n in range(2, 11):
        assert lamplighter_pair(n).overall == VERIFIED
    data = json.loads(resources.files("lattcert").joinpath("data/example_units.json").read_text())
    M = QMatrix.from_json(data["matrix"])
    cert = torus_lattice_certificate(M, data["primes"], data["candidates"])
    assert cert.overall == VERIFIED
    k, d = len(data["primes"]), M.dim
    assert cert.group["rank"] == (k + 1) * (d - 1) == 4


@criterion(11, "Hensel lifts of the cubic at 13 to 13^10 are roots, distinct mod 13")
def test_hensel():
    residues = [r for r, _ in roots_mod_p(CUBIC, 13)]
    lifts = [hensel_lift(CUBIC, 13, r, 10).to_residue() for r in residues]
    assert len(lifts) == 3
    assert all(CUBIC(a) % 13**10 == 0 for a in lifts)
    assert len({a % 13 for a in lifts}) == 3


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
