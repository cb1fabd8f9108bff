import random
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from helpers import dense_h1_oracle, jordan_chain_counts, random_cover, random_graph_input, random_nilpotent
from qmhs.exactalg import CycloProduct, mat_mul
from qmhs.monodromy import (
    GradedCharData,
    MonodromyError,
    acampo_charpoly,
    coboundary,
    complex_cohomology_action,
    cyclic_cover_curve,
    cyclic_cover_h1_formula,
    jordan_blocks_matrix,
    jordan_from_graded,
    perm_charpoly,
    weight_filtration,
)
from qmhs.semistable import build_dual_complex, complex_from_json
from qmhs.strata import gen_one_branch, gen_two_branch, gen_yls_cusp, gen_yls_two_branch

C = CycloProduct.of


def test_acampo_examples():
    assert acampo_charpoly(gen_one_branch(2, 3)).canonical() == {6: 1}
    p, q, r, s = 2, 3, 4, 1
    assert acampo_charpoly(gen_two_branch(p, q, r, s)) == C((1, 1), (p * (q + s), 1), (s * (p + r), 1),
                                                            (q + s, -1), (p + r, -1))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), st.integers(3, 7), st.integers(1, 4), st.integers(0, 4))
def test_acampo_yls_cusp(p, q, k, extra):
    assume(gcd(p, q) == 1 and p < q)
    m = max(q, 3)
    while (m - 1) * (m - 2) < (p - 1) * (q - 1):
        m += 1
    m += extra
    sd = gen_yls_cusp(p, q, k, m)
    k1, k2 = gcd(k, p), gcd(k, q)
    chi_c = 3 * m - m * m + (p - 1) * (q - 1)
    expected = C((m, 3 - chi_c), (1, -1), (m + k, 1), (p * q * (m + k) // (k1 * k2), k1 * k2),
                 (p * (m + k) // k1, -k1), (q * (m + k) // k2, -k2))
    assert acampo_charpoly(sd) == expected


def test_perm_charpoly():
    assert perm_charpoly([0, 1, 2]) == C((1, 3))
    assert perm_charpoly([1, 2, 3, 0]) == C((4, 1))
    assert perm_charpoly([1, 0, 3, 2]) == C((2, 2))


def test_banana_and_tree():
    for m in range(1, 7):
        K = complex_from_json({"vertices": [{"name": "A"}, {"name": "B"}],
                               "edges": [{"ends": ["A", "B"], "orbit": m}]})
        h0, h1 = complex_cohomology_action(K, "all")["deltas"]
        assert h0 == C((1, 1)) and h1 == C((m, 1), (1, -1))
    K = complex_from_json({"vertices": [{"name": x} for x in "ABCD"],
                           "edges": [{"ends": ["A", x]} for x in "BCD"]})
    res = complex_cohomology_action(K, "all")
    assert res["deltas"] == [C((1, 1)), CycloProduct.one()] and res["dims"] == [1, 0]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 7), st.integers(1, 7), st.integers(1, 7), st.integers(1, 7))
def test_two_branch_graph_cohomology(p, q, r, s):
    assume(gcd(p, q) == 1 and gcd(r, s) == 1 and p * s < q * r)
    K = build_dual_complex(gen_two_branch(p, q, r, s))
    g = gcd(p, s)
    assert complex_cohomology_action(K)["deltas"][1] == C((g, 1), (1, -1))


def test_random_graphs_against_dense_oracle():
    rng = random.Random(7)
    for _ in range(25):
        K = complex_from_json(random_graph_input(rng))
        h1 = complex_cohomology_action(K, "all")["deltas"][1]
        assert h1.expand() == dense_h1_oracle(K)


def test_surface_modes_agree():
    for sd in (gen_yls_cusp(2, 3, 1, 4), gen_yls_two_branch(2, 3, 4, 1, 2, 7), gen_yls_two_branch(2, 5, 3, 2, 2, 8)):
        K = build_dual_complex(sd)
        for part in ("plus", "all"):
            complex_cohomology_action(K, part, mode="both")
        d1, d0 = coboundary(K, 1), coboundary(K, 0)
        assert all(x == 0 for row in mat_mul(d1, d0) for x in row)
    K = build_dual_complex(gen_yls_two_branch(2, 5, 3, 2, 2, 8))
    assert complex_cohomology_action(K)["deltas"][2] == C((2, 1), (1, -1))


def test_cyclic_cover_examples():
    res = cyclic_cover_curve(6, [2, 3, 1], 2)
    assert res["euler"] == 0 and res["genus"] == 1 and res["delta_h1"].canonical() == {6: 1}
    res = cyclic_cover_curve(1, [], -4)
    assert res["genus"] == 3 and res["delta_h1"] == C((1, 6))
    p, q, r, s = 2, 3, 4, 1
    res = cyclic_cover_curve(p * (q + s), [gcd(p, s), 1, q + s], 2)
    assert res["genus"] == ((p - 1) * (q + s) - gcd(p, s) + 1) // 2
    with pytest.raises(MonodromyError):
        cyclic_cover_curve(6, [4], 2)


def test_cyclic_cover_matches_closed_form():
    rng = random.Random(3)
    for _ in range(60):
        N, fibers, c = random_cover(rng, 40)
        res = cyclic_cover_curve(N, fibers, 2, c)
        assert res["delta_h1"] == cyclic_cover_h1_formula(N, fibers, 2, c)
        assert res["delta_h1"].degree == 2 * res["genus"] * c


def test_weight_filtration_examples():
    J3 = [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    res = weight_filtration(J3, 1)
    assert res["graded"] == {-1: 1, 1: 1, 3: 1} and res["J"] == {3: 1}
    res = weight_filtration([[0] * 5 for _ in range(5)], 0)
    assert res["graded"] == {0: 5} and res["J"] == {1: 5}
    with pytest.raises(MonodromyError):
        weight_filtration([[1]], 0)


def test_weight_filtration_random():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(1, 6)
        M, sizes = random_nilpotent(rng, n)
        k = rng.randint(0, 3)
        res = weight_filtration(M, k)
        assert res["J"] == jordan_chain_counts(M)
        for l in range(n + 1):
            assert res["graded"].get(k + l, 0) == res["graded"].get(k - l, 0)


def test_jordan_blocks_matrix():
    assert jordan_blocks_matrix([[0, -1], [1, 1]], 6) == {(6, 1): 1}
    assert jordan_blocks_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 1) == {(1, 1): 3}
    assert jordan_blocks_matrix([[1, 1], [0, 1]], 1) == {(1, 2): 1}
    with pytest.raises(MonodromyError):
        jordan_blocks_matrix([[2]], 4)


def test_jordan_from_graded():
    gamma = 3
    G = GradedCharData(1, {0: C((gamma, 1), (1, -1)), 1: C((6, 1), (3, -1), (2, -1), (1, 1)), 2: C((gamma, 1))})
    blocks, spec = jordan_from_graded(G)
    assert blocks[2] == C((gamma, 1), (1, -1))
    assert spec[(3, 2)] == 1 and (1, 2) not in spec
    G = GradedCharData(1, {1: C((6, 1), (3, -1), (2, -1), (1, 1))})
    blocks, _ = jordan_from_graded(G)
    assert 2 not in blocks and blocks[1].canonical() == {6: 1}
    bad = GradedCharData(1, {0: C((2, 1))})
    with pytest.raises(MonodromyError):
        jordan_from_graded(bad)
