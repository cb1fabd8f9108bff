from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from qmhs.exactalg import (
    CycloProduct,
    charpoly_exact,
    charpoly_from_traces,
    cyclo_canonical,
    cyclo_factor,
    cyclotomic,
    det,
    mat_mul,
    rat_kernel_rank,
    smith_normal_form,
)

small_int = st.integers(-9, 9)


def int_matrix(max_dim=6):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(st.lists(small_int, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


def check_snf(m):
    D, U, V = smith_normal_form(m)
    assert mat_mul(mat_mul(U, m), V) == D
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
    assert all(x >= 0 for x in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    return diag


def test_snf_examples():
    assert check_snf([[1, 0], [0, 1]]) == [1, 1]
    assert check_snf([[2, 0], [0, 3]]) == [1, 6]
    assert check_snf([[0, 0], [0, 0]]) == [0, 0]


@settings(max_examples=200, deadline=None)
@given(int_matrix())
def test_snf_random(m):
    check_snf(m)


def test_kernel_rank():
    assert rat_kernel_rank([[1, 0], [0, 1]]) == (2, [])
    r, ker = rat_kernel_rank([[1, -1]])
    assert r == 1 and ker == [[1, 1]]
    incidence = [[-1, 1, 0], [0, -1, 1], [1, 0, -1]]  # edges x vertices of a 3-cycle
    r, ker = rat_kernel_rank(incidence)
    assert r == 2 and len(ker) == 1


@settings(max_examples=100, deadline=None)
@given(int_matrix(5))
def test_kernel_rank_nullity(m):
    r, ker = rat_kernel_rank(m)
    assert r + len(ker) == len(m[0])
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)


def test_canonical_forms():
    assert cyclo_canonical(CycloProduct.of((1, 1))) == {1: 1}
    p = CycloProduct.of((1, 1), (6, 1), (2, -1), (3, -1))
    assert cyclo_canonical(p) == {6: 1}
    a = CycloProduct.of((1, 1), (1155, 1), (385, 1), (55, -1), (35, -1))
    b = CycloProduct.of((35, -1), (385, 1), (55, -1), (1155, 1), (1, 1))
    assert cyclo_canonical(a) == cyclo_canonical(b)
    assert a.degree == 1 + 1155 + 385 - 55 - 35


def test_from_canonical_roundtrip():
    p = CycloProduct.of((12, 2), (4, -1), (1, 1))
    assert CycloProduct.from_canonical(p.canonical()) == p


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.integers(1, 30), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(1, 30), st.integers(-3, 3), max_size=5),
       st.dictionaries(st.integers(1, 30), st.integers(-3, 3), max_size=5))
def test_cyclo_ring_laws(a, b, c):
    A, B, C = CycloProduct(a), CycloProduct(b), CycloProduct(c)
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert (A * B).degree == A.degree + B.degree
    assert (A * B) / B == A


def test_cyclotomic_polys():
    assert cyclotomic(1) == [-1, 1]
    assert cyclotomic(4) == [1, 0, 1]
    assert cyclotomic(6) == [1, -1, 1]


def test_charpoly_from_traces():
    assert charpoly_from_traces([0, 2], 2) == [-1, 0, 1]
    assert charpoly_from_traces([1, -1, -2, -1, 1, 2], 2) == [1, -1, 1]
    assert charpoly_from_traces([4] * 4, 4) == [1, -4, 6, -4, 1]
    with pytest.raises(ValueError):
        charpoly_from_traces([1, 0], 2)


def test_charpoly_and_factor():
    p = charpoly_exact([[0, -1], [1, 1]])
    assert p == [1, -1, 1]
    assert cyclo_factor(p, 6).canonical() == {6: 1}
    assert cyclo_factor(charpoly_exact([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), 1).canonical() == {1: 3}
    assert cyclo_factor([1, 0, 1], 4).canonical() == {4: 1}
    with pytest.raises(ValueError):
        cyclo_factor([1, -3, 1], 12)


def test_charpoly_matches_sympy():
    import random

    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 6)
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        ours = charpoly_exact(m)
        ref = sympy.Matrix(m).charpoly().all_coeffs()[::-1]
        assert [Fraction(x) for x in ours] == [Fraction(int(c.p), int(c.q)) for c in ref]


def _perm_matrix(perm):
    n = len(perm)
    return [[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(st.permutations(list(range(7))))
def test_traces_route_equals_direct_route(perm):
    # permutation matrices have cyclotomic-product char polys
    m = _perm_matrix(perm)
    traces, power = [], m
    for _ in range(len(m)):
        traces.append(sum(power[i][i] for i in range(len(m))))
        power = mat_mul(power, m)
    assert charpoly_from_traces(traces, len(m)) == charpoly_exact(m)
