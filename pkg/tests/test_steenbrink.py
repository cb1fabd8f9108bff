from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from qmhs.exactalg import CycloProduct
from qmhs.semistable import build_dual_complex, chain_complex_input, complex_from_json
from qmhs.steenbrink import (
    SteenbrinkError,
    column_exact_solver,
    e1_curve,
    e1_surface,
    mhs_curve,
    mhs_surface_partial,
)
from qmhs.monodromy import complex_cohomology_action
from qmhs.strata import from_json, gen_one_branch, gen_two_branch, gen_yls_cusp, gen_yls_two_branch

C = CycloProduct.of
D0 = CycloProduct.symbol("D0")
AUX = {"components": {"E0": {"h1": "D0"}, "E1": {"h1": {}}, "E2": {"h1": {}}}}


def test_e1_curve_examples():
    page = e1_curve(build_dual_complex(gen_one_branch(2, 3)))
    assert [e.dim for e in page.entries] == [1, 0, 2, 1, 1]
    page = e1_curve(build_dual_complex(gen_two_branch(2, 3, 4, 1)))
    dims = {e.space: e.dim for e in page.entries}
    assert dims["H0(D+[1])"] == 1 and dims["H1(D+[0])"] == 4


def test_mhs_cusp():
    rep = mhs_curve(gen_one_branch(2, 3))
    assert rep.dims() == (0, 2, 0)
    assert rep.weights[1]["delta"].canonical() == {6: 1}
    assert rep.spectrum == {(6, 1): 1}


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_mhs_two_branch(p, q, r, s):
    assume(gcd(p, q) == 1 and gcd(r, s) == 1 and p * s < q * r)
    rep = mhs_curve(gen_two_branch(p, q, r, s))
    g = gcd(p, s)
    g1 = ((p - 1) * (q + s) - g + 1) // 2
    g2 = ((s - 1) * (p + r) - g + 1) // 2
    assert rep.dims() == (g - 1, 2 * (g1 + g2), g)
    assert rep.weights[0]["delta"] == C((g, 1), (1, -1))
    assert sum(rep.dims()) == rep.delta.degree
    product = rep.weights[0]["delta"] * rep.weights[1]["delta"] * rep.weights[2]["delta"]
    assert product == rep.delta
    hodge = rep.weights[1]["hodge"]
    assert hodge["h01"] == hodge["h10"]


def test_chain_complex_weight_zero():
    pairs = [(2, 6), (4, 2), (2, 4)]
    K = complex_from_json(chain_complex_input(pairs))
    h1 = complex_cohomology_action(K, "all")["deltas"][1]
    e1, e2 = gcd(2, 6), gcd(6, 4)
    assert h1 == C((e1, 1), (1, -1), (e2, 1), (1, -1))


def test_column_solver():
    assert column_exact_solver([None, 1, 3, 2]) == 0
    assert column_exact_solver([0, None, 4, 0]) == 4
    with pytest.raises(SteenbrinkError):
        column_exact_solver([None, 1, 3, 1])
    with pytest.raises(SteenbrinkError):
        column_exact_solver([None, None, 3, 1])


def test_e1_surface_cusp_column():
    sd = gen_yls_cusp(2, 3, 1, 4)
    K = build_dual_complex(sd)
    betti = {"E0": {"b1": 0, "b2": 1, "b3": 0}, "E1": {"b1": 0, "b2": 1, "b3": 0}}
    page = e1_surface(sd, K, betti)
    assert page.dims(4) == [1, 3, 2]
    with pytest.raises(SteenbrinkError):
        e1_surface(sd, K, {"E0": {"b1": 0, "b3": 0}, "E1": {"b1": 0, "b2": 1, "b3": 0}})
    with pytest.raises(SteenbrinkError):
        e1_surface(sd, K, dict(betti, curves={"E0&E1": 5}))


def test_trivial_surface_page():
    data = {"n": 2, "components": [{"id": 0, "name": "E", "role": "exceptional", "compact": True,
                                    "multiplicity": 1}],
            "strata": [{"components": [0], "d": [], "A": [], "mult": {"0": 1}, "euler": 3, "dim": 2}]}
    sd = from_json(data)
    page = e1_surface(sd, build_dual_complex(sd), {"E": {"b1": 0, "b2": 1, "b3": 0}})
    assert page.dims(4) == [0, 0, 1] and page.dims(0) == [1, 0, 0]
    assert sum(e.dim for e in page.entries if e.twist) == 0


def yls_cusp_expected_gr1(p, q, m):
    return C((1, 1), (gcd(m, p * q), 1), (gcd(m, p), -1), (gcd(m, q), -1)) / D0


@pytest.mark.parametrize("p,q,k,m", [(2, 3, 1, 4), (2, 3, 2, 6), (2, 5, 3, 10), (3, 4, 2, 12), (2, 3, 6, 6)])
def test_yls_cusp_report(p, q, k, m):
    rep = mhs_surface_partial(gen_yls_cusp(p, q, k, m), AUX)
    assert rep.weights[4]["dim"] == 0
    assert rep.weights[1]["delta"] == yls_cusp_expected_gr1(p, q, m)


def yls_two_expected(p, q, r, s, k, m):
    def g(*xs):
        out = 0
        for x in xs:
            out = gcd(out, x)
        return out
    kps, mps = g(k, p, s), g(m, p, s)
    gr1 = C((g(m, p * (q + s)), 1), (g(m, s * (p + r)), 1), (g(m, q + s), -1), (g(m, p + r), -1),
            ((m + k) * g(p, s) // kps, kps), (m + k, -1), (1, 1 - kps), (mps, -3), (1, 3)) / D0
    gr4 = C((mps, 1), (1, -1), (1, kps))
    return gr1, gr4


@pytest.mark.parametrize("params", [(2, 3, 4, 1, 2, 7), (2, 5, 3, 2, 2, 8), (2, 5, 3, 2, 4, 10), (2, 5, 3, 2, 3, 12)])
def test_yls_two_branch_report(params):
    rep = mhs_surface_partial(gen_yls_two_branch(*params), AUX)
    gr1, gr4 = yls_two_expected(*params)
    assert rep.weights[1]["delta"] == gr1
    assert rep.weights[4]["delta"] == gr4


def test_missing_aux():
    with pytest.raises(SteenbrinkError):
        mhs_surface_partial(gen_yls_cusp(2, 3, 1, 4), {"components": {"E0": {"h1": "D0"}}})


def test_report_serialization():
    rep = mhs_curve(gen_two_branch(2, 3, 3, 2))
    data = rep.to_json()
    assert data["dim"] == rep.delta.degree
    assert "blocks of size 2" in rep.to_text()
    rep = mhs_surface_partial(gen_yls_cusp(2, 3, 1, 4), AUX)
    assert rep.to_json()["weights"]["1"]["delta"]["symbols"] == {"D0": -1}
