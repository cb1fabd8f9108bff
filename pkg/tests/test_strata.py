import json
from math import gcd

import pytest
from hypothesis import assume, given, settings, strategies as st

from qmhs.qspace import QuotientType
from qmhs.strata import (
    StrataError,
    from_json,
    gen_multi_branch,
    gen_one_branch,
    gen_two_branch,
    gen_yls_cusp,
    gen_yls_two_branch,
    generate,
    load,
    save,
    validate,
)


def mvals(sd):
    rep = validate(sd)
    assert rep.ok, rep.errors
    return {s.label: m for s, m in zip(sd.strata, rep.mvalues)}


def test_one_branch_cusp():
    sd = gen_one_branch(2, 3)
    assert sd.component_by_name("E").multiplicity == 6
    m = mvals(sd)
    assert m["0@P1"] == 2 and m["0@P2"] == 3 and m["0&1"] == 1
    generic = [s for s in sd.strata if s.components == (0,) and s.singular_label is None][0]
    assert generic.euler == -1


def test_one_branch_non_coprime():
    sd = gen_one_branch(4, 6)
    assert sd.component_by_name("E").multiplicity == 12
    crossing = [s for s in sd.strata if s.components == (0, 1)][0]
    assert crossing.euler == 2
    sd = gen_one_branch(2, 2)
    assert sd.component_by_name("E").multiplicity == 2
    assert validate(sd).ok


def test_two_branch_examples():
    sd = gen_two_branch(2, 3, 4, 1)
    assert [c.multiplicity for c in sd.components[:2]] == [8, 6]
    assert mvals(sd)["0&1@Q"] == 1
    sd = gen_two_branch(21, 44, 14, 11)
    assert [c.multiplicity for c in sd.components[:2]] == [1155, 385]
    assert mvals(sd)["0&1@Q"] == 1
    assert validate(gen_two_branch(1, 2, 3, 1)).ok
    with pytest.raises(StrataError):
        gen_two_branch(4, 1, 2, 3)
    with pytest.raises(StrataError):
        gen_two_branch(2, 4, 4, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.integers(1, 8))
def test_two_branch_matches_toric(p, q, r, s):
    assume(gcd(p, q) == 1 and gcd(r, s) == 1 and p * s < q * r)
    hand = gen_two_branch(p, q, r, s)
    toric = gen_multi_branch([(p, q), (r, s)])
    assert [c.multiplicity for c in hand.components] == [c.multiplicity for c in toric.components]
    types = {}
    for sd in (hand, toric):
        for st_ in sd.strata:
            if st_.dim == 0 and st_.euler == 1 and len(st_.components) <= 2 and all(c < 2 for c in st_.components):
                types.setdefault(st_.components, []).append(st_.local_type(2))
    for key, found in types.items():
        assert len(found) == 2 and found[0] == found[1], key
    m = mvals(hand)
    assert m["0&1@Q"] == gcd(p, s)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9), st.integers(2, 9))
def test_one_branch_matches_toric(p, q):
    hand = gen_one_branch(p, q)
    toric = gen_multi_branch([(p, q)])
    assert hand.components[0].multiplicity == toric.components[0].multiplicity
    hand_pts = sorted(str(s.local_type(2).presentation()) for s in hand.strata if s.singular_label)
    toric_pts = sorted(str(s.local_type(2).presentation()) for s in toric.strata if s.singular_label)
    assert hand_pts == toric_pts


def test_multi_branch_intersection_multiplicities():
    pairs = [(2, 4), (3, 3), (5, 2)]
    sd = gen_multi_branch(pairs)
    m = mvals(sd)
    assert m["0&1"] == gcd(2, 3 + 2)
    assert m["1&2"] == gcd(2 + 3, 2)


def test_validation_failures():
    sd = gen_one_branch(2, 3)
    data = sd.to_json()
    data["strata"][0]["euler"] += 1
    rep = validate(from_json(data))
    assert not rep.ok and any("sum to" in m for _, m in rep.errors)

    bad = {"n": 1, "components": [{"id": 0, "name": "E", "role": "exceptional", "compact": True, "multiplicity": 1}],
           "strata": [{"components": [0], "d": [2], "A": [[1, 1]], "mult": {"0": 1}, "euler": 2, "dim": 1}]}
    rep = validate(from_json(bad))
    assert not rep.ok and any("not invariant" in m for _, m in rep.errors)

    data = sd.to_json()
    del data["strata"][4]  # generic stratum of the strict transform
    rep = validate(from_json(data))
    assert not rep.ok


def test_schema_errors():
    data = gen_one_branch(2, 3).to_json()
    data["components"][0]["multiplicity"] = 0
    with pytest.raises(StrataError) as err:
        from_json(data)
    assert err.value.issues[0][0] == "/components/0/multiplicity"
    data = gen_one_branch(2, 3).to_json()
    data["strata"][1]["surprise"] = 1
    from_json(data)
    with pytest.raises(StrataError) as err:
        from_json(data, strict=True)
    assert err.value.issues[0][0] == "/strata/1/surprise"
    data = gen_one_branch(2, 3).to_json()
    data["strata"][0]["euler"] = -1.0
    with pytest.raises(StrataError):
        from_json(data)


def test_roundtrip(tmp_path):
    for sd in (gen_one_branch(2, 3), gen_two_branch(2, 3, 4, 1), gen_yls_cusp(2, 3, 1, 4)):
        path = tmp_path / "sd.json"
        save(sd, path)
        again = load(path, strict=True)
        assert again.dumps() == sd.dumps()
        assert json.loads(sd.dumps()) == again.to_json()


def test_yls_cusp_values():
    p, q, k, m = 2, 3, 6, 5
    sd = gen_yls_cusp(p, q, k, m)
    mv = mvals(sd)
    k1, k2 = gcd(k, p), gcd(k, q)
    e1 = sd.component_by_name("E1")
    assert e1.multiplicity == p * q * (m + k) // (k1 * k2)
    by_label = {s.label: s for s in sd.strata}
    assert by_label["2"].euler == k1 * k2
    assert by_label["1&2"].euler == -1 and mv["1&2"] == gcd(m, p * q)
    assert mv["0&1&2"] == 1
    assert mv["1&2@E1|ex|ez"] == gcd(m, p)
    assert mv["1&2@E1|ey|ez"] == gcd(m, q)
    assert mv["2@E1|ex|ey"] == m + k
    assert by_label["2@E1|ex"].euler == -k1 and mv["2@E1|ex"] == p * (m + k) // k1
    assert by_label["2@E1|ey"].euler == -k2 and mv["2@E1|ey"] == q * (m + k) // k2


def test_yls_two_branch_values():
    p, q, r, s, k, m = 2, 3, 4, 1, 2, 7
    sd = gen_yls_two_branch(p, q, r, s, k, m)
    mv = mvals(sd)
    g = gcd(gcd(k, p), s)
    assert mv["1&2&3"] == gcd(gcd(m, p), s)
    assert mv["2&3@E1|E2|ex"] == m + k
    assert mv["2&3"] == (m + k) * gcd(p, s) // g
    assert {x.label: x for x in sd.strata}["0&2&3"].euler == g


def test_yls_admissibility():
    with pytest.raises(StrataError):
        gen_yls_cusp(2, 3, 1, 2)
    with pytest.raises(StrataError):
        gen_yls_two_branch(21, 44, 14, 11, 1, 39)
    assert validate(gen_yls_two_branch(21, 44, 14, 11, 1, 41)).ok


def test_generate_specs():
    assert generate("one-branch:2,3").name == "one-branch:2,3"
    assert generate("multi-branch:2,3;4,1").n == 1
    with pytest.raises(StrataError):
        generate("one-branch:2")
    with pytest.raises(StrataError):
        generate("nope:1")


def test_local_type_shape():
    sd = gen_two_branch(2, 3, 4, 1)
    q = [s for s in sd.strata if s.singular_label == "Q"][0]
    assert q.local_type(2) == QuotientType((10, 10), ((1, -3), (-4, 2)))
