import pytest
from hypothesis import given, settings, strategies as st

from dualinv.fincat import (
    arrow_category,
    check_isomorphism,
    cyclic_group,
    discrete_category,
    op_category,
    poset_category,
    terminal_category,
    walking_iso,
)
from dualinv.opposites import (
    NEG,
    all_strict_opposites,
    complete_strict_opposites,
    completion_witness,
    copower_power_correspondence,
    double_opposite,
    extract_strong_involution,
    find_strict_opposite,
    map_witness,
    seeded_witnesses,
    strictify_strong,
    tagged,
    validate_duality_two_functor,
    validate_strict_involution,
    validate_strong_involution,
    verify_copower,
    verify_witness,
)
from dualinv.varcat import (
    cat_sub,
    identity_variance_functor,
    underlying_2cat,
    validate_contra_2cat,
    validate_variance_functor,
)

SPAN = poset_category(["a", "b", "c"], [("ab", "a", "b"), ("ac", "a", "c")])
POOL = {
    "1": terminal_category(), "2": arrow_category(), "op2": op_category(arrow_category()),
    "D2": discrete_category(2), "I": walking_iso(), "B2": cyclic_group(2), "V": SPAN,
}
BASES = [("1",), ("2",), ("1", "D2"), ("2", "op2"), ("B2",), ("1", "2"), ("V",), ("V", "1")]


def build(names):
    return cat_sub({n: POOL[n] for n in names})


@pytest.fixture(scope="module")
def bases():
    return {names: build(names) for names in BASES}


@pytest.mark.parametrize("names", BASES, ids=",".join)
def test_existence_matches_opposite_iso_oracle(bases, names):
    # in a full sub-2-category of Cat, x has a strict opposite iff some object is isomorphic to op x
    A = bases[names]
    for x in A.objects:
        expected = any(check_isomorphism(op_category(POOL[x]), POOL[y]).found for y in A.objects)
        r = find_strict_opposite(A, x)
        assert r.found == expected
        if not expected:
            assert r.definite_negative


@pytest.mark.parametrize("names", [b for b in BASES if "V" not in b], ids=",".join)
def test_every_witness_verifies(bases, names):
    A = bases[names]
    for x in A.objects:
        ws = all_strict_opposites(A, x)
        assert ws
        for w in ws:
            assert verify_witness(A, w).ok
            assert verify_copower(A, x, w).ok


def test_span_and_cospan_are_mutual_opposites():
    A = cat_sub({"V": SPAN, "W": op_category(SPAN)})
    w = find_strict_opposite(A, "V").witness
    assert w.x_op == "W"
    assert copower_power_correspondence(A, "V", w, {"V": w}).ok
    w2 = find_strict_opposite(A, "W").witness
    phi, phi_inv, rep = double_opposite(A, w, w2)
    assert rep.ok and phi is not None


def test_double_opposite_rejects_mismatched_witnesses(bases):
    A = bases[("2", "op2")]
    w = find_strict_opposite(A, "2", candidates=["op2"]).witness
    _, _, rep = double_opposite(A, w, w)
    assert rep.has_structural


def test_prefer_self(bases):
    A = bases[("2", "op2")]
    assert find_strict_opposite(A, "2", prefer_self=True).witness.x_op == "2"
    assert find_strict_opposite(A, "2", candidates=["op2"]).witness.x_op == "op2"


def test_map_witness_under_identity(bases):
    A = bases[("1", "D2")]
    I = identity_variance_functor(A)
    for x in A.objects:
        w = find_strict_opposite(A, x).witness
        m = map_witness(I, w)
        assert (m.x, m.x_op, m.chi, m.xi) == (w.x, w.x_op, w.chi, w.xi)


@pytest.mark.parametrize("names", [("1",), ("V",), ("1", "2")], ids=",".join)
def test_completion_has_opposites_for_everything(names):
    A = underlying_2cat(build(names))
    C, embed = complete_strict_opposites(A)
    assert len(C.objects) == 2 * len(A.objects)
    assert validate_contra_2cat(C).ok
    assert validate_variance_functor(embed).ok
    for p in C.objects:
        w = completion_witness(C, p)
        assert verify_witness(C, w).ok
        x, e = p.rsplit("|", 1)
        assert w.x_op == tagged(x, NEG[e])


@settings(max_examples=10)
@given(st.sampled_from([("1",), ("2",), ("1", "D2"), ("2", "op2"), ("B2",)]), st.integers(0, 50))
def test_seeded_involutions_are_strong(names, seed):
    A = build(names)
    S = extract_strong_involution(A, seeded_witnesses(A, seed))
    assert validate_strong_involution(S).ok
    for x in S.base.objects:
        assert S.obj_map[x] in S.base.objects


def test_extraction_fails_without_opposites():
    with pytest.raises(ValueError):
        extract_strong_involution(build(("V", "1")))


@pytest.mark.parametrize("names", [("1",), ("1", "D2"), ("B2",)], ids=",".join)
def test_strictify_strong_small(names):
    S = extract_strong_involution(build(names))
    St, E, cert = strictify_strong(S)
    assert validate_strict_involution(St).ok
    assert validate_duality_two_functor(E).ok
    o = St.obj_map
    assert all(o[o[p]] == p for p in St.base.objects)
    assert cert.obj_map and set(cert.obj_map.values()) <= set(St.base.objects)
