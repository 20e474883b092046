import itertools

import pytest
from hypothesis import given, strategies as st

from dualinv.fincat import (
    Budget,
    BudgetExceeded,
    FinCat,
    NatTransfData,
    arrow_category,
    chain_category,
    check_equivalence,
    check_isomorphism,
    compose_functors,
    coproduct_category,
    cyclic_group,
    discrete_category,
    empty_category,
    functor_category,
    horizontal_compose,
    identity_functor,
    identity_transformation,
    iter_functors,
    iter_transformations,
    make_category,
    monoid_category,
    op_category,
    poset_category,
    product_category,
    product_projections,
    solve_constraints,
    terminal_category,
    validate_category,
    validate_functor,
    validate_transformation,
    verify_equivalence_witness,
    vertical_compose,
    walking_iso,
    whisker,
)

NAMED = {
    "0": empty_category(), "1": terminal_category(), "2": arrow_category(), "D2": discrete_category(2),
    "I": walking_iso(), "B2": cyclic_group(2), "B3": cyclic_group(3), "[3]": chain_category(3),
}


@st.composite
def posets(draw, max_n=4):
    n = draw(st.integers(0, max_n))
    rel = {(i, j) for i in range(n) for j in range(i + 1, n) if draw(st.booleans())}
    changed = True
    while changed:  # transitive closure
        extra = {(i, k) for (i, j) in rel for (j2, k) in rel if j == j2} - rel
        changed = bool(extra)
        rel |= extra
    objs = [str(i) for i in range(n)]
    return poset_category(objs, [(f"{i}<{j}", str(i), str(j)) for i, j in sorted(rel)])


small_cats = st.one_of(st.sampled_from(sorted(NAMED)).map(NAMED.get), posets(3))


def brute_functor_count(A: FinCat, B: FinCat) -> int:
    """Count structure-preserving maps by trying every assignment of objects and morphisms."""
    n = 0
    for om in itertools.product(B.objects, repeat=len(A.objects)):
        o = dict(zip(A.objects, om))
        choices = [[c for c in B.mor_ids if B.src[c] == o[s] and B.tgt[c] == o[t]] for m, s, t in A.morphisms]
        for mm in itertools.product(*choices):
            m = dict(zip(A.mor_ids, mm))
            if any(m[A.identity[a]] != B.identity[o[a]] for a in A.objects):
                continue
            if all(B.compose[(m[g], m[f])] == m[h] for (g, f), h in A.compose.items()):
                n += 1
    return n


@pytest.mark.parametrize("name", sorted(NAMED))
def test_named_categories_valid(name):
    assert validate_category(NAMED[name]).ok


def test_unit_law_mutation_reported_at_pair():
    C = arrow_category()
    bad = FinCat(C.objects, C.morphisms, C.identity, {**C.compose, ("a", "id:0"): "id:0"})
    rep = validate_category(bad)
    assert not rep.ok
    assert any(f.address == ("a", "id:0") for f in rep.findings)


def test_non_composable_entry_is_structural():
    C = arrow_category()
    bad = FinCat(C.objects, C.morphisms, C.identity, {**C.compose, ("a", "a"): "a"})
    rep = validate_category(bad)
    assert rep.has_structural and ("a", "a") in [f.address for f in rep.findings]


def test_five_element_monoid():
    # max-plus-like monoid on {0..4} with x*y = min(x + y, 4): associative, unit 0
    els = [f"m{i}" for i in range(5)]
    table = {(f"m{i}", f"m{j}"): f"m{min(i + j, 4)}" for i in range(5) for j in range(5)}
    M = monoid_category(els, table, "m0")
    assert validate_category(M).ok
    # independent triple check
    for a, b, c in itertools.product(els, repeat=3):
        assert table[(table[(a, b)], c)] == table[(a, table[(b, c)])]


@given(small_cats)
def test_op_is_strict_involution(C):
    assert op_category(op_category(C)) == C
    assert validate_category(op_category(C)).ok


def test_op_of_arrow_reverses_with_same_ids():
    O = op_category(arrow_category())
    assert ("a", "1", "0") in O.morphisms


def test_op_chain_isomorphic_to_chain():
    assert check_isomorphism(op_category(chain_category(2)), chain_category(2)).found


@given(small_cats, small_cats)
def test_products_and_coproducts_valid(A, B):
    P = product_category(A, B)
    assert validate_category(P).ok
    assert len(P.morphisms) == len(A.morphisms) * len(B.morphisms)
    S = coproduct_category(A, B)
    assert validate_category(S).ok
    assert len(S.objects) == len(A.objects) + len(B.objects)
    for F in product_projections(A, B):
        assert validate_functor(F).ok


def test_product_of_arrows_has_nine_morphisms():
    assert len(product_category(arrow_category(), arrow_category()).morphisms) == 9


def test_product_with_terminal_is_iso_via_projection():
    C = walking_iso()
    P = product_category(terminal_category(), C)
    _, p2 = product_projections(terminal_category(), C)
    assert check_isomorphism(P, C).found
    assert sorted(p2.obj_map.values()) == sorted(C.objects)


def test_coproduct_with_empty():
    C = arrow_category()
    S = coproduct_category(empty_category(), C)
    assert check_isomorphism(S, C).found


@given(small_cats, small_cats)
def test_functor_count_matches_brute_force(A, B):
    assert len(functor_category(A, B).objects) == brute_functor_count(A, B)


def test_fun_2_2_is_three_chain():
    F = functor_category(arrow_category(), arrow_category())
    assert len(F.objects) == 3
    assert check_isomorphism(F, chain_category(3)).found


def test_fun_from_empty_and_terminal():
    C = walking_iso()
    assert check_isomorphism(functor_category(empty_category(), C), terminal_category()).found
    assert check_isomorphism(functor_category(terminal_category(), C), C).found


@given(small_cats, small_cats)
def test_isomorphism_symmetric(A, B):
    assert check_isomorphism(A, B).found == check_isomorphism(B, A).found


def test_isomorphism_examples():
    C = walking_iso()
    r = check_isomorphism(C, C)
    assert r.found
    r = check_isomorphism(arrow_category(), op_category(arrow_category()))
    assert r.found
    F = r.witness[0]
    assert F.obj_map == {"0": "1", "1": "0"}
    r = check_isomorphism(arrow_category(), terminal_category())
    assert r.definite_negative


def test_equivalence_examples():
    r = check_equivalence(walking_iso(), terminal_category())
    assert r.found and verify_equivalence_witness(r.witness).ok
    r = check_equivalence(arrow_category(), terminal_category())
    assert r.definite_negative
    r = check_equivalence(cyclic_group(2), cyclic_group(2))
    assert r.found and verify_equivalence_witness(r.witness).ok


@given(small_cats, small_cats)
def test_equivalence_witnesses_reverify(A, B):
    r = check_equivalence(A, B)
    if r.found:
        assert verify_equivalence_witness(r.witness).ok


@given(small_cats, small_cats, small_cats)
def test_functor_composition_associative_and_unital(A, B, C):
    Fs = list(itertools.islice(iter_functors(A, B), 3))
    Gs = list(itertools.islice(iter_functors(B, C), 3))
    Hs = list(itertools.islice(iter_functors(C, A), 3))
    for F in Fs:
        assert compose_functors(F, identity_functor(A)) == F
        assert compose_functors(identity_functor(B), F) == F
        for G in Gs:
            GF = compose_functors(G, F)
            assert validate_functor(GF).ok
            for H in Hs:
                assert compose_functors(H, GF) == compose_functors(compose_functors(H, G), F)


def test_whisker_identity():
    A, B = arrow_category(), chain_category(3)
    for F in iter_functors(A, B):
        for G in iter_functors(B, B):
            assert whisker(G, identity_transformation(F)).components == \
                identity_transformation(compose_functors(G, F)).components
            assert whisker(identity_transformation(G), F).components == \
                identity_transformation(compose_functors(G, F)).components


def test_interchange_on_grid():
    A, B, C = arrow_category(), chain_category(3), chain_category(3)
    F = list(iter_functors(A, B))
    G = list(iter_functors(B, C))
    checked = 0
    for F1, F2, F3 in itertools.product(F[:4], repeat=3):
        a1 = next(iter(iter_transformations(F1, F2)), None)
        a2 = next(iter(iter_transformations(F2, F3)), None)
        if a1 is None or a2 is None:
            continue
        for G1, G2, G3 in itertools.product(G[:4], repeat=3):
            b1 = next(iter(iter_transformations(G1, G2)), None)
            b2 = next(iter(iter_transformations(G2, G3)), None)
            if b1 is None or b2 is None:
                continue
            lhs = horizontal_compose(vertical_compose(b2, b1), vertical_compose(a2, a1))
            rhs = vertical_compose(horizontal_compose(b2, a2), horizontal_compose(b1, a1))
            # direct evaluation: component at a is G3(a2∘a1)_a ∘ (b2∘b1)_{F1 a}
            for a in A.objects:
                direct = C.compose[(G3.mor_map[B.compose[(a2.components[a], a1.components[a])]],
                                    C.compose[(b2.components[F1.obj_map[a]], b1.components[F1.obj_map[a]])])]
                assert lhs.components[a] == rhs.components[a] == direct
            assert validate_transformation(lhs).ok
            checked += 1
    assert checked > 0


def test_transformations_are_natural():
    A, B = arrow_category(), arrow_category()
    for F, G in itertools.product(iter_functors(A, B), repeat=2):
        for alpha in iter_transformations(F, G):
            assert validate_transformation(alpha).ok
    bad = NatTransfData(identity_functor(A), identity_functor(A), {"0": "a", "1": "id:1"})
    assert not validate_transformation(bad).ok


def test_budget_exceeded_is_distinct():
    b = Budget(2, "demo")
    b.tick()
    b.tick()
    with pytest.raises(BudgetExceeded):
        b.tick()
    with pytest.raises(BudgetExceeded):
        list(iter_functors(chain_category(3), chain_category(3), budget=Budget(1, "functors")))


@given(st.integers(1, 4), st.integers(2, 3), st.data())
def test_solve_constraints_matches_brute_force(nvars, dom, data):
    variables = list(range(nvars))
    domains = {v: list(range(dom)) for v in variables}
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(variables), st.sampled_from(variables)), max_size=4))
    cons = [((a, b), (lambda w, a=a, b=b: w[a] != w[b] or a == b)) for a, b in pairs]
    got = solve_constraints(variables, domains, cons)
    brute = [dict(zip(variables, vals)) for vals in itertools.product(range(dom), repeat=nvars)
             if all(vals[a] != vals[b] or a == b for a, b in pairs)]
    assert got == brute


def test_make_category_fills_identities():
    C = make_category(["x", "y"], [("f", "x", "y")])
    assert C.compose[("f", "id:x")] == "f" and C.compose[("id:y", "f")] == "f"
    assert validate_category(C).ok
