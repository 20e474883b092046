import itertools

import pytest
from hypothesis import given, settings, strategies as st

from dualinv.fincat import (
    arrow_category,
    check_isomorphism,
    discrete_category,
    empty_category,
    op_category,
    terminal_category,
    walking_iso,
)
from dualinv.vmonoidal import (
    VARIANCES,
    VObj,
    associator,
    certify_dual,
    check_adjunction,
    check_adjunction_factorwise,
    check_viso,
    compose_vmorphisms,
    count_vmorphisms,
    identity_vmorphism,
    invert_vmorphism,
    is_bijective,
    iter_vmorphisms,
    left_hom,
    left_unitor,
    mul,
    pentagon_holds,
    regression_vobjs,
    right_hom,
    right_unitor,
    tensor,
    tensor_morphism,
    triangle_holds,
    twisted_unit,
    twisted_unit_hom,
    twisted_units_product_iso,
    unit,
    validate_vmorphism,
    validate_vobj,
    zigzag_dual,
    zigzag_object,
)

PARTS = [empty_category(), terminal_category(), arrow_category(), discrete_category(2)]
vobjs = st.builds(VObj, st.sampled_from(PARTS), st.sampled_from(PARTS))
tiny = st.builds(VObj, st.sampled_from(PARTS[:3]), st.sampled_from(PARTS[:3]))


def sizes(C):
    return len(C.objects), len(C.morphisms)


@given(vobjs, vobjs)
def test_tensor_sizes_match_convolution(A, B):
    # direct count: (A⊗B)(h) is a disjoint union over g1 of A(g1) × B(g1·h)
    T = tensor(A, B)
    assert validate_vobj(T).ok
    for h in VARIANCES:
        objs = sum(len(A.part(g1).objects) * len(B.part(mul(g1, h)).objects) for g1 in VARIANCES)
        mors = sum(len(A.part(g1).morphisms) * len(B.part(mul(g1, h)).morphisms) for g1 in VARIANCES)
        assert sizes(T.part(h)) == (objs, mors)


def test_minus_factor_is_opposite():
    A = twisted_unit("-")
    B = VObj(empty_category(), arrow_category())
    T = tensor(A, B)
    # 1 × op(2) lands in the plus part
    assert check_isomorphism(T.plus, op_category(arrow_category())).found
    assert T.minus.objects == ()


@given(st.sampled_from(VARIANCES), st.sampled_from(VARIANCES))
def test_twisted_units_multiply(g, h):
    fw, bw = twisted_units_product_iso(g, h)
    assert is_bijective(fw) and is_bijective(bw)
    assert compose_vmorphisms(bw, fw) == identity_vmorphism(fw.source)
    assert check_viso(tensor(twisted_unit(g), twisted_unit(h)), twisted_unit(mul(g, h))).found


def test_unit_minus_squared_is_unit():
    assert check_viso(tensor(twisted_unit("-"), twisted_unit("-")), unit()).found


@settings(max_examples=25)
@given(tiny, tiny, tiny)
def test_associator_and_unitors_are_isos(A, B, C):
    a = associator(A, B, C)
    assert validate_vmorphism(a).ok and is_bijective(a)
    assert compose_vmorphisms(invert_vmorphism(a), a) == identity_vmorphism(a.source)
    for u in (left_unitor(A), right_unitor(A)):
        assert validate_vmorphism(u).ok and is_bijective(u)


@settings(max_examples=15)
@given(tiny, tiny, tiny, tiny)
def test_pentagon(A, B, C, D):
    assert pentagon_holds(A, B, C, D)


@given(vobjs, vobjs)
def test_triangle(A, B):
    assert triangle_holds(A, B)


@pytest.mark.parametrize("g", VARIANCES)
def test_twisted_unit_monoidal_laws(g):
    U = twisted_unit(g)
    V = VObj(arrow_category(), walking_iso())
    assert pentagon_holds(U, V, U, U)
    assert triangle_holds(U, V) and triangle_holds(V, U)


def test_tensor_morphism_functorial():
    A, B = VObj(arrow_category(), terminal_category()), VObj(terminal_category(), arrow_category())
    fs = list(iter_vmorphisms(A, A))[:3]
    gs = list(iter_vmorphisms(B, B))[:3]
    for f1, f2 in itertools.product(fs, repeat=2):
        for g1, g2 in itertools.product(gs, repeat=2):
            lhs = tensor_morphism(compose_vmorphisms(f2, f1), compose_vmorphisms(g2, g1))
            rhs = compose_vmorphisms(tensor_morphism(f2, g2), tensor_morphism(f1, g1))
            assert lhs == rhs
    assert tensor_morphism(identity_vmorphism(A), identity_vmorphism(B)) == identity_vmorphism(tensor(A, B))


@given(vobjs, vobjs)
def test_homs_valid(B, C):
    assert validate_vobj(right_hom(B, C)).ok
    assert validate_vobj(left_hom(B, C)).ok


@pytest.mark.parametrize("h", VARIANCES)
@pytest.mark.parametrize("g", VARIANCES)
def test_hom_out_of_twisted_unit(h, g):
    A = VObj(arrow_category(), discrete_category(2))
    assert twisted_unit_hom(h, A, g).found


def test_hom_from_unit_is_identity_shape():
    A = VObj(arrow_category(), walking_iso())
    assert check_viso(right_hom(unit(), A), A).found


# full element-by-element currying on a seeded subset; the factorwise check covers the rest
SUBSET = [(A, B, C) for A, B, C in itertools.product(regression_vobjs()[:6], repeat=3)][::23]


@pytest.mark.parametrize("side", ["right", "left"])
@pytest.mark.parametrize("triple", SUBSET, ids=lambda t: "x".join(map(repr, t)))
def test_full_adjunction_on_subset(triple, side):
    A, B, C = triple
    r = check_adjunction(A, B, C, side)
    assert r.ok, r
    f = check_adjunction_factorwise(A, B, C, side)
    assert f.ok and (f.size_left, f.size_right) == (r.size_left, r.size_right)


@given(tiny, tiny)
def test_vmorphism_count_matches_enumeration(A, B):
    assert count_vmorphisms(A, B) == sum(1 for _ in iter_vmorphisms(A, B))


@pytest.mark.parametrize("g", VARIANCES)
def test_twisted_units_are_dualizable(g):
    r = certify_dual(twisted_unit(g))
    assert r.found
    p = r.witness
    A, B = p.object, p.dual
    assert zigzag_object(A, B, p.eta, p.eps) == identity_vmorphism(A)
    assert zigzag_dual(A, B, p.eta, p.eps) == identity_vmorphism(B)


def test_arrow_is_not_dualizable():
    r = certify_dual(VObj(arrow_category(), empty_category()))
    assert r.definite_negative
