from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cat, weak
from dualinv.cli.io import to_document
from dualinv.fincat import FunctorData
from dualinv.opposites import extract_strong_involution
from dualinv.varcat import certify_functor, hom_functors_of, identity_variance_functor, underlying_2cat
from dualinv.weakside import (
    PENTAGON_FAMILIES,
    UNITALITY_FAMILIES,
    TransferRejected,
    canonical_weak_opposite,
    contra_from_strong,
    find_weak_opposite,
    has_nonidentity_constraints,
    identity_duality_pseudofunctor,
    involution_to_vbicat,
    lift_strict,
    replace_assoc_component,
    replace_theta,
    strict_as_weak,
    transfer_biequivalence,
    twisted_from_duality,
    validate_duality_pseudofunctor,
    validate_twisted_g_functor,
    validate_vbicat,
    validate_weak_involution,
    verify_weak_opposite,
)

KINDS = ["1", "1,D2", "B2", "2,op2"]
WEAK = [("1", None), ("1,D2", None), ("B2", None), ("B2", 1), ("B2", 2), ("1,D2", 5), ("1", 4)]


def test_family_counts():
    assert len(set(PENTAGON_FAMILIES)) == 16
    assert len(set(UNITALITY_FAMILIES)) == 4


@pytest.mark.parametrize("kind", KINDS)
def test_lift_of_strict_is_valid(kind):
    B = lift_strict(cat(kind))
    rep = validate_vbicat(B)
    assert rep.ok
    # identities everywhere: the associator component at any triple is an identity 2-cell
    for key, comps in B.assoc.items():
        x, y, z, w, k, h, g = key
        H = B.cat.cell(x, w, "+" if (g, h, k).count("-") % 2 == 0 else "-")
        assert all(c in H.identity_ids for c in comps.values())


@pytest.mark.parametrize("kind,seed", WEAK)
def test_weak_involutions_valid(kind, seed):
    W = weak(kind, seed)
    assert validate_weak_involution(W).ok
    if seed is None:
        assert not has_nonidentity_constraints(W)
    B = involution_to_vbicat(W)
    assert validate_vbicat(B).ok


@pytest.mark.parametrize("kind", ["1", "1,D2", "B2"])
def test_strict_data_has_identity_constraints(kind):
    assert not has_nonidentity_constraints(weak(kind))


def test_deformed_b2_is_genuinely_weak():
    assert has_nonidentity_constraints(weak("B2", 1))


@pytest.mark.parametrize("kind", ["1", "1,D2", "B2"])
def test_vbicat_of_strict_involution_is_lift(kind):
    # the bicategory of a strict involution is the lift of its contravariant 2-category, byte for byte
    S = extract_strong_involution(cat(kind))
    W = strict_as_weak(S)
    assert to_document("vbicat", involution_to_vbicat(W)) == to_document("vbicat", lift_strict(contra_from_strong(S)))
    assert W.base == underlying_2cat(cat(kind))


@pytest.mark.parametrize("kind,seed", [("B2", 1), ("1,D2", None), ("B2", None)])
def test_canonical_opposites_verify(kind, seed):
    W = weak(kind, seed)
    B = involution_to_vbicat(W)
    for x in W.base.objects:
        w = canonical_weak_opposite(W, B, x)
        assert verify_weak_opposite(B, w).ok
        assert find_weak_opposite(B, x).found


def test_assoc_mutation_non_inverse_detected():
    B = involution_to_vbicat(weak("B2", 1))
    hit = 0
    for key in sorted(B.assoc)[:40]:
        x, y, z, w, k, h, g = key
        for cells, c in sorted(B.assoc[key].items())[:2]:
            H = B.cat.cell(x, w, "+" if (g, h, k).count("-") % 2 == 0 else "-")
            wrong = next((m for m in H.mor_ids if m != c and (H.src[m], H.tgt[m]) == (H.src[c], H.tgt[c])), None)
            if wrong is None:
                continue
            rep = validate_vbicat(replace_assoc_component(B, key, cells, wrong))
            assert not rep.ok
            hit += 1
    assert hit


def test_identity_duality_pseudofunctor_valid():
    for kind, seed in [("1,D2", None), ("B2", 1)]:
        E = identity_duality_pseudofunctor(weak(kind, seed))
        assert validate_duality_pseudofunctor(E).ok
        assert validate_twisted_g_functor(twisted_from_duality(E)).ok


@pytest.mark.parametrize("kind,seed", [("1,D2", 5), ("2,op2", None), ("B2", 1)])
def test_theta_retype_rejected(kind, seed):
    W = weak(kind, seed)
    E = identity_duality_pseudofunctor(W)
    A, o = W.base, W.obj_map
    killed = 0
    for x in A.objects:
        H = A.cell(x, o[o[x]])
        th = E.theta[x]
        for m in H.mor_ids:
            if (H.src[m], H.tgt[m]) != (H.src[th], H.tgt[th]):
                rep = validate_duality_pseudofunctor(replace_theta(E, x, m))
                assert "theta-type" in rep.families()
                killed += 1
    assert killed or all(len(A.cell(x, o[o[x]]).mor_ids) == 1 for x in A.objects)


def test_theta_twisted_by_central_element_still_valid():
    # End(Id_B2) is Z/2, and twisting θ by the central σ shifts both sides of the θ axiom by σ
    W = weak("B2", 1)
    E = identity_duality_pseudofunctor(W)
    H = W.base.cell("B2", "B2")
    th = E.theta["B2"]
    parallel = [m for m in H.mor_ids if m != th and (H.src[m], H.tgt[m]) == (H.src[th], H.tgt[th])]
    assert len(parallel) == 1
    assert validate_duality_pseudofunctor(replace_theta(E, "B2", parallel[0])).ok


def _identity_transfer_inputs(W):
    A = W.base
    I = identity_variance_functor(A)
    hf = {(x, y): FunctorData(A.cell(x, y), A.cell(x, y), {f: f for f in A.cell(x, y).objects},
                              {m: m for m in A.cell(x, y).mor_ids}) for x in A.objects for y in A.objects}
    cert, why = certify_functor(A, A, I.obj_map, hom_functors_of(I))
    assert why is None
    iota = {x: A.unit[W.obj_map[x]] for x in A.objects}
    return dict(I.obj_map), hf, iota, cert


@pytest.mark.parametrize("kind,seed", [("1,D2", None), ("B2", 1)])
def test_transfer_along_identity(kind, seed):
    W = weak(kind, seed)
    E = transfer_biequivalence(W, W, *_identity_transfer_inputs(W))
    assert validate_duality_pseudofunctor(E).ok


def test_transfer_rejects_broken_certificate():
    W = weak("B2", 1)
    om, hf, iota, cert = _identity_transfer_inputs(W)
    with pytest.raises(TransferRejected):
        transfer_biequivalence(W, W, om, hf, iota, None)
    b, w = sorted(cert.object_witnesses.items())[0]
    E = W.base.cell(b, b)
    bad = next(m for m in E.mor_ids if (E.src[m], E.tgt[m]) != (E.src[w.unit], E.tgt[w.unit])) \
        if len(E.objects) > 1 else "missing"
    broken = replace(cert, object_witnesses={**cert.object_witnesses, b: replace(w, unit=bad)})
    with pytest.raises(TransferRejected) as e:
        transfer_biequivalence(W, W, om, hf, iota, broken)
    assert e.value.address[:2] == ("certificate", "object")
    with pytest.raises(TransferRejected):
        transfer_biequivalence(W, W, om, hf, {**iota, b: "no-such-cell"}, cert)


@settings(max_examples=8)
@given(st.integers(0, 30))
def test_deformations_stay_valid(seed):
    W = weak("B2", seed)
    assert validate_weak_involution(W).ok
