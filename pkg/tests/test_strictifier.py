import itertools
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from conftest import cat, pipeline, weak
from dualinv.fincat import BudgetExceeded, complete_to_equivalence
from dualinv.opposites import extract_strong_involution, tagged
from dualinv.strictifier import (
    StageFailure,
    StrictifyBudget,
    build_strict_image,
    certify_biequivalence,
    check_size,
    check_two_equivalence,
    compose_module_morphisms,
    formal_opposite_module,
    identity_module_morphism,
    independent_verify,
    module_hom_category,
    representable_module,
    strictify_pipeline,
    table_prediction,
    validate_module,
    validate_module_morphism,
    validate_strict_image,
    yoneda_embedding,
    yoneda_morphism,
    yoneda_oracle,
    yoneda_oracle_functor,
)
from dualinv.varcat import cat_sub, sample_cat_sub
from dualinv.vmonoidal import VARIANCES, mul
from dualinv.weakside import (
    deformed_weak,
    has_nonidentity_constraints,
    involution_to_vbicat,
    lift_strict,
    strict_as_weak,
    validate_duality_pseudofunctor,
)


def vb(kind, seed=None):
    return involution_to_vbicat(weak(kind, seed))


@pytest.mark.parametrize("kind,seed", [("1", None), ("1,D2", None), ("B2", 1)])
def test_representables_and_opposites_valid(kind, seed):
    B = vb(kind, seed)
    for z in B.objects:
        Y = representable_module(B, z)
        assert validate_module(Y).ok
        Yo = formal_opposite_module(Y)
        assert validate_module(Yo).ok
        assert formal_opposite_module(Yo) == Y
        assert Yo.generator == (z, "-")


def test_broken_unitor_detected():
    B = vb("B2", 1)
    Y = representable_module(B, "B2")
    (x, e), table = sorted(Y.runit.items())[0]
    m, c = sorted(table.items())[0]
    C = Y.parts[(x, e)]
    wrong = next(s for s in C.mor_ids if s != c)
    bad = replace(Y, runit={**Y.runit, (x, e): {**table, m: wrong}})
    assert not validate_module(bad).ok


@pytest.mark.parametrize("kind,seed", [("1,D2", None), ("B2", 1)])
def test_yoneda_morphisms_and_identity(kind, seed):
    B = vb(kind, seed)
    mods = [representable_module(B, z) for z in B.objects]
    mods += [formal_opposite_module(M) for M in mods]
    for M in mods:
        idm = identity_module_morphism(M)
        assert validate_module_morphism(idm).ok
        assert compose_module_morphisms(idm, idm).key == idm.key
    for M, N in itertools.product(mods, repeat=2):
        for g in VARIANCES:
            w, e0 = M.generator
            for t in N.parts[(w, mul(g, e0))].objects:
                th = yoneda_morphism(M, N, g, t)
                assert validate_module_morphism(th).ok
                assert th.obj(w, e0, B.cat.unit[w]) == t


@pytest.mark.parametrize("kind,seed", [("1", None), ("B2", 1)])
def test_hom_category_matches_prediction(kind, seed):
    B = vb(kind, seed)
    for z, w in itertools.product(B.objects, repeat=2):
        M, N = representable_module(B, z), representable_module(B, w)
        for g in VARIANCES:
            H = module_hom_category(M, N, g)
            r = complete_to_equivalence(yoneda_oracle_functor(M, N, g, H))
            assert r.found
            assert len(H.cat.objects) >= len(table_prediction(B, M, N, g).objects)


@pytest.mark.parametrize("kind,seed", [("1", None), ("B2", 1)])
def test_guided_and_raw_agree(kind, seed):
    rep = yoneda_oracle(vb(kind, seed))
    assert rep.ok and rep.checked["guided-vs-raw"] > 0


def test_strict_image_and_embedding():
    B = vb("1,D2")
    I = build_strict_image(B)
    assert validate_strict_image(I).ok
    assert sorted(I.cat.objects) == sorted(tagged(z, e) for z in B.objects for e in VARIANCES)
    Y = yoneda_embedding(I)
    cert, why = certify_biequivalence(Y)
    assert why is None and independent_verify(cert).ok


def test_walking_iso_exceeds_default_budget():
    B = vb("I")
    with pytest.raises(BudgetExceeded):
        check_size(B, StrictifyBudget())
    with pytest.raises(BudgetExceeded):
        strictify_pipeline(weak("I"))
    check_size(B, StrictifyBudget(max_hom_morphisms=10 ** 3))


def test_object_budget():
    with pytest.raises(BudgetExceeded):
        check_size(lift_strict(cat("1,D2")), StrictifyBudget(max_objects=1))


def test_empty_input():
    W = strict_as_weak(extract_strong_involution(cat_sub({}, "empty")))
    for path in ("onestep", "stepwise"):
        R = strictify_pipeline(W, path)
        assert R.already_strict and R.involution.base.objects == ()


def test_unknown_path():
    with pytest.raises(ValueError):
        strictify_pipeline(weak("1"), "sideways")


def test_invalid_input_is_stage_failure():
    W = weak("B2", 1)
    bad = replace(W, iota={x: "no-such-cell" for x in W.iota})
    with pytest.raises(StageFailure) as e:
        strictify_pipeline(bad)
    assert e.value.stage == "input"


@pytest.mark.parametrize("path", ["onestep", "stepwise"])
@pytest.mark.parametrize("kind,seed", [("1", None), ("1,D2", None), ("B2", None), ("B2", 1), ("1,D2", 5)])
def test_pipeline_outputs(kind, seed, path):
    R = pipeline(kind, seed, path)
    S = R.involution
    o = S.obj_map
    assert all(o[o[p]] == p for p in S.base.objects)
    assert validate_duality_pseudofunctor(R.duality).ok
    assert independent_verify(R.certificate).ok
    assert R.already_strict == (not has_nonidentity_constraints(weak(kind, seed)))
    if path == "stepwise":
        assert check_two_equivalence(R.comparison).ok


@settings(max_examples=4)
@given(st.integers(0, 20))
def test_pipeline_on_seeded_deformations(seed):
    R = strictify_pipeline(deformed_weak(sample_cat_sub("B2"), seed))
    assert independent_verify(R.certificate).ok
