import itertools

import pytest
from hypothesis import given, strategies as st

from dualinv.fincat import (
    arrow_category,
    functor_category_data,
    iter_functors,
    op_category,
    pair_id,
    terminal_category,
)
from dualinv.varcat import (
    ASSOC_FAMILIES,
    AXIOM_FAMILIES,
    UNIT_FAMILIES,
    Cell1,
    Cell2,
    Pasting,
    VarianceTransformation,
    cat_sub,
    certify_functor,
    comp_keys,
    compose_variance_functors,
    full_inclusion,
    hom_functors_of,
    identity_variance_functor,
    replace_comp_entry,
    sample_cat_sub,
    underlying_2cat,
    validate_contra_2cat,
    validate_variance_functor,
    validate_variance_transformation,
)
from dualinv.vmonoidal import act, mul

SAMPLES = ["1", "2", "2,op2", "1,D2", "1,2", "I", "B2", "1,B2"]


@pytest.fixture(scope="module")
def samples():
    return {k: sample_cat_sub(k) for k in SAMPLES}


def test_family_names():
    assert len(UNIT_FAMILIES) == 4 and len(ASSOC_FAMILIES) == 8
    assert len(set(AXIOM_FAMILIES)) == 12


@pytest.mark.parametrize("kind", SAMPLES)
def test_samples_valid(samples, kind):
    A = samples[kind]
    rep = validate_contra_2cat(A)
    assert rep.ok, rep.sorted_findings()[:3]


@pytest.mark.parametrize("kind", SAMPLES)
def test_hom_parts_are_functor_categories(samples, kind):
    A = samples[kind]
    cats = {"1": terminal_category(), "2": arrow_category(), "op2": op_category(arrow_category())}
    for (x, y), V in A.hom.items():
        if x in cats and y in cats:
            for g in ("+", "-"):
                n = sum(1 for _ in iter_functors(act(g, cats[x]), cats[y]))
                assert len(V.part(g).objects) == n


@pytest.mark.parametrize("kind", ["2,op2", "1,2", "1,B2"])
def test_one_cell_composition_is_functor_composition(samples, kind):
    # composite of F: g·x → y and G: h·y → z acts as G∘F on ids, since op keeps ids
    A = samples[kind]
    src = _named(kind)
    for x, y, z, h, g in comp_keys(A.objects):
        inner = functor_category_data(act(g, src[x]), src[y])
        outer = functor_category_data(act(h, src[y]), src[z])
        target = functor_category_data(act(mul(g, h), src[x]), src[z])
        for i, F in enumerate(inner.functors):
            for j, G in enumerate(outer.functors):
                got = A.compose1(x, y, z, h, g, f"fun:#{j}", f"fun:#{i}")
                T = target.functors[int(got.split("#")[1])]
                assert T.obj_map == {a: G.obj_map[F.obj_map[a]] for a in F.obj_map}
                assert T.mor_map == {m: G.mor_map[F.mor_map[m]] for m in F.mor_map}


def _named(kind):
    from dualinv.fincat import cyclic_group, discrete_category, walking_iso
    pool = {"1": terminal_category(), "2": arrow_category(), "op2": op_category(arrow_category()),
            "D2": discrete_category(2), "I": walking_iso(), "B2": cyclic_group(2)}
    return {n: pool[n] for n in kind.split(",")}


def test_naming_of_list_input():
    A = cat_sub([terminal_category(), arrow_category()])
    assert A.objects == ("C0", "C1")
    assert validate_contra_2cat(A).ok


@pytest.mark.parametrize("kind", SAMPLES)
def test_underlying_is_idempotent_and_valid(samples, kind):
    U = underlying_2cat(samples[kind])
    assert not U.has_contravariance
    assert validate_contra_2cat(U).ok
    assert underlying_2cat(U) == U


@pytest.mark.parametrize("side", ["left", "right"])
def test_unit_mutation_is_reported_in_its_unit_family(samples, side):
    A = samples["2"]
    key = ("2", "2", "2", "+", "+")
    u, F = A.unit["2"], A.comp[key]
    for f in A.cell("2", "2").objects:
        if f == u:
            continue
        cell = pair_id(u, f) if side == "left" else pair_id(f, u)
        wrong = next(t for t in F.target.objects if t != F.obj_map[cell])
        rep = validate_contra_2cat(replace_comp_entry(A, key, cell, wrong, level="obj"))
        assert f"unit:{side}:+" in rep.families()
        assert f"unit:{'right' if side == 'left' else 'left'}:+" not in rep.families()


@given(st.sampled_from(["1,D2", "1,2", "2,op2"]), st.data())
def test_full_inclusion_of_each_object(kind, data):
    A = sample_cat_sub(kind)
    named = _named(kind)
    keep = data.draw(st.sampled_from(sorted(named)))
    sub = cat_sub({keep: named[keep]})
    F = full_inclusion(sub, A)
    assert validate_variance_functor(F).ok
    I = identity_variance_functor(A)
    assert compose_variance_functors(I, F).obj_map == F.obj_map


def test_identity_transformation_valid(samples):
    A = samples["1,2"]
    I = identity_variance_functor(A)
    alpha = VarianceTransformation(I, I, dict(A.unit))
    assert validate_variance_transformation(alpha).ok


def test_identity_functor_certifies(samples):
    A = samples["1,D2"]
    I = identity_variance_functor(A)
    cert, why = certify_functor(A, A, I.obj_map, hom_functors_of(I))
    assert why is None and cert.obj_map == I.obj_map


def test_inclusion_missing_object_not_biequivalence(samples):
    A = samples["1,2"]
    sub = cat_sub({"1": terminal_category()})
    F = full_inclusion(sub, A)
    cert, why = certify_functor(sub, A, F.obj_map, hom_functors_of(F))
    assert cert is None and "object" in why


def test_pasting_fold_orders_agree(samples):
    A = samples["2,op2"]
    P = Pasting(A)
    checked = 0
    for x, y, z in itertools.product(A.objects, repeat=3):
        for a, b in itertools.product(P.hom(x, y).mor_ids, P.hom(y, z).mor_ids):
            layers = [[Cell2(y, z, b), Cell2(x, y, a)], [P.tgt(Cell2(y, z, b)), P.tgt(Cell2(x, y, a))]]
            assert P.evaluate(layers, "left") == P.evaluate(layers, "right")
            checked += 1
    assert checked


def test_interchange_in_cat_sub(samples):
    A = samples["2"]
    P = Pasting(A)
    H = P.hom("2", "2")
    pairs = [(b, a) for (b, a) in H.compose]
    for (b2, b1), (a2, a1) in itertools.product(pairs, repeat=2):
        lhs = P.hcomp(P.vcomp(Cell2("2", "2", b2), Cell2("2", "2", b1)),
                      P.vcomp(Cell2("2", "2", a2), Cell2("2", "2", a1)))
        rhs = P.vcomp(P.hcomp(Cell2("2", "2", b2), Cell2("2", "2", a2)),
                      P.hcomp(Cell2("2", "2", b1), Cell2("2", "2", a1)))
        assert lhs == rhs


def test_whisker_by_identity_one_cell(samples):
    A = samples["1,2"]
    P = Pasting(A)
    for x, y in itertools.product(A.objects, repeat=2):
        for a in P.hom(x, y).mor_ids:
            c = Cell2(x, y, a)
            assert P.whisker(P.id1(y), c) == c
            assert P.whisker(c, P.id1(x)) == c
            assert P.comp1(P.id1(y), Cell1(x, y, P.hom(x, y).src[a])) == P.src(c)
