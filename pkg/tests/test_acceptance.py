"""Acceptance gate: one test per criterion, each printing a CRITERION line."""
import hashlib
import itertools
import os
import subprocess
import sys

import pytest

from conftest import cat, pipeline, weak
from dualinv.cli.io import to_document
from dualinv.cli.mutate import candidates
from dualinv.fincat import pair_id
from dualinv.opposites import (
    double_opposite,
    extract_strong_involution,
    find_strict_opposite,
    strictify_strong,
    validate_duality_two_functor,
    validate_strict_involution,
    verify_copower,
    verify_power,
    verify_witness,
)
from dualinv.strictifier import (
    check_two_equivalence,
    independent_verify,
    yoneda_oracle,
)
from dualinv.varcat import AXIOM_FAMILIES, underlying_2cat, validate_contra_2cat
from dualinv.vmonoidal import (
    VARIANCES,
    certify_dual,
    check_adjunction_factorwise,
    compose_vmorphisms,
    identity_vmorphism,
    mul,
    regression_vobjs,
    twisted_unit,
    twisted_units_product_iso,
    unit,
    zigzag_dual,
    zigzag_object,
)
from dualinv.weakside import (
    PENTAGON_FAMILIES,
    contra_from_strong,
    has_nonidentity_constraints,
    involution_to_vbicat,
    lift_strict,
    strict_as_weak,
    validate_duality_pseudofunctor,
    validate_vbicat,
)


# ---------------------------------------------------------------- 1

def naive_axiom_failures(A) -> set[str]:
    """Unit and associativity families broken at the level of 1-cells, by direct table lookups."""
    bad = set()
    comp = lambda x, y, z, h, g, c, b: A.comp[(x, y, z, h, g)].obj_map[pair_id(c, b)]  # noqa: E731
    for x, y in itertools.product(A.objects, repeat=2):
        for g in VARIANCES:
            for a in A.cell(x, y, g).objects:
                if comp(x, y, y, "+", g, A.unit[y], a) != a:
                    bad.add(f"unit:left:{g}")
                if comp(x, x, y, g, "+", a, A.unit[x]) != a:
                    bad.add(f"unit:right:{g}")
    for x, y, z, w in itertools.product(A.objects, repeat=4):
        for g3, g2, g1 in itertools.product(VARIANCES, repeat=3):
            for c in A.cell(z, w, g3).objects:
                for b in A.cell(y, z, g2).objects:
                    for a in A.cell(x, y, g1).objects:
                        lhs = comp(x, y, w, mul(g2, g3), g1, comp(y, z, w, g3, g2, c, b), a)
                        rhs = comp(x, z, w, g3, mul(g1, g2), c, comp(x, y, z, g2, g1, b, a))
                        if lhs != rhs:
                            bad.add(f"assoc:{g3}{g2}{g1}")
    return bad


def shipped_mutants(A, per_family=2):
    """Composition-table rebinds chosen so that every axiom family is targeted twice."""
    chosen = {f: [] for f in AXIOM_FAMILIES}
    for m in candidates("contra2cat", A):
        mutant = m.apply()
        broken = naive_axiom_failures(mutant)
        for fam in sorted(broken):
            if len(chosen[fam]) < per_family:
                chosen[fam].append((m, mutant, broken))
                break
        if all(len(v) == per_family for v in chosen.values()):
            break
    return chosen


def test_criterion_1_validator(criterion):
    with criterion(1, "cat_sub({2,op2}) passes 12 axiom families; >= 24 mutants caught with the right family", 10):
        A = cat("2,op2")
        rep = validate_contra_2cat(A)
        assert rep.ok
        assert len(AXIOM_FAMILIES) == 12
        assert all(rep.checked.get(f, 0) > 0 for f in AXIOM_FAMILIES)
        assert max(len(V.part(g).morphisms) for V in A.hom.values() for g in VARIANCES) <= 9
        chosen = shipped_mutants(A)
        total = 0
        for fam, muts in chosen.items():
            assert len(muts) == 2, fam
            for m, mutant, predicted in muts:
                r = validate_contra_2cat(mutant)
                found = r.families() & set(AXIOM_FAMILIES)
                assert fam in found
                assert found == predicted, (m.address, found, predicted)
                total += 1
        assert total >= 24


# ---------------------------------------------------------------- 2

def test_criterion_2_v_algebra(criterion):
    with criterion(2, "tensor/hom adjunction on all triples of 20 VObjs; twisted-unit certificates", 5):
        objs = regression_vobjs()
        assert len(objs) >= 20
        for A, B, C in itertools.product(objs, repeat=3):
            for side in ("right", "left"):
                assert check_adjunction_factorwise(A, B, C, side).ok, (A, B, C, side)
        # 𝟙⁻ ⊗ 𝟙⁻ ≅ 𝟙 with mutually inverse maps
        fw, bw = twisted_units_product_iso("-", "-")
        assert fw.target == unit()
        assert compose_vmorphisms(bw, fw) == identity_vmorphism(fw.source)
        assert compose_vmorphisms(fw, bw) == identity_vmorphism(unit())
        # 𝟙⁻ is self-dual with on-the-nose zig-zags
        m = twisted_unit("-")
        res = certify_dual(m)
        assert res.found
        d = res.witness
        assert d.dual == m
        assert zigzag_object(d.object, d.dual, d.eta, d.eps) == identity_vmorphism(m)
        assert zigzag_dual(d.object, d.dual, d.eta, d.eps) == identity_vmorphism(m)
        for alpha in d.triangle_object + d.triangle_dual:
            assert all(alpha.target.target.identity[alpha.target.obj_map[o]] == c
                       for o, c in alpha.components.items())


# ---------------------------------------------------------------- 3

def test_criterion_3_opposites(criterion):
    with criterion(3, "opposites in cat_sub({2,op2}) pass; cat_sub({2}) negative clause not met",
                   unmet="2 ≅ 2ᵒᵖ, so cat_sub({2}) has a verified strict opposite (strict xfail below)"):
        A = cat("2,op2")
        wits = {}
        for x in A.objects:
            r = find_strict_opposite(A, x)
            assert r.found
            wits[x] = r.witness
            assert verify_witness(A, r.witness).ok
        for x in A.objects:
            assert verify_copower(A, x, wits[x]).ok
            assert verify_power(A, x, wits[x], wits).ok  # the dual characterization
        w = find_strict_opposite(A, "2", candidates=["op2"]).witness
        w2 = find_strict_opposite(A, "op2", candidates=["2"]).witness
        phi, phi_inv, rep = double_opposite(A, w, w2)
        assert rep.ok


def test_criterion_3_cat_sub_2_has_self_opposite():
    """The analysis behind the unattainable clause: the witness found in cat_sub({2}) verifies."""
    A = cat("2")
    r = find_strict_opposite(A, "2")
    assert r.found and r.witness.x_op == "2"
    assert verify_witness(A, r.witness).ok


@pytest.mark.xfail(strict=True, reason="2 ≅ 2ᵒᵖ, so cat_sub({2}) has a strict opposite; a definite negative would be false")
def test_criterion_3_cat_sub_2_negative():
    assert find_strict_opposite(cat("2"), "2").status == "none"


# ---------------------------------------------------------------- 4

def test_criterion_4_strong_to_strict(criterion):
    with criterion(4, "strictify_strong doubles objects, (−)°° = Id literally, certificate verified", 30):
        A = cat("2,op2")
        S = extract_strong_involution(A)
        St, E, cert = strictify_strong(S)
        B, o = St.base, St.obj_map
        assert len(B.objects) == 2 * len(A.objects)
        assert validate_strict_involution(St).ok
        for p in B.objects:
            assert o[o[p]] == p
        for p, q in itertools.product(B.objects, repeat=2):
            D1, D2 = St.D[(p, q)], St.D[(o[p], o[q])]
            C = B.cell(p, q)
            assert all(D2.obj_map[D1.obj_map[c]] == c for c in C.objects)
            assert all(D2.mor_map[D1.mor_map[m]] == m for m in C.mor_ids)
        assert validate_duality_two_functor(E).ok
        assert independent_verify(cert).ok


# ---------------------------------------------------------------- 5

DEFORMED = [("1", 1), ("1", 2), ("B2", 1), ("B2", 2), ("B2", 3), ("1,D2", 1), ("1,D2", 2), ("1,B2", 1),
            ("1,2", 1), ("2,op2", 3), ("2,op2", 7)]


def test_criterion_5_pentagons(criterion):
    with criterion(5, f"{len(DEFORMED)} deformed weak involutions: 16 pentagon families and unit axioms", 120):
        assert len(PENTAGON_FAMILIES) == 16
        nonstrict = 0
        for kind, seed in DEFORMED:
            W = weak(kind, seed)
            nonstrict += has_nonidentity_constraints(W)
            rep = validate_vbicat(involution_to_vbicat(W))
            assert rep.ok, (kind, seed, rep.sorted_findings()[:3])
            assert all(rep.checked.get(f, 0) > 0 for f in PENTAGON_FAMILIES)
        assert len(DEFORMED) >= 10 and nonstrict >= 5


# ---------------------------------------------------------------- 6

STRICT_BASES = ["1", "2", "1,D2", "B2", "B3", "1,B2", "1,2", "2,op2", "I"]


def test_criterion_6_strict_lift_agrees(criterion):
    with criterion(6, "strict inputs: involution_to_vbicat equals the direct construction byte for byte"):
        for kind in STRICT_BASES:
            S = extract_strong_involution(cat(kind))
            a = to_document("vbicat", involution_to_vbicat(strict_as_weak(S))).dumps()
            b = to_document("vbicat", lift_strict(contra_from_strong(S))).dumps()
            assert a == b, kind


# ---------------------------------------------------------------- 7

ORACLE = [("1", None), ("1", 4), ("1,D2", None), ("1,D2", 5), ("B2", None), ("B2", 1), ("B2", 2), ("1,B2", None)]


def test_criterion_7_yoneda_oracle(criterion):
    with criterion(7, "Yoneda oracle: module homs match the table prediction; guided == raw", 300):
        for kind, seed in ORACLE:
            B = involution_to_vbicat(weak(kind, seed))
            if len(B.objects) > 3 or max(len(B.cell(x, y, g).morphisms) for x in B.objects
                                         for y in B.objects for g in VARIANCES) > 4:
                continue
            rep = yoneda_oracle(B)
            assert rep.ok, (kind, seed, rep.sorted_findings()[:3])
            assert rep.checked["yoneda-equivalence"] == rep.checked["guided-vs-raw"] == 8 * len(B.objects) ** 2


# ---------------------------------------------------------------- 8

def test_criterion_8_weak_to_strict(criterion):
    with criterion(8, "deformed cat_sub({2,op2}): strict suite, θ axioms, certificate re-verified", 600):
        W = weak("2,op2", 7)
        assert has_nonidentity_constraints(W)
        res = pipeline("2,op2", 7, "onestep")
        assert validate_strict_involution(res.involution).ok
        assert validate_duality_pseudofunctor(res.duality).ok
        assert independent_verify(res.certificate).ok
        assert not res.already_strict


# ---------------------------------------------------------------- 9

DIFFERENTIAL = [("1", None), ("1,D2", None), ("B2", None), ("B2", 1), ("1,B2", None), ("1,2", None),
                ("2,op2", None), ("2,op2", 7)]


def test_criterion_9_differential(criterion):
    with criterion(9, "onestep and stepwise outputs connected by a constructed 2-equivalence"):
        for kind, seed in DIFFERENTIAL:
            one, step = pipeline(kind, seed, "onestep"), pipeline(kind, seed, "stepwise")
            F = step.comparison
            assert check_two_equivalence(F).ok, (kind, seed)
            # the involutions live on the plain 2-categories underlying the comparison's ends
            assert to_document("contra2cat", underlying_2cat(F.source)).dumps() == \
                to_document("contra2cat", step.involution.base).dumps()
            assert to_document("contra2cat", underlying_2cat(F.target)).dumps() == \
                to_document("contra2cat", one.involution.base).dumps()
            assert validate_duality_pseudofunctor(step.duality).ok
            assert independent_verify(step.certificate).ok


# ---------------------------------------------------------------- 10

ARTIFACTS = r"""
import hashlib, sys
sys.path.insert(0, sys.argv[1])
import test_acceptance as t
from conftest import cat, weak
from dualinv.cli.io import to_document
from dualinv.opposites import extract_strong_involution, strictify_strong
from dualinv.strictifier import yoneda_oracle
from dualinv.varcat import validate_contra_2cat
from dualinv.weakside import involution_to_vbicat, validate_vbicat
out = []
A = cat("2,op2")
for fam, muts in sorted(t.shipped_mutants(A).items()):
    for m, mutant, _ in muts:
        out.append(to_document("report", validate_contra_2cat(mutant)).dumps())
St, E, cert = strictify_strong(extract_strong_involution(A))
out.append(to_document("certificate", cert).dumps())
for kind, seed in t.DEFORMED[:6]:
    B = involution_to_vbicat(weak(kind, seed))
    out.append(to_document("vbicat", B).dumps() + to_document("report", validate_vbicat(B)).dumps())
out.append(to_document("report", yoneda_oracle(involution_to_vbicat(weak("1,D2", 5)))).dumps())
print(hashlib.sha256("".join(out).encode()).hexdigest())
"""


def _run(args, env_extra, cwd):
    env = dict(os.environ, **env_extra)
    return subprocess.run(args, capture_output=True, text=True, env=env, cwd=cwd, timeout=600)


def test_criterion_10_determinism(criterion, tmp_path):
    with criterion(10, "byte-identical artifacts across runs, hash seeds and --threads"):
        here = os.path.dirname(__file__)
        digests = []
        for seed in ("1", "2"):
            r = _run([sys.executable, "-c", ARTIFACTS, here], {"PYTHONHASHSEED": seed}, here)
            assert r.returncode == 0, r.stderr
            digests.append(r.stdout.strip())
        assert digests[0] == digests[1]

        cli = [sys.executable, "-m", "dualinv"]
        w = tmp_path / "w.json"
        assert _run(cli + ["generate", "deformed-weak", "--cats", "2,op2", "--seed", "7", "-o", str(w)], {},
                    tmp_path).returncode == 0
        c = tmp_path / "c.json"
        assert _run(cli + ["generate", "catsub", "--cats", "2,op2", "-o", str(c)], {}, tmp_path).returncode == 0
        runs = []
        for threads, hs in (("1", "1"), ("2", "2")):
            d = tmp_path / f"out{threads}"
            r = _run(cli + ["strictify", str(w), "--path", "both", "--threads", threads, "--out-dir", str(d)],
                     {"PYTHONHASHSEED": hs}, tmp_path)
            assert r.returncode == 0, r.stderr
            v = _run(cli + ["validate", str(c), "--threads", threads], {"PYTHONHASHSEED": hs}, tmp_path)
            assert v.returncode == 0
            files = sorted(p.name for p in d.iterdir())
            assert len(files) == 6
            runs.append(({f: hashlib.sha256((d / f).read_bytes()).hexdigest() for f in files}, v.stdout))
        assert runs[0] == runs[1]
