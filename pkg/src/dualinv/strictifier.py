"""Strictification through modules: representables, formal opposites and the strict image.

A module M over a V-bicategory B has a category M^e(x) for every object x and
variance e, and actions

    M^e(y) × e·B^h(x,y) → M^{eh}(x),   (m, a) ↦ m·a

with invertible coherence cells (m·b)·a ⇒ m·(b∘a) and m·1 ⇒ m.  The
representable Y_z has Y_z^e(x) = B^e(x,z) and acts by composition.  Module
morphisms and their transformations live in Cat, so the modules over B form a
strict 2-category with contravariance; its full sub-structure on the Y_z and
their formal opposites carries a strict involution.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .fincat import (
    Budget,
    BudgetExceeded,
    FinCat,
    FunctorData,
    Report,
    compose_functors,
    iter_functors,
    op_category,
    pair_id,
    solve_constraints,
    validate_functor,
)
from .opposites import NEG, OppositeWitness, StrictInvolution, complete_strict_opposites, extract_strong_involution, \
    tagged, validate_strict_involution
from .varcat import (
    BiequivalenceCertificate,
    ContraTwoCat,
    VarianceFunctor,
    certify_functor,
    comp_source,
    underlying_2cat,
    validate_contra_2cat,
    validate_variance_functor,
)
from .vmonoidal import VARIANCES, VMorphism, VObj, act, mul
from .weakside import (
    DualityPseudofunctorData,
    VBicat,
    WeakDualityInvolution,
    has_nonidentity_constraints,
    involution_to_vbicat,
    strict_as_weak,
    transfer_biequivalence,
    validate_duality_pseudofunctor,
    validate_vbicat,
    validate_weak_involution,
)


@dataclass(frozen=True)
class StrictifyBudget:
    max_objects: int = 6
    max_hom_morphisms: int = 8
    max_candidates: int = 10 ** 7


class StageFailure(RuntimeError):
    """A pipeline stage failed validation; ``stage`` names it."""

    def __init__(self, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.stage = stage
        self.detail = detail


def check_size(B: VBicat, budget: StrictifyBudget) -> None:
    if len(B.objects) > budget.max_objects:
        raise BudgetExceeded(f"{len(B.objects)} objects", budget.max_objects)
    for x in B.objects:
        for y in B.objects:
            for g in VARIANCES:
                n = len(B.cell(x, y, g).morphisms)
                if n > budget.max_hom_morphisms:
                    raise BudgetExceeded(f"hom ({x},{y},{g}) with {n} morphisms", budget.max_hom_morphisms)


# ---------------------------------------------------------------- modules

@dataclass(frozen=True, eq=False)
class ModuleData:
    """``parts[(x, e)]`` is M^e(x); ``action[(x, y, e, h)]`` is M^e(y) × e·B^h(x,y) → M^{eh}(x).

    ``assoc[(x, y, y2, e, h, g)][(m, b, a)]``: (m·b)·a ⇒ m·(b∘a) for m in M^e(y2),
    b in B^h(y,y2), a in B^g(x,y).  ``runit[(x, e)][m]``: m·1 ⇒ m.
    ``generator`` is (w, e0) when M is Y_w (e0 = +) or Y_w° (e0 = -).
    """

    over: VBicat
    parts: Mapping[tuple[str, str], FinCat]
    action: Mapping[tuple, FunctorData]
    assoc: Mapping[tuple, Mapping[tuple, str]]
    runit: Mapping[tuple, Mapping[str, str]]
    generator: tuple[str, str] | None = None
    name: str = ""

    @property
    def Fplus(self):
        return {x: self.parts[(x, "+")] for x in self.over.objects}

    @property
    def Fminus(self):
        return {x: self.parts[(x, "-")] for x in self.over.objects}

    def act1(self, x, y, e, h, m, a) -> str:
        return self.action[(x, y, e, h)].obj_map[pair_id(m, a)]

    def act2(self, x, y, e, h, s, t) -> str:
        return self.action[(x, y, e, h)].mor_map[pair_id(s, t)]

    @cached_property
    def key(self):
        return (tuple((k, self.parts[k].key) for k in sorted(self.parts)),
                tuple((k, self.action[k].key) for k in sorted(self.action)),
                tuple((k, tuple(sorted(self.assoc[k].items()))) for k in sorted(self.assoc)),
                tuple((k, tuple(sorted(self.runit[k].items()))) for k in sorted(self.runit)),
                self.generator)

    def __eq__(self, other):
        if not isinstance(other, ModuleData):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)


def representable_module(B: VBicat, z: str) -> ModuleData:
    obs = B.objects
    parts = {(x, e): B.cell(x, z, e) for x in obs for e in VARIANCES}
    action = {(x, y, e, h): B.cat.comp[(x, y, z, e, h)] for x in obs for y in obs
              for e in VARIANCES for h in VARIANCES}
    assoc = {(x, y, y2, e, h, g): B.assoc[(x, y, y2, z, e, h, g)] for x in obs for y in obs for y2 in obs
             for e in VARIANCES for h in VARIANCES for g in VARIANCES}
    runit = {(x, e): B.runit[(x, z, e)] for x in obs for e in VARIANCES}
    return ModuleData(B, parts, action, assoc, runit, (z, "+"), f"Y_{z}")


def formal_opposite_module(M: ModuleData) -> ModuleData:
    """(M°)^e(x) = M^{-e}(x)ᵒᵖ, acting by M's tables at -e, with inverted coherence cells."""
    B = M.over
    parts = {(x, e): op_category(M.parts[(x, NEG[e])]) for (x, e) in M.parts}
    action = {}
    for (x, y, e, h) in M.action:
        F = M.action[(x, y, NEG[e], h)]
        src = comp_source_module(parts, B, x, y, e, h)
        action[(x, y, e, h)] = FunctorData(src, parts[(x, mul(e, h))], F.obj_map, F.mor_map)
    assoc = {}
    for (x, y, y2, e, h, g) in M.assoc:
        C = M.parts[(x, mul(mul(NEG[e], h), g))]
        assoc[(x, y, y2, e, h, g)] = {k: C.inverse[v] for k, v in M.assoc[(x, y, y2, NEG[e], h, g)].items()}
    runit = {(x, e): {m: M.parts[(x, NEG[e])].inverse[v] for m, v in M.runit[(x, NEG[e])].items()}
             for (x, e) in M.runit}
    gen = None if M.generator is None else (M.generator[0], NEG[M.generator[1]])
    name = M.name[:-1] if M.name.endswith("°") else M.name + "°"
    return ModuleData(B, parts, action, assoc, runit, gen, name)


def comp_source_module(parts, B: VBicat, x, y, e, h) -> FinCat:
    from .fincat import product_category
    return product_category(parts[(y, e)], act(e, B.cell(x, y, h)))


def _vsrc(C: FinCat, s: str, g: str) -> str:
    return C.src[s] if g == "+" else C.tgt[s]


def _vtgt(C: FinCat, s: str, g: str) -> str:
    return C.tgt[s] if g == "+" else C.src[s]


def _as_view(C: FinCat, s: str, g: str) -> str:
    """The raw morphism read as going src → tgt in the g-view; inverse when g = -."""
    return s if g == "+" else C.inverse[s]


def validate_module(M: ModuleData) -> Report:
    rep = Report(f"module {M.name}")
    B = M.over
    obs = B.objects
    for x in obs:
        for e in VARIANCES:
            if (x, e) not in M.parts:
                rep.structural("part-gap", (x, e))
    if rep.has_structural:
        return rep
    for x in obs:
        for y in obs:
            for e in VARIANCES:
                for h in VARIANCES:
                    F = M.action.get((x, y, e, h))
                    if F is None or F.source != comp_source_module(M.parts, B, x, y, e, h) or \
                            F.target != M.parts[(x, mul(e, h))]:
                        rep.structural("action-type", (x, y, e, h))
                    elif not validate_functor(F).ok:
                        rep.structural("action-functor", (x, y, e, h))
    if rep.has_structural:
        return rep
    _module_cells(M, rep)
    if not rep.ok:
        return rep
    _module_naturality(M, rep)
    _module_pentagon(M, rep)
    _module_triangle(M, rep)
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


def _assoc_ends(M: ModuleData, x, y, y2, e, h, g, m, b, a):
    mb = M.act1(y, y2, e, h, m, b)
    lhs = M.act1(x, y, mul(e, h), g, mb, a)
    rhs = M.act1(x, y2, e, mul(h, g), m, M.over.c1(x, y, y2, h, g, b, a))
    return lhs, rhs


def _module_cells(M: ModuleData, rep: Report) -> None:
    B = M.over
    obs = B.objects
    for x in obs:
        for y in obs:
            for y2 in obs:
                for e, h, g in itertools.product(VARIANCES, repeat=3):
                    key = (x, y, y2, e, h, g)
                    C = M.parts[(x, mul(mul(e, h), g))]
                    table = M.assoc.get(key, {})
                    for m in M.parts[(y2, e)].objects:
                        for b in B.cell(y, y2, h).objects:
                            for a in B.cell(x, y, g).objects:
                                c = table.get((m, b, a))
                                if c not in C.mor_index or (C.src[c], C.tgt[c]) != \
                                        _assoc_ends(M, x, y, y2, e, h, g, m, b, a):
                                    rep.law("assoc-type", key + (m, b, a))
                                elif not C.is_iso(c):
                                    rep.law("assoc-invertible", key + (m, b, a))
    for x in obs:
        for e in VARIANCES:
            C = M.parts[(x, e)]
            one = B.cat.unit[x]
            for m in C.objects:
                c = M.runit.get((x, e), {}).get(m)
                if c not in C.mor_index or (C.src[c], C.tgt[c]) != (M.act1(x, x, e, "+", m, one), m):
                    rep.law("unitor-type", (x, e, m))
                elif not C.is_iso(c):
                    rep.law("unitor-invertible", (x, e, m))


def _module_naturality(M: ModuleData, rep: Report) -> None:
    """Coherence cells are natural in each argument separately."""
    B = M.over
    obs = B.objects
    for x, y, y2 in itertools.product(obs, repeat=3):
        for e, h, g in itertools.product(VARIANCES, repeat=3):
            key = (x, y, y2, e, h, g)
            C = M.parts[(x, mul(mul(e, h), g))]
            Mm, Bb, Ba = M.parts[(y2, e)], B.cell(y, y2, h), B.cell(x, y, g)
            eh = mul(e, h)

            def check(s, t, r, addr):
                L = M.act2(x, y, eh, g, M.act2(y, y2, e, h, s, t), r)
                R = M.act2(x, y2, e, mul(h, g), s, B.c2(x, y, y2, h, g, t, r))
                src = (Mm.src[s], _vsrc(Bb, t, e), _vsrc(Ba, r, eh))
                tgt = (Mm.tgt[s], _vtgt(Bb, t, e), _vtgt(Ba, r, eh))
                if C.comp(M.assoc[key][tgt], L) != C.comp(R, M.assoc[key][src]):
                    rep.law("assoc-naturality", key + addr)

            for m in Mm.objects:
                im = Mm.identity[m]
                for b in Bb.objects:
                    ib = Bb.identity[b]
                    for a in Ba.objects:
                        ia = Ba.identity[a]
                        for s in Mm.out_of(m):
                            if s != im:
                                check(s, ib, ia, (s, b, a))
                        for t in Bb.out_of(b):
                            if t != ib:
                                check(im, t, ia, (m, t, a))
                        for r in Ba.out_of(a):
                            if r != ia:
                                check(im, ib, r, (m, b, r))
    for x in obs:
        one = B.cat.unit[x]
        ione = B.cell(x, x).identity[one]
        for e in VARIANCES:
            C = M.parts[(x, e)]
            for s in C.mor_ids:
                L = M.act2(x, x, e, "+", s, ione)
                if C.comp(M.runit[(x, e)][C.tgt[s]], L) != C.comp(s, M.runit[(x, e)][C.src[s]]):
                    rep.law("unitor-naturality", (x, e, s))


def _module_pentagon(M: ModuleData, rep: Report) -> None:
    B = M.over
    obs = B.objects
    for x, y1, y2, y3 in itertools.product(obs, repeat=4):
        for e, k, h, g in itertools.product(VARIANCES, repeat=4):
            C = M.parts[(x, mul(mul(mul(e, k), h), g))]
            ek, ekh = mul(e, k), mul(mul(e, k), h)
            a_mc = M.assoc[(x, y1, y2, ek, h, g)]
            a_m_ba = M.assoc[(x, y2, y3, e, k, mul(g, h))]
            a_mcb = M.assoc[(y1, y2, y3, e, k, h)]
            a_m_cb = M.assoc[(x, y1, y3, e, mul(h, k), g)]
            aB = B.assoc[(x, y1, y2, y3, k, h, g)]
            HB = B.cell(x, y3, mul(mul(k, h), g))
            Mm = M.parts[(y3, e)]
            for m in Mm.objects:
                im = Mm.identity[m]
                for c in B.cell(y2, y3, k).objects:
                    mc = M.act1(y2, y3, e, k, m, c)
                    for b in B.cell(y1, y2, h).objects:
                        cb = B.c1(y1, y2, y3, k, h, c, b)
                        for a in B.cell(x, y1, g).objects:
                            ia = B.cell(x, y1, g).identity[a]
                            ba = B.c1(x, y1, y2, h, g, b, a)
                            p1 = C.comp(a_m_ba[(m, c, ba)], a_mc[(mc, b, a)])
                            w1 = M.act2(x, y1, ekh, g, a_mcb[(m, c, b)], ia)
                            w3 = M.act2(x, y3, e, mul(mul(k, h), g), im, _as_view(HB, aB[(c, b, a)], e))
                            p2 = C.comp(w3, C.comp(a_m_cb[(m, cb, a)], w1))
                            if p1 != p2:
                                rep.law(f"pentagon:{e}{k}{h}{g}", (x, y1, y2, y3, m, c, b, a))


def _module_triangle(M: ModuleData, rep: Report) -> None:
    B = M.over
    obs = B.objects
    for x, y in itertools.product(obs, repeat=2):
        one = B.cat.unit[y]
        for e, g in itertools.product(VARIANCES, repeat=2):
            C = M.parts[(x, mul(e, g))]
            Ba = B.cell(x, y, g)
            Mm = M.parts[(y, e)]
            for m in Mm.objects:
                for a in Ba.objects:
                    lhs = M.act2(x, y, e, g, M.runit[(y, e)][m], Ba.identity[a])
                    lam = _as_view(Ba, B.lunit[(x, y, g)][a], e)
                    rhs = C.comp(M.act2(x, y, e, g, Mm.identity[m], lam),
                                 M.assoc[(x, y, y, e, "+", g)][(m, one, a)])
                    if lhs != rhs:
                        rep.law(f"triangle:{e}{g}", (x, y, m, a))


# ---------------------------------------------------------------- module morphisms

@dataclass(frozen=True, eq=False)
class ModuleMorphism:
    """``functors[(x, e)]``: g·M^e(x) → N^{ge}(x); ``omega[(x, y, e, h, m, a)]``: θ(m·a) ⇒ θ(m)·a."""

    source: ModuleData
    target: ModuleData
    variance: str
    functors: Mapping[tuple[str, str], FunctorData]
    omega: Mapping[tuple, str]

    @cached_property
    def key(self):
        return (self.variance,
                tuple((k, self.functors[k].key) for k in sorted(self.functors)),
                tuple(sorted(self.omega.items())))

    def obj(self, x, e, m) -> str:
        return self.functors[(x, e)].obj_map[m]

    def mor(self, x, e, s) -> str:
        return self.functors[(x, e)].mor_map[s]


@dataclass(frozen=True, eq=False)
class ModuleTransformation:
    """``components[(x, e)][m]``: θ(m) → θ'(m) in N^{ge}(x)."""

    source: ModuleMorphism
    target: ModuleMorphism
    components: Mapping[tuple[str, str], Mapping[str, str]]

    @cached_property
    def key(self):
        return tuple((k, tuple(sorted(self.components[k].items()))) for k in sorted(self.components))


def _functor_slot(M: ModuleData, N: ModuleData, g: str, x: str, e: str):
    return act(g, M.parts[(x, e)]), N.parts[(x, mul(g, e))]


def _omega_slots(M: ModuleData, N: ModuleData, g: str, functors):
    """Variables (x, y, e, h, m, a) and their domains of candidate isos."""
    B = M.over
    variables, domains = [], {}
    for x, y in itertools.product(B.objects, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            C = N.parts[(x, mul(mul(g, e), h))]
            for m in M.parts[(y, e)].objects:
                tm = functors[(y, e)].obj_map[m]
                for a in B.cell(x, y, h).objects:
                    lhs = functors[(x, mul(e, h))].obj_map[M.act1(x, y, e, h, m, a)]
                    rhs = N.act1(x, y, mul(g, e), h, tm, a)
                    v = (x, y, e, h, m, a)
                    variables.append(v)
                    domains[v] = [c for c in C.hom.get((lhs, rhs), ()) if C.is_iso(c)]
    return variables, domains


def _omega_constraints(M: ModuleData, N: ModuleData, g: str, functors):
    """(vars, predicate, family, address) for every coherence law of a module morphism."""
    B = M.over
    obs = B.objects
    out = []

    def th_obj(x, e, m):
        return functors[(x, e)].obj_map[m]

    def th_mor(x, e, s):
        return functors[(x, e)].mor_map[s]

    for x, y in itertools.product(obs, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            ge, eh = mul(g, e), mul(e, h)
            C = N.parts[(x, mul(ge, h))]
            Mm, Ba = M.parts[(y, e)], B.cell(x, y, h)
            # naturality in m
            for s in Mm.mor_ids:
                if s in Mm.identity_ids:
                    continue
                for a in Ba.objects:
                    ia = Ba.identity[a]
                    st, tt = _vsrc(Mm, s, g), _vtgt(Mm, s, g)
                    vs_, vt_ = (x, y, e, h, st, a), (x, y, e, h, tt, a)

                    def nat_m(w, vs_=vs_, vt_=vt_, s=s, ia=ia, C=C, ge=ge, eh=eh, x=x, y=y, e=e, h=h):
                        lhs = C.comp(w[vt_], th_mor(x, eh, M.act2(x, y, e, h, s, ia)))
                        rhs = C.comp(N.act2(x, y, ge, h, th_mor(y, e, s), ia), w[vs_])
                        return lhs == rhs
                    out.append(((vs_, vt_), nat_m, "omega-naturality", (x, y, e, h, s, a)))
            # naturality in a
            for m in Mm.objects:
                im = Mm.identity[m]
                tm = th_obj(y, e, m)
                itm = N.parts[(y, ge)].identity[tm]
                for t in Ba.mor_ids:
                    if t in Ba.identity_ids:
                        continue
                    p, q = _vsrc(Ba, t, e), _vtgt(Ba, t, e)
                    s_, t_ = (p, q) if g == "+" else (q, p)
                    vs_, vt_ = (x, y, e, h, m, s_), (x, y, e, h, m, t_)

                    def nat_a(w, vs_=vs_, vt_=vt_, im=im, itm=itm, t=t, C=C, ge=ge, eh=eh, x=x, y=y, e=e, h=h):
                        lhs = C.comp(w[vt_], th_mor(x, eh, M.act2(x, y, e, h, im, t)))
                        rhs = C.comp(N.act2(x, y, ge, h, itm, t), w[vs_])
                        return lhs == rhs
                    out.append(((vs_, vt_), nat_a, "omega-naturality", (x, y, e, h, m, t)))
    # associativity
    for x, y, y2 in itertools.product(obs, repeat=3):
        for e, h, k in itertools.product(VARIANCES, repeat=3):
            ge, eh, ehk = mul(g, e), mul(e, h), mul(mul(e, h), k)
            C = N.parts[(x, mul(g, ehk))]
            Mx = M.parts[(x, ehk)]
            aM = M.assoc[(x, y, y2, e, h, k)]
            aN = N.assoc[(x, y, y2, ge, h, k)]
            for m in M.parts[(y2, e)].objects:
                tm = th_obj(y2, e, m)
                for b in B.cell(y, y2, h).objects:
                    mb = M.act1(y, y2, e, h, m, b)
                    for a in B.cell(x, y, k).objects:
                        ia = B.cell(x, y, k).identity[a]
                        ba = B.c1(x, y, y2, h, k, b, a)
                        v1, v2, v3 = (x, y, eh, k, mb, a), (y, y2, e, h, m, b), (x, y2, e, mul(h, k), m, ba)
                        am = aM[(m, b, a)] if g == "+" else Mx.inverse[aM[(m, b, a)]]

                        def assoc(w, v1=v1, v2=v2, v3=v3, am=am, ia=ia, tm=tm, b=b, a=a, C=C, aN=aN, x=x, y=y,
                                  ge=ge, h=h, k=k, ehk=ehk):
                            whisk = N.act2(x, y, mul(ge, h), k, w[v2], ia)
                            lhs = C.comp(aN[(tm, b, a)], C.comp(whisk, w[v1]))
                            rhs = C.comp(w[v3], th_mor(x, ehk, am))
                            return lhs == rhs
                        out.append(((v1, v2, v3), assoc, "omega-associativity", (x, y, y2, e, h, k, m, b, a)))
    # unit
    for x in obs:
        one = B.cat.unit[x]
        for e in VARIANCES:
            ge = mul(g, e)
            C = N.parts[(x, ge)]
            Mx = M.parts[(x, e)]
            for m in Mx.objects:
                rho = M.runit[(x, e)][m]
                rho = rho if g == "+" else Mx.inverse[rho]
                expected = C.comp(C.inverse[N.runit[(x, ge)][th_obj(x, e, m)]], th_mor(x, e, rho))
                v = (x, x, e, "+", m, one)
                out.append(((v,), lambda w, v=v, expected=expected: w[v] == expected, "omega-unit", (x, e, m)))
    return out


def coherent_omegas(M: ModuleData, N: ModuleData, g: str, functors, budget: Budget | None = None,
                    limit: int | None = None) -> list[dict]:
    variables, domains = _omega_slots(M, N, g, functors)
    cons = [(vs, pred) for vs, pred, _, _ in _omega_constraints(M, N, g, functors)]
    return solve_constraints(variables, domains, cons, budget, limit)


def validate_module_morphism(theta: ModuleMorphism) -> Report:
    M, N, g = theta.source, theta.target, theta.variance
    rep = Report("module-morphism")
    for x in M.over.objects:
        for e in VARIANCES:
            F = theta.functors.get((x, e))
            S, T = _functor_slot(M, N, g, x, e)
            if F is None or F.source != S or F.target != T:
                rep.structural("functor-type", (x, e))
            elif not validate_functor(F).ok:
                rep.structural("functor", (x, e))
    if rep.has_structural:
        return rep
    variables, domains = _omega_slots(M, N, g, theta.functors)
    for v in variables:
        if theta.omega.get(v) not in domains[v]:
            rep.law("omega-type", v)
    if not rep.ok:
        return rep
    for _, pred, fam, addr in _omega_constraints(M, N, g, theta.functors):
        if not pred(theta.omega):
            rep.law(fam, addr)
    return rep


def _generated_functors(M: ModuleData, N: ModuleData, g: str, t: str) -> dict:
    """θ(m) = t·m for a module generated by 1_w (representable or its formal opposite)."""
    w, e0 = M.generator
    vt = mul(g, e0)
    out = {}
    for x in M.over.objects:
        for e in VARIANCES:
            vm = mul(e, e0)
            A = N.action[(x, w, vt, vm)]
            S, T = _functor_slot(M, N, g, x, e)
            it = N.parts[(w, vt)].identity[t]
            out[(x, e)] = FunctorData(S, T, {m: A.obj_map[pair_id(t, m)] for m in S.objects},
                                      {s: A.mor_map[pair_id(it, s)] for s in S.mor_ids})
    return out


def _canonical_omega(M: ModuleData, N: ModuleData, g: str, t: str) -> dict:
    w, e0 = M.generator
    vt = mul(g, e0)
    B = M.over
    out = {}
    for x, y in itertools.product(B.objects, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            C = N.parts[(x, mul(mul(g, e), h))]
            table = N.assoc[(x, y, w, vt, mul(e, e0), h)]
            for m in M.parts[(y, e)].objects:
                for a in B.cell(x, y, h).objects:
                    out[(x, y, e, h, m, a)] = C.inverse[table[(t, m, a)]]
    return out


def yoneda_morphism(M: ModuleData, N: ModuleData, g: str, t: str) -> ModuleMorphism:
    """The morphism m ↦ t·m with ω read off N's associator."""
    return ModuleMorphism(M, N, g, _generated_functors(M, N, g, t), _canonical_omega(M, N, g, t))


def guided_morphisms(M: ModuleData, N: ModuleData, g: str, all_coherence: bool = True,
                     budget: Budget | None = None) -> list[ModuleMorphism]:
    """Functor families t·− for t in N at the generator, then coherent ω.

    With ``all_coherence`` every coherent ω is listed; otherwise only the one
    read off N's associator.
    """
    if M.generator is None:
        raise ValueError("guided enumeration needs a module generated by an identity")
    w, e0 = M.generator
    out = []
    for t in N.parts[(w, mul(g, e0))].objects:
        fam = _generated_functors(M, N, g, t)
        if all_coherence:
            for om in coherent_omegas(M, N, g, fam, budget):
                out.append(ModuleMorphism(M, N, g, fam, om))
        else:
            if budget is not None:
                budget.tick()
            out.append(ModuleMorphism(M, N, g, fam, _canonical_omega(M, N, g, t)))
    return out


def raw_morphisms(M: ModuleData, N: ModuleData, g: str, budget: Budget | None = None) -> list[ModuleMorphism]:
    """Every functor family admitting the ω isos, then every coherent ω: the unguided oracle.

    Functor families are searched slot by slot; a pair of slots is pruned as
    soon as some θ(m·a) and θ(m)·a are not isomorphic, which no choice of ω
    could repair.
    """
    B = M.over
    slots = [(x, e) for x in B.objects for e in VARIANCES]
    domains = {sl: list(iter_functors(*_functor_slot(M, N, g, *sl), budget=budget)) for sl in slots}
    cons = []
    for x, y in itertools.product(B.objects, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            C = N.parts[(x, mul(mul(g, e), h))]
            pairs = [(M.act1(x, y, e, h, m, a), m, a) for m in M.parts[(y, e)].objects
                     for a in B.cell(x, y, h).objects]

            def has_isos(w, x=x, y=y, e=e, h=h, C=C, pairs=pairs):
                Fa, Fm = w[(x, mul(e, h))], w[(y, e)]
                return all(any(C.is_iso(c) for c in C.hom.get((Fa.obj_map[ma], N.act1(x, y, mul(g, e), h,
                                                                                       Fm.obj_map[m], a)), ()))
                           for ma, m, a in pairs)
            cons.append((((x, mul(e, h)), (y, e)), has_isos))
    out = []
    for fam in solve_constraints(slots, domains, cons, budget):
        for om in coherent_omegas(M, N, g, fam, budget):
            out.append(ModuleMorphism(M, N, g, fam, om))
    return out


def module_transformations(th: ModuleMorphism, th2: ModuleMorphism,
                           budget: Budget | None = None) -> list[ModuleTransformation]:
    """All transformations θ ⇒ θ' compatible with the coherence cells."""
    M, N, g = th.source, th.target, th.variance
    B = M.over
    variables, domains = [], {}
    for x in B.objects:
        for e in VARIANCES:
            C = N.parts[(x, mul(g, e))]
            for m in M.parts[(x, e)].objects:
                variables.append((x, e, m))
                domains[(x, e, m)] = list(C.hom.get((th.obj(x, e, m), th2.obj(x, e, m)), ()))
    cons = []
    for x in B.objects:
        for e in VARIANCES:
            C = N.parts[(x, mul(g, e))]
            Mx = M.parts[(x, e)]
            for s in Mx.mor_ids:
                if s in Mx.identity_ids:
                    continue
                vs_, vt_ = (x, e, _vsrc(Mx, s, g)), (x, e, _vtgt(Mx, s, g))
                cons.append(((vs_, vt_), lambda w, vs_=vs_, vt_=vt_, s=s, C=C, x=x, e=e:
                             C.comp(th2.mor(x, e, s), w[vs_]) == C.comp(w[vt_], th.mor(x, e, s))))
    for x, y in itertools.product(B.objects, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            ge = mul(g, e)
            C = N.parts[(x, mul(ge, h))]
            for m in M.parts[(y, e)].objects:
                for a in B.cell(x, y, h).objects:
                    ia = B.cell(x, y, h).identity[a]
                    ma = M.act1(x, y, e, h, m, a)
                    o1, o2 = th.omega[(x, y, e, h, m, a)], th2.omega[(x, y, e, h, m, a)]
                    vm, vma = (y, e, m), (x, mul(e, h), ma)
                    cons.append(((vm, vma), lambda w, vm=vm, vma=vma, o1=o1, o2=o2, ia=ia, C=C, x=x, y=y, ge=ge, h=h:
                                 C.comp(o2, w[vma]) == C.comp(N.act2(x, y, ge, h, w[vm], ia), o1)))
    out = []
    for sol in solve_constraints(variables, domains, cons, budget):
        comps = {(x, e): {} for x in B.objects for e in VARIANCES}
        for (x, e, m), c in sol.items():
            comps[(x, e)][m] = c
        out.append(ModuleTransformation(th, th2, comps))
    return out


@dataclass(frozen=True, eq=False)
class ModuleHom:
    """A hom category of modules with the data behind its object and morphism ids."""

    cat: FinCat
    morphisms: tuple[ModuleMorphism, ...]
    transformations: tuple[ModuleTransformation, ...]

    @cached_property
    def morphism_id(self) -> dict:
        return {th.key: f"m{i}" for i, th in enumerate(self.morphisms)}

    @cached_property
    def by_id(self) -> dict:
        return {f"m{i}": th for i, th in enumerate(self.morphisms)}

    @cached_property
    def transformation_id(self) -> dict:
        ids = {}
        for j, tau in enumerate(self.transformations):
            ids[(self.morphism_id[tau.source.key], self.morphism_id[tau.target.key], tau.key)] = f"t{j}"
        return ids

    @cached_property
    def transformation_by_id(self) -> dict:
        return {f"t{j}": tau for j, tau in enumerate(self.transformations)}


def _vertical(N: ModuleData, g: str, t2: ModuleTransformation, t1: ModuleTransformation) -> dict:
    return {(x, e): {m: N.parts[(x, mul(g, e))].comp(t2.components[(x, e)][m], c) for m, c in comps.items()}
            for (x, e), comps in t1.components.items()}


def _hom_from(morphisms: list[ModuleMorphism], budget: Budget | None) -> ModuleHom:
    objs = [f"m{i}" for i in range(len(morphisms))]
    trans, mors = [], []
    ident = {}
    for i, th in enumerate(morphisms):
        for j, th2 in enumerate(morphisms):
            for tau in module_transformations(th, th2, budget):
                tid = f"t{len(trans)}"
                trans.append(tau)
                mors.append((tid, objs[i], objs[j]))
                if i == j and all(c == th.target.parts[(x, mul(th.variance, e))].identity[th.obj(x, e, m)]
                                  for (x, e), comps in tau.components.items() for m, c in comps.items()):
                    ident[objs[i]] = tid
    H = ModuleHom(FinCat(objs, mors, ident, {}), tuple(morphisms), tuple(trans))
    if morphisms:
        N, g = morphisms[0].target, morphisms[0].variance
        table = {}
        lookup = H.transformation_id
        for t1id, a, b in mors:
            t1 = H.transformation_by_id[t1id]
            for t2id in (m for m, s, _ in mors if s == b):
                t2 = H.transformation_by_id[t2id]
                comps = _vertical(N, g, t2, t1)
                key = tuple((k, tuple(sorted(comps[k].items()))) for k in sorted(comps))
                table[(t2id, t1id)] = lookup[(a, H.morphism_id[t2.target.key], key)]
        H = ModuleHom(FinCat(objs, mors, ident, table), H.morphisms, H.transformations)
    return H


def module_hom_category(M: ModuleData, N: ModuleData, g: str, mode: str = "guided",
                        budget: Budget | None = None) -> ModuleHom:
    """Module morphisms of variance g with all their transformations.

    ``mode`` is "guided" (functor families t·−, every coherent ω) or "raw"
    (every functor family).  Both list objects in a deterministic order.
    """
    if mode == "guided":
        ms = guided_morphisms(M, N, g, True, budget)
    elif mode == "raw":
        ms = raw_morphisms(M, N, g, budget)
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")
    return _hom_from(ms, budget)


def table_prediction(B: VBicat, M: ModuleData, N: ModuleData, g: str) -> FinCat:
    """What Yoneda predicts for Hom^g(M, N) with M generated at (w, e0): N^{g·e0}(w)."""
    w, e0 = M.generator
    return N.parts[(w, mul(g, e0))]


def yoneda_oracle_functor(M: ModuleData, N: ModuleData, g: str, H: ModuleHom) -> FunctorData:
    """Evaluation at the generator: θ ↦ θ(1_w), τ ↦ τ at 1_w, into the predicted table."""
    w, e0 = M.generator
    one = M.over.cat.unit[w]
    T = N.parts[(w, mul(g, e0))]
    om = {f"m{i}": th.obj(w, e0, one) for i, th in enumerate(H.morphisms)}
    mm = {f"t{j}": tau.components[(w, e0)][one] for j, tau in enumerate(H.transformations)}
    return FunctorData(H.cat, T, om, mm)


# ---------------------------------------------------------------- composition of module morphisms

def _act_functor(h: str, F: FunctorData) -> FunctorData:
    if h == "+":
        return F
    return FunctorData(op_category(F.source), op_category(F.target), F.obj_map, F.mor_map)


def compose_module_morphisms(th2: ModuleMorphism, th: ModuleMorphism) -> ModuleMorphism:
    """θ'∘θ with ω'' = ω'_{θm,a} ∘ θ'(ω_{m,a}), inverting ω first when θ' is contravariant."""
    M, N, K = th.source, th.target, th2.target
    g, h = th.variance, th2.variance
    B = M.over
    functors = {}
    for x in B.objects:
        for e in VARIANCES:
            functors[(x, e)] = compose_functors(th2.functors[(x, mul(g, e))], _act_functor(h, th.functors[(x, e)]))
    omega = {}
    for (x, y, e, hh, m, a), c in th.omega.items():
        Nx = N.parts[(x, mul(mul(g, e), hh))]
        inner = c if h == "+" else Nx.inverse[c]
        Kx = K.parts[(x, mul(mul(mul(g, h), e), hh))]
        omega[(x, y, e, hh, m, a)] = Kx.comp(th2.omega[(x, y, mul(g, e), hh, th.obj(y, e, m), a)],
                                             th2.mor(x, mul(mul(g, e), hh), inner))
    return ModuleMorphism(M, K, mul(g, h), functors, omega)


def identity_module_morphism(M: ModuleData) -> ModuleMorphism:
    from .fincat import identity_functor
    B = M.over
    functors = {(x, e): identity_functor(M.parts[(x, e)]) for x in B.objects for e in VARIANCES}
    omega = {}
    for x, y in itertools.product(B.objects, repeat=2):
        for e, h in itertools.product(VARIANCES, repeat=2):
            C = M.parts[(x, mul(e, h))]
            for m in M.parts[(y, e)].objects:
                for a in B.cell(x, y, h).objects:
                    omega[(x, y, e, h, m, a)] = C.identity[M.act1(x, y, e, h, m, a)]
    return ModuleMorphism(M, M, "+", functors, omega)


def _horizontal(t2: ModuleTransformation, t1: ModuleTransformation, h: str) -> dict:
    """(τ'*τ)_m = τ'_{θ_t(m)} ∘ θ'_1(τ_m), with τ read through the h-view."""
    th_a, th_b = t1.source, t1.target
    th_t = th_b if h == "+" else th_a
    K, g = t2.source.target, th_a.variance
    out = {}
    for (x, e), comps in t1.components.items():
        ge = mul(g, e)
        C = K.parts[(x, mul(ge, h))]
        out[(x, e)] = {m: C.comp(t2.components[(x, ge)][th_t.obj(x, e, m)], t2.source.mor(x, ge, c))
                       for m, c in comps.items()}
    return out


# ---------------------------------------------------------------- the strict image

@dataclass(frozen=True, eq=False)
class StrictImage:
    """Modules Y_z as (z, +) and Y_z° as (z, -), with their strict involution."""

    source: VBicat
    cat: ContraTwoCat
    involution: StrictInvolution
    modules: Mapping[str, ModuleData]
    homs: Mapping[tuple[str, str, str], ModuleHom]
    witnesses: Mapping[str, OppositeWitness]


def _closure(gens: dict, budget: Budget | None) -> dict:
    """Close the listed morphisms of every hom under composition, in a fixed order."""
    homs = {k: list(v) for k, v in gens.items()}
    keys = {k: {th.key for th in v} for k, v in homs.items()}
    objs = sorted({k[0] for k in homs})
    changed = True
    while changed:
        changed = False
        for p, q, r in itertools.product(objs, repeat=3):
            for h, g in itertools.product(VARIANCES, repeat=2):
                for th2 in list(homs[(q, r, h)]):
                    for th in list(homs[(p, q, g)]):
                        if budget is not None:
                            budget.tick()
                        c = compose_module_morphisms(th2, th)
                        k = (p, r, mul(g, h))
                        if c.key not in keys[k]:
                            keys[k].add(c.key)
                            homs[k].append(c)
                            changed = True
    return homs


def build_strict_image(B: VBicat, budget: StrictifyBudget | None = None) -> StrictImage:
    """Full 2-category of the listed module morphisms between the Y_z and Y_z°.

    1-cells are the Yoneda morphisms m ↦ t·m closed under composition; 2-cells
    are all module transformations between them.
    """
    budget = budget or StrictifyBudget()
    check_size(B, budget)
    counter = Budget(budget.max_candidates, "module-morphism candidates")
    mods = {}
    for z in B.objects:
        Y = representable_module(B, z)
        mods[tagged(z, "+")] = Y
        mods[tagged(z, "-")] = formal_opposite_module(Y)
    objs = tuple(tagged(z, e) for e in VARIANCES for z in B.objects)
    gens = {(p, q, g): guided_morphisms(mods[p], mods[q], g, all_coherence=False, budget=counter)
            for p in objs for q in objs for g in VARIANCES}
    for p in objs:
        ident = identity_module_morphism(mods[p])
        if ident.key not in {th.key for th in gens[(p, p, "+")]}:
            raise StageFailure("strict-image", f"identity of {p} is not a Yoneda morphism")
    closed = _closure(gens, counter)
    homs = {k: _hom_from(v, counter) for k, v in closed.items()}
    hom = {(p, q): VObj(homs[(p, q, "+")].cat, homs[(p, q, "-")].cat) for p in objs for q in objs}
    unit = {p: homs[(p, p, "+")].morphism_id[identity_module_morphism(mods[p]).key] for p in objs}
    comp = {}
    for p, q, r in itertools.product(objs, repeat=3):
        for h, g in itertools.product(VARIANCES, repeat=2):
            Ho, Hi, Hr = homs[(q, r, h)], homs[(p, q, g)], homs[(p, r, mul(g, h))]
            om, mm = {}, {}
            for i2, th2 in enumerate(Ho.morphisms):
                for i1, th in enumerate(Hi.morphisms):
                    om[pair_id(f"m{i2}", f"m{i1}")] = Hr.morphism_id[compose_module_morphisms(th2, th).key]
            for t2id, t2 in Ho.transformation_by_id.items():
                for t1id, t1 in Hi.transformation_by_id.items():
                    a, b = (t1.source, t1.target) if h == "+" else (t1.target, t1.source)
                    comps = _horizontal(t2, t1, h)
                    key = tuple((k, tuple(sorted(comps[k].items()))) for k in sorted(comps))
                    sa = Hr.morphism_id[compose_module_morphisms(t2.source, a).key]
                    tb = Hr.morphism_id[compose_module_morphisms(t2.target, b).key]
                    mm[pair_id(t2id, t1id)] = Hr.transformation_id[(sa, tb, key)]
            comp[(p, q, r, h, g)] = FunctorData(comp_source(hom, p, q, r, h, g), Hr.cat, om, mm)
    C = ContraTwoCat(objs, hom, unit, comp, f"strict-image({B.cat.name})")
    witnesses = {}
    for z in B.objects:
        p, q = tagged(z, "+"), tagged(z, "-")
        one = B.cat.unit[z]
        chi = homs[(p, q, "-")].morphism_id[yoneda_morphism(mods[p], mods[q], "-", one).key]
        xi = homs[(q, p, "-")].morphism_id[yoneda_morphism(mods[q], mods[p], "-", one).key]
        witnesses[p] = OppositeWitness(p, q, chi, xi)
        witnesses[q] = OppositeWitness(q, p, xi, chi)
    S = extract_strong_involution(C, witnesses)
    if not isinstance(S, StrictInvolution):
        raise StageFailure("strict-image", "extracted involution is not strict")
    return StrictImage(B, C, S, mods, homs, witnesses)


def validate_strict_image(I: StrictImage) -> Report:
    rep = Report("strict-image")
    rep.extend(validate_contra_2cat(I.cat), ("cat",))
    rep.extend(validate_strict_involution(I.involution), ("involution",))
    for p in I.cat.objects:
        z, e = p.rsplit("|", 1)
        if I.involution.obj_map[p] != tagged(z, NEG[e]):
            rep.law("tag-swap", (p,))
    return rep


def yoneda_embedding(I: StrictImage) -> VarianceFunctor:
    """x ↦ (x, +), f ↦ (m ↦ f·m), σ ↦ (σ·m)_m, for both variances."""
    B = I.source
    hm = {}
    for x, y in itertools.product(B.objects, repeat=2):
        p, q = tagged(x, "+"), tagged(y, "+")
        M, N = I.modules[p], I.modules[q]
        parts = []
        for g in VARIANCES:
            H = I.homs[(p, q, g)]
            S = B.cell(x, y, g)
            om = {f: H.morphism_id[yoneda_morphism(M, N, g, f).key] for f in S.objects}
            mm = {}
            for s in S.mor_ids:
                comps = {}
                for u in B.objects:
                    for e in VARIANCES:
                        Mx = M.parts[(u, e)]
                        comps[(u, e)] = {m: B.c2(u, x, y, g, e, s, Mx.identity[m]) for m in Mx.objects}
                key = tuple((k, tuple(sorted(comps[k].items()))) for k in sorted(comps))
                mm[s] = H.transformation_id[(om[S.src[s]], om[S.tgt[s]], key)]
            parts.append(FunctorData(S, H.cat, om, mm))
        hm[(x, y)] = VMorphism(B.cat.hom[(x, y)], I.cat.hom[(p, q)], *parts)
    return VarianceFunctor(B.cat, I.cat, {x: tagged(x, "+") for x in B.objects}, hm)


# ---------------------------------------------------------------- certificates

def certify_biequivalence(F: VarianceFunctor, source: ContraTwoCat | None = None,
                          target: ContraTwoCat | None = None):
    """Certificate for F on the covariant parts, re-verified independently.

    Returns (certificate, None) or (None, address).
    """
    S = source if source is not None else underlying_2cat(F.source)
    T = target if target is not None else underlying_2cat(F.target)
    hf = {}
    for x, y in itertools.product(S.objects, repeat=2):
        P = F.hom_maps[(x, y)].plus_part
        hf[(x, y, "+")] = FunctorData(S.cell(x, y), T.cell(F.obj_map[x], F.obj_map[y]), P.obj_map, P.mor_map)
        hf[(x, y, "-")] = FunctorData(S.cell(x, y, "-"), T.cell(F.obj_map[x], F.obj_map[y], "-"), {}, {})
    cert, why = certify_functor(S, T, F.obj_map, hf)
    if cert is None:
        return None, why
    rep = independent_verify(cert)
    if not rep.ok:
        return None, f"independent check: {rep.sorted_findings()[0].family} at {rep.sorted_findings()[0].address}"
    return cert, None


def independent_verify(cert: BiequivalenceCertificate) -> Report:
    """Re-check a certificate from its raw tables, using only fincat primitives."""
    from .fincat import verify_equivalence_witness
    rep = Report("certificate")
    S, T, Fo = cert.source, cert.target, cert.obj_map
    for x in S.objects:
        if Fo.get(x) not in T.objects:
            rep.structural("object-map", (x,))
    if rep.has_structural:
        return rep
    for x in S.objects:
        for y in S.objects:
            for g in VARIANCES:
                F = cert.hom_functors.get((x, y, g))
                src, tgt = S.hom[(x, y)].part(g), T.hom[(Fo[x], Fo[y])].part(g)
                if F is None or F.source != src or F.target != tgt or not validate_functor(F).ok:
                    rep.law("hom-functor", (x, y, g))
                    continue
                w = cert.hom_witnesses.get((x, y, g))
                if w is None or w.forward.key != F.key or w.forward.source != src or w.forward.target != tgt:
                    rep.law("hom-witness", (x, y, g), "witness is not for this functor")
                elif not verify_equivalence_witness(w).ok:
                    rep.law("hom-witness", (x, y, g))
    for b in T.objects:
        w = cert.object_witnesses.get(b)
        if w is None or w.source_object not in Fo:
            rep.law("object-witness", (b,), "missing")
            continue
        a = Fo[w.source_object]
        Hab, Hba = T.hom[(a, b)].plus, T.hom[(b, a)].plus
        if w.there not in Hab.obj_index or w.back not in Hba.obj_index:
            rep.law("object-witness", (b,), "1-cells have the wrong type")
            continue
        loop_a = T.comp[(a, b, a, "+", "+")].obj_map[pair_id(w.back, w.there)]
        loop_b = T.comp[(b, a, b, "+", "+")].obj_map[pair_id(w.there, w.back)]
        Ea, Eb = T.hom[(a, a)].plus, T.hom[(b, b)].plus
        ok_u = w.unit in Ea.mor_index and (Ea.src[w.unit], Ea.tgt[w.unit]) == (T.unit[a], loop_a) \
            and w.unit in Ea.inverse
        ok_c = w.counit in Eb.mor_index and (Eb.src[w.counit], Eb.tgt[w.counit]) == (loop_b, T.unit[b]) \
            and w.counit in Eb.inverse
        if not (ok_u and ok_c):
            rep.law("object-witness", (b,), "unit or counit fails")
    return rep


# ---------------------------------------------------------------- comparison functors

def completion_comparison(D: ContraTwoCat, into: VarianceFunctor, I: StrictImage) -> VarianceFunctor:
    """From complete_strict_opposites(D) to the image, extending ``into``: D → I on (x, +).

    (x, ε) ↦ (Fx tag, ε) and a cell f of Hom^g((x,ε),(y,δ)) = δ·D^{εgδ}(x,y) goes
    to c_δ ∘ F(f) ∘ d_ε, with c_- = χ, d_- = ξ and identities for +.
    """
    Cc, _ = complete_strict_opposites(D)
    C, W = I.cat, I.witnesses

    def base(p):
        x, e = p.rsplit("|", 1)
        return x, e

    def img(x, e):
        z, _ = into.obj_map[x].rsplit("|", 1)
        return tagged(z, e)

    hm = {}
    for p, q in itertools.product(Cc.objects, repeat=2):
        (x, e), (y, d) = base(p), base(q)
        P, Q = img(x, "+"), img(y, "+")
        Pe, Qd = img(x, e), img(y, d)
        parts = []
        for g in VARIANCES:
            inner_v = mul(mul(e, g), d)
            Fxy = into.hom_maps[(x, y)].part(inner_v)
            src = Cc.hom[(p, q)].part(g)
            tgt = C.cell(Pe, Qd, g)
            om, mm = {}, {}
            for kind, ids, fmap in (("obj", src.objects, Fxy.obj_map), ("mor", src.mor_ids, Fxy.mor_map)):
                for f in ids:
                    cell = fmap[f]
                    v = inner_v
                    a_obj, cur = P, cell
                    if e == "-":
                        xi = W[P].xi
                        cur = _compose_cell(C, Pe, P, Q, v, "-", cur, xi, kind)
                        v, a_obj = mul(v, "-"), Pe
                    if d == "-":
                        chi = W[Q].chi
                        cur = _compose_cell(C, a_obj, Q, Qd, "-", v, chi, cur, kind, outer_fixed=True)
                    (om if kind == "obj" else mm)[f] = cur
            parts.append(FunctorData(src, tgt, om, mm))
        hm[(p, q)] = VMorphism(Cc.hom[(p, q)], C.hom[(img(x, e), img(y, d))], *parts)
    return VarianceFunctor(Cc, C, {p: img(*base(p)) for p in Cc.objects}, hm)


def _compose_cell(C: ContraTwoCat, a, b, c, h, g, outer, inner, kind, outer_fixed=False):
    """Compose a varying cell with a fixed 1-cell; ``kind`` says whether the varying one is a 2-cell."""
    comp = C.comp[(a, b, c, h, g)]
    if kind == "obj":
        return comp.obj_map[pair_id(outer, inner)]
    if outer_fixed:
        return comp.mor_map[pair_id(C.cell(b, c, h).identity[outer], inner)]
    return comp.mor_map[pair_id(outer, C.cell(a, b, g).identity[inner])]


def strict_comparison(I: StrictImage) -> VarianceFunctor:
    """For strict B: complete_strict_opposites(B) → image, extending the Yoneda embedding."""
    return completion_comparison(I.source.cat, yoneda_embedding(I), I)


def strong_comparison(S, I: StrictImage) -> VarianceFunctor:
    """From strictify_strong(S)'s 2-category to the image: (x, ε) ↦ (x or x°, +) with Yoneda on homs."""
    from .opposites import strictify_strong
    P = strictify_strong(S)[0].base
    Y = yoneda_embedding(I)
    under = {}
    for p in P.objects:
        x, e = p.rsplit("|", 1)
        under[p] = x if e == "+" else S.obj_map[x]
    C = underlying_2cat(I.cat)
    hm = {}
    for p, q in itertools.product(P.objects, repeat=2):
        a, b = under[p], under[q]
        Yp = Y.hom_maps[(a, b)].plus_part
        V, T = P.hom[(p, q)], C.hom[(tagged(a, "+"), tagged(b, "+"))]
        hm[(p, q)] = VMorphism(V, T, FunctorData(V.plus, T.plus, Yp.obj_map, Yp.mor_map),
                               FunctorData(V.minus, T.minus, {}, {}))
    return VarianceFunctor(P, C, {p: tagged(under[p], "+") for p in P.objects}, hm)


def check_two_equivalence(F: VarianceFunctor) -> Report:
    """F is a 2-functor that is an equivalence on every hom and essentially surjective."""
    rep = Report("2-equivalence")
    rep.extend(validate_variance_functor(F), ("functor",))
    if not rep.ok:
        return rep
    S, T = F.source, F.target
    hf = {(x, y, g): F.hom_maps[(x, y)].part(g) for x in S.objects for y in S.objects for g in VARIANCES}
    cert, why = certify_functor(S, T, F.obj_map, hf)
    if cert is None:
        rep.law("certificate", (why,))
    else:
        rep.extend(independent_verify(cert), ("certificate",))
    return rep


# ---------------------------------------------------------------- pipeline

@dataclass(frozen=True, eq=False)
class PipelineResult:
    involution: StrictInvolution
    duality: DualityPseudofunctorData
    certificate: BiequivalenceCertificate
    image: StrictImage | None
    path: str
    already_strict: bool
    timings: Mapping[str, float] = field(default_factory=dict)
    comparison: VarianceFunctor | None = None


def _stage(timings: dict, name: str, fn):
    t0 = time.perf_counter()
    try:
        out = fn()
    except (BudgetExceeded, StageFailure):
        raise
    except Exception as exc:  # surface any construction error with its stage
        raise StageFailure(name, str(exc)) from exc
    timings[name] = round(time.perf_counter() - t0, 3)
    return out


def _require(rep: Report, stage: str) -> None:
    if not rep.ok:
        f = rep.sorted_findings()[0]
        raise StageFailure(stage, f"{len(rep.findings)} failures, first {f.family} at {f.address}")


def _stepwise_involution(I: StrictImage):
    """Covariant-tag sub-structure, formally completed by strict opposites, then extracted."""
    from .opposites import completion_witness
    C = I.cat
    plus = tuple(p for p in C.objects if p.endswith("|+"))
    sub = ContraTwoCat(plus, {(p, q): C.hom[(p, q)] for p in plus for q in plus}, {p: C.unit[p] for p in plus},
                       {k: C.comp[k] for k in C.comp if all(o in plus for o in k[:3])}, f"plus({C.name})")
    Cc, _ = complete_strict_opposites(sub)
    wit = {p: completion_witness(Cc, p) for p in Cc.objects}
    S = extract_strong_involution(Cc, wit)
    inclusion = VarianceFunctor(sub, C, {p: p for p in plus},
                                {(p, q): VMorphism(sub.hom[(p, q)], C.hom[(p, q)],
                                                   *(_identity_data(sub.hom[(p, q)].part(g)) for g in VARIANCES))
                                 for p in plus for q in plus})
    comparison = completion_comparison(sub, inclusion, I)
    return S, Cc, comparison


def _into_completion(Y: VarianceFunctor, Cc: ContraTwoCat) -> VarianceFunctor:
    """Corestrict the embedding to the covariant tags and include them as (p, +) in the completion."""
    om = {x: tagged(p, "+") for x, p in Y.obj_map.items()}
    hm = {}
    for (x, y), F in Y.hom_maps.items():
        V = Cc.hom[(om[x], om[y])]
        hm[(x, y)] = VMorphism(F.source, V, *(FunctorData(F.source.part(g), V.part(g), F.part(g).obj_map,
                                                          F.part(g).mor_map) for g in VARIANCES))
    return VarianceFunctor(Y.source, Cc, om, hm)


def _identity_data(C: FinCat) -> FunctorData:
    return FunctorData(C, C, {o: o for o in C.objects}, {m: m for m in C.mor_ids})


def strictify_pipeline(W: WeakDualityInvolution, path: str = "onestep",
                       budget: StrictifyBudget | None = None) -> PipelineResult:
    """Weak involution → V-bicategory → strict image → strict involution, plus the packaged embedding."""
    if path not in ("onestep", "stepwise"):
        raise ValueError(f"unknown path {path!r}")
    budget = budget or StrictifyBudget()
    timings: dict = {}
    _require(validate_weak_involution(W), "input")
    A = W.base
    if not A.objects:
        return _empty_result(W, path)
    B = _stage(timings, "vbicat", lambda: involution_to_vbicat(W))
    _require(validate_vbicat(B), "vbicat")
    check_size(B, budget)
    I = _stage(timings, "strict-image", lambda: build_strict_image(B, budget))
    _require(validate_strict_image(I), "strict-image")
    comparison = None
    S = I.involution
    Y = yoneda_embedding(I)
    if path == "stepwise":
        S, Cc, comparison = _stage(timings, "stepwise", lambda: _stepwise_involution(I))
        _require(validate_strict_involution(S), "stepwise")
        _require(check_two_equivalence(comparison), "stepwise-comparison")
        Y = _into_completion(Y, Cc)
    target = strict_as_weak(S)
    Fo = {x: Y.obj_map[x] for x in A.objects}
    hf = {(x, y): FunctorData(A.cell(x, y), S.base.cell(Fo[x], Fo[y]), Y.hom_maps[(x, y)].plus_part.obj_map,
                              Y.hom_maps[(x, y)].plus_part.mor_map) for x in A.objects for y in A.objects}
    cert, why = _stage(timings, "certificate", lambda: certify_biequivalence(Y, A, S.base))
    if cert is None:
        raise StageFailure("certificate", why)
    iota = {}
    for x in A.objects:
        xo = W.obj_map[x]
        p, po = tagged(x, "+"), tagged(xo, "+")
        # Y(χ_x), with χ_x = 1_{x°} read as a contravariant cell x → x°
        chi_img = Y.hom_maps[(x, xo)].minus_part.obj_map[A.unit[xo]]
        if path == "stepwise":
            # in the completion a contravariant cell p → p' is already a covariant cell (p,-) → (p',+)
            iota[x] = chi_img
        else:
            iota[x] = I.cat.compose1(tagged(x, "-"), p, po, "-", "-", chi_img, I.witnesses[p].xi)
    E = _stage(timings, "transfer", lambda: transfer_biequivalence(
        W, target, Fo, hf, iota, cert, Budget(budget.max_candidates, "transfer search")))
    _require(validate_duality_pseudofunctor(E), "duality")
    _require(independent_verify(cert), "certificate")
    return PipelineResult(S, E, cert, I, path, already_strict=not has_nonidentity_constraints(W), timings=timings,
                          comparison=comparison)


def _empty_result(W: WeakDualityInvolution, path: str) -> PipelineResult:
    A = W.base
    S = StrictInvolution(A, {}, {}, {}, {})
    cert, _ = certify_functor(A, A, {}, {})
    E = DualityPseudofunctorData(W, strict_as_weak(S), {}, {}, {}, {}, {}, {}, {}, {})
    return PipelineResult(S, E, cert, None, path, already_strict=True)


def yoneda_oracle(B: VBicat, budget: StrictifyBudget | None = None, raw: bool = True) -> Report:
    """Hom^g(M, N) against its table prediction for M, N among the Y_z and Y_z°.

    Evaluation at the generator must be an equivalence onto N^{g·e0}(w); with
    ``raw`` the guided and unguided enumerations must list the same morphisms.
    """
    from .fincat import complete_to_equivalence
    budget = budget or StrictifyBudget()
    check_size(B, budget)
    counter = Budget(budget.max_candidates, "module-morphism candidates")
    rep = Report("yoneda-oracle")
    mods = {}
    for z in B.objects:
        Y = representable_module(B, z)
        mods[tagged(z, "+")] = Y
        mods[tagged(z, "-")] = formal_opposite_module(Y)
    for p, q in itertools.product(mods, repeat=2):
        for g in VARIANCES:
            M, N = mods[p], mods[q]
            H = module_hom_category(M, N, g, "guided", counter)
            rep.count("yoneda-equivalence")
            if not complete_to_equivalence(yoneda_oracle_functor(M, N, g, H)).found:
                rep.law("yoneda-equivalence", (p, q, g))
            if raw:
                rep.count("guided-vs-raw")
                keys = [th.key for th in raw_morphisms(M, N, g, counter)]
                if sorted(keys) != sorted(th.key for th in H.morphisms):
                    rep.law("guided-vs-raw", (p, q, g), f"{len(H.morphisms)} guided, {len(keys)} raw")
    return rep
