"""Weak structures: V-bicategories and weak duality involutions.

Every base 2-category here has strictly associative composition; only the
involution carries weak data.  A V-bicategory is a ContraTwoCat whose
composition is associative and unital up to chosen invertible 2-cells.

Conventions for a weak involution (−)° with hom functors D: op A(x,y) → A(x°,y°):

    μ_{g,f}: Dg∘Df ⇒ D(gf)          ι_x: 1_{x°} ⇒ D(1_x)
    φ_x: x → x°°  (adjoint equivalence with ψ_x, η_x: 1 ⇒ ψφ, ε_x: φψ ⇒ 1)
    φ_f: DDf∘φ_x ⇒ φ_y∘f            ζ_x: φ_{x°} ⇒ D(φ_x)
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Mapping, Sequence

from .fincat import (
    Budget,
    BudgetExceeded,
    FinCat,
    FunctorData,
    Report,
    SearchResult,
    op_category,
    pair_id,
    solve_constraints,
    validate_functor,
)
from .opposites import OppositeWitness, StrictInvolution, StrongInvolution, precompose_functor
from .varcat import (
    Cell1,
    Cell2,
    ContraTwoCat,
    Pasting,
    _check_functoriality,
    _check_structure,
    comp_keys,
    comp_source,
)
from .vmonoidal import VARIANCES, VObj, mul

PENTAGON_FAMILIES = tuple(f"pentagon:{a}{b}{c}{d}" for a in VARIANCES for b in VARIANCES
                          for c in VARIANCES for d in VARIANCES)
UNITALITY_FAMILIES = tuple(f"unitality:{a}{b}" for a in VARIANCES for b in VARIANCES)


def _vt(C: FinCat, m: str, g: str) -> str:
    """Target of m read in the g-view of C."""
    return C.tgt[m] if g == "+" else C.src[m]


def _vs(C: FinCat, m: str, g: str) -> str:
    return C.src[m] if g == "+" else C.tgt[m]


# ---------------------------------------------------------------- V-bicategories

@dataclass(frozen=True, eq=False)
class VBicat:
    """A ContraTwoCat with associator and unitor components.

    ``assoc[(x, y, z, w, k, h, g)][(c, b, a)]`` is a 2-cell of A^{ghk}(x, w)
    from (c∘b)∘a to c∘(b∘a), for a: x → y of variance g, b: y → z of variance
    h and c: z → w of variance k.  ``lunit[(x, y, g)][a]``: 1∘a ⇒ a and
    ``runit[(x, y, g)][a]``: a∘1 ⇒ a.
    """

    cat: ContraTwoCat
    assoc: Mapping[tuple, Mapping[tuple, str]]
    lunit: Mapping[tuple, Mapping[str, str]]
    runit: Mapping[tuple, Mapping[str, str]]

    @property
    def objects(self):
        return self.cat.objects

    def cell(self, x, y, g="+") -> FinCat:
        return self.cat.cell(x, y, g)

    def c1(self, x, y, z, h, g, b, a) -> str:
        return self.cat.compose1(x, y, z, h, g, b, a)

    def c2(self, x, y, z, h, g, b, a) -> str:
        return self.cat.compose2(x, y, z, h, g, b, a)

    def is_strict(self) -> bool:
        for key, comps in self.assoc.items():
            T = self.cell(key[0], key[3], mul(mul(key[4], key[5]), key[6]))
            if any(T.src[v] != T.tgt[v] or T.identity[T.src[v]] != v for v in comps.values()):
                return False
        for table in (self.lunit, self.runit):
            for (x, y, g), comps in table.items():
                T = self.cell(x, y, g)
                if any(T.identity.get(a) != v for a, v in comps.items()):
                    return False
        return True


def lift_strict(A: ContraTwoCat) -> VBicat:
    """A strict structure viewed as a V-bicategory with identity constraints."""
    assoc, lunit, runit = {}, {}, {}
    obs = A.objects
    for x in obs:
        for y in obs:
            for g in VARIANCES:
                C = A.cell(x, y, g)
                lunit[(x, y, g)] = {a: C.identity[a] for a in C.objects}
                runit[(x, y, g)] = {a: C.identity[a] for a in C.objects}
    for x in obs:
        for y in obs:
            for z in obs:
                for w in obs:
                    for k in VARIANCES:
                        for h in VARIANCES:
                            for g in VARIANCES:
                                T = A.cell(x, w, mul(mul(g, h), k))
                                comps = {}
                                for c in A.cell(z, w, k).objects:
                                    for b in A.cell(y, z, h).objects:
                                        cb = A.compose1(y, z, w, k, h, c, b)
                                        for a in A.cell(x, y, g).objects:
                                            comps[(c, b, a)] = T.identity[A.compose1(x, y, w, mul(h, k), g, cb, a)]
                                assoc[(x, y, z, w, k, h, g)] = comps
    return VBicat(A, assoc, lunit, runit)


def _assoc_ends(B: VBicat, key, c, b, a):
    x, y, z, w, k, h, g = key
    cb = B.c1(y, z, w, k, h, c, b)
    ba = B.c1(x, y, z, h, g, b, a)
    return B.c1(x, y, w, mul(h, k), g, cb, a), B.c1(x, z, w, k, mul(g, h), c, ba)


def _check_constraint_cells(B: VBicat, rep: Report) -> None:
    obs = B.objects
    for key in sorted(_assoc_keys(obs)):
        x, y, z, w, k, h, g = key
        comps = B.assoc.get(key)
        if comps is None:
            rep.structural("assoc-gap", key)
            continue
        T = B.cell(x, w, mul(mul(g, h), k))
        for c in B.cell(z, w, k).objects:
            for b in B.cell(y, z, h).objects:
                for a in B.cell(x, y, g).objects:
                    v = comps.get((c, b, a))
                    if v is None or v not in T.mor_index:
                        rep.structural("assoc-gap", key + (c, b, a))
                        continue
                    if (T.src[v], T.tgt[v]) != _assoc_ends(B, key, c, b, a):
                        rep.law("assoc-type", key + (c, b, a))
                    elif not T.is_iso(v):
                        rep.law("assoc-invertible", key + (c, b, a))
    for x in obs:
        for y in obs:
            for g in VARIANCES:
                C = B.cell(x, y, g)
                for side, table in (("left", B.lunit), ("right", B.runit)):
                    comps = table.get((x, y, g))
                    if comps is None:
                        rep.structural("unitor-gap", (side, x, y, g))
                        continue
                    for a in C.objects:
                        v = comps.get(a)
                        if v is None or v not in C.mor_index:
                            rep.structural("unitor-gap", (side, x, y, g, a))
                            continue
                        if side == "left":
                            src = B.c1(x, y, y, "+", g, B.cat.unit[y], a)
                        else:
                            src = B.c1(x, x, y, g, "+", a, B.cat.unit[x])
                        if (C.src[v], C.tgt[v]) != (src, a):
                            rep.law("unitor-type", (side, x, y, g, a))
                        elif not C.is_iso(v):
                            rep.law("unitor-invertible", (side, x, y, g, a))


def _assoc_keys(obs):
    for x in obs:
        for y in obs:
            for z in obs:
                for w in obs:
                    for k in VARIANCES:
                        for h in VARIANCES:
                            for g in VARIANCES:
                                yield (x, y, z, w, k, h, g)


def _check_assoc_naturality(B: VBicat, key) -> list[tuple]:
    """Naturality in each argument separately (enough for functors on a product)."""
    x, y, z, w, k, h, g = key
    hk = mul(h, k)
    Cc, Cb, Ca = B.cell(z, w, k), B.cell(y, z, h), B.cell(x, y, g)
    T = B.cell(x, w, mul(mul(g, h), k))
    comps = B.assoc[key]
    out = []

    def L(gm, bm, am):
        return B.c2(x, y, w, hk, g, B.c2(y, z, w, k, h, gm, bm), am)

    def R(gm, bm, am):
        return B.c2(x, z, w, k, mul(g, h), gm, B.c2(x, y, z, h, g, bm, am))

    for c in Cc.objects:
        ic = Cc.identity[c]
        for b in Cb.objects:
            ib = Cb.identity[b]
            for a in Ca.objects:
                ia = Ca.identity[a]
                src = comps[(c, b, a)]
                moves = [((m, ib, ia), (Cc.tgt[m], b, a)) for m in Cc.out_of(c)]
                moves += [((ic, m, ia), (c, _vt(Cb, m, k), a)) for m in _view_out(Cb, b, k)]
                moves += [((ic, ib, m), (c, b, _vt(Ca, m, hk))) for m in _view_out(Ca, a, hk)]
                for mor, tgt in moves:
                    lhs = T.compose.get((comps[tgt], L(*mor)))
                    rhs = T.compose.get((R(*mor), src))
                    if lhs is None or lhs != rhs:
                        out.append(("assoc-naturality", key + (c, b, a) + mor))
    return out


def _view_out(C: FinCat, o: str, g: str):
    return C.out_of(o) if g == "+" else C.into(o)


def _pentagon_quint(B: VBicat, x, y, z, w, v) -> list[tuple]:
    out = []
    A = B.cat
    for g4 in VARIANCES:
        for g3 in VARIANCES:
            for g2 in VARIANCES:
                for g1 in VARIANCES:
                    fam = f"pentagon:{g4}{g3}{g2}{g1}"
                    g43, g32, g21 = mul(g4, g3), mul(g3, g2), mul(g2, g1)
                    g432, g321 = mul(g43, g2), mul(g32, g1)
                    T = A.cell(x, v, mul(g432, g1))
                    a1 = B.assoc[(x, y, z, v, g43, g2, g1)]
                    a2 = B.assoc[(x, z, w, v, g4, g3, g21)]
                    a3 = B.assoc[(y, z, w, v, g4, g3, g2)]
                    a4 = B.assoc[(x, y, w, v, g4, g32, g1)]
                    a5 = B.assoc[(x, y, z, w, g3, g2, g1)]
                    for d in A.cell(w, v, g4).objects:
                        idd = A.cell(w, v, g4).identity[d]
                        for c in A.cell(z, w, g3).objects:
                            dc = B.c1(z, w, v, g4, g3, d, c)
                            for b in A.cell(y, z, g2).objects:
                                cb = B.c1(y, z, w, g3, g2, c, b)
                                for a in A.cell(x, y, g1).objects:
                                    ia = A.cell(x, y, g1).identity[a]
                                    ba = B.c1(x, y, z, g2, g1, b, a)
                                    p1 = T.compose[(a2[(d, c, ba)], a1[(dc, b, a)])]
                                    s1 = B.c2(x, y, v, g432, g1, a3[(d, c, b)], ia)
                                    s2 = a4[(d, cb, a)]
                                    inner = a5[(c, b, a)]
                                    W = A.cell(x, w, g321)
                                    if g4 == "-":
                                        inner = W.inverse[inner]
                                    s3 = B.c2(x, w, v, g4, g321, idd, inner)
                                    p2 = T.compose.get((s3, T.compose[(s2, s1)]))
                                    if p1 != p2:
                                        out.append((fam, (x, y, z, w, v, d, c, b, a)))
    return out


def validate_vbicat(B: VBicat, threads: int = 1) -> Report:
    """Invertibility, naturality, the 16 pentagon families and the unit axioms."""
    rep = Report("vbicat")
    A = B.cat
    _check_structure(A, rep)
    if rep.has_structural:
        return rep
    _check_functoriality(A, rep)
    _check_constraint_cells(B, rep)
    if rep.has_structural or any(f.family.endswith("-type") for f in rep.findings):
        rep.findings.sort(key=lambda f: f.sort_key())
        return rep
    obs = A.objects
    keys = sorted(_assoc_keys(obs))
    quints = [(x, y, z, w, v) for x in obs for y in obs for z in obs for w in obs for v in obs]
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as ex:
            nat = list(ex.map(lambda k: _check_assoc_naturality(B, k), keys))
            pent = list(ex.map(lambda q: _pentagon_quint(B, *q), quints))
    else:
        nat = [_check_assoc_naturality(B, k) for k in keys]
        pent = [_pentagon_quint(B, *q) for q in quints]
    for found in nat + pent:
        for fam, addr in found:
            rep.law(fam, addr)
    for fam in PENTAGON_FAMILIES:
        rep.count(fam, len(quints))
    _check_unitors(B, rep)
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


def _check_unitors(B: VBicat, rep: Report) -> None:
    A = B.cat
    obs = A.objects
    for x in obs:
        for y in obs:
            for g in VARIANCES:
                C = A.cell(x, y, g)
                uy, ux = A.unit[y], A.unit[x]
                iuy, iux = A.cell(y, y).identity[uy], A.cell(x, x).identity[ux]
                lu, ru = B.lunit[(x, y, g)], B.runit[(x, y, g)]
                for m in C.mor_ids:
                    s, t = C.src[m], C.tgt[m]
                    if C.compose[(lu[t], B.c2(x, y, y, "+", g, iuy, m))] != C.compose[(m, lu[s])]:
                        rep.law("unitor-naturality", ("left", x, y, g, m))
                    if C.compose[(ru[t], B.c2(x, x, y, g, "+", m, iux))] != C.compose[(m, ru[s])]:
                        rep.law("unitor-naturality", ("right", x, y, g, m))
    # (b∘1)∘a ⇒ b∘(1∘a) against the two unitors
    for x in obs:
        for y in obs:
            for z in obs:
                for h in VARIANCES:
                    for g in VARIANCES:
                        fam = f"unitality:{h}{g}"
                        T = A.cell(x, z, mul(g, h))
                        Ca, Cb = A.cell(x, y, g), A.cell(y, z, h)
                        comps = B.assoc[(x, y, y, z, h, "+", g)]
                        uy = A.unit[y]
                        for b in Cb.objects:
                            ib = Cb.identity[b]
                            for a in Ca.objects:
                                ia = Ca.identity[a]
                                lam = B.lunit[(x, y, g)][a]
                                if h == "-":
                                    lam = Ca.inverse[lam]
                                lhs = B.c2(x, y, z, h, g, B.runit[(y, z, h)][b], ia)
                                rhs = T.compose.get((B.c2(x, y, z, h, g, ib, lam), comps[(b, uy, a)]))
                                if lhs != rhs:
                                    rep.law(fam, (x, y, z, b, a))
                        rep.count(fam)


def replace_assoc_component(B: VBicat, key, cells, value: str) -> VBicat:
    assoc = dict(B.assoc)
    comps = dict(assoc[key])
    comps[cells] = value
    assoc[key] = comps
    return VBicat(B.cat, assoc, B.lunit, B.runit)


# ---------------------------------------------------------------- weak duality involutions

@dataclass(frozen=True, eq=False)
class WeakDualityInvolution:
    """A weak duality involution on a plain strict 2-category (see module docstring).

    ``mu[(x, y, z)][(g, f)]`` lives in A(x°, z°); ``phi_nat[(x, y)][f]`` in
    A(x, y°°); ``zeta[x]`` in A(x°, x°°°).  ``adjusted`` lists the objects
    whose counit was replaced to make φ an adjoint equivalence.
    """

    base: ContraTwoCat
    obj_map: Mapping[str, str]
    D: Mapping[tuple[str, str], FunctorData]
    mu: Mapping[tuple[str, str, str], Mapping[tuple[str, str], str]]
    iota: Mapping[str, str]
    phi: Mapping[str, str]
    phi_inv: Mapping[str, str]
    eta: Mapping[str, str]
    eps: Mapping[str, str]
    phi_nat: Mapping[tuple[str, str], Mapping[str, str]]
    zeta: Mapping[str, str]
    adjusted: tuple = ()
    name: str = ""


class _Ops:
    """Pasting vocabulary bound to one weak involution."""

    def __init__(self, W: WeakDualityInvolution):
        self.W, self.A, self.o = W, W.base, W.obj_map
        self.P = Pasting(W.base)

    def c1(self, x, y, f) -> Cell1:
        return Cell1(x, y, f)

    def D1(self, f: Cell1) -> Cell1:
        return Cell1(self.o[f.x], self.o[f.y], self.W.D[(f.x, f.y)].obj_map[f.id])

    def D2(self, s: Cell2) -> Cell2:
        return Cell2(self.o[s.x], self.o[s.y], self.W.D[(s.x, s.y)].mor_map[s.id])

    def mu(self, g: Cell1, f: Cell1) -> Cell2:
        return Cell2(self.o[f.x], self.o[g.y], self.W.mu[(f.x, f.y, g.y)][(g.id, f.id)])

    def iota(self, x) -> Cell2:
        return Cell2(self.o[x], self.o[x], self.W.iota[x])

    def phi(self, x) -> Cell1:
        return Cell1(x, self.o[self.o[x]], self.W.phi[x])

    def psi(self, x) -> Cell1:
        return Cell1(self.o[self.o[x]], x, self.W.phi_inv[x])

    def eta(self, x) -> Cell2:
        return Cell2(x, x, self.W.eta[x])

    def eps(self, x) -> Cell2:
        xx = self.o[self.o[x]]
        return Cell2(xx, xx, self.W.eps[x])

    def phin(self, f: Cell1) -> Cell2:
        return Cell2(f.x, self.o[self.o[f.y]], self.W.phi_nat[(f.x, f.y)][f.id])

    def zeta(self, x) -> Cell2:
        o = self.o
        return Cell2(o[x], o[o[o[x]]], self.W.zeta[x])

    def DD1(self, f: Cell1) -> Cell1:
        return self.D1(self.D1(f))

    def c_comp(self, g: Cell1, f: Cell1) -> Cell2:
        """DDg∘DDf ⇒ DD(gf)."""
        P = self.P
        return P.vcomp(P.inv(self.D2(self.mu(g, f))), self.mu(self.D1(g), self.D1(f)))

    def c_unit(self, x) -> Cell2:
        """1_{x°°} ⇒ DD(1_x)."""
        P = self.P
        return P.vcomp(P.inv(self.D2(self.iota(x))), self.iota(self.o[x]))


def _one_cells(A: ContraTwoCat, x, y):
    return [Cell1(x, y, f) for f in A.cell(x, y).objects]


def _typed(P: Pasting, c: Cell2, src: Cell1, tgt: Cell1) -> bool:
    H = P.hom(c.x, c.y)
    return (c.x, c.y) == (src.x, src.y) == (tgt.x, tgt.y) and c.id in H.mor_index and \
        H.src[c.id] == src.id and H.tgt[c.id] == tgt.id


def _weak_structure(W: WeakDualityInvolution, rep: Report) -> None:
    A, o = W.base, W.obj_map
    obs = A.objects
    if A.has_contravariance:
        rep.structural("base", (), "base 2-category has contravariant cells")
    for x in obs:
        if o.get(x) not in obs:
            rep.structural("object-map", (x,))
    if rep.has_structural:
        return
    for x in obs:
        for y in obs:
            F = W.D.get((x, y))
            if F is None or F.source != op_category(A.cell(x, y)) or F.target != A.cell(o[x], o[y]):
                rep.structural("D-type", (x, y))
            elif not validate_functor(F).ok:
                rep.structural("D-functor", (x, y))
            if (x, y) not in W.phi_nat:
                rep.structural("phi-nat-gap", (x, y))
            for z in obs:
                if (x, y, z) not in W.mu:
                    rep.structural("mu-gap", (x, y, z))
        for table, nm in ((W.iota, "iota"), (W.phi, "phi"), (W.phi_inv, "phi-inv"), (W.zeta, "zeta")):
            if x not in table:
                rep.structural(f"{nm}-gap", (x,))


def _weak_types(W: WeakDualityInvolution, ops: _Ops, rep: Report) -> None:
    A, P, o = W.base, ops.P, W.obj_map
    obs = A.objects
    for x in obs:
        xx = o[o[x]]
        if W.phi[x] not in A.cell(x, xx).obj_index or W.phi_inv[x] not in A.cell(xx, x).obj_index:
            rep.law("phi-type", (x,))
            continue
        try:
            ok = _typed(P, ops.iota(x), P.id1(o[x]), ops.D1(P.id1(x)))
        except KeyError:
            ok = False
        if not ok:
            rep.law("iota-type", (x,))
        try:
            ok = _typed(P, ops.zeta(x), ops.phi(o[x]), ops.D1(ops.phi(x)))
        except KeyError:
            ok = False
        if not ok:
            rep.law("zeta-type", (x,))
    for (x, y, z), table in sorted(W.mu.items()):
        for g in _one_cells(A, y, z):
            for f in _one_cells(A, x, y):
                try:
                    ok = _typed(P, ops.mu(g, f), P.comp1(ops.D1(g), ops.D1(f)), ops.D1(P.comp1(g, f)))
                except KeyError:
                    ok = False
                if not ok:
                    rep.law("mu-type", (x, y, z, g.id, f.id))
    if any(f.family == "phi-type" for f in rep.findings):
        return
    for (x, y), table in sorted(W.phi_nat.items()):
        for f in _one_cells(A, x, y):
            try:
                ok = _typed(P, ops.phin(f), P.comp1(ops.DD1(f), ops.phi(x)), P.comp1(ops.phi(y), f))
            except KeyError:
                ok = False
            if not ok:
                rep.law("phi-nat-type", (x, y, f.id))


def _invertible(P: Pasting, c: Cell2) -> bool:
    return P.hom(c.x, c.y).is_iso(c.id)


def _adjoint_failures(ops: _Ops, x) -> str | None:
    P = ops.P
    W = ops.W
    if x not in W.eta or x not in W.eps:
        return "missing unit or counit"
    phi, psi = ops.phi(x), ops.psi(x)
    try:
        eta, eps = ops.eta(x), ops.eps(x)
        if not _typed(P, eta, P.id1(x), P.comp1(psi, phi)):
            return "unit has the wrong type"
        if not _typed(P, eps, P.comp1(phi, psi), P.id1(phi.y)):
            return "counit has the wrong type"
    except KeyError:
        return "unit or counit is not a 2-cell"
    if not (_invertible(P, eta) and _invertible(P, eps)):
        return "unit or counit is not invertible"
    t1 = P.vcomp(P.whisker(eps, phi), P.whisker(phi, eta))
    if t1 != P.id2(phi):
        return "triangle identity at φ fails"
    t2 = P.vcomp(P.whisker(psi, eps), P.whisker(eta, psi))
    if t2 != P.id2(psi):
        return "triangle identity at φ⁻¹ fails"
    return None


def zeta_axiom_sides(ops: _Ops, x, order: str = "left"):
    """Both pastings of the ζ axiom at x: ζ_{x°}*φ_x and (Dζ_x*φ_x)∘φ_{φ_x}⁻¹."""
    P, o = ops.P, ops.o
    px = ops.phi(x)
    lhs = P.evaluate([[ops.zeta(o[x]), px]], order)
    rhs = P.evaluate([[P.inv(ops.phin(px))], [ops.D2(ops.zeta(x)), px]], order)
    return lhs, rhs


def validate_weak_involution(W: WeakDualityInvolution) -> Report:
    """Pseudofunctor coherence, adjoint equivalences, pseudonaturality and ζ."""
    rep = Report("weak-involution")
    _weak_structure(W, rep)
    if rep.has_structural:
        return rep
    ops = _Ops(W)
    A, P = W.base, ops.P
    obs = A.objects
    _weak_types(W, ops, rep)
    for x in obs:
        why = _adjoint_failures(ops, x) if not any(
            f.family == "phi-type" and f.address == (x,) for f in rep.findings) else None
        if why:
            rep.law("adjoint-equivalence", (x,), why)
    if not rep.ok:
        return rep
    for x in obs:
        for nm, c in (("iota", ops.iota(x)), ("zeta", ops.zeta(x))):
            if not _invertible(P, c):
                rep.law("invertible", (nm, x))
    for x in obs:
        for y in obs:
            for f in _one_cells(A, x, y):
                if not _invertible(P, ops.phin(f)):
                    rep.law("invertible", ("phi-nat", x, y, f.id))
            for z in obs:
                for g in _one_cells(A, y, z):
                    for f in _one_cells(A, x, y):
                        if not _invertible(P, ops.mu(g, f)):
                            rep.law("invertible", ("mu", x, y, z, g.id, f.id))
    if not rep.ok:
        return rep
    _pseudofunctor_laws(ops, rep)
    _pseudonatural_laws(ops, rep)
    for x in obs:
        l1, r1 = zeta_axiom_sides(ops, x, "left")
        l2, r2 = zeta_axiom_sides(ops, x, "right")
        if (l1, r1) != (l2, r2):
            rep.law("zeta-evaluators", (x,), "left and right association disagree")
        if l1 != r1:
            rep.law("zeta-axiom", (x,))
        rep.count("zeta-axiom")
    _zeta_modification(ops, rep)
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


def _pseudofunctor_laws(ops: _Ops, rep: Report) -> None:
    A, P = ops.A, ops.P
    obs = A.objects
    for x in obs:
        for y in obs:
            Hxy = A.cell(x, y)
            for z in obs:
                Hyz = A.cell(y, z)
                for s in Hyz.mor_ids:
                    sig = Cell2(y, z, s)
                    g, g2 = P.src(sig), P.tgt(sig)
                    for t in Hxy.mor_ids:
                        tau = Cell2(x, y, t)
                        f, f2 = P.src(tau), P.tgt(tau)
                        lhs = P.vcomp(ops.mu(g, f), P.hcomp(ops.D2(sig), ops.D2(tau)))
                        rhs = P.vcomp(ops.D2(P.hcomp(sig, tau)), ops.mu(g2, f2))
                        if lhs != rhs:
                            rep.law("mu-naturality", (x, y, z, s, t))
                for w in obs:
                    for h in _one_cells(A, z, w):
                        for g in _one_cells(A, y, z):
                            for f in _one_cells(A, x, y):
                                lhs = P.vcomp(ops.mu(h, P.comp1(g, f)), P.whisker(ops.D1(h), ops.mu(g, f)))
                                rhs = P.vcomp(ops.mu(P.comp1(h, g), f), P.whisker(ops.mu(h, g), ops.D1(f)))
                                if lhs != rhs:
                                    rep.law("mu-hexagon", (x, y, z, w, h.id, g.id, f.id))
            for f in _one_cells(A, x, y):
                Df = ops.D1(f)
                if P.vcomp(ops.mu(f, P.id1(x)), P.whisker(Df, ops.iota(x))) != P.id2(Df):
                    rep.law("mu-unit", ("right", x, y, f.id))
                if P.vcomp(ops.mu(P.id1(y), f), P.whisker(ops.iota(y), Df)) != P.id2(Df):
                    rep.law("mu-unit", ("left", x, y, f.id))


def _pseudonatural_laws(ops: _Ops, rep: Report) -> None:
    A, P = ops.A, ops.P
    obs = A.objects
    for x in obs:
        px = ops.phi(x)
        for y in obs:
            py = ops.phi(y)
            for s in A.cell(x, y).mor_ids:
                sig = Cell2(x, y, s)
                f, f2 = P.src(sig), P.tgt(sig)
                lhs = P.vcomp(ops.phin(f2), P.whisker(ops.D2(ops.D2(sig)), px))
                rhs = P.vcomp(P.whisker(py, sig), ops.phin(f))
                if lhs != rhs:
                    rep.law("phi-nat-naturality", (x, y, s))
            for z in obs:
                for g in _one_cells(A, y, z):
                    for f in _one_cells(A, x, y):
                        lhs = P.vcomp(ops.phin(P.comp1(g, f)), P.whisker(ops.c_comp(g, f), px))
                        rhs = P.vcomp(P.whisker(ops.phin(g), f), P.whisker(ops.DD1(g), ops.phin(f)))
                        if lhs != rhs:
                            rep.law("phi-nat-composition", (x, y, z, g.id, f.id))
        lhs = P.vcomp(ops.phin(P.id1(x)), P.whisker(ops.c_unit(x), px))
        if lhs != P.id2(px):
            rep.law("phi-nat-unit", (x,))


def _zeta_modification(ops: _Ops, rep: Report) -> None:
    """ζ is a modification: (Dφ)_f∘(DDDf*ζ_x) = (ζ_y*Df)∘φ_{Df}."""
    A, P = ops.A, ops.P
    for x in A.objects:
        px = ops.phi(x)
        for y in A.objects:
            py = ops.phi(y)
            for f in _one_cells(A, x, y):
                ddf = ops.DD1(f)
                dphi_f = P.vseq(P.inv(ops.mu(py, f)), P.inv(ops.D2(ops.phin(f))), ops.mu(ddf, px))
                lhs = P.vcomp(dphi_f, P.whisker(ops.D1(ddf), ops.zeta(x)))
                rhs = P.vcomp(P.whisker(ops.zeta(y), ops.D1(f)), ops.phin(ops.D1(f)))
                if lhs != rhs:
                    rep.law("zeta-modification", (x, y, f.id))


# ---------------------------------------------------------------- constructions of weak involutions

def adjoint_counit(A: ContraTwoCat, x, xx, phi: str, psi: str, eta: str, eps: str) -> str:
    """Replace ε by ε∘(φ*η⁻¹*ψ)∘(ε⁻¹*φψ), which satisfies both triangle identities."""
    P = Pasting(A)
    f, g = Cell1(x, xx, phi), Cell1(xx, x, psi)
    e, n = Cell2(xx, xx, eps), Cell2(x, x, eta)
    fg = P.comp1(f, g)
    step1 = P.whisker(P.inv(e), fg)
    step2 = P.whisker(f, P.inv(n), g)
    return P.vseq(e, step2, step1).id


def complete_adjoint(W: WeakDualityInvolution) -> WeakDualityInvolution:
    """Adjust counits where a triangle identity fails; record the adjusted objects."""
    ops = _Ops(W)
    eps = dict(W.eps)
    adjusted = list(W.adjusted)
    for x in W.base.objects:
        if _adjoint_failures(ops, x) is None:
            continue
        xx = W.obj_map[W.obj_map[x]]
        eps[x] = adjoint_counit(W.base, x, xx, W.phi[x], W.phi_inv[x], W.eta[x], W.eps[x])
        adjusted.append(x)
    return replace(W, eps=eps, adjusted=tuple(adjusted))


def strict_as_weak(S: StrongInvolution) -> WeakDualityInvolution:
    """A strong involution with identity constraint 2-cells."""
    A, o = S.base, S.obj_map
    mu, phi_nat = {}, {}
    for x in A.objects:
        for y in A.objects:
            for z in A.objects:
                H = A.cell(o[x], o[z])
                mu[(x, y, z)] = {(g, f): H.identity[A.compose1(o[x], o[y], o[z], "+", "+", S.dual1(y, z, g),
                                                               S.dual1(x, y, f))]
                                 for g in A.cell(y, z).objects for f in A.cell(x, y).objects}
            H = A.cell(x, o[o[y]])
            phi_nat[(x, y)] = {f: H.identity[A.compose1(x, y, o[o[y]], "+", "+", S.phi[y], f)]
                               for f in A.cell(x, y).objects}
    iota = {x: A.cell(o[x], o[x]).identity[A.unit[o[x]]] for x in A.objects}
    eta = {x: A.cell(x, x).identity[A.unit[x]] for x in A.objects}
    eps = {x: A.cell(o[o[x]], o[o[x]]).identity[A.unit[o[o[x]]]] for x in A.objects}
    zeta = {x: A.cell(o[x], o[o[o[x]]]).identity[S.phi[o[x]]] for x in A.objects}
    return WeakDualityInvolution(A, dict(o), dict(S.D), mu, iota, dict(S.phi), dict(S.phi_inv),
                                 eta, eps, phi_nat, zeta, name=f"strict({A.name})")


def _isos_from(H: FinCat, a: str) -> list[str]:
    return [m for m in H.out_of(a) if H.is_iso(m)]


def deform_involution(S: StrongInvolution, seed: int, name: str = "") -> WeakDualityInvolution:
    """Transport a strong involution along random invertible 2-cells.

    κ_f: S(f) ⇒ f° replaces each hom functor value and λ_x: φ^S_x ⇒ φ_x each
    φ component; all constraints are then forced.  With posetal homs every
    κ and λ is an identity and the result agrees with ``strict_as_weak``.
    """
    rng = random.Random(seed)
    A, o = S.base, S.obj_map
    P = Pasting(A)
    kappa = {}
    for x in A.objects:
        for y in A.objects:
            H = A.cell(o[x], o[y])
            for f in A.cell(x, y).objects:
                kappa[(x, y, f)] = rng.choice(_isos_from(H, S.dual1(x, y, f)))
    lam = {}
    for x in A.objects:
        H = A.cell(x, o[o[x]])
        lam[x] = rng.choice(_isos_from(H, S.phi[x]))

    def K(x, y, f) -> Cell2:
        return Cell2(o[x], o[y], kappa[(x, y, f)])

    def SD2(c: Cell2) -> Cell2:
        return Cell2(o[c.x], o[c.y], S.dual2(c.x, c.y, c.id))

    D = {}
    for x in A.objects:
        for y in A.objects:
            H, T = A.cell(x, y), A.cell(o[x], o[y])
            om = {f: T.tgt[kappa[(x, y, f)]] for f in H.objects}
            mm = {}
            for s in H.mor_ids:
                f, g = H.src[s], H.tgt[s]
                mm[s] = P.vseq(K(x, y, f), SD2(Cell2(x, y, s)), P.inv(K(x, y, g))).id
            D[(x, y)] = FunctorData(op_category(H), T, om, mm)
    phi = {x: A.cell(x, o[o[x]]).tgt[lam[x]] for x in A.objects}
    mu = {}
    for x in A.objects:
        for y in A.objects:
            for z in A.objects:
                table = {}
                for g in A.cell(y, z).objects:
                    for f in A.cell(x, y).objects:
                        gf = A.compose1(x, y, z, "+", "+", g, f)
                        c = P.vcomp(K(x, z, gf), P.hcomp(P.inv(K(y, z, g)), P.inv(K(x, y, f))))
                        table[(g, f)] = c.id
                mu[(x, y, z)] = table
    iota = {x: kappa[(x, x, A.unit[x])] for x in A.objects}
    L = {x: Cell2(x, o[o[x]], lam[x]) for x in A.objects}
    psi = {x: Cell1(o[o[x]], x, S.phi_inv[x]) for x in A.objects}
    eta = {x: P.whisker(psi[x], L[x]).id for x in A.objects}
    eps = {x: P.whisker(P.inv(L[x]), psi[x]).id for x in A.objects}
    phi_nat = {}
    for x in A.objects:
        for y in A.objects:
            table = {}
            for f in A.cell(x, y).objects:
                df = D[(x, y)].obj_map[f]
                # DDf ⇒ S(Df) ⇒ SSf, then SSf∘φ^S_x = φ^S_y∘f ⇒ φ_y∘f
                dd = P.vcomp(SD2(K(x, y, f)), P.inv(K(o[x], o[y], df)))
                step = P.hcomp(dd, P.inv(L[x]))
                fin = P.whisker(L[y], Cell1(x, y, f))
                table[f] = P.vcomp(fin, step).id
            phi_nat[(x, y)] = table
    zeta = {}
    for x in A.objects:
        c = P.vseq(K(x, o[o[x]], phi[x]), P.inv(SD2(L[x])), P.inv(L[o[x]]))
        zeta[x] = c.id
    W = WeakDualityInvolution(A, dict(o), D, mu, iota, phi, dict(S.phi_inv), eta, eps, phi_nat, zeta,
                              name=name or f"deformed({A.name},{seed})")
    return complete_adjoint(W)


def has_nonidentity_constraints(W: WeakDualityInvolution) -> bool:
    A = W.base
    cells = [(W.obj_map[x], W.obj_map[x], c) for x, c in W.iota.items()]
    cells += [(W.obj_map[x], W.obj_map[W.obj_map[W.obj_map[x]]], c) for x, c in W.zeta.items()]
    for (x, y, z), t in W.mu.items():
        cells += [(W.obj_map[x], W.obj_map[z], c) for c in t.values()]
    for (x, y), t in W.phi_nat.items():
        cells += [(x, W.obj_map[W.obj_map[y]], c) for c in t.values()]
    if any(c not in A.cell(a, b).identity_ids for a, b, c in cells):
        return True
    # a φ that is not literally the identity also counts as weak data
    return any(W.obj_map[W.obj_map[x]] != x or W.phi[x] != A.unit[x] for x in A.objects)


def deformed_weak(A: ContraTwoCat, seed: int, name: str = "") -> WeakDualityInvolution:
    """A weak involution on A: seeded opposite witnesses, then a seeded deformation.

    Witness combinations whose extracted involution is not strict are preferred,
    so posetal inputs still get a non-identity φ when one exists.
    """
    import itertools
    from .opposites import all_strict_opposites, extract_strong_involution
    rng = random.Random(seed)
    per = [all_strict_opposites(A, x) for x in A.objects]
    if any(not c for c in per):
        raise ValueError("some object has no strict opposite")
    combos = list(itertools.islice(itertools.product(*per), 256))
    weak, strict = [], []
    for combo in combos:
        try:
            S = extract_strong_involution(A, dict(zip(A.objects, combo)))
        except ValueError:
            continue
        (strict if isinstance(S, StrictInvolution) else weak).append(S)
    pool = weak or strict
    if not pool:
        raise ValueError("no witness combination yields an involution")
    return deform_involution(pool[rng.randrange(len(pool))], seed, name)


# ---------------------------------------------------------------- the V-bicategory of an involution

def _act_obj(o, g, x):
    return x if g == "+" else o[x]


def involution_to_vbicat(W: WeakDualityInvolution) -> VBicat:
    """A^g(x,y) = A(g·x, y) with composite β∘(h·α)∘φ_{g,h}.

    h·α is α or D(α); φ_{g,h} is φ_x when g = h = − and an identity otherwise.
    """
    ops = _Ops(W)
    A, P, o = W.base, ops.P, W.obj_map
    obs = A.objects
    hom = {(x, y): VObj(A.cell(x, y), A.cell(o[x], y)) for x in obs for y in obs}

    def inner(x, y, h, g, a: Cell1) -> Cell1:
        """(h·a)∘φ_{g,h} as a cell from (gh)·x."""
        ha = a if h == "+" else ops.D1(a)
        if g == h == "-":
            return P.comp1(ha, ops.phi(x))
        return ha

    def inner2(x, y, h, g, s: Cell2) -> Cell2:
        hs = s if h == "+" else ops.D2(s)
        if g == h == "-":
            return P.whisker(hs, ops.phi(x))
        return hs

    comp = {}
    for key in comp_keys(obs):
        x, y, z, h, g = key
        src = comp_source(hom, x, y, z, h, g)
        gx, hy = _act_obj(o, g, x), _act_obj(o, h, y)
        Cb, Ca = A.cell(hy, z), A.cell(gx, y)
        om = {}
        for b in Cb.objects:
            for a in Ca.objects:
                om[pair_id(b, a)] = P.comp1(Cell1(hy, z, b), inner(x, y, h, g, Cell1(gx, y, a))).id
        mm = {}
        for sb in Cb.mor_ids:
            for sa in Ca.mor_ids:
                mm[pair_id(sb, sa)] = P.hcomp(Cell2(hy, z, sb), inner2(x, y, h, g, Cell2(gx, y, sa))).id
        comp[key] = FunctorData(src, hom[(x, z)].part(mul(g, h)), om, mm)
    cat = ContraTwoCat(obs, hom, dict(A.unit), comp, f"vbicat({A.name})")

    lunit, runit = {}, {}
    for x in obs:
        for y in obs:
            for g in VARIANCES:
                C = cat.cell(x, y, g)
                lunit[(x, y, g)] = {a: C.identity[a] for a in C.objects}
                if g == "+":
                    runit[(x, y, g)] = {a: C.identity[a] for a in C.objects}
                else:
                    # a∘D(1_x) ⇒ a via ι_x⁻¹
                    runit[(x, y, g)] = {a: P.whisker(Cell1(o[x], y, a), P.inv(ops.iota(x))).id
                                        for a in C.objects}
    assoc = {}
    for key in _assoc_keys(obs):
        x, y, z, w, k, h, g = key
        gx, hy, kz = _act_obj(o, g, x), _act_obj(o, h, y), _act_obj(o, k, z)
        table = {}
        for c in cat.cell(z, w, k).objects:
            cc = Cell1(kz, w, c)
            for b in cat.cell(y, z, h).objects:
                bb = Cell1(hy, z, b)
                for a in cat.cell(x, y, g).objects:
                    aa = Cell1(gx, y, a)
                    table[(c, b, a)] = _assoc_cell(ops, k, h, g, x, y, cc, bb, aa).id
        assoc[key] = table
    return VBicat(cat, assoc, lunit, runit)


def _assoc_cell(ops: _Ops, k, h, g, x, y, c: Cell1, b: Cell1, a: Cell1) -> Cell2:
    P, D1 = ops.P, ops.D1
    if k == "+":
        # both sides are c∘b∘(h·a)∘φ_{g,h}
        ha = a if h == "+" else D1(a)
        path = [c, b, ha] + ([ops.phi(x)] if g == h == "-" else [])
        return P.id2(_path(P, path))
    if h == "+" and g == "+":
        return P.whisker(c, ops.mu(b, a))
    if h == "+":
        return P.whisker(c, ops.mu(b, a), ops.phi(x))
    if g == "+":
        # c∘Db∘φ_y∘a ⇒ c∘Db∘DDa∘φ_x ⇒ c∘D(b∘Da)∘φ_x
        first = P.whisker(c, D1(b), P.inv(ops.phin(a)))
        second = P.whisker(c, ops.mu(b, D1(a)), ops.phi(x))
        return P.vcomp(second, first)
    # all three contravariant: a: x° → y, b: y° → z, c: z° → w
    da = D1(a)
    px = ops.phi(x)
    s1 = P.whisker(c, D1(b), P.inv(ops.phin(a)))
    s2 = P.whisker(c, D1(b), D1(da), ops.zeta(x))
    s3 = P.whisker(c, D1(b), ops.mu(da, px))
    s4 = P.whisker(c, ops.mu(b, P.comp1(da, px)))
    return P.vseq(s4, s3, s2, s1)


def _path(P: Pasting, cells: Sequence[Cell1]) -> Cell1:
    out = cells[-1]
    for c in reversed(cells[:-1]):
        out = P.comp1(c, out)
    return out


def contra_from_strong(S: StrongInvolution) -> ContraTwoCat:
    """The contravariance structure of a strong involution read directly from its tables.

    A⁺(x,y) = A(x,y), A⁻(x,y) = A(x°,y); the composite of β after α is
    β∘α, β∘Dα or β∘Dα∘φ_x according to the variances.
    """
    A, o = S.base, S.obj_map
    obs = A.objects
    hom = {(x, y): VObj(A.cell(x, y), A.cell(o[x], y)) for x in obs for y in obs}
    comp = {}
    for key in comp_keys(obs):
        x, y, z, h, g = key
        gx, hy = _act_obj(o, g, x), _act_obj(o, h, y)
        Cb, Ca = A.cell(hy, z), A.cell(gx, y)
        Fbz = A.comp[(_act_obj(o, h, gx), hy, z, "+", "+")]
        om, mm = {}, {}
        for b in Cb.objects:
            for a in Ca.objects:
                ha = a if h == "+" else S.dual1(gx, y, a)
                v = Fbz.obj_map[pair_id(b, ha)]
                if g == h == "-":
                    v = A.compose1(x, o[o[x]], z, "+", "+", v, S.phi[x])
                om[pair_id(b, a)] = v
        for sb in Cb.mor_ids:
            for sa in Ca.mor_ids:
                hs = sa if h == "+" else S.dual2(gx, y, sa)
                v = Fbz.mor_map[pair_id(sb, hs)]
                if g == h == "-":
                    ip = A.cell(x, o[o[x]]).identity[S.phi[x]]
                    v = A.compose2(x, o[o[x]], z, "+", "+", v, ip)
                mm[pair_id(sb, sa)] = v
        comp[key] = FunctorData(comp_source(hom, x, y, z, h, g), hom[(x, z)].part(mul(g, h)), om, mm)
    return ContraTwoCat(obs, hom, dict(A.unit), comp, f"vbicat({S.base.name})")


# ---------------------------------------------------------------- weak opposites

def verify_weak_opposite(B: VBicat, w: OppositeWitness) -> Report:
    """Round-trip 2-cells are invertible and precomposition with χ is an equivalence on every hom."""
    from .fincat import complete_to_equivalence
    rep = Report("weak-opposite")
    A = B.cat
    x, xp = w.x, w.x_op
    for name, (a, b, c, d) in (("unit2", (x, xp, w.xi, w.chi)), ("counit2", (xp, x, w.chi, w.xi))):
        H = A.cell(a, a)
        rt = A.compose1(a, b, a, "-", "-", c, d)
        cell = getattr(w, name)
        if w.strict and cell is None:
            if rt != A.unit[a]:
                rep.law("round-trip", (name, a))
            continue
        if cell is None or cell not in H.mor_index or not H.is_iso(cell) or \
                {H.src[cell], H.tgt[cell]} != {A.unit[a], rt}:
            rep.law("round-trip", (name, a))
    for y in A.objects:
        for h in VARIANCES:
            F = precompose_functor(A, w.chi, x, xp, y, h, "-")
            if not complete_to_equivalence(F).found:
                rep.law("hom-equivalence", (x, xp, y, h))
    return rep


def find_weak_opposite(B: VBicat, x: str, cap: int | None = 10 ** 6) -> SearchResult:
    """First contravariant equivalence pair out of x in canonical order."""
    A = B.cat
    budget = Budget(cap, "weak opposite search")
    tried = 0
    try:
        for xp in A.objects:
            for chi in A.cell(x, xp, "-").objects:
                for xi in A.cell(xp, x, "-").objects:
                    budget.tick()
                    tried += 1
                    u = _round_trip_iso(A, x, xp, xi, chi)
                    if u is None:
                        continue
                    cu = _round_trip_iso(A, xp, x, chi, xi, towards_unit=True)
                    if cu is None:
                        continue
                    w = OppositeWitness(x, xp, chi, xi, strict=False, unit2=u, counit2=cu)
                    if verify_weak_opposite(B, w).ok:
                        return SearchResult("found", w, candidates=tried)
    except BudgetExceeded as e:
        return SearchResult("inconclusive", reason=str(e), candidates=tried)
    return SearchResult("none", candidates=tried,
                        reason=f"no contravariant equivalence out of {x} among {tried} candidates")


def _round_trip_iso(A: ContraTwoCat, a, b, outer, inner, towards_unit=False):
    H = A.cell(a, a)
    rt = A.compose1(a, b, a, "-", "-", outer, inner)
    ends = (rt, A.unit[a]) if towards_unit else (A.unit[a], rt)
    return next((m for m in H.hom[ends] if H.is_iso(m)), None)


def canonical_weak_opposite(W: WeakDualityInvolution, B: VBicat, x: str) -> OppositeWitness:
    """χ = 1_{x°} read in A⁻(x, x°), ξ = φ_x⁻¹ read in A⁻(x°, x)."""
    A, o = W.base, W.obj_map
    ops = _Ops(W)
    P = ops.P
    chi, xi = A.unit[o[x]], W.phi_inv[x]
    # ξ∘χ = ψ∘D(1_{x°})∘φ_x ⇐ ψ∘φ_x ⇐ 1_x
    u = P.vcomp(P.whisker(ops.psi(x), ops.iota(o[x]), ops.phi(x)), ops.eta(x))
    # χ∘ξ = D(ψ)∘φ_{x°} ⇒ Dψ∘Dφ_x ⇒ D(φψ) ⇒ D(1) ⇒ 1
    xx = o[o[x]]
    steps = [P.whisker(ops.D1(ops.psi(x)), ops.zeta(x)),
             ops.mu(ops.psi(x), ops.phi(x)),
             ops.D2(P.inv(ops.eps(x))),
             P.inv(ops.iota(xx))]
    cu = P.vseq(*reversed(steps))
    return OppositeWitness(x, o[x], chi, xi, strict=False, unit2=u.id, counit2=cu.id)


# ---------------------------------------------------------------- duality pseudofunctors

@dataclass(frozen=True, eq=False)
class DualityPseudofunctorData:
    """A strict 2-functor F between weakly involuted 2-categories with 𝔦 and θ.

    ``iota[x]``: (Fx)° → F(x°) with inverse ``iota_inv[x]``, unit
    1 ⇒ iota_inv∘iota and counit iota∘iota_inv ⇒ 1.
    ``iota_nat[(x, y)][f]``: F(Df)∘𝔦_x ⇒ 𝔦_y∘D(Ff).
    ``theta[x]``: 𝔦_{x°}∘D(𝔦_x)∘φ_{Fx} ⇒ F(φ_x).
    """

    source: WeakDualityInvolution
    target: WeakDualityInvolution
    obj_map: Mapping[str, str]
    hom_functors: Mapping[tuple[str, str], FunctorData]
    iota: Mapping[str, str]
    iota_inv: Mapping[str, str]
    iota_unit: Mapping[str, str]
    iota_counit: Mapping[str, str]
    iota_nat: Mapping[tuple[str, str], Mapping[str, str]]
    theta: Mapping[str, str]


class _FOps:
    def __init__(self, E: DualityPseudofunctorData):
        self.E = E
        self.a, self.b = _Ops(E.source), _Ops(E.target)
        self.P = self.b.P
        self.F = E.obj_map

    def F1(self, f: Cell1) -> Cell1:
        return Cell1(self.F[f.x], self.F[f.y], self.E.hom_functors[(f.x, f.y)].obj_map[f.id])

    def F2(self, s: Cell2) -> Cell2:
        return Cell2(self.F[s.x], self.F[s.y], self.E.hom_functors[(s.x, s.y)].mor_map[s.id])

    def i1(self, x) -> Cell1:
        return Cell1(self.b.o[self.F[x]], self.F[self.a.o[x]], self.E.iota[x])

    def inat(self, f: Cell1) -> Cell2:
        return Cell2(self.b.o[self.F[f.x]], self.F[self.a.o[f.y]], self.E.iota_nat[(f.x, f.y)][f.id])

    def G1(self, f: Cell1) -> Cell1:
        return self.F1(self.a.D1(f))

    def H1(self, f: Cell1) -> Cell1:
        return self.b.D1(self.F1(f))

    def theta(self, x) -> Cell2:
        return Cell2(self.F[x], self.F[self.a.o[self.a.o[x]]], self.E.theta[x])

    def theta_source(self, x) -> Cell1:
        P, o = self.P, self.a.o
        return _path(P, [self.i1(o[x]), self.b.D1(self.i1(x)), self.b.phi(self.F[x])])


def theta_axiom_sides(fo: _FOps, x, order: str = "left"):
    P, a, b = fo.P, fo.a, fo.b
    o = a.o
    Fx = fo.F[x]
    ix, ixo, ixoo = fo.i1(x), fo.i1(o[x]), fo.i1(o[o[x]])
    dix, dixo = b.D1(ix), b.D1(ixo)
    pF = b.phi(Fx)
    dix_p = P.comp1(dix, pF)
    lhs_layers = [
        [ixoo, dixo, b.D1(dix), b.zeta(Fx)],
        [ixoo, dixo, b.mu(dix, pF)],
        [ixoo, b.mu(ixo, dix_p)],
        [ixoo, P.inv(b.D2(fo.theta(x)))],
        [P.inv(fo.inat(a.phi(x)))],
    ]
    rhs_layers = [
        [ixoo, dixo, b.phin(ix)],
        [fo.theta(o[x]), ix],
        [fo.F2(a.zeta(x)), ix],
    ]
    return P.evaluate(lhs_layers, order), P.evaluate(rhs_layers, order)


def validate_duality_pseudofunctor(E: DualityPseudofunctorData) -> Report:
    rep = Report("duality-pseudofunctor")
    WA, WB = E.source, E.target
    A, B = WA.base, WB.base
    Fo = E.obj_map
    for x in A.objects:
        if Fo.get(x) not in B.objects:
            rep.structural("object-map", (x,))
    if rep.has_structural:
        return rep
    for x in A.objects:
        for y in A.objects:
            G = E.hom_functors.get((x, y))
            if G is None or G.source != A.cell(x, y) or G.target != B.cell(Fo[x], Fo[y]):
                rep.structural("F-type", (x, y))
            elif not validate_functor(G).ok:
                rep.structural("F-functor", (x, y))
        for t, nm in ((E.iota, "iota"), (E.theta, "theta")):
            if x not in t:
                rep.structural(f"{nm}-gap", (x,))
    if rep.has_structural:
        return rep
    fo = _FOps(E)
    P, PA = fo.P, fo.a.P
    for x in A.objects:
        if fo.F1(PA.id1(x)) != P.id1(Fo[x]):
            rep.law("F-unit", (x,))
        for y in A.objects:
            for z in A.objects:
                for g in _one_cells(A, y, z):
                    for f in _one_cells(A, x, y):
                        if fo.F1(PA.comp1(g, f)) != P.comp1(fo.F1(g), fo.F1(f)):
                            rep.law("F-comp", (x, y, z, g.id, f.id))
                for s in A.cell(y, z).mor_ids:
                    for t in A.cell(x, y).mor_ids:
                        if fo.F2(PA.hcomp(Cell2(y, z, s), Cell2(x, y, t))) != \
                                P.hcomp(fo.F2(Cell2(y, z, s)), fo.F2(Cell2(x, y, t))):
                            rep.law("F-comp", (x, y, z, s, t))
    if not rep.ok:
        return rep
    oA, oB = WA.obj_map, WB.obj_map
    for x in A.objects:
        a, c = oB[Fo[x]], Fo[oA[x]]
        i, j = E.iota.get(x), E.iota_inv.get(x)
        if i not in B.cell(a, c).obj_index or j not in B.cell(c, a).obj_index:
            rep.law("iota-type", (x,))
            continue
        why = _equivalence_failure(P, Cell1(a, c, i), Cell1(c, a, j), E.iota_unit.get(x), E.iota_counit.get(x))
        if why:
            rep.law("iota-equivalence", (x,), why)
    if not rep.ok:
        return rep
    for x in A.objects:
        for y in A.objects:
            table = E.iota_nat.get((x, y), {})
            for f in _one_cells(A, x, y):
                c = table.get(f.id)
                try:
                    ok = c is not None and _typed(P, fo.inat(f), P.comp1(fo.G1(f), fo.i1(x)),
                                                  P.comp1(fo.i1(y), fo.H1(f))) and _invertible(P, fo.inat(f))
                except KeyError:
                    ok = False
                if not ok:
                    rep.law("iota-nat-type", (x, y, f.id))
        try:
            ok = _typed(P, fo.theta(x), fo.theta_source(x), fo.F1(fo.a.phi(x))) and _invertible(P, fo.theta(x))
        except KeyError:
            ok = False
        if not ok:
            rep.law("theta-type", (x,))
    if not rep.ok:
        return rep
    _iota_pseudonatural(fo, rep)
    for x in A.objects:
        l1, r1 = theta_axiom_sides(fo, x, "left")
        l2, r2 = theta_axiom_sides(fo, x, "right")
        if (l1, r1) != (l2, r2):
            rep.law("theta-evaluators", (x,))
        if l1 != r1:
            rep.law("theta-axiom", (x,))
        rep.count("theta-axiom")
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


def _equivalence_failure(P: Pasting, f: Cell1, g: Cell1, unit, counit) -> str | None:
    if unit is None or counit is None:
        return "missing unit or counit"
    try:
        u, c = Cell2(f.x, f.x, unit), Cell2(f.y, f.y, counit)
        if not _typed(P, u, P.id1(f.x), P.comp1(g, f)) or not _typed(P, c, P.comp1(f, g), P.id1(f.y)):
            return "unit or counit has the wrong type"
    except KeyError:
        return "unit or counit is not a 2-cell"
    if not (_invertible(P, u) and _invertible(P, c)):
        return "unit or counit is not invertible"
    if P.vcomp(P.whisker(c, f), P.whisker(f, u)) != P.id2(f) or \
            P.vcomp(P.whisker(g, c), P.whisker(u, g)) != P.id2(g):
        return "triangle identity fails"
    return None


def _iota_nat_naturality(fo: _FOps, x, y, s) -> bool:
    P, a, b = fo.P, fo.a, fo.b
    sig = Cell2(x, y, s)
    f, f2 = a.P.src(sig), a.P.tgt(sig)
    lhs = P.vcomp(fo.inat(f), P.whisker(fo.F2(a.D2(sig)), fo.i1(x)))
    rhs = P.vcomp(P.whisker(fo.i1(y), b.D2(fo.F2(sig))), fo.inat(f2))
    return lhs == rhs


def _iota_nat_unit(fo: _FOps, x) -> bool:
    P, a, b = fo.P, fo.a, fo.b
    ix = fo.i1(x)
    lhs = P.vcomp(fo.inat(a.P.id1(x)), P.whisker(fo.F2(a.iota(x)), ix))
    return lhs == P.whisker(ix, b.iota(fo.F[x]))


def _iota_nat_composition(fo: _FOps, g: Cell1, f: Cell1) -> bool:
    P, a, b = fo.P, fo.a, fo.b
    gf = a.P.comp1(g, f)
    lhs = P.vcomp(fo.inat(gf), P.whisker(fo.F2(a.mu(g, f)), fo.i1(f.x)))
    rhs = P.vseq(P.whisker(fo.i1(g.y), b.mu(fo.F1(g), fo.F1(f))),
                 P.whisker(fo.inat(g), fo.H1(f)),
                 P.whisker(fo.G1(g), fo.inat(f)))
    return lhs == rhs


def _iota_constraint_checks(fo: _FOps, x, y, z=None):
    """Yield (family, address, ok) for the 𝔦 pseudonaturality laws on one hom or pair of homs."""
    A = fo.a.A
    if z is None:
        for s in A.cell(x, y).mor_ids:
            yield "iota-nat-naturality", (x, y, s), _iota_nat_naturality(fo, x, y, s)
        if x == y:
            yield "iota-nat-unit", (x,), _iota_nat_unit(fo, x)
        return
    for g in _one_cells(A, y, z):
        for f in _one_cells(A, x, y):
            yield "iota-nat-composition", (x, y, z, g.id, f.id), _iota_nat_composition(fo, g, f)


def _iota_pseudonatural(fo: _FOps, rep: Report) -> None:
    obs = fo.a.A.objects
    for x in obs:
        for y in obs:
            for fam, addr, ok in _iota_constraint_checks(fo, x, y):
                if not ok:
                    rep.law(fam, addr)
            for z in obs:
                for fam, addr, ok in _iota_constraint_checks(fo, x, y, z):
                    if not ok:
                        rep.law(fam, addr)


def identity_duality_pseudofunctor(W: WeakDualityInvolution) -> DualityPseudofunctorData:
    """Id with 𝔦 = 1, identity 𝔦_f and θ_x = ι_{x°}⁻¹*φ_x."""
    A, o = W.base, W.obj_map
    ops = _Ops(W)
    P = ops.P
    hf = {(x, y): FunctorData(A.cell(x, y), A.cell(x, y), {f: f for f in A.cell(x, y).objects},
                              {m: m for m in A.cell(x, y).mor_ids}) for x in A.objects for y in A.objects}
    iota = {x: A.unit[o[x]] for x in A.objects}
    idc = {x: A.cell(o[x], o[x]).identity[A.unit[o[x]]] for x in A.objects}
    nat = {(x, y): {f: P.id2(ops.D1(Cell1(x, y, f))).id for f in A.cell(x, y).objects}
           for x in A.objects for y in A.objects}
    theta = {x: P.whisker(P.inv(ops.iota(o[x])), ops.phi(x)).id for x in A.objects}
    return DualityPseudofunctorData(W, W, {x: x for x in A.objects}, hf, iota, dict(iota), idc, dict(idc),
                                    nat, theta)


def replace_theta(E: DualityPseudofunctorData, x, value: str) -> DualityPseudofunctorData:
    th = dict(E.theta)
    th[x] = value
    return replace(E, theta=th)


# ---------------------------------------------------------------- twisted G-functors

@dataclass(frozen=True, eq=False)
class TwistedGFunctorData:
    """𝔦 and θ indexed by variances; only the (−) and (−,−) entries carry data."""

    underlying: DualityPseudofunctorData
    iota: Mapping[str, Mapping[str, str]]  # g ↦ x ↦ 1-cell
    theta: Mapping[tuple[str, str], Mapping[str, str]]  # (g, h) ↦ x ↦ 2-cell


def twisted_from_duality(E: DualityPseudofunctorData) -> TwistedGFunctorData:
    B = E.target.base
    Fo = E.obj_map
    ident = {x: B.unit[Fo[x]] for x in E.source.base.objects}
    iota = {"+": ident, "-": dict(E.iota)}
    theta = {}
    for g in VARIANCES:
        for h in VARIANCES:
            if g == h == "-":
                theta[(g, h)] = dict(E.theta)
            else:
                theta[(g, h)] = {x: _twisted_theta_identity(E, g, h, x) for x in E.source.base.objects}
    return TwistedGFunctorData(E, iota, theta)


def _twisted_theta_identity(E: DualityPseudofunctorData, g, h, x) -> str:
    """For g or h covariant both sides of θ_{g,h} are the same 1-cell; θ is its identity."""
    B, Fo, oA, oB = E.target.base, E.obj_map, E.source.obj_map, E.target.obj_map
    gx = _act_obj(oA, g, x)
    tgt = Fo[_act_obj(oA, h, gx)]
    src = _act_obj(oB, h, _act_obj(oB, g, Fo[x]))
    if h == "+":
        one = E.iota[x] if g == "-" else B.unit[Fo[x]]
    else:
        one = E.iota[x]
    return B.cell(src, tgt).identity[one]


def validate_twisted_g_functor(T: TwistedGFunctorData) -> Report:
    """One θ-axiom instance per variance triple; those with a covariant index are unit cases."""
    rep = Report("twisted-g-functor")
    E = T.underlying
    sub = validate_duality_pseudofunctor(E)
    theta_ok = {x for x in E.source.base.objects
                if not any(f.family == "theta-axiom" and f.address == (x,) for f in sub.findings)}
    rep.extend(Report(sub.subject, [f for f in sub.findings if f.family != "theta-axiom"]))
    B = E.target.base
    for x in E.source.base.objects:
        if T.iota["+"].get(x) != B.unit[E.obj_map[x]] or T.iota["-"].get(x) != E.iota[x]:
            rep.law("iota-index", (x,))
        for g in VARIANCES:
            for h in VARIANCES:
                if (g, h) == ("-", "-"):
                    if T.theta[(g, h)].get(x) != E.theta[x]:
                        rep.law("theta-index", (g, h, x))
                elif T.theta[(g, h)].get(x) != _twisted_theta_identity(E, g, h, x):
                    rep.law("theta-index", (g, h, x))
        for g in VARIANCES:
            for h in VARIANCES:
                for k in VARIANCES:
                    fam = f"theta-axiom:{g}{h}{k}"
                    rep.count(fam)
                    if (g, h, k) == ("-", "-", "-") and x not in theta_ok:
                        rep.law(fam, (x,))
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


# ---------------------------------------------------------------- transfer along a biequivalence

class TransferRejected(ValueError):
    """The functor handed to transfer_biequivalence is not certified, or no 𝔦/θ data exists."""

    def __init__(self, address: tuple, detail: str = ""):
        super().__init__(f"transfer rejected at {address}: {detail}")
        self.address = address
        self.detail = detail


def object_witness_failure(B: ContraTwoCat, obj_map: Mapping[str, str], b: str, w) -> str | None:
    """Why an essential-surjectivity witness for b does not check, or None."""
    if w is None or w.source_object not in obj_map:
        return "missing witness"
    Fx = obj_map[w.source_object]
    if w.there not in B.cell(Fx, b).obj_index or w.back not in B.cell(b, Fx).obj_index:
        return "1-cells have the wrong type"
    for a, c, cell, towards in ((Fx, b, w.unit, False), (b, Fx, w.counit, True)):
        E = B.cell(a, a)
        first, second = (w.there, w.back) if a == Fx else (w.back, w.there)
        loop = B.compose1(a, c, a, "+", "+", second, first)
        ends = (loop, B.unit[a]) if towards else (B.unit[a], loop)
        if cell not in E.mor_index or (E.src[cell], E.tgt[cell]) != ends or not E.is_iso(cell):
            return "unit or counit is not an invertible 2-cell of the right type"
    return None


def _check_certificate(cert, source: ContraTwoCat, target: ContraTwoCat, obj_map, hom_functors) -> None:
    from .fincat import verify_equivalence_witness
    if cert is None:
        raise TransferRejected(("certificate",), "no certificate supplied")
    if dict(cert.obj_map) != dict(obj_map):
        raise TransferRejected(("certificate", "object-map"), "certificate is for another object map")
    for x in source.objects:
        for y in source.objects:
            w = cert.hom_witnesses.get((x, y, "+"))
            if w is None or w.forward.key != hom_functors[(x, y)].key or \
                    not verify_equivalence_witness(w).ok:
                raise TransferRejected(("certificate", "hom", x, y), "hom equivalence witness does not verify")
    for b in target.objects:
        why = object_witness_failure(target, obj_map, b, cert.object_witnesses.get(b))
        if why:
            raise TransferRejected(("certificate", "object", b), why)


class _AssignedRows(dict):
    """iota_nat view over a partial assignment keyed (x, y, f)."""

    def __init__(self, holder: list, keys):
        super().__init__({k: _Row(holder, k) for k in keys})


class _Row(Mapping):
    def __init__(self, holder, xy):
        self.holder, self.xy = holder, xy

    def __getitem__(self, f):
        return self.holder[0][self.xy + (f,)]

    def __iter__(self):
        return (k[2] for k in self.holder[0] if k[:2] == self.xy)

    def __len__(self):
        return sum(1 for _ in self)


def _bind(holder: list, assign: dict) -> bool:
    holder[0] = assign
    return True


def _iota_inverse(B: ContraTwoCat, a: str, c: str, i: str):
    """A quasi-inverse of i: a → c with adjoint unit and counit, or None."""
    P = Pasting(B)
    Ea, Ec = B.cell(a, a), B.cell(c, c)
    for j in B.cell(c, a).objects:
        ji = B.compose1(a, c, a, "+", "+", j, i)
        ij = B.compose1(c, a, c, "+", "+", i, j)
        unit = next((u for u in Ea.hom.get((B.unit[a], ji), ()) if Ea.is_iso(u)), None)
        counit = next((u for u in Ec.hom.get((ij, B.unit[c]), ()) if Ec.is_iso(u)), None)
        if unit is None or counit is None:
            continue
        if _equivalence_failure(P, Cell1(a, c, i), Cell1(c, a, j), unit, counit):
            counit = adjoint_counit(B, a, c, i, j, unit, counit)
        return j, unit, counit
    return None


def transfer_biequivalence(source: WeakDualityInvolution, target: WeakDualityInvolution,
                           obj_map: Mapping[str, str], hom_functors: Mapping[tuple[str, str], FunctorData],
                           iota: Mapping[str, str], certificate,
                           budget: Budget | None = None) -> DualityPseudofunctorData:
    """Package a certified strict 2-functor as a duality pseudofunctor.

    ``iota[x]`` is the 1-cell (Fx)° → F(x°).  Its adjoint inverse is found by
    search; the constraint 2-cells for 𝔦 and θ are then found by a constraint
    search whose constraints are exactly the pseudonaturality laws and the θ
    axiom, and the result is re-validated as a whole.
    """
    A, B = source.base, target.base
    _check_certificate(certificate, A, B, obj_map, hom_functors)
    budget = budget or Budget(10 ** 6, "transfer search")
    oA, oB = source.obj_map, target.obj_map
    inv, unit, counit = {}, {}, {}
    for x in A.objects:
        a, c = oB[obj_map[x]], obj_map[oA[x]]
        if iota.get(x) not in B.cell(a, c).obj_index:
            raise TransferRejected(("iota", x), "iota 1-cell has the wrong type")
        found = _iota_inverse(B, a, c, iota[x])
        if found is None:
            raise TransferRejected(("iota", x), "iota is not an equivalence")
        inv[x], unit[x], counit[x] = found
    holder: list = [{}]
    hom_keys = [(x, y) for x in A.objects for y in A.objects]
    theta_view: dict = {}
    E = DualityPseudofunctorData(source, target, dict(obj_map), dict(hom_functors), dict(iota), inv, unit,
                                 counit, _AssignedRows(holder, hom_keys), theta_view)
    fo = _FOps(E)
    P = fo.P
    variables, domains = [], {}
    for x, y in hom_keys:
        for f in _one_cells(A, x, y):
            src = P.comp1(fo.G1(f), fo.i1(x))
            tgt = P.comp1(fo.i1(y), fo.H1(f))
            H = B.cell(src.x, src.y)
            variables.append((x, y, f.id))
            domains[(x, y, f.id)] = [c for c in H.hom.get((src.id, tgt.id), ()) if H.is_iso(c)]
    cons = []
    for x, y in hom_keys:
        for s in A.cell(x, y).mor_ids:
            H = A.cell(x, y)
            cons.append((((x, y, H.src[s]), (x, y, H.tgt[s])),
                         lambda a, x=x, y=y, s=s: _bind(holder, a) and _iota_nat_naturality(fo, x, y, s)))
        if x == y:
            cons.append((((x, x, A.unit[x]),), lambda a, x=x: _bind(holder, a) and _iota_nat_unit(fo, x)))
    for x in A.objects:
        for y in A.objects:
            for z in A.objects:
                for g in _one_cells(A, y, z):
                    for f in _one_cells(A, x, y):
                        gf = fo.a.P.comp1(g, f)
                        cons.append((((y, z, g.id), (x, y, f.id), (x, z, gf.id)),
                                     lambda a, g=g, f=f: _bind(holder, a) and _iota_nat_composition(fo, g, f)))
    sols = solve_constraints(variables, domains, cons, budget, limit=1)
    if not sols:
        raise TransferRejected(("iota-nat",), "no pseudonaturality constraints satisfy the laws")
    nat = {(x, y): {f: sols[0][(x, y, f)] for f in A.cell(x, y).objects} for x, y in hom_keys}
    E = replace(E, iota_nat=nat)
    fo = _FOps(E)
    P = fo.P
    tdom = {}
    for x in A.objects:
        src, tgt = fo.theta_source(x), fo.F1(fo.a.phi(x))
        H = B.cell(src.x, src.y)
        tdom[x] = [c for c in H.hom.get((src.id, tgt.id), ()) if H.is_iso(c)]
    E = replace(E, theta=theta_view)
    fo = _FOps(E)

    def theta_ok(t, x):
        theta_view.clear()
        theta_view.update(t)
        lhs, rhs = theta_axiom_sides(fo, x)
        return lhs == rhs

    tcons = [((x, oA[x]), lambda t, x=x: theta_ok(t, x)) for x in A.objects]
    sols = solve_constraints(list(A.objects), tdom, tcons, budget, limit=1)
    if not sols:
        raise TransferRejected(("theta",), "no θ satisfies the θ axiom")
    E = replace(E, theta=dict(sols[0]))
    rep = validate_duality_pseudofunctor(E)
    if not rep.ok:
        raise TransferRejected(("validation",), str([(f.family, f.address) for f in rep.sorted_findings()[:5]]))
    return E
