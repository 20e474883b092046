"""Strict 2-categories with contravariance.

A ContraTwoCat has, for each pair of objects, a VObj of hom-categories: the
covariant 1-cells A⁺(x,y) and the contravariant ones A⁻(x,y).  Composition is
given by four families of functors, one per pair of variances, keyed
``(x, y, z, h, g)`` where ``h`` is the variance of the outer cell y → z and
``g`` that of the inner cell x → y:

    A^h(y,z) × h·A^g(x,y) → A^{gh}(x,z)

Hom data is stored un-opped.  The ``h·`` on the inner argument only changes
which way its 2-cells point, never their ids.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .fincat import (
    FinCat,
    FunctorData,
    Report,
    arrow_category,
    empty_category,
    functor_category_data,
    op_category,
    pair_id,
    product_category,
)
from .vmonoidal import VARIANCES, VMorphism, VObj, act, identity_vmorphism, mul, validate_vobj

UNIT_FAMILIES = tuple(f"unit:{side}:{g}" for side in ("left", "right") for g in VARIANCES)
ASSOC_FAMILIES = tuple(f"assoc:{a}{b}{c}" for a in VARIANCES for b in VARIANCES for c in VARIANCES)
AXIOM_FAMILIES = UNIT_FAMILIES + ASSOC_FAMILIES


def comp_source(hom: Mapping, x, y, z, h, g) -> FinCat:
    return product_category(hom[(y, z)].part(h), act(h, hom[(x, y)].part(g)))


@dataclass(frozen=True, eq=False)
class ContraTwoCat:
    objects: tuple[str, ...]
    hom: Mapping[tuple[str, str], VObj]
    unit: Mapping[str, str]
    comp: Mapping[tuple[str, str, str, str, str], FunctorData]
    name: str = ""

    def cell(self, x: str, y: str, g: str = "+") -> FinCat:
        return self.hom[(x, y)].part(g)

    def compose1(self, x, y, z, h, g, outer: str, inner: str) -> str:
        """Composite of 1-cells (objects of hom categories)."""
        return self.comp[(x, y, z, h, g)].obj_map[pair_id(outer, inner)]

    def compose2(self, x, y, z, h, g, outer: str, inner: str) -> str:
        """Composite of 2-cells; the inner one is read through the h-view."""
        return self.comp[(x, y, z, h, g)].mor_map[pair_id(outer, inner)]

    @cached_property
    def key(self):
        return (self.objects,
                tuple((k, self.hom[k].key) for k in sorted(self.hom)),
                tuple(sorted(self.unit.items())),
                tuple((k, self.comp[k].key) for k in sorted(self.comp)))

    def __eq__(self, other):
        if not isinstance(other, ContraTwoCat):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"ContraTwoCat({self.name or len(self.objects)})"

    @property
    def has_contravariance(self) -> bool:
        return any(v.minus.objects for v in self.hom.values())


def comp_keys(objects: Sequence[str]):
    for x in objects:
        for y in objects:
            for z in objects:
                for h in VARIANCES:
                    for g in VARIANCES:
                        yield (x, y, z, h, g)


# ---------------------------------------------------------------- validation

def _check_structure(A: ContraTwoCat, rep: Report) -> None:
    obs = A.objects
    if len(set(obs)) != len(obs):
        rep.structural("objects", (), "duplicate object ids")
    for x in obs:
        for y in obs:
            if (x, y) not in A.hom:
                rep.structural("hom-gap", (x, y))
    if rep.has_structural:
        return
    for (x, y), V in sorted(A.hom.items()):
        sub = validate_vobj(V)
        if not sub.ok:
            rep.extend(sub, ("hom", x, y))
    for x in obs:
        if A.unit.get(x) not in A.hom[(x, x)].plus.obj_index:
            rep.structural("unit", (x,), "unit is not a covariant 1-cell x → x")
    for key in comp_keys(obs):
        F = A.comp.get(key)
        if F is None:
            rep.structural("comp-gap", key)
            continue
        x, y, z, h, g = key
        if F.source != comp_source(A.hom, x, y, z, h, g) or F.target != A.cell(x, z, mul(g, h)):
            rep.structural("comp-type", key, "composition functor has the wrong source or target")
            continue
        if set(F.obj_map) != set(F.source.objects) or set(F.mor_map) != set(F.source.mor_ids):
            rep.structural("comp-table", key, "composition table is not total")
            continue
        T = F.target
        bad = [v for v in F.obj_map.values() if v not in T.obj_index] + \
              [v for v in F.mor_map.values() if v not in T.mor_index]
        if bad:
            rep.structural("comp-table", key, f"values outside target hom: {sorted(bad)[:3]}")


def _check_functoriality(A: ContraTwoCat, rep: Report) -> None:
    for key in comp_keys(A.objects):
        F = A.comp[key]
        S, T = F.source, F.target
        for m, s, t in S.morphisms:
            v = F.mor_map[m]
            if T.src[v] != F.obj_map[s] or T.tgt[v] != F.obj_map[t]:
                rep.law("comp-functor", key + (m,), "endpoints not preserved")
        for o in S.objects:
            if F.mor_map[S.identity[o]] != T.identity[F.obj_map[o]]:
                rep.law("comp-functor", key + (S.identity[o],), "identity not preserved")
        for (g2, f2), c in S.compose.items():
            if T.compose.get((F.mor_map[g2], F.mor_map[f2])) != F.mor_map[c]:
                rep.law("comp-functor", key + (g2, f2), "composite not preserved")
        rep.count("comp-functor", len(S.compose))


def _check_units(A: ContraTwoCat, rep: Report) -> None:
    for x in A.objects:
        for y in A.objects:
            for g in VARIANCES:
                C = A.cell(x, y, g)
                uy, ux = A.unit[y], A.unit[x]
                iy = A.cell(y, y).identity[uy]
                ix = A.cell(x, x).identity[ux]
                left = A.comp[(x, y, y, "+", g)]
                right = A.comp[(x, x, y, g, "+")]
                fam_l, fam_r = f"unit:left:{g}", f"unit:right:{g}"
                for a in C.objects:
                    if left.obj_map[pair_id(uy, a)] != a:
                        rep.law(fam_l, (x, y, g, a), f"1_{y}∘{a} = {left.obj_map[pair_id(uy, a)]}")
                    if right.obj_map[pair_id(a, ux)] != a:
                        rep.law(fam_r, (x, y, g, a), f"{a}∘1_{x} = {right.obj_map[pair_id(a, ux)]}")
                for m in C.mor_ids:
                    if left.mor_map[pair_id(iy, m)] != m:
                        rep.law(fam_l, (x, y, g, m), f"1_{y}*{m} = {left.mor_map[pair_id(iy, m)]}")
                    if right.mor_map[pair_id(m, ix)] != m:
                        rep.law(fam_r, (x, y, g, m), f"{m}*1_{x} = {right.mor_map[pair_id(m, ix)]}")
                rep.count(fam_l, len(C.objects) + len(C.morphisms))
                rep.count(fam_r, len(C.objects) + len(C.morphisms))


def _check_assoc_quad(A: ContraTwoCat, x, y, z, w) -> list[tuple]:
    out = []
    for g3 in VARIANCES:  # variance of the outermost cell z → w
        for g2 in VARIANCES:
            for g1 in VARIANCES:
                fam = f"assoc:{g3}{g2}{g1}"
                Cg, Cb, Ca = A.cell(z, w, g3), A.cell(y, z, g2), A.cell(x, y, g1)
                outer_first = A.comp[(y, z, w, g3, g2)]
                then_inner = A.comp[(x, y, w, mul(g2, g3), g1)]
                inner_first = A.comp[(x, y, z, g2, g1)]
                then_outer = A.comp[(x, z, w, g3, mul(g1, g2))]
                for attr, getmap in (("objects", "obj_map"), ("mor_ids", "mor_map")):
                    m1, m2 = getattr(outer_first, getmap), getattr(then_inner, getmap)
                    m3, m4 = getattr(inner_first, getmap), getattr(then_outer, getmap)
                    for c in getattr(Cg, attr):
                        for b in getattr(Cb, attr):
                            cb = m1[pair_id(c, b)]
                            for a in getattr(Ca, attr):
                                lhs = m2[pair_id(cb, a)]
                                rhs = m4[pair_id(c, m3[pair_id(b, a)])]
                                if lhs != rhs:
                                    out.append((fam, (x, y, z, w, g3 + g2 + g1, c, b, a),
                                                f"(γβ)α = {lhs} but γ(βα) = {rhs}"))
    return out


def validate_contra_2cat(A: ContraTwoCat, threads: int = 1) -> Report:
    """Check every unit and associativity instance; findings carry full addresses.

    Structural problems (missing homs, mistyped or partial composition tables)
    are reported on their own and stop the law checks.
    """
    rep = Report("contra2cat")
    _check_structure(A, rep)
    if rep.has_structural:
        return rep
    _check_functoriality(A, rep)
    _check_units(A, rep)
    quads = [(x, y, z, w) for x in A.objects for y in A.objects for z in A.objects for w in A.objects]
    if threads > 1 and len(quads) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(lambda q: _check_assoc_quad(A, *q), quads))
    else:
        results = [_check_assoc_quad(A, *q) for q in quads]
    for found in results:
        for fam, addr, detail in found:
            rep.law(fam, addr, detail)
    for fam in ASSOC_FAMILIES:
        rep.count(fam, len(quads))
    rep.findings.sort(key=lambda f: f.sort_key())
    return rep


# ---------------------------------------------------------------- constructions

def _compose_table(outer_fc, inner_fc, target_fc, X: FinCat, h: str):
    """Functor-level composition G∘(h·F) with 2-cells composed horizontally."""
    Z = target_fc.functors[0].target if target_fc.functors else None
    obj_map, mor_map = {}, {}
    ocomp = {}
    for b, G in zip(outer_fc.category.objects, outer_fc.functors):
        for a, F in zip(inner_fc.category.objects, inner_fc.functors):
            key = (tuple(G.obj_map[F.obj_map[o]] for o in X.objects),
                   tuple(G.mor_map[F.mor_map[m]] for m in X.mor_ids))
            ocomp[(b, a)] = obj_map[pair_id(b, a)] = target_fc.object_of[key]
    inner_cat = act(h, inner_fc.category)
    Y = inner_fc.functors[0].target if inner_fc.functors else None
    Yv = act(h, Y) if Y is not None else None
    for (beta, bs, bt), sigma in zip(outer_fc.category.morphisms, outer_fc.transformations):
        G = sigma.source
        for alpha, tau in zip(inner_fc.category.mor_ids, inner_fc.transformations):
            s_in, t_in = inner_cat.src[alpha], inner_cat.tgt[alpha]
            comps = tuple(Z.compose[(sigma.components[Yv.tgt[tau.components[o]]], G.mor_map[tau.components[o]])]
                          for o in X.objects)
            mor_map[pair_id(beta, alpha)] = target_fc.morphism_of[(ocomp[(bs, s_in)], ocomp[(bt, t_in)], comps)]
    return obj_map, mor_map


def cat_sub(cats, name: str = "") -> ContraTwoCat:
    """The full sub-2-category of Cat on the given finite categories.

    A⁺(x,y) = Fun(x, y) and A⁻(x,y) = Fun(op x, y); composition is functor
    composition, with the inner functor replaced by its opposite when the
    outer one is contravariant.  ``cats`` is a name → FinCat mapping or a list
    (named "C0", "C1", ...).
    """
    if not isinstance(cats, Mapping):
        cats = {f"C{i}": C for i, C in enumerate(cats)}
    names = tuple(cats)
    data = {(x, y, g): functor_category_data(act(g, cats[x]), cats[y])
            for x in names for y in names for g in VARIANCES}
    hom = {(x, y): VObj(data[(x, y, "+")].category, data[(x, y, "-")].category)
           for x in names for y in names}
    unit = {}
    for x in names:
        fc = data[(x, x, "+")]
        X = cats[x]
        unit[x] = fc.object_of[(tuple(X.objects), tuple(X.mor_ids))]
    comp = {}
    for key in comp_keys(names):
        x, y, z, h, g = key
        om, mm = _compose_table(data[(y, z, h)], data[(x, y, g)], data[(x, z, mul(g, h))], cats[x], h)
        comp[key] = FunctorData(comp_source(hom, x, y, z, h, g), hom[(x, z)].part(mul(g, h)), om, mm)
    return ContraTwoCat(names, hom, unit, comp, name or "cat_sub(" + ",".join(names) + ")")


def underlying_2cat(A: ContraTwoCat) -> ContraTwoCat:
    """Forget every contravariant cell; composition keeps only the (+,+) family."""
    E = empty_category()
    hom = {k: VObj(v.plus, E) for k, v in A.hom.items()}
    comp = {}
    for key in comp_keys(A.objects):
        x, y, z, h, g = key
        src = comp_source(hom, x, y, z, h, g)
        if h == g == "+":
            F = A.comp[key]
            comp[key] = FunctorData(src, hom[(x, z)].plus, dict(F.obj_map), dict(F.mor_map))
        else:
            comp[key] = FunctorData(src, hom[(x, z)].part(mul(g, h)), {}, {})
    return ContraTwoCat(A.objects, hom, dict(A.unit), comp, A.name)


def strict_from_plain(objects, hom_plus: Mapping, unit: Mapping, comp_plus: Mapping, name="") -> ContraTwoCat:
    """A plain strict 2-category packaged with empty contravariant parts."""
    E = empty_category()
    hom = {k: VObj(v, E) for k, v in hom_plus.items()}
    comp = {}
    for key in comp_keys(tuple(objects)):
        x, y, z, h, g = key
        src = comp_source(hom, x, y, z, h, g)
        if h == g == "+":
            om, mm = comp_plus[(x, y, z)]
            comp[key] = FunctorData(src, hom[(x, z)].plus, dict(om), dict(mm))
        else:
            comp[key] = FunctorData(src, hom[(x, z)].part(mul(g, h)), {}, {})
    return ContraTwoCat(tuple(objects), hom, dict(unit), comp, name)


def one_object(plus: FinCat, minus: FinCat, unit_obj: str, tables: Mapping) -> ContraTwoCat:
    """One-object structure from explicit composition tables per (h, g)."""
    hom = {("*", "*"): VObj(plus, minus)}
    comp = {}
    for h in VARIANCES:
        for g in VARIANCES:
            om, mm = tables.get((h, g), ({}, {}))
            comp[("*", "*", "*", h, g)] = FunctorData(comp_source(hom, "*", "*", "*", h, g),
                                                       hom[("*", "*")].part(mul(g, h)), dict(om), dict(mm))
    return ContraTwoCat(("*",), hom, {"*": unit_obj}, comp, "one-object")


def replace_comp_entry(A: ContraTwoCat, key, cell: str, value: str, level: str = "mor") -> ContraTwoCat:
    """Copy of A with one composition-table entry rebound (used by mutators)."""
    F = A.comp[key]
    om, mm = dict(F.obj_map), dict(F.mor_map)
    (om if level == "obj" else mm)[cell] = value
    comp = dict(A.comp)
    comp[key] = FunctorData(F.source, F.target, om, mm)
    return ContraTwoCat(A.objects, A.hom, A.unit, comp, A.name)


# ---------------------------------------------------------------- functors and transformations

@dataclass(frozen=True, eq=False)
class VarianceFunctor:
    source: ContraTwoCat
    target: ContraTwoCat
    obj_map: Mapping[str, str]
    hom_maps: Mapping[tuple[str, str], VMorphism]


@dataclass(frozen=True, eq=False)
class VarianceTransformation:
    source: VarianceFunctor
    target: VarianceFunctor
    components: Mapping[str, str]  # x ↦ covariant 1-cell F x → G x
    naturality: Mapping = field(default_factory=dict)  # strict: always empty


def identity_variance_functor(A: ContraTwoCat) -> VarianceFunctor:
    return VarianceFunctor(A, A, {x: x for x in A.objects},
                           {k: identity_vmorphism(v) for k, v in A.hom.items()})


def compose_variance_functors(G: VarianceFunctor, F: VarianceFunctor) -> VarianceFunctor:
    from .vmonoidal import compose_vmorphisms
    hm = {(x, y): compose_vmorphisms(G.hom_maps[(F.obj_map[x], F.obj_map[y])], F.hom_maps[(x, y)])
          for (x, y) in F.hom_maps}
    return VarianceFunctor(F.source, G.target, {x: G.obj_map[F.obj_map[x]] for x in F.obj_map}, hm)


def full_inclusion(sub: ContraTwoCat, ambient: ContraTwoCat) -> VarianceFunctor:
    """Inclusion of a full sub-structure sharing object names and hom data."""
    return VarianceFunctor(sub, ambient, {x: x for x in sub.objects},
                           {k: identity_vmorphism(v) for k, v in sub.hom.items()})


def validate_variance_functor(F: VarianceFunctor) -> Report:
    rep = Report("variance-functor")
    S, T = F.source, F.target
    for x in S.objects:
        if F.obj_map.get(x) not in T.objects:
            rep.structural("object-map", (x,))
    if rep.has_structural:
        return rep
    Fo = F.obj_map
    for x in S.objects:
        for y in S.objects:
            f = F.hom_maps.get((x, y))
            if f is None or f.source != S.hom[(x, y)] or f.target != T.hom[(Fo[x], Fo[y])]:
                rep.structural("hom-map", (x, y), "missing or mistyped hom VMorphism")
    if rep.has_structural:
        return rep
    from .vmonoidal import validate_vmorphism
    for (x, y), f in sorted(F.hom_maps.items()):
        sub = validate_vmorphism(f)
        if not sub.ok:
            rep.extend(sub, ("hom", x, y))
    for x in S.objects:
        if F.hom_maps[(x, x)].plus_part.obj_map[S.unit[x]] != T.unit[Fo[x]]:
            rep.law("preserve-unit", (x,))
    for key in comp_keys(S.objects):
        x, y, z, h, g = key
        C = S.comp[key]
        tkey = (Fo[x], Fo[y], Fo[z], h, g)
        D = T.comp[tkey]
        fo, fi, fr = (F.hom_maps[(y, z)].part(h), F.hom_maps[(x, y)].part(g),
                      F.hom_maps[(x, z)].part(mul(g, h)))
        Sb, Sa = S.cell(y, z, h), S.cell(x, y, g)
        for attr, mp in (("objects", "obj_map"), ("mor_ids", "mor_map")):
            cm, dm = getattr(C, mp), getattr(D, mp)
            fom, fim, frm = getattr(fo, mp), getattr(fi, mp), getattr(fr, mp)
            for b in getattr(Sb, attr):
                for a in getattr(Sa, attr):
                    if frm[cm[pair_id(b, a)]] != dm[pair_id(fom[b], fim[a])]:
                        rep.law("preserve-comp", key + (b, a))
    return rep


def validate_variance_transformation(alpha: VarianceTransformation) -> Report:
    """Strict naturality against cells of both variances, 1-cells and 2-cells."""
    rep = Report("variance-transformation")
    F, G = alpha.source, alpha.target
    if F.source != G.source or F.target != G.target:
        rep.structural("endpoints", ())
        return rep
    S, T = F.source, F.target
    for x in S.objects:
        if alpha.components.get(x) not in T.cell(F.obj_map[x], G.obj_map[x]).obj_index:
            rep.structural("component", (x,))
    if rep.has_structural:
        return rep
    for x in S.objects:
        for y in S.objects:
            Fx, Fy, Gx, Gy = F.obj_map[x], F.obj_map[y], G.obj_map[x], G.obj_map[y]
            ax, ay = alpha.components[x], alpha.components[y]
            iax = T.cell(Fx, Gx).identity[ax]
            iay = T.cell(Fy, Gy).identity[ay]
            for g in VARIANCES:
                pre = T.comp[(Fx, Gx, Gy, g, "+")]  # G(f) ∘ α_x
                post = T.comp[(Fx, Fy, Gy, "+", g)]  # α_y ∘ F(f)
                Ff, Gf = F.hom_maps[(x, y)].part(g), G.hom_maps[(x, y)].part(g)
                Cxy = S.cell(x, y, g)
                for f in Cxy.objects:
                    if pre.obj_map[pair_id(Gf.obj_map[f], ax)] != post.obj_map[pair_id(ay, Ff.obj_map[f])]:
                        rep.law("naturality-1cell", (x, y, g, f))
                for s in Cxy.mor_ids:
                    if pre.mor_map[pair_id(Gf.mor_map[s], iax)] != post.mor_map[pair_id(iay, Ff.mor_map[s])]:
                        rep.law("naturality-2cell", (x, y, g, s))
    return rep


# ---------------------------------------------------------------- pasting engine
#
# Cells of the underlying plain 2-category are addressed as (x, y, id):
# a 1-cell id is an object of A⁺(x,y), a 2-cell id a morphism of it.

@dataclass(frozen=True)
class Cell1:
    x: str
    y: str
    id: str


@dataclass(frozen=True)
class Cell2:
    x: str
    y: str
    id: str


class Pasting:
    """Whiskering, horizontal and vertical composition in the covariant part."""

    def __init__(self, A: ContraTwoCat):
        self.A = A

    def hom(self, x, y) -> FinCat:
        return self.A.cell(x, y, "+")

    def id1(self, x) -> Cell1:
        return Cell1(x, x, self.A.unit[x])

    def id2(self, f: Cell1) -> Cell2:
        return Cell2(f.x, f.y, self.hom(f.x, f.y).identity[f.id])

    def src(self, a: Cell2) -> Cell1:
        return Cell1(a.x, a.y, self.hom(a.x, a.y).src[a.id])

    def tgt(self, a: Cell2) -> Cell1:
        return Cell1(a.x, a.y, self.hom(a.x, a.y).tgt[a.id])

    def comp1(self, g: Cell1, f: Cell1) -> Cell1:
        assert f.y == g.x, (g, f)
        return Cell1(f.x, g.y, self.A.compose1(f.x, f.y, g.y, "+", "+", g.id, f.id))

    def hcomp(self, b: Cell2, a: Cell2) -> Cell2:
        assert a.y == b.x, (b, a)
        return Cell2(a.x, b.y, self.A.compose2(a.x, a.y, b.y, "+", "+", b.id, a.id))

    def vcomp(self, b: Cell2, a: Cell2) -> Cell2:
        assert (a.x, a.y) == (b.x, b.y), (b, a)
        C = self.hom(a.x, a.y)
        out = C.compose.get((b.id, a.id))
        if out is None:
            raise ValueError(f"2-cells {b.id} and {a.id} in hom({a.x},{a.y}) do not compose")
        return Cell2(a.x, a.y, out)

    def inv(self, a: Cell2) -> Cell2:
        C = self.hom(a.x, a.y)
        if a.id not in C.inverse:
            raise ValueError(f"2-cell {a.id} in hom({a.x},{a.y}) is not invertible")
        return Cell2(a.x, a.y, C.inverse[a.id])

    def as2(self, c) -> Cell2:
        return self.id2(c) if isinstance(c, Cell1) else c

    def whisker(self, *cells) -> Cell2:
        """Horizontal composite of a path of 1- and 2-cells, written outermost first."""
        out = self.as2(cells[-1])
        for c in reversed(cells[:-1]):
            out = self.hcomp(self.as2(c), out)
        return out

    def vseq(self, *cells: Cell2) -> Cell2:
        """Vertical composite, written last-applied first."""
        out = cells[-1]
        for c in reversed(cells[:-1]):
            out = self.vcomp(c, out)
        return out

    def evaluate(self, layers: Sequence[Sequence], order: str = "left") -> Cell2:
        """Evaluate a pasting given as layers (first applied first), each layer a
        horizontal path written outermost first.

        ``order="left"`` folds both directions from the left, ``"right"`` from
        the right; on a strict 2-category both must agree.
        """
        def hfold(path):
            cells = [self.as2(c) for c in path]
            if order == "left":
                out = cells[0]
                for c in cells[1:]:
                    out = self.hcomp(out, c)
                return out
            out = cells[-1]
            for c in reversed(cells[:-1]):
                out = self.hcomp(c, out)
            return out

        evaluated = [hfold(p) for p in layers]
        if order == "left":
            out = evaluated[0]
            for c in evaluated[1:]:
                out = self.vcomp(c, out)
            return out
        out = evaluated[-1]
        for c in reversed(evaluated[:-1]):
            out = self.vcomp(out, c)
        return out


def sample_cat_sub(kind: str) -> ContraTwoCat:
    """Named small instances used across tests and generators."""
    from .fincat import cyclic_group, discrete_category, terminal_category, walking_iso
    two = arrow_category()
    table = {
        "1": {"1": terminal_category()},
        "2": {"2": two},
        "2,op2": {"2": two, "op2": op_category(two)},
        "1,D2": {"1": terminal_category(), "D2": discrete_category(2)},
        "1,2": {"1": terminal_category(), "2": two},
        "I": {"I": walking_iso()},
        "B2": {"B2": cyclic_group(2)},
        "B3": {"B3": cyclic_group(3)},
        "1,B2": {"1": terminal_category(), "B2": cyclic_group(2)},
    }
    return cat_sub(table[kind], f"cat_sub({kind})")


# ---------------------------------------------------------------- biequivalence certificates

@dataclass(frozen=True)
class ObjectWitness:
    """b ≃ F(x) internally: there: F x → b, back: b → F x, with invertible
    2-cells unit: 1 ⇒ back∘there and counit: there∘back ⇒ 1."""

    source_object: str
    there: str
    back: str
    unit: str
    counit: str


@dataclass(frozen=True, eq=False)
class BiequivalenceCertificate:
    source: ContraTwoCat
    target: ContraTwoCat
    obj_map: Mapping[str, str]
    hom_functors: Mapping[tuple[str, str, str], FunctorData]  # (x, y, g) ↦ A^g(x,y) → B^g(Fx,Fy)
    hom_witnesses: Mapping[tuple[str, str, str], "object"]  # EquivalenceWitness per (x, y, g)
    object_witnesses: Mapping[str, ObjectWitness]


def find_object_witness(target: ContraTwoCat, obj_map: Mapping[str, str], b: str,
                        sources: Iterable[str]) -> ObjectWitness | None:
    """First internal equivalence b ≃ F x in canonical order (x, there, back)."""
    for x in sources:
        Fx = obj_map[x]
        H1, H2 = target.cell(Fx, b), target.cell(b, Fx)
        E1, E2 = target.cell(Fx, Fx), target.cell(b, b)
        for u in H1.objects:
            for v in H2.objects:
                vu = target.compose1(Fx, b, Fx, "+", "+", v, u)
                uv = target.compose1(b, Fx, b, "+", "+", u, v)
                eta = next((c for c in E1.hom[(target.unit[Fx], vu)] if E1.is_iso(c)), None)
                if eta is None:
                    continue
                eps = next((c for c in E2.hom[(uv, target.unit[b])] if E2.is_iso(c)), None)
                if eps is not None:
                    return ObjectWitness(x, u, v, eta, eps)
    return None


def certify_functor(source: ContraTwoCat, target: ContraTwoCat, obj_map: Mapping[str, str],
                    hom_functors: Mapping[tuple[str, str, str], FunctorData]):
    """Build a biequivalence certificate or explain which witness is missing.

    Returns (certificate, None) or (None, address string).
    """
    from .fincat import complete_to_equivalence
    hw = {}
    for x in source.objects:
        for y in source.objects:
            for g in VARIANCES:
                res = complete_to_equivalence(hom_functors[(x, y, g)])
                if not res.found:
                    return None, f"hom({x},{y}) variance {g}: {res.reason}"
                hw[(x, y, g)] = res.witness
    ow = {}
    for b in target.objects:
        w = find_object_witness(target, obj_map, b, source.objects)
        if w is None:
            return None, f"object {b} is not equivalent to any image object"
        ow[b] = w
    return BiequivalenceCertificate(source, target, dict(obj_map), dict(hom_functors), hw, ow), None


def hom_functors_of(F: VarianceFunctor) -> dict:
    return {(x, y, g): F.hom_maps[(x, y)].part(g) for (x, y) in F.hom_maps for g in VARIANCES}
