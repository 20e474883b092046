"""Single-entry mutation operators.

Each operator rebinds exactly one table entry of a valid structure so that a
validator must notice: a composite or identity law breaks, or a constraint
2-cell gets the wrong endpoints.  When a structure is too small to admit any
such rebinding (every hom has a single cell), the entry is pointed at an id
that does not exist, which the structural checks reject.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, replace
from typing import Callable

from ..fincat import FinCat, FunctorData
from ..varcat import ContraTwoCat, comp_keys
from ..vmonoidal import VObj, mul
from ..weakside import DualityPseudofunctorData, VBicat, WeakDualityInvolution

DANGLING = "mutant:dangling"


@dataclass(frozen=True)
class Mutation:
    operator: str
    address: tuple
    old: str
    new: str
    apply: Callable


def _wrong_type(H: FinCat, cell: str) -> list[str]:
    ends = (H.src.get(cell), H.tgt.get(cell))
    return [m for m in H.mor_ids if (H.src[m], H.tgt[m]) != ends]


def _rebind(mapping, key, value):
    out = dict(mapping)
    out[key] = value
    return out


# ---------------------------------------------------------------- candidates per kind

def _fincat_candidates(C: FinCat, wrap=lambda C2: C2, prefix=()):
    out = []
    for (g, f), h in sorted(C.compose.items()):
        if g != C.identity.get(C.tgt.get(f)):
            continue
        for m in C.mor_ids:
            if m != h:
                out.append(Mutation("unit-rebind", prefix + ("compose", g, f), h, m,
                                    lambda k=(g, f), m=m: wrap(FinCat(C.objects, C.morphisms, C.identity,
                                                                      _rebind(C.compose, k, m)))))
    return out


def _fincat_fallback(C: FinCat, wrap=lambda C2: C2, prefix=()):
    (g, f), h = sorted(C.compose.items())[0]
    return [Mutation("dangling", prefix + ("compose", g, f), h, DANGLING,
                     lambda: wrap(FinCat(C.objects, C.morphisms, C.identity, _rebind(C.compose, (g, f), DANGLING))))]


def _with_comp(A: ContraTwoCat, key, F: FunctorData) -> ContraTwoCat:
    return ContraTwoCat(A.objects, A.hom, A.unit, _rebind(A.comp, key, F), A.name)


def _contra_candidates(A: ContraTwoCat, wrap=lambda A2: A2, prefix=()):
    out = []
    for key in comp_keys(A.objects):
        F = A.comp[key]
        for s in F.source.objects:
            old = F.obj_map[s]
            for t in F.target.objects:
                if t != old:
                    out.append(Mutation("comp-rebind", prefix + ("comp",) + key + (s,), old, t,
                                        lambda key=key, F=F, s=s, t=t: wrap(_with_comp(A, key, FunctorData(
                                            F.source, F.target, _rebind(F.obj_map, s, t), F.mor_map)))))
    return out


def _contra_fallback(A: ContraTwoCat, wrap=lambda A2: A2, prefix=()):
    key = comp_keys(A.objects)[0]
    F = A.comp[key]
    s = F.source.objects[0]
    return [Mutation("dangling", prefix + ("comp",) + key + (s,), F.obj_map[s], DANGLING,
                     lambda: wrap(_with_comp(A, key, FunctorData(F.source, F.target, _rebind(F.obj_map, s, DANGLING),
                                                                 F.mor_map))))]


def _cell_slots(slots, rebuild):
    """``slots`` yields (name, outer key, inner key or None, cell, hom category)."""
    typed, dangling = [], []
    for name, key, inner, cell, H in slots:
        addr = (name,) + (key if isinstance(key, tuple) else (key,)) + (() if inner is None else
                                                                         (inner if isinstance(inner, tuple)
                                                                          else (inner,)))
        for m in _wrong_type(H, cell):
            typed.append(Mutation("cell-retype", addr, cell, m,
                                  lambda name=name, key=key, inner=inner, m=m: rebuild(name, key, inner, m)))
        if not dangling:
            dangling.append(Mutation("dangling", addr, cell, DANGLING,
                                     lambda name=name, key=key, inner=inner: rebuild(name, key, inner, DANGLING)))
    return typed, dangling


def _rebuild_field(obj, name, key, inner, value):
    table = getattr(obj, name)
    if inner is None:
        return replace(obj, **{name: _rebind(table, key, value)})
    return replace(obj, **{name: _rebind(table, key, _rebind(table[key], inner, value))})


def _vbicat_slots(B: VBicat):
    for key in sorted(B.assoc):
        x, y, z, w, k, h, g = key
        H = B.cell(x, w, mul(mul(g, h), k))
        for inner, cell in sorted(B.assoc[key].items()):
            yield "assoc", key, inner, cell, H


def _weak_slots(W: WeakDualityInvolution):
    A, o = W.base, W.obj_map
    for x in A.objects:
        yield "iota", x, None, W.iota[x], A.cell(o[x], o[x])
        yield "zeta", x, None, W.zeta[x], A.cell(o[x], o[o[o[x]]])
    for (x, y, z), table in sorted(W.mu.items()):
        for inner, cell in sorted(table.items()):
            yield "mu", (x, y, z), inner, cell, A.cell(o[x], o[z])
    for (x, y), table in sorted(W.phi_nat.items()):
        for f, cell in sorted(table.items()):
            yield "phi_nat", (x, y), f, cell, A.cell(x, o[o[y]])


def _duality_slots(E: DualityPseudofunctorData):
    T, Fo, o = E.target.base, E.obj_map, E.source.obj_map
    for x in E.source.base.objects:
        yield "theta", x, None, E.theta[x], T.cell(Fo[x], Fo[o[o[x]]])


def _certificate_candidates(c):
    typed, dangling = [], []
    T = c.target
    for b, w in sorted(c.object_witnesses.items()):
        a = c.obj_map.get(w.source_object)
        if a is None:
            continue
        E = T.hom[(a, a)].plus
        addr = ("object_witnesses", b, "unit")
        rebuild = (lambda b=b, w=w: lambda v: replace(c, object_witnesses=_rebind(c.object_witnesses, b,
                                                                                  replace(w, unit=v))))()
        for m in _wrong_type(E, w.unit):
            typed.append(Mutation("witness-retype", addr, w.unit, m, lambda m=m, r=rebuild: r(m)))
        if not dangling:
            dangling.append(Mutation("dangling", addr, w.unit, DANGLING, lambda r=rebuild: r(DANGLING)))
    return typed or dangling


def candidates(kind: str, obj) -> list[Mutation]:
    """All mutations the operators can produce for this structure, in a fixed order."""
    if kind == "fincat":
        return _fincat_candidates(obj) or _fincat_fallback(obj)
    if kind == "vobj":
        typed = _fincat_candidates(obj.plus, lambda C: VObj(C, obj.minus), ("plus",)) + \
            _fincat_candidates(obj.minus, lambda C: VObj(obj.plus, C), ("minus",))
        return typed or _fincat_fallback(obj.plus, lambda C: VObj(C, obj.minus), ("plus",))
    if kind == "contra2cat":
        return _contra_candidates(obj) or _contra_fallback(obj)
    if kind == "vbicat":
        typed, dangling = _cell_slots(_vbicat_slots(obj), lambda *a: _rebuild_field(obj, *a))
        return typed or dangling
    if kind == "weak-involution":
        typed, dangling = _cell_slots(_weak_slots(obj), lambda *a: _rebuild_field(obj, *a))
        return typed or dangling
    if kind == "duality-pseudofunctor":
        typed, dangling = _cell_slots(_duality_slots(obj), lambda *a: _rebuild_field(obj, *a))
        return typed or dangling
    if kind == "certificate":
        return _certificate_candidates(obj)
    raise ValueError(f"no mutation operators for kind {kind!r}")


def mutate(kind: str, obj, seed: int):
    """Apply one seeded mutation; returns (mutant, Mutation)."""
    try:
        cands = candidates(kind, obj)
    except IndexError:  # a fallback found no entry at all
        cands = []
    if not cands:
        raise ValueError(f"{kind} admits no mutation")
    m = random.Random(seed).choice(cands)
    return m.apply(), m
