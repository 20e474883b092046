"""Documents: one structure per JSON file, canonically serialized.

A document is ``{"kind": ..., "version": 1, "payload": ...}`` written with
sorted keys and a trailing newline.  Maps keyed by tuples become sorted lists
of rows ``[*key, value]``; functors are stored as their two tables only, since
source and target are determined by where they sit.  Decoding never
validates: a well-formed file describing an invalid structure loads fine and
is rejected by the validators.
"""
from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..fincat import (
    EquivalenceWitness,
    FinCat,
    Finding,
    FunctorData,
    NatTransfData,
    Report,
    compose_functors,
    identity_functor,
    op_category,
)
from ..varcat import BiequivalenceCertificate, ContraTwoCat, ObjectWitness, comp_source
from ..vmonoidal import VARIANCES, VObj, mul
from ..weakside import DualityPseudofunctorData, VBicat, WeakDualityInvolution

VERSION = 1
KINDS = ("fincat", "vobj", "contra2cat", "vbicat", "weak-involution", "duality-pseudofunctor", "certificate",
         "report")


class DocumentError(ValueError):
    """Unreadable or malformed document; ``address`` locates the problem."""

    def __init__(self, address: str, detail: str):
        super().__init__(f"{address}: {detail}")
        self.address = address
        self.detail = detail


@dataclass(frozen=True)
class Document:
    kind: str
    version: int
    payload: Any

    def dumps(self) -> str:
        return dumps({"kind": self.kind, "version": self.version, "payload": self.payload})


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def parse(text: str, where: str = "<input>") -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{where}:{exc.lineno}:{exc.colno}", exc.msg) from exc
    if not isinstance(raw, dict) or set(raw) != {"kind", "version", "payload"}:
        raise DocumentError(where, "expected exactly the fields kind, version, payload")
    if raw["kind"] not in KINDS:
        raise DocumentError(f"{where}:kind", f"unknown kind {raw['kind']!r}")
    if raw["version"] != VERSION:
        raise DocumentError(f"{where}:version", f"unsupported version {raw['version']!r}")
    return Document(raw["kind"], raw["version"], raw["payload"])


def load(path) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(path), exc.strerror or str(exc)) from exc
    return parse(text, str(path))


def write_atomic(path, text: str) -> None:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save(path, doc: Document) -> None:
    write_atomic(path, doc.dumps())


# ---------------------------------------------------------------- row helpers

def _rows(mapping: Mapping, value=lambda v: v) -> list:
    out = []
    for k in sorted(mapping, key=lambda k: k if isinstance(k, tuple) else (k,)):
        key = list(k) if isinstance(k, tuple) else [k]
        out.append(key + [value(mapping[k])])
    return out


def _unrows(rows, n: int, value=lambda v: v) -> dict:
    return {tuple(r[:n]): value(r[n]) for r in rows}


def _sdict(mapping: Mapping) -> dict:
    return {str(k): v for k, v in mapping.items()}


def _tables(F: FunctorData) -> dict:
    return {"obj_map": dict(F.obj_map), "mor_map": dict(F.mor_map)}


def _functor(src: FinCat, tgt: FinCat, p) -> FunctorData:
    return FunctorData(src, tgt, dict(p["obj_map"]), dict(p["mor_map"]))


def _plain(x):
    if isinstance(x, (tuple, list)):
        return [_plain(v) for v in x]
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


# ---------------------------------------------------------------- encoders

def enc_fincat(C: FinCat) -> dict:
    return {"objects": list(C.objects), "morphisms": [list(m) for m in C.morphisms],
            "identity": dict(C.identity), "compose": _rows(C.compose)}


def enc_vobj(V: VObj) -> dict:
    return {"plus": enc_fincat(V.plus), "minus": enc_fincat(V.minus)}


def enc_contra2cat(A: ContraTwoCat) -> dict:
    return {"name": A.name, "objects": list(A.objects), "hom": _rows(A.hom, enc_vobj), "unit": dict(A.unit),
            "comp": _rows(A.comp, _tables)}


def enc_vbicat(B: VBicat) -> dict:
    return {"cat": enc_contra2cat(B.cat), "assoc": _rows(B.assoc, _rows), "lunit": _rows(B.lunit, dict),
            "runit": _rows(B.runit, dict)}


def enc_weak(W: WeakDualityInvolution) -> dict:
    return {"name": W.name, "base": enc_contra2cat(W.base), "obj_map": dict(W.obj_map), "D": _rows(W.D, _tables),
            "mu": _rows(W.mu, _rows), "iota": dict(W.iota), "phi": dict(W.phi), "phi_inv": dict(W.phi_inv),
            "eta": dict(W.eta), "eps": dict(W.eps), "phi_nat": _rows(W.phi_nat, dict), "zeta": dict(W.zeta),
            "adjusted": list(W.adjusted)}


def enc_duality(E: DualityPseudofunctorData) -> dict:
    return {"source": enc_weak(E.source), "target": enc_weak(E.target), "obj_map": dict(E.obj_map),
            "hom_functors": _rows(E.hom_functors, _tables), "iota": dict(E.iota), "iota_inv": dict(E.iota_inv),
            "iota_unit": dict(E.iota_unit), "iota_counit": dict(E.iota_counit),
            "iota_nat": _rows(E.iota_nat, dict), "theta": dict(E.theta)}


def _enc_witness(w: EquivalenceWitness) -> dict:
    return {"backward": _tables(w.backward), "unit": dict(w.unit.components),
            "counit": dict(w.counit.components)}


def enc_certificate(c: BiequivalenceCertificate) -> dict:
    return {"source": enc_contra2cat(c.source), "target": enc_contra2cat(c.target), "obj_map": dict(c.obj_map),
            "hom_functors": _rows(c.hom_functors, _tables), "hom_witnesses": _rows(c.hom_witnesses, _enc_witness),
            "object_witnesses": {b: {"source_object": w.source_object, "there": w.there, "back": w.back,
                                     "unit": w.unit, "counit": w.counit}
                                 for b, w in c.object_witnesses.items()}}


def enc_report(rep: Report, budget_notes: list[str] | None = None) -> dict:
    return {"subject": rep.subject, "ok": rep.ok,
            "findings": [{"kind": f.kind, "family": f.family, "address": _plain(f.address), "detail": f.detail}
                         for f in rep.sorted_findings()],
            "notes": list(rep.notes), "checked": _sdict(rep.checked), "budget": list(budget_notes or [])}


# ---------------------------------------------------------------- decoders

def dec_fincat(p) -> FinCat:
    return FinCat(p["objects"], p["morphisms"], p["identity"], _unrows(p["compose"], 2))


def dec_vobj(p) -> VObj:
    return VObj(dec_fincat(p["plus"]), dec_fincat(p["minus"]))


def dec_contra2cat(p) -> ContraTwoCat:
    hom = _unrows(p["hom"], 2, dec_vobj)
    comp = {}
    for row in p["comp"]:
        x, y, z, h, g, tables = row
        key = (x, y, z, h, g)
        if (y, z) not in hom or (x, y) not in hom or (x, z) not in hom or h not in VARIANCES or g not in VARIANCES:
            raise DocumentError(f"comp{list(key)}", "refers to a missing hom or variance")
        comp[key] = _functor(comp_source(hom, x, y, z, h, g), hom[(x, z)].part(mul(g, h)), tables)
    return ContraTwoCat(tuple(p["objects"]), hom, dict(p["unit"]), comp, p.get("name", ""))


def dec_vbicat(p) -> VBicat:
    inner = lambda rows: _unrows(rows, 3)  # noqa: E731
    return VBicat(dec_contra2cat(p["cat"]), _unrows(p["assoc"], 7, inner), _unrows(p["lunit"], 3, dict),
                  _unrows(p["runit"], 3, dict))


def dec_weak(p) -> WeakDualityInvolution:
    A = dec_contra2cat(p["base"])
    o = dict(p["obj_map"])
    D = {}
    for x, y, tables in p["D"]:
        D[(x, y)] = _functor(op_category(A.cell(x, y)), A.cell(o[x], o[y]), tables)
    return WeakDualityInvolution(A, o, D, _unrows(p["mu"], 3, lambda rows: _unrows(rows, 2)), dict(p["iota"]),
                                 dict(p["phi"]), dict(p["phi_inv"]), dict(p["eta"]), dict(p["eps"]),
                                 _unrows(p["phi_nat"], 2, dict), dict(p["zeta"]), tuple(p["adjusted"]),
                                 p.get("name", ""))


def dec_duality(p) -> DualityPseudofunctorData:
    W, W2 = dec_weak(p["source"]), dec_weak(p["target"])
    Fo = dict(p["obj_map"])
    hf = {(x, y): _functor(W.base.cell(x, y), W2.base.cell(Fo[x], Fo[y]), t) for x, y, t in p["hom_functors"]}
    return DualityPseudofunctorData(W, W2, Fo, hf, dict(p["iota"]), dict(p["iota_inv"]), dict(p["iota_unit"]),
                                    dict(p["iota_counit"]), _unrows(p["iota_nat"], 2, dict), dict(p["theta"]))


def dec_certificate(p) -> BiequivalenceCertificate:
    S, T = dec_contra2cat(p["source"]), dec_contra2cat(p["target"])
    Fo = dict(p["obj_map"])
    hf, hw = {}, {}
    for x, y, g, t in p["hom_functors"]:
        hf[(x, y, g)] = _functor(S.cell(x, y, g), T.cell(Fo[x], Fo[y], g), t)
    for x, y, g, w in p["hom_witnesses"]:
        F = hf[(x, y, g)]
        G = _functor(F.target, F.source, w["backward"])
        unit = NatTransfData(identity_functor(F.source), compose_functors(G, F), dict(w["unit"]))
        counit = NatTransfData(compose_functors(F, G), identity_functor(F.target), dict(w["counit"]))
        hw[(x, y, g)] = EquivalenceWitness(F, G, unit, counit)
    ow = {b: ObjectWitness(w["source_object"], w["there"], w["back"], w["unit"], w["counit"])
          for b, w in p["object_witnesses"].items()}
    return BiequivalenceCertificate(S, T, Fo, hf, hw, ow)


def dec_report(p) -> Report:
    rep = Report(p["subject"], notes=list(p["notes"]), checked=dict(p["checked"]))
    for f in p["findings"]:
        rep.findings.append(Finding(f["kind"], f["family"], tuple(f["address"]), f["detail"]))
    return rep


ENCODERS = {
    "fincat": enc_fincat, "vobj": enc_vobj, "contra2cat": enc_contra2cat, "vbicat": enc_vbicat,
    "weak-involution": enc_weak, "duality-pseudofunctor": enc_duality, "certificate": enc_certificate,
    "report": enc_report,
}
DECODERS = {
    "fincat": dec_fincat, "vobj": dec_vobj, "contra2cat": dec_contra2cat, "vbicat": dec_vbicat,
    "weak-involution": dec_weak, "duality-pseudofunctor": dec_duality, "certificate": dec_certificate,
    "report": dec_report,
}


def to_document(kind: str, obj, **kw) -> Document:
    # round through JSON so the payload holds only JSON types (tuples become lists)
    return Document(kind, VERSION, json.loads(json.dumps(ENCODERS[kind](obj, **kw))))


def from_document(doc: Document):
    """Rebuild the structure; malformed payloads raise DocumentError naming the field."""
    try:
        return DECODERS[doc.kind](doc.payload)
    except DocumentError:
        raise
    except (KeyError, TypeError, ValueError, IndexError, AttributeError) as exc:
        raise DocumentError(f"payload ({doc.kind})", f"{type(exc).__name__}: {exc}") from exc
