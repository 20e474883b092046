"""Command-line driver: validate, strictify, generate, mutate, oracle-check.

Exit codes: 0 valid, 1 axiom failure, 2 structural or unreadable input,
3 budget exceeded.  Budgets come from --budget-functors / --budget-cells,
falling back to VARCAT_BUDGET_FUNCTORS / VARCAT_BUDGET_CELLS.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace
from pathlib import Path

from ..fincat import BudgetExceeded, Report, validate_category
from ..opposites import StrictInvolution, validate_strict_involution
from ..strictifier import StageFailure, StrictifyBudget, check_two_equivalence, independent_verify, \
    strictify_pipeline, yoneda_oracle
from ..varcat import validate_contra_2cat
from ..vmonoidal import VARIANCES, validate_vobj
from ..weakside import has_nonidentity_constraints, involution_to_vbicat, lift_strict, strict_as_weak, validate_duality_pseudofunctor, \
    validate_vbicat, validate_weak_involution
from .generate import GENERATORS, generate
from .io import Document, DocumentError, from_document, load, parse, to_document, write_atomic
from .mutate import mutate

EXIT_OK, EXIT_AXIOM, EXIT_STRUCTURAL, EXIT_BUDGET = 0, 1, 2, 3
ALREADY_STRICT = "already strict after canonical extraction"


class Budgets:
    def __init__(self, functors: int | None, cells: int | None):
        self.functors = functors
        self.cells = cells

    def strictify(self) -> StrictifyBudget:
        base = StrictifyBudget()
        return StrictifyBudget(base.max_objects, self.cells if self.cells is not None else base.max_hom_morphisms,
                               self.functors if self.functors is not None else base.max_candidates)

    def notes(self) -> list[str]:
        return [f"{k}={v}" for k, v in (("functors", self.functors), ("cells", self.cells)) if v is not None]


def _env_int(name: str) -> int | None:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {raw!r}")


def _budgets(args) -> Budgets:
    f = args.budget_functors if args.budget_functors is not None else _env_int("VARCAT_BUDGET_FUNCTORS")
    c = args.budget_cells if args.budget_cells is not None else _env_int("VARCAT_BUDGET_CELLS")
    return Budgets(f, c)


def _emit(text: str, out: str | None) -> None:
    if out:
        write_atomic(out, text)
    else:
        sys.stdout.write(text)


def _exit_for(rep: Report) -> int:
    if rep.ok:
        return EXIT_OK
    return EXIT_STRUCTURAL if rep.has_structural else EXIT_AXIOM


def _report_doc(rep: Report, budgets: Budgets, extra: list[str] = ()) -> Document:
    return to_document("report", rep, budget_notes=budgets.notes() + list(extra))


def _load(path: str, kind: str | None = None):
    doc = load(path)
    if kind and doc.kind != kind:
        raise DocumentError(f"{path}:kind", f"expected {kind}, found {doc.kind}")
    return doc, from_document(doc)


# ---------------------------------------------------------------- sizes

def _hom_sizes(kind: str, obj):
    if kind == "fincat":
        yield "fincat", len(obj.morphisms)
        return
    if kind == "vobj":
        for g in VARIANCES:
            yield g, len(obj.part(g).morphisms)
        return
    cats = {"contra2cat": lambda o: [o], "vbicat": lambda o: [o.cat], "weak-involution": lambda o: [o.base],
            "duality-pseudofunctor": lambda o: [o.source.base, o.target.base],
            "certificate": lambda o: [o.source, o.target]}.get(kind, lambda o: [])(obj)
    for A in cats:
        for (x, y), V in A.hom.items():
            for g in VARIANCES:
                yield (x, y, g), len(V.part(g).morphisms)


def _check_cells(kind: str, obj, cap: int | None) -> None:
    if cap is None:
        return
    for where, n in _hom_sizes(kind, obj):
        if n > cap:
            raise BudgetExceeded(f"hom {where} with {n} morphisms", cap)


def validate_structure(kind: str, obj, threads: int = 1) -> Report:
    if kind == "fincat":
        return validate_category(obj)
    if kind == "vobj":
        return validate_vobj(obj)
    if kind == "contra2cat":
        return validate_contra_2cat(obj, threads=threads)
    if kind == "vbicat":
        return validate_vbicat(obj, threads=threads)
    if kind == "weak-involution":
        rep = validate_weak_involution(obj)
        if rep.ok and not has_nonidentity_constraints(obj):
            # identity constraints: the strict-involution suite applies as well
            S = StrictInvolution(obj.base, obj.obj_map, obj.D, obj.phi, obj.phi_inv)
            rep.extend(validate_strict_involution(S), ("strict",))
        return rep
    if kind == "duality-pseudofunctor":
        return validate_duality_pseudofunctor(obj)
    if kind == "certificate":
        return independent_verify(obj)
    if kind == "report":
        return obj
    raise DocumentError("kind", f"no validator for {kind}")


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    budgets = _budgets(args)
    try:
        doc, obj = _load(args.file, args.kind)
        if doc.kind == "report" and doc.payload.get("ok") != (not doc.payload.get("findings")):
            raise DocumentError(f"{args.file}:payload.ok", "disagrees with the findings list")
        _check_cells(doc.kind, obj, budgets.cells)
        rep = validate_structure(doc.kind, obj, threads=args.threads)
    except DocumentError as exc:
        rep = Report("document")
        rep.structural("parse", (exc.address,), exc.detail)
    except BudgetExceeded as exc:
        rep = Report(args.file)
        _emit(_report_doc(rep, budgets, [f"budget exceeded: {exc}"]).dumps(), args.report)
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(_report_doc(rep, budgets).dumps(), args.report)
    code = _exit_for(rep)
    if code:
        f = rep.sorted_findings()[0]
        print(f"invalid: {len(rep.findings)} failures, first {f.kind} {f.family} at {list(f.address)}",
              file=sys.stderr)
    else:
        print(f"valid: {sum(rep.checked.values())} checks", file=sys.stderr)
    return code


def _outputs(res, path: str) -> list[tuple[str, Document]]:
    S = strict_as_weak(res.involution)
    if res.already_strict:
        S = replace(S, name=f"{S.name} [{ALREADY_STRICT}]")
    docs = [("strict", to_document("weak-involution", S)),
            ("duality", to_document("duality-pseudofunctor", res.duality)),
            ("certificate", to_document("certificate", res.certificate))]
    return [(f"{path}.{suffix}" if path else suffix, d) for suffix, d in docs]


def _revalidate(docs) -> str | None:
    """Decode each output again and re-run its validator; returns the first problem."""
    for name, doc in docs:
        again = parse(doc.dumps())
        if again.dumps() != doc.dumps():
            return f"{name}: serialization does not round-trip"
        rep = validate_structure(doc.kind, from_document(again))
        if not rep.ok:
            f = rep.sorted_findings()[0]
            return f"{name}: {f.family} at {list(f.address)}"
    return None


def cmd_strictify(args) -> int:
    budgets = _budgets(args)
    try:
        _, W = _load(args.file, "weak-involution")
    except DocumentError as exc:
        print(f"structural: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    paths = ("onestep", "stepwise") if args.path == "both" else (args.path,)
    try:
        results = {p: strictify_pipeline(W, p, budgets.strictify()) for p in paths}
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except StageFailure as exc:
        print(f"stage {exc.stage} failed: {exc.detail}", file=sys.stderr)
        return EXIT_AXIOM
    if args.path == "both":
        cmp = results["stepwise"].comparison
        if cmp is not None and not check_two_equivalence(cmp).ok:
            print("stage differential failed: paths are not 2-equivalent", file=sys.stderr)
            return EXIT_AXIOM
    stem = Path(args.file).name.removesuffix(".json")
    out_dir = Path(args.out_dir)
    docs = []
    for p, res in results.items():
        infix = p if args.path == "both" else ""
        docs += [(f"{stem}.{name}.json", d) for name, d in _outputs(res, infix)]
    problem = _revalidate(docs)
    if problem:
        print(f"stage output failed: {problem}", file=sys.stderr)
        return EXIT_AXIOM
    # nothing is written until every output has been built and checked
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, d in docs:
        write_atomic(out_dir / name, d.dumps())
    for p, res in results.items():
        I = res.involution.base
        timing = " ".join(f"{k}={v:.2f}s" for k, v in res.timings.items())
        mark = f" ({ALREADY_STRICT})" if res.already_strict else ""
        print(f"{p}: {len(W.base.objects)} -> {len(I.objects)} objects{mark}; {timing}")
    if args.path == "both":
        print("differential: stepwise and onestep outputs are 2-equivalent")
    for name, _ in docs:
        print(f"wrote {out_dir / name}")
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        kind, obj = generate(args.name, cats=args.cats, seed=args.seed, n=args.n)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    _emit(to_document(kind, obj).dumps(), args.output)
    return EXIT_OK


def cmd_mutate(args) -> int:
    try:
        doc, obj = _load(args.file)
        mutant, m = mutate(doc.kind, obj, args.seed)
    except (DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STRUCTURAL
    _emit(to_document(doc.kind, mutant).dumps(), args.output)
    print(f"mutant: {m.operator} at {list(m.address)}: {m.old} -> {m.new}", file=sys.stderr)
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    budgets = _budgets(args)
    try:
        doc, obj = _load(args.file)
        if doc.kind == "weak-involution":
            B = involution_to_vbicat(obj)
        elif doc.kind == "contra2cat":
            B = lift_strict(obj)
        elif doc.kind == "vbicat":
            B = obj
        else:
            raise DocumentError(f"{args.file}:kind", "oracle-check takes weak-involution, contra2cat or vbicat")
        rep = yoneda_oracle(B, budgets.strictify(), raw=not args.no_raw)
    except DocumentError as exc:
        rep = Report("document")
        rep.structural("parse", (exc.address,), exc.detail)
    except BudgetExceeded as exc:
        _emit(_report_doc(Report("yoneda-oracle"), budgets, [f"budget exceeded: {exc}"]).dumps(), args.report)
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    _emit(_report_doc(rep, budgets).dumps(), args.report)
    print(("oracle agrees" if rep.ok else "oracle disagrees") + f": {dict(sorted(rep.checked.items()))}",
          file=sys.stderr)
    return _exit_for(rep)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-functors", type=int, default=None,
                        help="cap on enumerated functor/morphism candidates (env VARCAT_BUDGET_FUNCTORS)")
    common.add_argument("--budget-cells", type=int, default=None,
                        help="cap on morphisms per hom component (env VARCAT_BUDGET_CELLS)")
    common.add_argument("--threads", type=int, default=1, help="worker threads for exhaustive checks")
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="dualinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="check a document against its axioms")
    v.add_argument("file")
    v.add_argument("--kind", default=None)
    v.add_argument("--report", default=None, help="write the report document here instead of stdout")
    v.set_defaults(func=cmd_validate)

    s = sub.add_parser("strictify", parents=[common], help="strictify a weak involution")
    s.add_argument("file")
    s.add_argument("--path", choices=("onestep", "stepwise", "both"), default="onestep")
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_strictify)

    g = sub.add_parser("generate", parents=[common], help=f"emit an example ({', '.join(GENERATORS)})")
    g.add_argument("name")
    g.add_argument("--cats", default=None, help="comma-separated category names, e.g. 2,op2")
    g.add_argument("-n", type=int, default=None, help="length for the chain generator")
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_generate)

    m = sub.add_parser("mutate", parents=[common], help="apply one seeded single-entry mutation")
    m.add_argument("file")
    m.add_argument("-o", "--output", default=None)
    m.set_defaults(func=cmd_mutate, seed=1)

    o = sub.add_parser("oracle-check", parents=[common], help="run the Yoneda oracle on a structure")
    o.add_argument("file")
    o.add_argument("--no-raw", action="store_true", help="skip the unguided enumeration")
    o.add_argument("--report", default=None)
    o.set_defaults(func=cmd_oracle_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "mutate" and args.seed is None:
        args.seed = 1
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
