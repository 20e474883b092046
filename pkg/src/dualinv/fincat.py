"""Finite categories, functors and natural transformations.

Everything here is explicit data: a category is a list of objects, a list of
morphisms with endpoints, an identity assignment and a composition table.
Enumerations always follow the declared list order, so every search below is
deterministic and its first answer is the canonical one.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Mapping, Sequence


DEFAULT_SEARCH_CAP = 10**6


class BudgetExceeded(Exception):
    """Raised when an enumeration hits its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what}: budget of {cap} exceeded")
        self.what = what
        self.cap = cap


class Budget:
    def __init__(self, cap: int | None, what: str = "search"):
        self.cap = cap
        self.what = what
        self.used = 0

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.cap is not None and self.used > self.cap:
            raise BudgetExceeded(self.what, self.cap)


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class Finding:
    """One failed check.  ``kind`` is "structural" or "law"."""

    kind: str
    family: str
    address: tuple
    detail: str = ""

    def sort_key(self):
        return (self.kind, self.family, tuple(map(str, self.address)), self.detail)


@dataclass
class Report:
    subject: str = ""
    findings: list[Finding] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    checked: dict[str, int] = field(default_factory=dict)

    def add(self, kind: str, family: str, address, detail: str = "") -> None:
        self.findings.append(Finding(kind, family, tuple(address), detail))

    def law(self, family: str, address, detail: str = "") -> None:
        self.add("law", family, address, detail)

    def structural(self, family: str, address, detail: str = "") -> None:
        self.add("structural", family, address, detail)

    def count(self, family: str, n: int = 1) -> None:
        self.checked[family] = self.checked.get(family, 0) + n

    def extend(self, other: "Report", prefix: tuple = ()) -> None:
        for f in other.findings:
            self.findings.append(Finding(f.kind, f.family, prefix + f.address, f.detail))
        for k, v in other.checked.items():
            self.count(k, v)
        self.notes.extend(other.notes)

    @property
    def ok(self) -> bool:
        return not self.findings

    @property
    def has_structural(self) -> bool:
        return any(f.kind == "structural" for f in self.findings)

    def families(self) -> set[str]:
        return {f.family for f in self.findings}

    def sorted_findings(self) -> list[Finding]:
        return sorted(self.findings, key=Finding.sort_key)

    def __bool__(self) -> bool:  # truthy iff valid
        return self.ok


# ---------------------------------------------------------------- categories

class FinCat:
    """A finite category given by explicit tables.

    ``morphisms`` holds ``(id, source, target)`` triples and ``compose`` maps
    ``(g, f)`` to ``g∘f`` for exactly the composable pairs.  Two categories are
    equal only when all four fields agree.
    """

    __slots__ = ("objects", "morphisms", "identity", "compose", "__dict__")

    def __init__(self, objects: Iterable[str], morphisms: Iterable[Sequence[str]],
                 identity: Mapping[str, str], compose: Mapping[tuple[str, str], str]):
        self.objects = tuple(objects)
        self.morphisms = tuple(tuple(m) for m in morphisms)
        self.identity = dict(identity)
        self.compose = dict(compose)

    # identity and hashing go through a canonical key
    @cached_property
    def key(self) -> tuple:
        return (self.objects, self.morphisms,
                tuple(sorted(self.identity.items())),
                tuple(sorted(self.compose.items())))

    def __eq__(self, other):
        if not isinstance(other, FinCat):
            return NotImplemented
        return self is other or self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    @cached_property
    def src(self) -> dict[str, str]:
        return {m: s for m, s, _ in self.morphisms}

    @cached_property
    def tgt(self) -> dict[str, str]:
        return {m: t for m, _, t in self.morphisms}

    @cached_property
    def mor_ids(self) -> tuple[str, ...]:
        return tuple(m for m, _, _ in self.morphisms)

    @cached_property
    def obj_index(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict[str, int]:
        return {m: i for i, m in enumerate(self.mor_ids)}

    @cached_property
    def hom(self) -> dict[tuple[str, str], tuple[str, ...]]:
        out: dict[tuple[str, str], list[str]] = {(a, b): [] for a in self.objects for b in self.objects}
        for m, s, t in self.morphisms:
            out.setdefault((s, t), []).append(m)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def _adjacency(self):
        outs: dict[str, list[str]] = {a: [] for a in self.objects}
        ins: dict[str, list[str]] = {a: [] for a in self.objects}
        for m, s, t in self.morphisms:
            outs.setdefault(s, []).append(m)
            ins.setdefault(t, []).append(m)
        return outs, ins

    def out_of(self, a: str) -> list[str]:
        return self._adjacency[0][a]

    def into(self, a: str) -> list[str]:
        return self._adjacency[1][a]

    @cached_property
    def identity_ids(self) -> frozenset[str]:
        return frozenset(self.identity.values())

    def comp(self, g: str, f: str) -> str:
        return self.compose[(g, f)]

    @cached_property
    def inverse(self) -> dict[str, str]:
        """Map each invertible morphism to its (unique) inverse."""
        out = {}
        for f, a, b in self.morphisms:
            for g in self.hom.get((b, a), ()):
                if self.compose.get((g, f)) == self.identity.get(a) and \
                        self.compose.get((f, g)) == self.identity.get(b):
                    out[f] = g
                    break
        return out

    def is_iso(self, f: str) -> bool:
        return f in self.inverse

    @property
    def op(self) -> "FinCat":
        return op_category(self)


def make_category(objects: Sequence[str], arrows: Sequence[Sequence[str]],
                  compose: Mapping[tuple[str, str], str] | None = None,
                  id_prefix: str = "id:") -> FinCat:
    """Build a category from non-identity arrows; identities are added.

    Composites involving identities are filled in; the caller supplies the
    remaining entries of the table.
    """
    ident = {o: id_prefix + o for o in objects}
    mors = [(ident[o], o, o) for o in objects] + [tuple(a) for a in arrows]
    table = dict(compose or {})
    for m, s, t in mors:
        table[(m, ident[s])] = m
        table[(ident[t], m)] = m
    return FinCat(objects, mors, ident, table)


# small named categories used all over the tests and generators

def empty_category() -> FinCat:
    return FinCat((), (), {}, {})


def terminal_category() -> FinCat:
    return make_category(["*"], [])


def discrete_category(n: int) -> FinCat:
    return make_category([str(i) for i in range(n)], [])


def arrow_category() -> FinCat:
    """The walking arrow 0 → 1."""
    return make_category(["0", "1"], [("a", "0", "1")])


def chain_category(n: int) -> FinCat:
    """The ordinal with ``n`` objects 0 < 1 < ... as a poset category."""
    objs = [str(i) for i in range(n)]
    arrows = [(f"{i}<{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    return poset_category(objs, arrows)


def poset_category(objects: Sequence[str], arrows: Sequence[Sequence[str]]) -> FinCat:
    """Close a list of strict order relations ``(id, a, b)`` into a poset.

    ``arrows`` must already be transitively closed; composites are the unique
    arrow between the endpoints.
    """
    between = {(s, t): m for m, s, t in arrows}
    ident = {o: "id:" + o for o in objects}
    for o in objects:
        between[(o, o)] = ident[o]
    mors = [(ident[o], o, o) for o in objects] + [tuple(a) for a in arrows]
    table = {}
    for g, b, c in mors:
        for f, a, b2 in mors:
            if b2 == b:
                table[(g, f)] = between[(a, c)]
    return FinCat(objects, mors, ident, table)


def walking_iso() -> FinCat:
    return make_category(["a", "b"], [("u", "a", "b"), ("v", "b", "a")],
                         {("v", "u"): "id:a", ("u", "v"): "id:b"})


def monoid_category(elements: Sequence[str], table: Mapping[tuple[str, str], str],
                    unit: str) -> FinCat:
    """One-object category of a finite monoid; ``table[(g, f)] = g*f``."""
    mors = [(e, "*", "*") for e in elements]
    return FinCat(["*"], mors, {"*": unit}, dict(table))


def cyclic_group(n: int) -> FinCat:
    els = [f"r{i}" for i in range(n)]
    table = {(f"r{i}", f"r{j}"): f"r{(i + j) % n}" for i in range(n) for j in range(n)}
    return monoid_category(els, table, "r0")


# ---------------------------------------------------------------- validation

def validate_category(C: FinCat) -> Report:
    """Check the category axioms exhaustively.

    Table entries on non-composable pairs and dangling ids are structural;
    missing composites, unit and associativity violations are law failures.
    """
    rep = Report("fincat")
    objs = set(C.objects)
    if len(objs) != len(C.objects):
        rep.structural("duplicate-object", ())
    ids = [m for m, _, _ in C.morphisms]
    if len(set(ids)) != len(ids):
        rep.structural("duplicate-morphism", ())
    for m, s, t in C.morphisms:
        if s not in objs or t not in objs:
            rep.structural("dangling-endpoint", (m,), f"{s}->{t}")
    src, tgt = C.src, C.tgt
    for x in C.objects:
        i = C.identity.get(x)
        if i is None or i not in src:
            rep.structural("missing-identity", (x,))
        elif src[i] != x or tgt[i] != x:
            rep.structural("identity-endpoints", (x, i))
    for (g, f), h in C.compose.items():
        if g not in src or f not in src or h not in src:
            rep.structural("dangling-composite", (g, f), str(h))
        elif tgt[f] != src[g]:
            rep.structural("non-composable-entry", (g, f), f"{h}")
    if rep.has_structural:
        return rep
    for g, b, c in C.morphisms:
        for f in (m for m, _, t in C.morphisms if t == b):
            h = C.compose.get((g, f))
            rep.count("totality")
            if h is None:
                rep.law("totality", (g, f), "missing composite")
            elif src[h] != src[f] or tgt[h] != c:
                rep.law("composite-endpoints", (g, f), h)
    if not rep.ok:
        return rep
    for f, a, b in C.morphisms:
        rep.count("unit", 2)
        if C.compose[(f, C.identity[a])] != f:
            rep.law("unit", (f, C.identity[a]), "right unit")
        if C.compose[(C.identity[b], f)] != f:
            rep.law("unit", (C.identity[b], f), "left unit")
    into = {}
    for m, s, t in C.morphisms:
        into.setdefault(t, []).append(m)
    for h, c, d in C.morphisms:
        for g in into.get(c, ()):
            hg = C.compose[(h, g)]
            for f in into.get(src[g], ()):
                rep.count("associativity")
                if C.compose[(h, C.compose[(g, f)])] != C.compose[(hg, f)]:
                    rep.law("associativity", (h, g, f))
    return rep


# ---------------------------------------------------------------- constructions

def op_category(C: FinCat) -> FinCat:
    """Opposite category with the same ids; ``op(op(C)) == C`` field by field."""
    cached = C.__dict__.get("_op")
    if cached is not None:
        return cached
    D = FinCat(C.objects, [(m, t, s) for m, s, t in C.morphisms], C.identity,
               {(f, g): h for (g, f), h in C.compose.items()})
    C.__dict__["_op"] = D
    D.__dict__["_op"] = C
    return D


def pair_id(a: str, b: str) -> str:
    return f"pr:({a},{b})"


def product_category(A: FinCat, B: FinCat) -> FinCat:
    objs = [pair_id(a, b) for a in A.objects for b in B.objects]
    mors = [(pair_id(f, g), pair_id(s1, s2), pair_id(t1, t2))
            for f, s1, t1 in A.morphisms for g, s2, t2 in B.morphisms]
    ident = {pair_id(a, b): pair_id(A.identity[a], B.identity[b])
             for a in A.objects for b in B.objects}
    table = {}
    for (g1, f1), h1 in A.compose.items():
        for (g2, f2), h2 in B.compose.items():
            table[(pair_id(g1, g2), pair_id(f1, f2))] = pair_id(h1, h2)
    P = FinCat(objs, mors, ident, table)
    if len(set(objs)) != len(objs) or len(set(m for m, _, _ in mors)) != len(mors):
        raise ValueError("product ids collide; base ids must not contain ',' or parentheses")
    return P


def coproduct_category(A: FinCat, B: FinCat) -> FinCat:
    L, R = "inl:", "inr:"
    objs = [L + a for a in A.objects] + [R + b for b in B.objects]
    mors = [(L + m, L + s, L + t) for m, s, t in A.morphisms] + \
           [(R + m, R + s, R + t) for m, s, t in B.morphisms]
    ident = {L + a: L + i for a, i in A.identity.items()}
    ident.update({R + b: R + i for b, i in B.identity.items()})
    table = {(L + g, L + f): L + h for (g, f), h in A.compose.items()}
    table.update({(R + g, R + f): R + h for (g, f), h in B.compose.items()})
    return FinCat(objs, mors, ident, table)


@dataclass(frozen=True, eq=False)
class FunctorData:
    source: FinCat
    target: FinCat
    obj_map: Mapping[str, str]
    mor_map: Mapping[str, str]

    @cached_property
    def key(self) -> tuple:
        return (tuple(self.obj_map[o] for o in self.source.objects),
                tuple(self.mor_map[m] for m in self.source.mor_ids))

    def __eq__(self, other):
        if not isinstance(other, FunctorData):
            return NotImplemented
        return (self.key == other.key and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.key)

    def __call__(self, x: str) -> str:
        return self.mor_map[x] if x in self.mor_map else self.obj_map[x]


@dataclass(frozen=True, eq=False)
class NatTransfData:
    source: FunctorData
    target: FunctorData
    components: Mapping[str, str]

    @cached_property
    def key(self) -> tuple:
        return tuple(self.components[o] for o in self.source.source.objects)

    def __eq__(self, other):
        if not isinstance(other, NatTransfData):
            return NotImplemented
        return (self.key == other.key and self.source == other.source
                and self.target == other.target)

    def __hash__(self):
        return hash(self.key)

    def __getitem__(self, x: str) -> str:
        return self.components[x]


@dataclass(frozen=True)
class EquivalenceWitness:
    forward: FunctorData
    backward: FunctorData
    unit: NatTransfData  # Id ⇒ backward∘forward
    counit: NatTransfData  # forward∘backward ⇒ Id


def identity_functor(C: FinCat) -> FunctorData:
    return FunctorData(C, C, {o: o for o in C.objects}, {m: m for m in C.mor_ids})


def identity_transformation(F: FunctorData) -> NatTransfData:
    return NatTransfData(F, F, {a: F.target.identity[F.obj_map[a]] for a in F.source.objects})


def product_projections(A: FinCat, B: FinCat) -> tuple[FunctorData, FunctorData]:
    P = product_category(A, B)
    p1 = FunctorData(P, A, {pair_id(a, b): a for a in A.objects for b in B.objects},
                     {pair_id(f, g): f for f in A.mor_ids for g in B.mor_ids})
    p2 = FunctorData(P, B, {pair_id(a, b): b for a in A.objects for b in B.objects},
                     {pair_id(f, g): g for f in A.mor_ids for g in B.mor_ids})
    return p1, p2


def coproduct_injections(A: FinCat, B: FinCat) -> tuple[FunctorData, FunctorData]:
    S = coproduct_category(A, B)
    i1 = FunctorData(A, S, {a: "inl:" + a for a in A.objects}, {m: "inl:" + m for m in A.mor_ids})
    i2 = FunctorData(B, S, {b: "inr:" + b for b in B.objects}, {m: "inr:" + m for m in B.mor_ids})
    return i1, i2


# ---------------------------------------------------------------- functor checks

def validate_functor(F: FunctorData) -> Report:
    rep = Report("functor")
    A, B = F.source, F.target
    bsrc, btgt = B.src, B.tgt
    for a in A.objects:
        if F.obj_map.get(a) not in B.obj_index:
            rep.structural("object-map", (a,))
    for m in A.mor_ids:
        if F.mor_map.get(m) not in B.mor_index:
            rep.structural("morphism-map", (m,))
    if rep.has_structural:
        return rep
    for m, s, t in A.morphisms:
        fm = F.mor_map[m]
        if bsrc[fm] != F.obj_map[s] or btgt[fm] != F.obj_map[t]:
            rep.law("functor-endpoints", (m,), fm)
    for a in A.objects:
        if F.mor_map[A.identity[a]] != B.identity[F.obj_map[a]]:
            rep.law("functor-identity", (a,))
    if not rep.ok:
        return rep
    for (g, f), h in A.compose.items():
        rep.count("functor-composition")
        if B.compose[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            rep.law("functor-composition", (g, f))
    return rep


def validate_transformation(alpha: NatTransfData) -> Report:
    rep = Report("transformation")
    F, G = alpha.source, alpha.target
    B = F.target
    if F.source != G.source or F.target != G.target:
        rep.structural("endpoint-mismatch", ())
        return rep
    for a in F.source.objects:
        c = alpha.components.get(a)
        if c not in B.mor_index:
            rep.structural("component", (a,))
        elif B.src[c] != F.obj_map[a] or B.tgt[c] != G.obj_map[a]:
            rep.law("component-endpoints", (a,), c)
    if not rep.ok:
        return rep
    for m, s, t in F.source.morphisms:
        rep.count("naturality")
        if B.compose[(G.mor_map[m], alpha.components[s])] != \
                B.compose[(alpha.components[t], F.mor_map[m])]:
            rep.law("naturality", (m,))
    return rep


def is_invertible_transformation(alpha: NatTransfData) -> bool:
    B = alpha.source.target
    return all(B.is_iso(c) for c in alpha.components.values())


def compose_functors(G: FunctorData, F: FunctorData) -> FunctorData:
    """G∘F."""
    if F.target != G.source:
        raise ValueError("compose_functors: endpoint mismatch")
    return FunctorData(F.source, G.target,
                       {a: G.obj_map[F.obj_map[a]] for a in F.source.objects},
                       {m: G.mor_map[F.mor_map[m]] for m in F.source.mor_ids})


def vertical_compose(beta: NatTransfData, alpha: NatTransfData) -> NatTransfData:
    """β·α for α: F ⇒ G and β: G ⇒ H."""
    if alpha.target != beta.source:
        raise ValueError("vertical_compose: endpoint mismatch")
    B = alpha.source.target
    return NatTransfData(alpha.source, beta.target,
                         {a: B.compose[(beta.components[a], alpha.components[a])]
                          for a in alpha.source.source.objects})


def whisker_left(G: FunctorData, alpha: NatTransfData) -> NatTransfData:
    """Gα : G∘F ⇒ G∘F'."""
    return NatTransfData(compose_functors(G, alpha.source), compose_functors(G, alpha.target),
                         {a: G.mor_map[c] for a, c in alpha.components.items()})


def whisker_right(alpha: NatTransfData, F: FunctorData) -> NatTransfData:
    """αF : G∘F ⇒ G'∘F."""
    return NatTransfData(compose_functors(alpha.source, F), compose_functors(alpha.target, F),
                         {a: alpha.components[F.obj_map[a]] for a in F.source.objects})


def whisker(x, y):
    """Whisker a transformation by a functor on whichever side it sits."""
    if isinstance(x, FunctorData):
        return whisker_left(x, y)
    return whisker_right(x, y)


def horizontal_compose(beta: NatTransfData, alpha: NatTransfData) -> NatTransfData:
    """β*α = (β G) · (F' α) for α: F ⇒ F', β: G ⇒ G'."""
    return vertical_compose(whisker_right(beta, alpha.target), whisker_left(beta.source, alpha))


def invert_transformation(alpha: NatTransfData) -> NatTransfData:
    B = alpha.source.target
    return NatTransfData(alpha.target, alpha.source,
                         {a: B.inverse[c] for a, c in alpha.components.items()})


# ---------------------------------------------------------------- enumeration

def _functor_plan(A: FinCat):
    """Order non-identity morphisms and attach each composition constraint to
    the first position at which all three of its morphisms are assigned."""
    ids = A.identity_ids
    free = [m for m in A.mor_ids if m not in ids]
    pos = {m: i for i, m in enumerate(free)}
    checks: list[list[tuple[str, str, str]]] = [[] for _ in free]
    for (g, f), h in A.compose.items():
        ks = [pos[x] for x in (g, f, h) if x in pos]
        if ks:
            checks[max(ks)].append((g, f, h))
    return free, checks


def _object_maps(A: FinCat, B: FinCat, budget: Budget | None) -> Iterator[dict[str, str]]:
    objs = A.objects
    need = {}
    for m, s, t in A.morphisms:
        if m not in A.identity_ids:
            need.setdefault(A.obj_index[max(s, t, key=A.obj_index.get)], []).append((s, t))
    assign: dict[str, str] = {}

    def rec(i):
        if i == len(objs):
            yield dict(assign)
            return
        for b in B.objects:
            assign[objs[i]] = b
            if all(B.hom[(assign[s], assign[t])] for s, t in need.get(i, ())):
                yield from rec(i + 1)
        assign.pop(objs[i], None)

    yield from rec(0)


def iter_functors(A: FinCat, B: FinCat, budget: Budget | None = None,
                  obj_maps: Iterable[Mapping[str, str]] | None = None) -> Iterator[FunctorData]:
    """All functors A → B in canonical order (object maps first, then arrows)."""
    free, checks = _functor_plan(A)
    asrc, atgt = A.src, A.tgt
    for om in (obj_maps if obj_maps is not None else _object_maps(A, B, budget)):
        mm = {A.identity[a]: B.identity[om[a]] for a in A.objects}

        def rec(i):
            if i == len(free):
                if budget is not None:
                    budget.tick()
                yield FunctorData(A, B, dict(om), dict(mm))
                return
            m = free[i]
            for c in B.hom[(om[asrc[m]], om[atgt[m]])]:
                mm[m] = c
                if all(B.compose[(mm[g], mm[f])] == mm[h] for g, f, h in checks[i]):
                    yield from rec(i + 1)
            mm.pop(m, None)

        yield from rec(0)


def iter_transformations(F: FunctorData, G: FunctorData,
                         only_invertible: bool = False) -> Iterator[NatTransfData]:
    A, B = F.source, F.target
    objs = A.objects
    # naturality squares checked once both endpoints are assigned
    checks: list[list[tuple[str, str, str]]] = [[] for _ in objs]
    for m, s, t in A.morphisms:
        checks[max(A.obj_index[s], A.obj_index[t])].append((m, s, t))
    comp: dict[str, str] = {}

    def rec(i):
        if i == len(objs):
            yield NatTransfData(F, G, dict(comp))
            return
        a = objs[i]
        for c in B.hom[(F.obj_map[a], G.obj_map[a])]:
            if only_invertible and not B.is_iso(c):
                continue
            comp[a] = c
            if all(B.compose[(G.mor_map[m], comp[s])] == B.compose[(comp[t], F.mor_map[m])]
                   for m, s, t in checks[i]):
                yield from rec(i + 1)
        comp.pop(a, None)

    yield from rec(0)


@dataclass(frozen=True, eq=False)
class FunctorCategory:
    """Fun(A, B) together with the data each id stands for."""

    category: FinCat
    functors: tuple[FunctorData, ...]
    transformations: tuple[NatTransfData, ...]
    object_of: Mapping[tuple, str]  # functor key -> object id
    morphism_of: Mapping[tuple, str]  # (src id, tgt id, components key) -> morphism id

    def functor(self, oid: str) -> FunctorData:
        return self.functors[int(oid.split("#")[1])]

    def transformation(self, mid: str) -> NatTransfData:
        return self.transformations[int(mid.split("#")[1])]

    def id_of_functor(self, F: FunctorData) -> str:
        return self.object_of[F.key]

    def id_of_transformation(self, alpha: NatTransfData) -> str:
        return self.morphism_of[(self.object_of[alpha.source.key],
                                 self.object_of[alpha.target.key], alpha.key)]


@lru_cache(maxsize=None)
def functor_category_data(A: FinCat, B: FinCat) -> FunctorCategory:
    functors = tuple(iter_functors(A, B))
    oids = [f"fun:#{k}" for k in range(len(functors))]
    object_of = {F.key: oids[k] for k, F in enumerate(functors)}
    trans: list[NatTransfData] = []
    mors = []
    morphism_of = {}
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for alpha in iter_transformations(F, G):
                mid = f"nat:#{len(trans)}"
                trans.append(alpha)
                mors.append((mid, oids[i], oids[j]))
                morphism_of[(oids[i], oids[j], alpha.key)] = mid
    ident = {oids[i]: morphism_of[(oids[i], oids[i], identity_transformation(F).key)]
             for i, F in enumerate(functors)}
    table = {}
    by_src: dict[str, list[int]] = {}
    for k, (_, s, _) in enumerate(mors):
        by_src.setdefault(s, []).append(k)
    Aobjs = A.objects
    for k1, (m1, s1, t1) in enumerate(mors):
        a1 = trans[k1]
        for k2 in by_src.get(t1, ()):
            a2 = trans[k2]
            comp = tuple(B.compose[(a2.components[a], a1.components[a])] for a in Aobjs)
            table[(mors[k2][0], m1)] = morphism_of[(s1, mors[k2][2], comp)]
    cat = FinCat(oids, mors, ident, table)
    return FunctorCategory(cat, functors, tuple(trans), object_of, morphism_of)


def functor_category(A: FinCat, B: FinCat) -> FinCat:
    return functor_category_data(A, B).category


# ---------------------------------------------------------------- iso / equivalence

@dataclass
class SearchResult:
    """Outcome of a bounded search: "found", "none" or "inconclusive"."""

    status: str
    witness: object = None
    reason: str = ""
    candidates: int = 0

    @property
    def found(self) -> bool:
        return self.status == "found"

    @property
    def definite_negative(self) -> bool:
        return self.status == "none"


def _shape(C: FinCat):
    homsizes = sorted(len(v) for v in C.hom.values())
    return (len(C.objects), len(C.morphisms), tuple(homsizes))


def check_isomorphism(A: FinCat, B: FinCat, cap: int | None = DEFAULT_SEARCH_CAP) -> SearchResult:
    """Search for a functor with a strict inverse."""
    if _shape(A) != _shape(B):
        return SearchResult("none", reason="invariants differ (object, morphism or hom counts)")
    budget = Budget(cap, "isomorphism search")

    def bijective_maps():
        for perm in itertools.permutations(B.objects):
            yield dict(zip(A.objects, perm))

    try:
        for F in iter_functors(A, B, budget, obj_maps=bijective_maps()):
            if len(set(F.mor_map.values())) == len(B.morphisms):
                inv = FunctorData(B, A, {v: k for k, v in F.obj_map.items()},
                                  {v: k for k, v in F.mor_map.items()})
                return SearchResult("found", (F, inv), candidates=budget.used)
    except BudgetExceeded as e:
        return SearchResult("inconclusive", reason=str(e), candidates=budget.used)
    return SearchResult("none", reason="no bijective functor", candidates=budget.used)


def fully_faithful_failure(F: FunctorData) -> str | None:
    A, B = F.source, F.target
    for a in A.objects:
        for a2 in A.objects:
            image = [F.mor_map[m] for m in A.hom[(a, a2)]]
            if len(set(image)) != len(image):
                return f"faithfulness fails at hom({a},{a2})"
            if len(image) != len(B.hom[(F.obj_map[a], F.obj_map[a2])]):
                return f"fullness fails at hom({a},{a2})"
    return None


def essential_surjectivity_failure(F: FunctorData) -> str | None:
    B = F.target
    for b in B.objects:
        if not any(B.is_iso(c) for a in F.source.objects for c in B.hom[(F.obj_map[a], b)]):
            return f"essential surjectivity fails at {b}"
    return None


def complete_to_equivalence(F: FunctorData) -> SearchResult:
    """Turn a fully faithful, essentially surjective functor into a witness.

    The quasi-inverse picks, for each target object, the first source object
    (and first isomorphism) in canonical order.
    """
    reason = fully_faithful_failure(F) or essential_surjectivity_failure(F)
    if reason:
        return SearchResult("none", reason=reason)
    A, B = F.source, F.target
    back_obj, eps = {}, {}
    for b in B.objects:
        for a in A.objects:
            isos = [c for c in B.hom[(F.obj_map[a], b)] if B.is_iso(c)]
            if isos:
                back_obj[b], eps[b] = a, isos[0]
                break
    lift = {}
    for a in A.objects:
        for a2 in A.objects:
            for m in A.hom[(a, a2)]:
                lift[(a, a2, F.mor_map[m])] = m
    back_mor = {}
    for v, b, b2 in B.morphisms:
        w = B.compose[(B.inverse[eps[b2]], B.compose[(v, eps[b])])]
        back_mor[v] = lift[(back_obj[b], back_obj[b2], w)]
    G = FunctorData(B, A, back_obj, back_mor)
    GF = compose_functors(G, F)
    FG = compose_functors(F, G)
    unit = NatTransfData(identity_functor(A), GF,
                         {a: lift[(a, back_obj[F.obj_map[a]], B.inverse[eps[F.obj_map[a]]])]
                          for a in A.objects})
    counit = NatTransfData(FG, identity_functor(B), dict(eps))
    return SearchResult("found", EquivalenceWitness(F, G, unit, counit))


def verify_equivalence_witness(w: EquivalenceWitness) -> Report:
    """Re-check every condition of an equivalence witness from scratch."""
    rep = Report("equivalence")
    F, G = w.forward, w.backward
    if F.target != G.source or G.target != F.source:
        rep.structural("endpoints", ())
        return rep
    rep.extend(validate_functor(F), ("forward",))
    rep.extend(validate_functor(G), ("backward",))
    if not rep.ok:
        return rep
    if w.unit.source != identity_functor(F.source) or w.unit.target != compose_functors(G, F):
        rep.law("unit-endpoints", ())
    if w.counit.source != compose_functors(F, G) or w.counit.target != identity_functor(F.target):
        rep.law("counit-endpoints", ())
    if not rep.ok:
        return rep
    rep.extend(validate_transformation(w.unit), ("unit",))
    rep.extend(validate_transformation(w.counit), ("counit",))
    for name, t in (("unit", w.unit), ("counit", w.counit)):
        C = t.source.target
        for a, c in t.components.items():
            if not any(C.compose.get((d, c)) == C.identity[C.src[c]] and
                       C.compose.get((c, d)) == C.identity[C.tgt[c]]
                       for d in C.hom[(C.tgt[c], C.src[c])]):
                rep.law("invertibility", (name, a), c)
    return rep


def check_equivalence(A: FinCat, B: FinCat, cap: int | None = DEFAULT_SEARCH_CAP) -> SearchResult:
    budget = Budget(cap, "equivalence search")
    first_reason = None
    try:
        for F in iter_functors(A, B, budget):
            res = complete_to_equivalence(F)
            if res.found:
                res.candidates = budget.used
                return res
            if first_reason is None:
                first_reason = res.reason
    except BudgetExceeded as e:
        return SearchResult("inconclusive", reason=str(e), candidates=budget.used)
    return SearchResult("none", reason=first_reason or "no functors", candidates=budget.used)


def find_iso_between(C: FinCat, a: str, b: str) -> str | None:
    for c in C.hom[(a, b)]:
        if C.is_iso(c):
            return c
    return None


def solve_constraints(variables: Sequence, domains: Mapping, constraints: Iterable,
                      budget: Budget | None = None, limit: int | None = None) -> list[dict]:
    """Depth-first search for assignments satisfying every constraint.

    ``constraints`` holds ``(vars, predicate)`` pairs.  A predicate receives the
    partial assignment and runs as soon as its last variable is bound, so it
    may only read the variables it declares.  Solutions come out in the order
    induced by ``variables`` and the domain orders.
    """
    variables = list(variables)
    pos = {v: i for i, v in enumerate(variables)}
    attached: list[list] = [[] for _ in variables]
    upfront = []
    for vs, pred in constraints:
        if vs:
            attached[max(pos[v] for v in vs)].append(pred)
        else:
            upfront.append(pred)
    assign: dict = {}
    if not all(p(assign) for p in upfront):
        return []
    if not variables:
        return [{}]
    out = []
    iters = [iter(domains[variables[0]])]
    while iters:
        i = len(iters) - 1
        v = variables[i]
        for val in iters[-1]:
            if budget is not None:
                budget.tick()
            assign[v] = val
            if all(p(assign) for p in attached[i]):
                break
        else:
            assign.pop(v, None)
            iters.pop()
            continue
        if i + 1 == len(variables):
            out.append(dict(assign))
            if limit is not None and len(out) >= limit:
                return out
        else:
            iters.append(iter(domains[variables[i + 1]]))
    return out
