"""Named example generators.  Every generator is deterministic in its parameters."""
from __future__ import annotations

from ..fincat import arrow_category, chain_category, cyclic_group, discrete_category, op_category, \
    terminal_category, walking_iso
from ..opposites import extract_strong_involution
from ..varcat import cat_sub
from ..weakside import deformed_weak, strict_as_weak

GENERATORS = ("catsub", "deformed-weak", "trivial", "chain")

# names accepted in --cats lists
_NAMED = {
    "1": terminal_category,
    "2": arrow_category,
    "op2": lambda: op_category(arrow_category()),
    "D2": lambda: discrete_category(2),
    "I": walking_iso,
    "B2": lambda: cyclic_group(2),
    "B3": lambda: cyclic_group(3),
}


def parse_cats(text: str) -> dict:
    """``"2,op2"`` → {"2": [1], "op2": op [1]}; ``chainN`` gives the N-element chain."""
    cats = {}
    for name in (s.strip() for s in text.split(",")):
        if not name:
            continue
        if name in _NAMED:
            cats[name] = _NAMED[name]()
        elif name.startswith("chain") and name[5:].isdigit():
            cats[name] = chain_category(int(name[5:]))
        else:
            raise ValueError(f"unknown category name {name!r}")
    if not cats:
        raise ValueError("empty category list")
    return cats


def catsub(cats: str = "2,op2"):
    return "contra2cat", cat_sub(parse_cats(cats), f"cat_sub({cats})")


def deformed(cats: str = "2,op2", seed: int = 7):
    A = cat_sub(parse_cats(cats), f"cat_sub({cats})")
    return "weak-involution", deformed_weak(A, seed, f"deformed(cat_sub({cats}),{seed})")


def trivial():
    """The terminal 2-category with its identity involution."""
    return "weak-involution", strict_as_weak(extract_strong_involution(cat_sub({"1": terminal_category()},
                                                                            "cat_sub(1)")))


def chain(n: int = 3):
    return "fincat", chain_category(n)


def generate(name: str, cats: str | None = None, seed: int | None = None, n: int | None = None):
    """Returns (kind, structure)."""
    if name == "catsub":
        return catsub(cats or "2,op2")
    if name == "deformed-weak":
        return deformed(cats or "2,op2", 7 if seed is None else seed)
    if name == "trivial":
        return trivial()
    if name == "chain":
        return chain(3 if n is None else n)
    raise ValueError(f"unknown generator {name!r}; expected one of {', '.join(GENERATORS)}")
