"""Correspondences between choice functions, maximal antichains, and
forcing witnesses over a family of disjoint finite sets.

A maximal antichain of the levels-by-blocks poset picks exactly one element
per block, so it reads off as a choice function, and conversely any choice
function plus a level assignment yields a maximal antichain.  On the flat
poset, a name that provably lands in the block selected by the generic
filter evaluates, below each block condition, to one chosen element; those
values again form a choice function.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidInput, NotMaximal, PreconditionViolated, ValueEscapesBlock,
)
from .forcing import NameSpace, forces_semantic
from .formulas import (
    And, Cname, Formula, Implies, Member, Eq, Var, conj, disj, single_free_var,
    subst,
)
from .hf import HF, render
from .names import PName, check_name, eval_name, gamma_name, pname
from .posets import (
    ChoicePoset, Family, FlatPoset, ONE, Poset, generic_filter, is_antichain,
    is_maximal_antichain,
)


class ChoiceFunction:
    """One element chosen from every block of a family."""

    def __init__(self, family: Family, mapping: dict[str, HF]):
        extra = set(mapping) - set(family.labels)
        if extra:
            raise InvalidInput(f"unknown block labels: {sorted(extra)}")
        missing = [lab for lab in family.labels if lab not in mapping]
        if missing:
            raise InvalidInput(f"no value chosen for blocks: {missing}")
        for lab, value in mapping.items():
            if value not in family.blocks[lab]:
                raise ValueEscapesBlock(
                    f"{render(value)} is not in block {lab!r}")
        self.family = family
        self.mapping = dict(mapping)
        self._key = tuple((lab, mapping[lab].key()) for lab in family.labels)

    def __getitem__(self, label: str) -> HF:
        return self.mapping[label]

    def items(self) -> tuple[tuple[str, HF], ...]:
        return tuple((lab, self.mapping[lab]) for lab in self.family.labels)

    def __eq__(self, other) -> bool:
        return isinstance(other, ChoiceFunction) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        inner = ",".join(f"{lab}->{render(v)}" for lab, v in self.items())
        return "choice{" + inner + "}"


def all_choice_functions(family: Family) -> list[ChoiceFunction]:
    """Every choice function of the family, in canonical order."""
    stack: list[dict[str, HF]] = [{}]
    for lab in family.labels:
        stack = [{**m, lab: v}
                 for m in stack for v in family.sorted_block(lab)]
    return [ChoiceFunction(family, m) for m in stack]


# ---------------------------------------------------------------------------
# antichains of the levels-by-blocks poset


def choice_from_antichain(family: Family, antichain: Iterable) -> ChoiceFunction:
    """Read the one element per block off a maximal antichain."""
    poset = ChoicePoset(family)
    items = list(antichain)
    if not is_maximal_antichain(poset, items):
        raise NotMaximal(
            "the antichain does not pick exactly one element per block")
    mapping = {family.block_of(x): x for _, x in items}
    return ChoiceFunction(family, mapping)


def antichain_from_choice(family: Family, f: ChoiceFunction,
                          levels: dict[str, int]) -> frozenset:
    """The maximal antichain placing each chosen element at its level."""
    if set(levels) != set(family.labels):
        raise InvalidInput("levels must assign every block label exactly once")
    for lab, n in levels.items():
        if not isinstance(n, int) or n < 0:
            raise InvalidInput(f"level of block {lab!r} must be a natural")
    return frozenset((levels[lab], f[lab]) for lab in family.labels)


# ---------------------------------------------------------------------------
# flat-poset witnesses


def theta_family(flat: FlatPoset, var: str = "x") -> Formula:
    """The block-selection formula: some block label lies in the generic
    filter and the variable lies in that block.  Finite family, so the
    existential over labels unfolds to a disjunction."""
    gamma = gamma_name(flat)
    parts = []
    for lab in flat.family.labels:
        lab_check = check_name(flat.condition_hf(lab))
        block_check = check_name(flat.family.block_hf(lab))
        parts.append(And(Member(Cname(lab_check), Cname(gamma)),
                         Member(Var(var), Cname(block_check))))
    return disj(parts)


def build_witness_flat(family: Family, f: ChoiceFunction,
                       flat: Optional[FlatPoset] = None) -> PName:
    """The name whose value below each block condition is the chosen
    element: entries (i, y-check) for every member y of f(i)."""
    if flat is None:
        flat = FlatPoset(family)
    entries = []
    for lab in family.labels:
        for y in f[lab]:
            entries.append((lab, check_name(y)))
    return pname(entries)


def extract_choice_flat(family: Family, tau: PName,
                        flat: Optional[FlatPoset] = None,
                        space: Optional[NameSpace] = None) -> ChoiceFunction:
    """Evaluate a witness below each block condition and collect the chosen
    elements; the witness must provably select from the generic block."""
    if flat is None:
        flat = FlatPoset(family)
    theta = theta_family(flat)
    var = single_free_var(theta)
    if not forces_semantic(flat, ONE, subst(theta, var, tau), space):
        raise PreconditionViolated(
            "the name is not forced to select from the generic block")
    mapping = {}
    for lab in family.labels:
        value = eval_name(tau, generic_filter(flat, lab))
        if value not in family.blocks[lab]:
            raise ValueEscapesBlock(
                f"value {render(value)} below {lab!r} escapes its block")
        mapping[lab] = value
    return ChoiceFunction(family, mapping)


# ---------------------------------------------------------------------------
# wellordered extraction over an arbitrary finite poset


def extract_choice_wellordered(
        poset: Poset, marks: Sequence, block_sets: Sequence[Iterable[HF]],
        tau: PName,
        space: Optional[NameSpace] = None) -> list[tuple[object, HF]]:
    """For each marked condition p_n, find the first extension q_n deciding
    the name as a fixed element x_n of the n-th set.

    The marked conditions must be pairwise incompatible, and the greatest
    element must force that whenever a mark enters the generic filter the
    name lands in the matching set.
    """
    marks = [poset.resolve(p) for p in marks]
    blocks = [frozenset(xs) for xs in block_sets]
    if len(marks) != len(blocks):
        raise InvalidInput("need exactly one set per marked condition")
    if not all(blocks):
        raise InvalidInput("the sets must be nonempty")
    if len(marks) > 1 and not is_antichain(poset, marks):
        raise PreconditionViolated(
            "the marked conditions are not pairwise incompatible")
    gamma = gamma_name(poset)
    guard = conj([
        Implies(Member(Cname(check_name(poset.condition_hf(p))), Cname(gamma)),
                Member(Cname(tau), Cname(check_name(HF(xs)))))
        for p, xs in zip(marks, blocks)])
    if not forces_semantic(poset, ONE, guard, space):
        raise PreconditionViolated(
            "the greatest element does not force the name into the marked sets")
    out = []
    for p, xs in zip(marks, blocks):
        found = None
        for q in poset.extensions(p):
            for x in sorted(xs, key=HF.key):
                if forces_semantic(poset, q,
                                   Eq(Cname(tau), Cname(check_name(x))),
                                   space):
                    found = (q, x)
                    break
            if found is not None:
                break
        if found is None:
            raise PreconditionViolated(
                f"no extension of {poset.condition_repr(p)} decides the name")
        out.append(found)
    return out
