"""First-order formulas with membership, equality, and bounded quantifiers.

Terms are variables or name constants.  Quantifiers carry one of three
bounds so that both satisfaction and the forcing relation stay decidable:

* ``InName(tau)``  - the variable ranges over the members of eval(tau);
* ``RankLE(k)``    - it ranges over the values of all ambient names of rank
  at most k;
* ``OrdLT(k)``     - it ranges over the von Neumann naturals below k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import InvalidInput
from .names import PName


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Cname:
    """A name constant."""

    name: PName


Term = Union[Var, Cname]


@dataclass(frozen=True)
class Member:
    left: Term
    right: Term


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class InName:
    name: PName


@dataclass(frozen=True)
class RankLE:
    bound: int


@dataclass(frozen=True)
class OrdLT:
    bound: int


Bound = Union[InName, RankLE, OrdLT]


@dataclass(frozen=True)
class Exists:
    var: str
    bound: Bound
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    bound: Bound
    body: "Formula"


Formula = Union[Member, Eq, Not, And, Or, Implies, Exists, Forall]


def conj(parts: list) -> "Formula":
    if not parts:
        raise InvalidInput("empty conjunction")
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: list) -> "Formula":
    if not parts:
        raise InvalidInput("empty disjunction")
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def free_vars(phi: Formula) -> frozenset[str]:
    if isinstance(phi, (Member, Eq)):
        out = set()
        for t in (phi.left, phi.right):
            if isinstance(t, Var):
                out.add(t.name)
        return frozenset(out)
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - {phi.var}
    raise InvalidInput(f"not a formula: {phi!r}")


def is_closed(phi: Formula) -> bool:
    return not free_vars(phi)


def subst(phi: Formula, var: str, name: PName) -> Formula:
    """Substitute a name constant for every free occurrence of a variable."""

    def sub_term(t: Term) -> Term:
        if isinstance(t, Var) and t.name == var:
            return Cname(name)
        return t

    if isinstance(phi, Member):
        return Member(sub_term(phi.left), sub_term(phi.right))
    if isinstance(phi, Eq):
        return Eq(sub_term(phi.left), sub_term(phi.right))
    if isinstance(phi, Not):
        return Not(subst(phi.body, var, name))
    if isinstance(phi, And):
        return And(subst(phi.left, var, name), subst(phi.right, var, name))
    if isinstance(phi, Or):
        return Or(subst(phi.left, var, name), subst(phi.right, var, name))
    if isinstance(phi, Implies):
        return Implies(subst(phi.left, var, name), subst(phi.right, var, name))
    if isinstance(phi, (Exists, Forall)):
        if phi.var == var:
            return phi
        cls = type(phi)
        return cls(phi.var, phi.bound, subst(phi.body, var, name))
    raise InvalidInput(f"not a formula: {phi!r}")


def constants(phi: Formula) -> frozenset[PName]:
    """All name constants appearing in a formula (atoms and bounds)."""
    if isinstance(phi, (Member, Eq)):
        return frozenset(t.name for t in (phi.left, phi.right)
                         if isinstance(t, Cname))
    if isinstance(phi, Not):
        return constants(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return constants(phi.left) | constants(phi.right)
    if isinstance(phi, (Exists, Forall)):
        inner = constants(phi.body)
        if isinstance(phi.bound, InName):
            inner = inner | {phi.bound.name}
        return inner
    raise InvalidInput(f"not a formula: {phi!r}")


def single_free_var(phi: Formula) -> str:
    fv = free_vars(phi)
    if len(fv) != 1:
        raise InvalidInput(f"expected exactly one free variable, got {sorted(fv)}")
    return next(iter(fv))
