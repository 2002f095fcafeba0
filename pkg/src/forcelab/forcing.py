"""The forcing relation over finite posets, decided two independent ways.

The semantic route quantifies over the finitely many generic filters of a
finite poset (one per minimal condition) and checks plain satisfaction of
the formula over evaluated names.  The syntactic route recurses on names and
formulas: the existential clause is

    p forces exists-x phi(x)  iff  for all q <= p there are r <= q and a
    name tau in the bounded range with r forces phi(tau),

and the atomic clauses are the usual rank recursion for membership and
equality.  The two routes agree on finite posets; the test suite checks the
agreement formula by formula.
"""

from __future__ import annotations

import itertools
from typing import Optional, Sequence

from .errors import InvalidInput, NotMaximalBelow, PreconditionViolated
from .formulas import (
    And, Cname, Eq, Exists, Forall, Formula, Implies, InName, Member, Not,
    Or, OrdLT, RankLE, Var, is_closed, single_free_var, subst,
)
from .hf import HF, nat
from .names import (
    PName, check_name, eval_name, hereditary_closure, pname,
    union_name,
)
from .posets import Filter, ONE, Poset


class NameSpace:
    """A finite, child-closed universe of names over a poset.

    The universe is the hereditary closure of the base names together with
    every name of rank at most ``rank_bound`` assembled in one layer from
    that closure: all sets of (condition, child) entries with children drawn
    from closure members of smaller rank.  Assembled entries use the ONE
    sentinel in place of the poset's top.
    """

    def __init__(self, poset: Poset, base_names: Sequence[PName],
                 rank_bound: int, max_universe: int = 1 << 17):
        if rank_bound < 0:
            raise InvalidInput("rank bound must be nonnegative")
        self.poset = poset
        self.base_names = tuple(base_names)
        self.rank_bound = rank_bound
        closure = hereditary_closure(self.base_names)
        eligible = [s for s in closure if s.rank < rank_bound]
        pool = [ONE] + [c for c in poset.conditions() if c != poset.top]
        pairs = [(c, s) for c in pool for s in eligible]
        if len(pairs) > 24 or 2 ** len(pairs) > max_universe:
            raise InvalidInput(
                f"name space too large: 2^{len(pairs)} assembled names")
        assembled = set()
        for k in range(len(pairs) + 1):
            for combo in itertools.combinations(pairs, k):
                assembled.add(pname(combo))
        universe = set(closure) | assembled
        self.universe: tuple[PName, ...] = tuple(sorted(universe, key=PName.key))
        self._members = frozenset(universe)

    def __contains__(self, name: PName) -> bool:
        return name in self._members

    def __len__(self) -> int:
        return len(self.universe)

    def names_of_rank_le(self, k: int) -> tuple[PName, ...]:
        return tuple(n for n in self.universe if n.rank <= k)


# ---------------------------------------------------------------------------
# semantic route


class _Forcer:
    """Shared per-(poset, name space) state: generic filters and memo
    tables for both routes."""

    def __init__(self, poset: Poset, space: Optional[NameSpace]):
        self.poset = poset
        self.space = space
        self._filters: dict[object, Filter] = {}
        self._sat_memo: dict = {}
        self._syn_memo: dict = {}
        self._minimals = poset.minimal_conditions()
        self._conds = poset.conditions()

    def filter_at(self, a) -> Filter:
        f = self._filters.get(a)
        if f is None:
            f = Filter(self.poset,
                       (q for q in self._conds if self.poset.le(a, q)))
            self._filters[a] = f
        return f

    def minimals_below(self, p):
        p = self.poset.resolve(p)
        return [a for a in self._minimals if self.poset.le(a, p)]

    def rank_range(self, k: int) -> tuple[PName, ...]:
        if self.space is None:
            raise InvalidInput(
                "a rank-bounded quantifier needs an ambient name space")
        return self.space.names_of_rank_le(k)

    # -- satisfaction -------------------------------------------------------

    def sat(self, phi: Formula, filt: Filter, env: tuple) -> bool:
        key = (phi, filt, env)
        hit = self._sat_memo.get(key)
        if hit is not None:
            return hit
        out = self._sat(phi, filt, env)
        self._sat_memo[key] = out
        return out

    def _value(self, term, filt: Filter, env: tuple) -> HF:
        if isinstance(term, Var):
            for v, x in env:
                if v == term.name:
                    return x
            raise InvalidInput(f"unbound variable {term.name}")
        return eval_name(term.name, filt)

    def _sat(self, phi: Formula, filt: Filter, env: tuple) -> bool:
        if isinstance(phi, Member):
            return self._value(phi.left, filt, env) in \
                self._value(phi.right, filt, env)
        if isinstance(phi, Eq):
            return self._value(phi.left, filt, env) == \
                self._value(phi.right, filt, env)
        if isinstance(phi, Not):
            return not self.sat(phi.body, filt, env)
        if isinstance(phi, And):
            return self.sat(phi.left, filt, env) and \
                self.sat(phi.right, filt, env)
        if isinstance(phi, Or):
            return self.sat(phi.left, filt, env) or \
                self.sat(phi.right, filt, env)
        if isinstance(phi, Implies):
            return (not self.sat(phi.left, filt, env)) or \
                self.sat(phi.right, filt, env)
        if isinstance(phi, (Exists, Forall)):
            values = self._bound_values(phi.bound, filt)
            results = (
                self.sat(phi.body, filt, env + ((phi.var, v),))
                for v in values)
            if isinstance(phi, Exists):
                return any(results)
            return all(results)
        raise InvalidInput(f"not a formula: {phi!r}")

    def _bound_values(self, bound, filt: Filter) -> list[HF]:
        if isinstance(bound, InName):
            return sorted(eval_name(bound.name, filt).members, key=HF.key)
        if isinstance(bound, RankLE):
            values = {eval_name(s, filt) for s in self.rank_range(bound.bound)}
            return sorted(values, key=HF.key)
        if isinstance(bound, OrdLT):
            return [nat(i) for i in range(bound.bound)]
        raise InvalidInput(f"not a quantifier bound: {bound!r}")

    # -- syntactic route ----------------------------------------------------

    def forces_syn(self, p, phi: Formula) -> bool:
        p = self.poset.resolve(p)
        key = (p, phi)
        hit = self._syn_memo.get(key)
        if hit is not None:
            return hit
        out = self._forces_syn(p, phi)
        self._syn_memo[key] = out
        return out

    def _exts(self, p):
        return [q for q in self._conds if self.poset.le(q, p)]

    def _forces_syn(self, p, phi: Formula) -> bool:
        P = self.poset
        if isinstance(phi, Eq):
            t1, t2 = _const(phi.left), _const(phi.right)
            return self._forces_subset(p, t1, t2) and \
                self._forces_subset(p, t2, t1)
        if isinstance(phi, Member):
            t1, t2 = _const(phi.left), _const(phi.right)
            return all(
                any(
                    P.le_r(r, s) and self.forces_syn(r, Eq(Cname(t1), Cname(sig)))
                    for r in self._exts(q)
                    for s, sig in t2.sorted_entries())
                for q in self._exts(p))
        if isinstance(phi, Not):
            return all(not self.forces_syn(q, phi.body) for q in self._exts(p))
        if isinstance(phi, And):
            return self.forces_syn(p, phi.left) and \
                self.forces_syn(p, phi.right)
        if isinstance(phi, Or):
            return all(
                any(self.forces_syn(r, phi.left) or self.forces_syn(r, phi.right)
                    for r in self._exts(q))
                for q in self._exts(p))
        if isinstance(phi, Implies):
            return all(
                any(self.forces_syn(r, phi.right) for r in self._exts(q))
                for q in self._exts(p)
                if self.forces_syn(q, phi.left))
        if isinstance(phi, Exists):
            return all(
                any(self.forces_syn(r, body)
                    for r, body in self._exists_witnesses(q, phi))
                for q in self._exts(p))
        if isinstance(phi, Forall):
            return self._forces_forall(p, phi)
        raise InvalidInput(f"not a formula: {phi!r}")

    def _forces_subset(self, p, t1: PName, t2: PName) -> bool:
        # p forces t1 to be a subset of t2
        for s, sig in t1.sorted_entries():
            for q in self._exts(p):
                if self.poset.le_r(q, s) and \
                        not self.forces_syn(q, Member(Cname(sig), Cname(t2))):
                    return False
        return True

    def _exists_witnesses(self, q, phi: Exists):
        bound, var, body = phi.bound, phi.var, phi.body
        if isinstance(bound, InName):
            for s, sig in bound.name.sorted_entries():
                for r in self._exts(q):
                    if self.poset.le_r(r, s):
                        yield r, subst(body, var, sig)
        elif isinstance(bound, RankLE):
            for sig in self.rank_range(bound.bound):
                sub = subst(body, var, sig)
                for r in self._exts(q):
                    yield r, sub
        elif isinstance(bound, OrdLT):
            for i in range(bound.bound):
                sub = subst(body, var, check_name(nat(i)))
                for r in self._exts(q):
                    yield r, sub
        else:
            raise InvalidInput(f"not a quantifier bound: {bound!r}")

    def _forces_forall(self, p, phi: Forall) -> bool:
        bound, var, body = phi.bound, phi.var, phi.body
        if isinstance(bound, InName):
            for s, sig in bound.name.sorted_entries():
                sub = subst(body, var, sig)
                for q in self._exts(p):
                    if self.poset.le_r(q, s) and not self.forces_syn(q, sub):
                        return False
            return True
        if isinstance(bound, RankLE):
            return all(self.forces_syn(p, subst(body, var, sig))
                       for sig in self.rank_range(bound.bound))
        if isinstance(bound, OrdLT):
            return all(self.forces_syn(p, subst(body, var, check_name(nat(i))))
                       for i in range(bound.bound))
        raise InvalidInput(f"not a quantifier bound: {bound!r}")


def _const(term) -> PName:
    if not isinstance(term, Cname):
        raise InvalidInput("forcing needs a closed formula")
    return term.name


_FORCERS: dict[tuple[int, int], _Forcer] = {}


def _forcer(poset: Poset, space: Optional[NameSpace]) -> _Forcer:
    key = (id(poset), id(space))
    f = _FORCERS.get(key)
    if f is None:
        f = _Forcer(poset, space)
        _FORCERS[key] = f
    return f


def clear_forcing_caches() -> None:
    _FORCERS.clear()


def forces_semantic(poset: Poset, p, phi: Formula,
                    space: Optional[NameSpace] = None) -> bool:
    """p forces phi: phi holds along every generic filter containing p."""
    if not is_closed(phi):
        raise InvalidInput("forcing needs a closed formula")
    f = _forcer(poset, space)
    p = poset.resolve(p)
    poset.ensure_condition(p)
    return all(f.sat(phi, f.filter_at(a), ()) for a in f.minimals_below(p))


def forces_syntactic(poset: Poset, p, phi: Formula,
                     space: Optional[NameSpace] = None) -> bool:
    """The recursive forcing relation; agrees with the semantic route."""
    if not is_closed(phi):
        raise InvalidInput("forcing needs a closed formula")
    f = _forcer(poset, space)
    p = poset.resolve(p)
    poset.ensure_condition(p)
    return f.forces_syn(p, phi)


def holds_along(poset: Poset, filt: Filter, phi: Formula,
                space: Optional[NameSpace] = None) -> bool:
    """Plain satisfaction of a closed formula along one filter."""
    if not is_closed(phi):
        raise InvalidInput("satisfaction needs a closed formula")
    return _forcer(poset, space).sat(phi, filt, ())


# ---------------------------------------------------------------------------
# mixing and the maximum principle


def mix(poset: Poset, p, antichain: Sequence, assignment: dict) -> PName:
    """Mix names along a maximal antichain below p: the result evaluates,
    along any generic filter containing p, to the value of the name attached
    to the unique antichain member in the filter.
    """
    p = poset.resolve(p)
    poset.ensure_condition(p)
    members = [poset.resolve(r) for r in antichain]
    if not members:
        raise NotMaximalBelow("empty antichain")
    for r in members:
        poset.ensure_condition(r)
        if not poset.le(r, p):
            raise NotMaximalBelow(
                f"{poset.condition_repr(r)} does not extend "
                f"{poset.condition_repr(p)}")
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if members[i] == members[j] or \
                    poset.compatible(members[i], members[j]):
                raise NotMaximalBelow("antichain members are compatible")
    exts = [q for q in poset.conditions() if poset.le(q, p)]
    for q in exts:
        if not any(poset.compatible(q, r) for r in members):
            raise NotMaximalBelow(
                f"nothing in the antichain is compatible with "
                f"{poset.condition_repr(q)}")
    missing = [r for r in members if r not in assignment]
    if missing:
        raise InvalidInput("every antichain member needs an assigned name")
    entries = []
    for r in members:
        tau = assignment[r]
        for q, sigma in tau.sorted_entries():
            for s in poset.conditions():
                if poset.le(s, r) and poset.le_r(s, q):
                    entries.append((s, sigma))
    return pname(entries)


def least_ordinal_name(poset: Poset, p, kappa: int, theta: Formula,
                       space: Optional[NameSpace] = None) -> PName:
    """The name for the least ordinal below kappa satisfying theta.

    Entries are (q, beta-check) for every q extending p that forces the
    failure of theta at every ordinal up to beta; along any generic filter
    containing p the name evaluates to the least ordinal satisfying theta.
    """
    p = poset.resolve(p)
    poset.ensure_condition(p)
    if kappa < 1:
        raise InvalidInput("kappa must be at least 1")
    var = single_free_var(theta)
    exists = Exists(var, OrdLT(kappa), theta)
    if not forces_semantic(poset, p, exists, space):
        raise PreconditionViolated(
            "the condition does not force an ordinal witness below kappa")
    rejects = {}
    for q in poset.extensions(p):
        rejects[q] = [
            forces_semantic(poset, q,
                            Not(subst(theta, var, check_name(nat(g)))), space)
            for g in range(kappa)]
    entries = []
    for q in poset.extensions(p):
        for beta in range(kappa):
            if all(rejects[q][g] for g in range(beta + 1)):
                entries.append((q, check_name(nat(beta))))
    return pname(entries)


def mp_witness_search(poset: Poset, p, theta: Formula,
                      space: NameSpace) -> Optional[PName]:
    """First name in the space's canonical order (rank, then encoding)
    that p forces to satisfy theta; None when there is none."""
    p = poset.resolve(p)
    poset.ensure_condition(p)
    var = single_free_var(theta)
    for tau in space.universe:
        if forces_semantic(poset, p, subst(theta, var, tau), space):
            return tau
    return None


def indexed_witness_name(poset: Poset, p, candidates: Sequence[PName],
                         theta: Formula,
                         space: Optional[NameSpace] = None) -> tuple[PName, PName]:
    """Collapse an indexed list of candidate witnesses into a single one.

    The singleton name rho holds (q, tau_alpha) whenever q forces theta at
    candidate alpha and forces its failure at every earlier candidate; the
    union-collapse of rho removes the enclosing braces.  Returns (rho, tau).
    Requires that below every extension of p some condition forces theta at
    some candidate.
    """
    p = poset.resolve(p)
    poset.ensure_condition(p)
    var = single_free_var(theta)
    accepts = {}
    rejects = {}
    for q in poset.extensions(p):
        for alpha, tau in enumerate(candidates):
            accepts[(q, alpha)] = forces_semantic(
                poset, q, subst(theta, var, tau), space)
            rejects[(q, alpha)] = forces_semantic(
                poset, q, Not(subst(theta, var, tau)), space)
    for q in poset.extensions(p):
        if not any(accepts[(r, alpha)]
                   for r in poset.extensions(q)
                   for alpha in range(len(candidates))):
            raise PreconditionViolated(
                "no extension forces theta at any candidate below "
                f"{poset.condition_repr(q)}")
    entries = []
    for q in poset.extensions(p):
        for alpha, tau in enumerate(candidates):
            if accepts[(q, alpha)] and \
                    all(rejects[(q, beta)] for beta in range(alpha)):
                entries.append((q, tau))
    rho = pname(entries)
    return rho, union_name(poset, rho)
