"""Names over a forcing poset and their evaluation along filters.

A name is a finite, well-founded set of (condition, name) entries.  Names are
immutable and structurally hashable, compare by a canonical key (rank first),
and evaluate to hereditarily finite sets:

    eval(tau, G) = { eval(sigma, G) : (p, sigma) in tau, p in G }.

Check-names, the filter name, and pair names use the :data:`ONE` sentinel as
their condition, which every filter contains and every poset resolves to its
own greatest element, so those constructors need no poset argument.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

from .errors import InvalidInput
from .hf import HF, EMPTY as HF_EMPTY
from .posets import ONE, Poset, canon_key


class PName:
    """An immutable name: a finite set of (condition, name) entries."""

    __slots__ = ("entries", "rank", "_hash", "_key")

    def __init__(self, entries: Iterable[tuple[object, "PName"]] = ()):
        es = frozenset(entries)
        for entry in es:
            if not (isinstance(entry, tuple) and len(entry) == 2
                    and isinstance(entry[1], PName)):
                raise InvalidInput("name entries must be (condition, name) pairs")
        self.entries = es
        self.rank = 1 + max((child.rank for _, child in es), default=-1)
        self._hash = hash(es)
        self._key: tuple | None = None

    def key(self) -> tuple:
        """Canonical sort key: (rank, size, sorted entry keys)."""
        if self._key is None:
            self._key = (
                self.rank,
                len(self.entries),
                tuple(sorted((canon_key(c), child.key())
                             for c, child in self.entries)),
            )
        return self._key

    def sorted_entries(self) -> tuple:
        return tuple(sorted(self.entries,
                            key=lambda e: (canon_key(e[0]), e[1].key())))

    def children(self) -> tuple:
        return tuple(sorted({child for _, child in self.entries},
                            key=PName.key))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, PName) and self.entries == other.entries

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        if not self.entries:
            return "name{}"
        parts = ",".join(f"({c!r},{child!r})"
                         for c, child in self.sorted_entries())
        return "name{" + parts + "}"


EMPTY_NAME = PName()


def pname(entries: Iterable[tuple[object, PName]]) -> PName:
    return PName(entries)


def hereditary_closure(names: Iterable[PName]) -> list[PName]:
    """All names reachable through entries, the inputs included, sorted."""
    seen: set[PName] = set()
    stack = list(names)
    while stack:
        n = stack.pop()
        if n in seen:
            continue
        seen.add(n)
        stack.extend(child for _, child in n.entries)
    return sorted(seen, key=PName.key)


_CHECKS: dict[HF, PName] = {}


def check_name(x: HF) -> PName:
    """The canonical name that evaluates to x along every filter."""
    cached = _CHECKS.get(x)
    if cached is None:
        cached = PName((ONE, check_name(y)) for y in x.members)
        _CHECKS[x] = cached
    return cached


def gamma_name(poset: Poset) -> PName:
    """The filter name: evaluates to the generic filter, conditions encoded
    as sets."""
    return PName((p, check_name(poset.condition_hf(p)))
                 for p in poset.conditions())


def unordered_pair_name(tau1: PName, tau2: PName) -> PName:
    return PName(((ONE, tau1), (ONE, tau2)))


def ordered_pair_name(tau1: PName, tau2: PName) -> PName:
    return PName((
        (ONE, unordered_pair_name(tau1, tau1)),
        (ONE, unordered_pair_name(tau1, tau2)),
    ))


def pair_names(tau1: PName, tau2: PName) -> tuple[PName, PName]:
    """The unordered and ordered (Kuratowski) pair names."""
    return unordered_pair_name(tau1, tau2), ordered_pair_name(tau1, tau2)


_EVAL_CACHE: dict[tuple, HF] = {}


def eval_name(tau: PName, filt) -> HF:
    """Evaluate a name along a filter (any object supporting ``in``)."""
    key = (tau, filt)
    cached = _EVAL_CACHE.get(key)
    if cached is None:
        cached = HF(eval_name(child, filt)
                    for cond, child in tau.entries if cond in filt)
        _EVAL_CACHE[key] = cached
    return cached


def clear_eval_cache() -> None:
    _EVAL_CACHE.clear()


def name_hf(tau: PName, cond_hf: Optional[Callable[[object], HF]] = None) -> HF:
    """Encode a name itself as a hereditarily finite set of Kuratowski
    (condition, name) pairs.  By default only the ONE sentinel is accepted
    as a condition and encodes as the empty set (the trivial condition of a
    partial-function poset)."""
    from .hf import kuratowski

    def default(cond) -> HF:
        if cond is ONE:
            return HF_EMPTY
        raise InvalidInput(
            "name_hf needs an encoder for conditions other than 1")

    enc = cond_hf or default
    return HF(kuratowski(enc(cond), name_hf(child, cond_hf))
              for cond, child in tau.entries)


def union_name(poset: Poset, rho: PName) -> PName:
    """The union-collapse of a name of names: entries (s, sigma2) for every
    outer entry (q1, sigma1), inner entry (q2, sigma2), and condition s
    extending both q1 and q2."""
    entries = []
    for q1, sigma1 in rho.entries:
        for q2, sigma2 in sigma1.entries:
            for s in poset.conditions():
                if poset.le_r(s, q1) and poset.le_r(s, q2):
                    entries.append((s, sigma2))
    return PName(entries)


def name_conditions(tau: PName) -> set:
    """All conditions appearing hereditarily in a name."""
    out: set = set()
    for n in hereditary_closure([tau]):
        out.update(cond for cond, _ in n.entries)
    return out
