"""Forcing posets, antichains, density, and generic filters.

Conventions used throughout the package:

* smaller is stronger: ``le(p, q)`` means condition p extends condition q;
* every poset that is used for forcing has a greatest element ``top``;
* generated families (partial-function posets, the level poset over a family
  of sets, binary trees) stand for infinite posets.  Order and compatibility
  are decided exactly for arbitrary finite conditions, but any operation that
  must enumerate conditions consults a declared finite truncation and raises
  :class:`TruncationEscape` when there is none or when an input lies outside
  it.  Within its truncation each answer is exact for the truncated poset.

The name-entry sentinel :data:`ONE` stands for "the greatest element" in a
poset-independent way, so check-names built from pure sets need no poset.
Every consumer resolves it to the ambient poset's top.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidInput,
    TruncationEscape,
    UnknownCondition,
)
from .hf import HF, from_int_set, kuratowski, nat, render


class _TopSentinel:
    """Poset-independent stand-in for the greatest element of any poset."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1"


ONE = _TopSentinel()


def canon_key(obj) -> tuple:
    """Total order key over every condition representation in the package."""
    if obj is ONE:
        return (0,)
    if isinstance(obj, bool):
        return (1, int(obj))
    if isinstance(obj, int):
        return (1, obj)
    if isinstance(obj, str):
        return (2, obj)
    if isinstance(obj, HF):
        return (3, obj.key())
    if isinstance(obj, tuple):
        return (4, len(obj), tuple(canon_key(x) for x in obj))
    if isinstance(obj, frozenset):
        return (5, len(obj), tuple(sorted(canon_key(x) for x in obj)))
    raise TypeError(f"no canonical key for {type(obj).__name__}")


class Poset:
    """Kernel interface: condition validity, order, compatibility, bounded
    enumeration, and canonical encodings."""

    kind = "abstract"
    top = None  # type: object | None

    # -- structure ---------------------------------------------------------

    def is_condition(self, c) -> bool:
        raise NotImplementedError

    def le(self, p, q) -> bool:
        """p extends q."""
        raise NotImplementedError

    def compatible(self, p, q) -> bool:
        """Some condition extends both p and q."""
        raise NotImplementedError

    def conditions(self) -> tuple:
        """All conditions inside the truncation, canonically sorted."""
        raise NotImplementedError

    # -- truncation --------------------------------------------------------

    def in_truncation(self, c) -> bool:
        return True

    def condition_level(self, c) -> int:
        """Depth measure used by nontriviality and density cutoffs."""
        return 0

    # -- encodings ---------------------------------------------------------

    def condition_hf(self, c) -> HF:
        raise NotImplementedError

    def condition_repr(self, c) -> str:
        raise NotImplementedError

    # -- helpers -----------------------------------------------------------

    def resolve(self, c):
        """Map the ONE sentinel to this poset's top."""
        if c is ONE:
            if self.top is None:
                raise InvalidInput(f"{self.kind} poset has no greatest element")
            return self.top
        return c

    def le_r(self, p, q) -> bool:
        """le with ONE resolved on either side."""
        if q is ONE:
            return True
        return self.le(self.resolve(p), self.resolve(q))

    def ensure_condition(self, c) -> None:
        if c is ONE:
            self.resolve(c)
            return
        if not self.is_condition(c):
            raise UnknownCondition(
                f"not a condition of this {self.kind} poset: {c!r}")

    def ensure_truncated(self, *cs) -> None:
        for c in cs:
            if c is ONE:
                continue
            if not self.in_truncation(c):
                raise TruncationEscape(
                    f"condition lies outside the declared truncation: "
                    f"{self.condition_repr(c)}")

    def condition_key(self, c) -> tuple:
        return canon_key(c)

    def extensions(self, p) -> tuple:
        """Conditions extending p, within the truncation."""
        p = self.resolve(p)
        self.ensure_condition(p)
        self.ensure_truncated(p)
        return tuple(q for q in self.conditions() if self.le(q, p))

    def minimal_conditions(self) -> tuple:
        """Conditions with no proper extension inside the truncation."""
        conds = self.conditions()
        out = []
        for c in conds:
            if all(not self.le(d, c) or d == c for d in conds):
                out.append(c)
        return tuple(out)


# ---------------------------------------------------------------------------
# explicit finite posets


class ExplicitPoset(Poset):
    """A finite poset given by an element list and generating order pairs.

    The order is the reflexive transitive closure of the given pairs; the
    element list order fixes the canonical encoding of each element.
    """

    kind = "explicit"

    def __init__(self, elements: Sequence[str], order: Iterable[tuple[str, str]],
                 top: Optional[str] = None):
        elements = list(elements)
        if len(set(elements)) != len(elements):
            raise InvalidInput("duplicate elements in explicit poset")
        if not elements:
            raise InvalidInput("explicit poset needs at least one element")
        self._elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(elements)}
        below = {e: {e} for e in elements}  # below[q] = {p : p <= q} seeds
        pairs = list(order)
        for a, b in pairs:
            if a not in self._index or b not in self._index:
                raise InvalidInput(f"order pair uses unknown element: {a} < {b}")
        # transitive closure: le[p][q] true iff p reaches q through pairs
        reach = {e: {e} for e in elements}
        for a, b in pairs:
            reach[a].add(b)
        changed = True
        while changed:
            changed = False
            for e in elements:
                extra = set()
                for f in reach[e]:
                    extra |= reach[f]
                if not extra <= reach[e]:
                    reach[e] |= extra
                    changed = True
        for a in elements:
            for b in elements:
                if a != b and b in reach[a] and a in reach[b]:
                    raise InvalidInput(f"order is not antisymmetric: {a}, {b}")
        self._reach = reach
        if top is None:
            maxima = [e for e in elements
                      if all(e in reach[f] for f in elements)]
            if len(maxima) != 1:
                raise InvalidInput("explicit poset requires a greatest element")
            top = maxima[0]
        else:
            if top not in self._index:
                raise InvalidInput(f"unknown top element {top!r}")
            if not all(top in reach[f] for f in elements):
                raise InvalidInput(f"{top!r} is not above every element")
        self.top = top

    def is_condition(self, c) -> bool:
        return isinstance(c, str) and c in self._index

    def le(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return q in self._reach[p]

    def compatible(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return any(self.le(r, p) and self.le(r, q) for r in self._elements)

    def conditions(self) -> tuple:
        return tuple(sorted(self._elements, key=self.condition_key))

    def condition_hf(self, c) -> HF:
        self.ensure_condition(c)
        return nat(self._index[c])

    def condition_repr(self, c) -> str:
        return c

    def condition_key(self, c) -> tuple:
        return (self._index[c],)


class FlatPoset(ExplicitPoset):
    """The flat poset over a family: one condition per block label, all
    incomparable, plus a greatest element."""

    kind = "flat"

    def __init__(self, family: "Family"):
        self.family = family
        labels = family.labels
        super().__init__(
            elements=list(labels) + ["1"],
            order=[(lab, "1") for lab in labels],
            top="1",
        )


# ---------------------------------------------------------------------------
# families of sets and the level poset used for the antichain correspondence


class Family:
    """A finite family of finite, nonempty, pairwise disjoint sets."""

    def __init__(self, blocks: Iterable[tuple[str, Iterable[HF]]]):
        labels = []
        sets = []
        for label, values in blocks:
            if label == "1":
                raise InvalidInput('"1" is reserved and cannot label a block')
            vs = frozenset(values)
            if not vs:
                raise InvalidInput(f"block {label!r} is empty")
            labels.append(label)
            sets.append(vs)
        if len(set(labels)) != len(labels):
            raise InvalidInput("duplicate block labels")
        if not labels:
            raise InvalidInput("family needs at least one block")
        for i in range(len(sets)):
            for j in range(i + 1, len(sets)):
                if sets[i] & sets[j]:
                    raise InvalidInput(
                        f"blocks {labels[i]!r} and {labels[j]!r} overlap")
        self.labels: tuple[str, ...] = tuple(labels)
        self.blocks: dict[str, frozenset[HF]] = dict(zip(labels, sets))
        self._block_of: dict[HF, str] = {}
        for label, vs in self.blocks.items():
            for v in vs:
                self._block_of[v] = label

    def block_of(self, x: HF) -> Optional[str]:
        return self._block_of.get(x)

    def block_hf(self, label: str) -> HF:
        return HF(self.blocks[label])

    def sorted_block(self, label: str) -> tuple[HF, ...]:
        return tuple(sorted(self.blocks[label], key=HF.key))

    def __repr__(self):
        parts = ", ".join(
            f"{lab}: {{{','.join(render(v) for v in self.sorted_block(lab))}}}"
            for lab in self.labels)
        return f"Family({parts})"


class ChoicePoset(Poset):
    """Levels-by-blocks poset: conditions are (level, x) with x in some block;
    (n, x) properly extends (m, y) iff n > m and x, y share a block.

    There is no greatest element.  Compatibility is exactly "same block",
    since two conditions over one block always share a deeper extension.
    """

    kind = "choice"
    top = None

    def __init__(self, family: Family, level_bound: Optional[int] = None):
        if level_bound is not None and level_bound < 1:
            raise InvalidInput("level bound must be at least 1")
        self.family = family
        self.level_bound = level_bound

    def is_condition(self, c) -> bool:
        return (
            isinstance(c, tuple) and len(c) == 2
            and isinstance(c[0], int) and c[0] >= 0
            and isinstance(c[1], HF)
            and self.family.block_of(c[1]) is not None
        )

    def le(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        if p == q:
            return True
        (n, x), (m, y) = p, q
        return n > m and self.family.block_of(x) == self.family.block_of(y)

    def compatible(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return p == q or self.family.block_of(p[1]) == self.family.block_of(q[1])

    def in_truncation(self, c) -> bool:
        return self.level_bound is not None and c[0] < self.level_bound

    def condition_level(self, c) -> int:
        return c[0]

    def conditions(self) -> tuple:
        if self.level_bound is None:
            raise TruncationEscape("choice poset has no declared level bound")
        out = []
        for n in range(self.level_bound):
            for label in self.family.labels:
                for x in self.family.sorted_block(label):
                    out.append((n, x))
        return tuple(sorted(out, key=self.condition_key))

    def condition_hf(self, c) -> HF:
        return kuratowski(nat(c[0]), c[1])

    def condition_repr(self, c) -> str:
        return f"({c[0]},{render(c[1])})"

    def condition_key(self, c) -> tuple:
        return (c[0], c[1].key())


# ---------------------------------------------------------------------------
# partial-function posets (reverse inclusion)


def _is_function(pairs: frozenset) -> bool:
    seen = {}
    for u, v in pairs:
        if u in seen and seen[u] != v:
            return False
        seen[u] = v
    return True


def _is_injective(pairs: frozenset) -> bool:
    vals = {}
    for u, v in pairs:
        if v in vals and vals[v] != u:
            return False
        vals[v] = u
    return True


class MapPoset(Poset):
    """Finite partial maps ordered by reverse inclusion.

    ``dom_items`` / ``cod_items`` of None mean the naturals; an explicit
    tuple means both the universe of valid items and the truncation window.
    ``dom_window`` / ``cod_window`` restrict enumeration when the universe
    itself is infinite.
    """

    kind = "fn"
    injective = False
    top = frozenset()

    def __init__(self, dom_items=None, cod_items=None,
                 dom_window=None, cod_window=None):
        self.dom_items = tuple(dom_items) if dom_items is not None else None
        self.cod_items = tuple(cod_items) if cod_items is not None else None
        self.dom_window = (
            tuple(dom_window) if dom_window is not None else self.dom_items)
        self.cod_window = (
            tuple(cod_window) if cod_window is not None else self.cod_items)
        self._conds = None

    def _valid_item(self, x, items) -> bool:
        if items is None:
            return isinstance(x, int) and x >= 0
        return x in items

    def is_condition(self, c) -> bool:
        if not isinstance(c, frozenset):
            return False
        for entry in c:
            if not (isinstance(entry, tuple) and len(entry) == 2):
                return False
            u, v = entry
            if not self._valid_item(u, self.dom_items):
                return False
            if not self._valid_item(v, self.cod_items):
                return False
        if not _is_function(c):
            return False
        if self.injective and not _is_injective(c):
            return False
        return True

    def le(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return p >= q

    def compatible(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        union = p | q
        if not _is_function(union):
            return False
        if self.injective and not _is_injective(union):
            return False
        return True

    def in_truncation(self, c) -> bool:
        if self.dom_window is None or self.cod_window is None:
            return False
        return all(u in self.dom_window and v in self.cod_window
                   for u, v in c)

    def condition_level(self, c) -> int:
        return len(c)

    def conditions(self) -> tuple:
        if self.dom_window is None or self.cod_window is None:
            raise TruncationEscape(
                f"{self.kind} poset has no declared truncation window")
        if self._conds is None:
            doms = sorted(self.dom_window, key=canon_key)
            cods = sorted(self.cod_window, key=canon_key)
            out = []
            for k in range(len(doms) + 1):
                for dom in itertools.combinations(doms, k):
                    for vals in itertools.product(cods, repeat=k):
                        if self.injective and len(set(vals)) != k:
                            continue
                        out.append(frozenset(zip(dom, vals)))
            self._conds = tuple(sorted(out, key=self.condition_key))
        return self._conds

    def _item_hf(self, x) -> HF:
        if isinstance(x, HF):
            return x
        if isinstance(x, int):
            return nat(x)
        if isinstance(x, frozenset):
            return from_int_set(x)
        raise InvalidInput(f"cannot encode item {x!r} as a set")

    def condition_hf(self, c) -> HF:
        self.ensure_condition(c)
        return HF(kuratowski(self._item_hf(u), self._item_hf(v)) for u, v in c)

    def _item_repr(self, x) -> str:
        if isinstance(x, HF):
            return render(x)
        if isinstance(x, frozenset):
            return "{" + ",".join(str(v) for v in sorted(x)) + "}"
        return str(x)

    def condition_repr(self, c) -> str:
        pairs = sorted(c, key=canon_key)
        return "{" + ",".join(
            f"{self._item_repr(u)}->{self._item_repr(v)}" for u, v in pairs) + "}"

    def condition_key(self, c) -> tuple:
        return canon_key(c)


class InjPoset(MapPoset):
    """Finite injective partial maps ordered by reverse inclusion."""

    kind = "inj"
    injective = True


def fn_omega_omega(dom_bound: int, cod_bound: int) -> MapPoset:
    """Fn over the naturals, truncated to a dom_bound x cod_bound window."""
    return MapPoset(dom_window=range(dom_bound), cod_window=range(cod_bound))


def inj_omega_omega(dom_bound: int, cod_bound: int) -> InjPoset:
    """Inj over the naturals, truncated to a dom_bound x cod_bound window."""
    return InjPoset(dom_window=range(dom_bound), cod_window=range(cod_bound))


def fn_poset(dom_items, cod_items) -> MapPoset:
    """Finite partial functions between two concrete finite item sets."""
    return MapPoset(dom_items=dom_items, cod_items=cod_items)


class CohenGridPoset(MapPoset):
    """Finite partial 0/1 assignments on a cols x rows cell grid.

    Conditions are finite maps from (column, row) cells to bits; the grid
    dimensions are the truncation window of the untruncated cell poset.
    """

    kind = "cohen"
    injective = False

    def __init__(self, cols: int, rows: int):
        if cols < 1 or rows < 1:
            raise InvalidInput("grid needs at least one column and one row")
        self.cols = cols
        self.rows = rows
        cells = [(c, r) for c in range(cols) for r in range(rows)]
        super().__init__(dom_window=cells, cod_window=(0, 1))

    def is_condition(self, c) -> bool:
        if not isinstance(c, frozenset):
            return False
        for entry in c:
            if not (isinstance(entry, tuple) and len(entry) == 2):
                return False
            cell, bit = entry
            if not (isinstance(cell, tuple) and len(cell) == 2
                    and all(isinstance(t, int) and t >= 0 for t in cell)):
                return False
            if bit not in (0, 1):
                return False
        return _is_function(c)

    def condition_hf(self, c) -> HF:
        self.ensure_condition(c)
        return HF(
            kuratowski(kuratowski(nat(cell[0]), nat(cell[1])), nat(bit))
            for cell, bit in c)

    def condition_repr(self, c) -> str:
        pairs = sorted(c, key=canon_key)
        return "{" + ",".join(
            f"({cell[0]},{cell[1]})={bit}" for cell, bit in pairs) + "}"


class BinaryTreePoset(Poset):
    """Finite binary strings ordered by reverse extension; the empty string
    is the greatest element."""

    kind = "binary"
    top = ""

    def __init__(self, depth: int):
        if depth < 1:
            raise InvalidInput("depth must be at least 1")
        self.depth = depth

    def is_condition(self, c) -> bool:
        return isinstance(c, str) and all(ch in "01" for ch in c)

    def le(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return p.startswith(q)

    def compatible(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        return p.startswith(q) or q.startswith(p)

    def in_truncation(self, c) -> bool:
        return len(c) <= self.depth

    def condition_level(self, c) -> int:
        return len(c)

    def conditions(self) -> tuple:
        out = [""]
        for k in range(1, self.depth + 1):
            out.extend("".join(bits) for bits in itertools.product("01", repeat=k))
        return tuple(sorted(out, key=self.condition_key))

    def condition_hf(self, c) -> HF:
        return HF(kuratowski(nat(i), nat(int(b))) for i, b in enumerate(c))

    def condition_repr(self, c) -> str:
        return f"|{c}|"

    def condition_key(self, c) -> tuple:
        return (len(c), c)


class NontrivialFlatPoset(Poset):
    """Below a greatest element, one binary tree per label: conditions are
    (label, bitstring) with extension inside a label's tree only."""

    kind = "nontrivial-flat"
    top = "1"

    def __init__(self, labels: Sequence[str], depth: int):
        labels = tuple(labels)
        if not labels or len(set(labels)) != len(labels):
            raise InvalidInput("labels must be nonempty and distinct")
        if "1" in labels:
            raise InvalidInput('"1" is reserved for the greatest element')
        if depth < 1:
            raise InvalidInput("depth must be at least 1")
        self.labels = labels
        self.depth = depth

    def is_condition(self, c) -> bool:
        if c == "1":
            return True
        return (isinstance(c, tuple) and len(c) == 2 and c[0] in self.labels
                and isinstance(c[1], str) and all(ch in "01" for ch in c[1]))

    def le(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        if q == "1":
            return True
        if p == "1":
            return False
        return p[0] == q[0] and p[1].startswith(q[1])

    def compatible(self, p, q) -> bool:
        self.ensure_condition(p)
        self.ensure_condition(q)
        if p == "1" or q == "1":
            return True
        return p[0] == q[0] and (p[1].startswith(q[1]) or q[1].startswith(p[1]))

    def in_truncation(self, c) -> bool:
        return c == "1" or len(c[1]) <= self.depth

    def condition_level(self, c) -> int:
        return 0 if c == "1" else len(c[1]) + 1

    def conditions(self) -> tuple:
        out = ["1"]
        for label in self.labels:
            for k in range(self.depth + 1):
                out.extend((label, "".join(bits))
                           for bits in itertools.product("01", repeat=k))
        return tuple(sorted(out, key=self.condition_key))

    def condition_hf(self, c) -> HF:
        if c == "1":
            return nat(len(self.labels))
        idx = self.labels.index(c[0])
        bits = HF(kuratowski(nat(i), nat(int(b))) for i, b in enumerate(c[1]))
        return kuratowski(nat(idx), bits)

    def condition_repr(self, c) -> str:
        if c == "1":
            return "1"
        return f"({c[0]}|{c[1]})"

    def condition_key(self, c) -> tuple:
        if c == "1":
            return (0,)
        return (1, self.labels.index(c[0]), len(c[1]), c[1])


# ---------------------------------------------------------------------------
# filters


class Filter:
    """A finite, explicitly listed filter on a poset."""

    def __init__(self, poset: Poset, conditions: Iterable):
        self.poset = poset
        self.conditions = frozenset(conditions)
        self._key = (id(poset),
                     tuple(sorted(self.conditions, key=poset.condition_key)))

    def __contains__(self, c) -> bool:
        if c is ONE:
            return self.poset.top in self.conditions
        return c in self.conditions

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        return isinstance(other, Filter) and self._key == other._key

    def __repr__(self):
        items = ",".join(self.poset.condition_repr(c)
                         for c in sorted(self.conditions,
                                         key=self.poset.condition_key))
        return f"Filter({items})"

    def is_upward_closed(self) -> bool:
        return all(q in self.conditions
                   for p in self.conditions
                   for q in self.poset.conditions()
                   if self.poset.le(p, q))

    def is_directed(self) -> bool:
        return all(
            any(self.poset.le(r, p) and self.poset.le(r, q)
                for r in self.conditions)
            for p in self.conditions for q in self.conditions)

    def is_filter(self) -> bool:
        return bool(self.conditions) and self.is_upward_closed() and self.is_directed()


# ---------------------------------------------------------------------------
# module operations


def compatible(poset: Poset, p, q) -> bool:
    """Decide whether some condition extends both p and q."""
    poset.ensure_condition(poset.resolve(p))
    poset.ensure_condition(poset.resolve(q))
    return poset.compatible(poset.resolve(p), poset.resolve(q))


def is_antichain(poset: Poset, conditions: Iterable) -> bool:
    """Pairwise incompatibility of a finite set of conditions."""
    items = [poset.resolve(c) for c in conditions]
    for c in items:
        poset.ensure_condition(c)
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if items[i] == items[j] or poset.compatible(items[i], items[j]):
                return False
    return True


def is_maximal_antichain(poset: Poset, conditions: Iterable) -> bool:
    """Antichain that every condition is compatible with.

    For the choice poset this is the structural test "exactly one element
    per block"; for other finite (or truncated) posets it is an exhaustive
    compatibility check over the enumerated conditions.
    """
    items = [poset.resolve(c) for c in conditions]
    for c in items:
        poset.ensure_condition(c)
    if isinstance(poset, ChoicePoset):
        per_block = {label: 0 for label in poset.family.labels}
        if len(set(items)) != len(items):
            return False
        for (_, x) in items:
            per_block[poset.family.block_of(x)] += 1
        return all(count == 1 for count in per_block.values())
    poset.ensure_truncated(*items)
    if not is_antichain(poset, items):
        return False
    return all(any(poset.compatible(c, a) for a in items)
               for c in poset.conditions())


def is_dense(poset: Poset, dense_set: Iterable, depth: Optional[int] = None) -> bool:
    """Every condition (of level < depth, when given) has an extension in
    the set."""
    items = [poset.resolve(c) for c in dense_set]
    for c in items:
        poset.ensure_condition(c)
    poset.ensure_truncated(*items)
    for p in poset.conditions():
        if depth is not None and poset.condition_level(p) >= depth:
            continue
        if not any(poset.le(d, p) for d in items):
            return False
    return True


def is_nontrivial(poset: Poset, depth: int) -> bool:
    """Every condition reachable within depth has two incompatible
    extensions inside the truncation."""
    if depth < 1:
        raise InvalidInput("depth must be at least 1")
    for p in poset.conditions():
        if poset.condition_level(p) >= depth:
            continue
        exts = [q for q in poset.conditions() if poset.le(q, p)]
        found = False
        for i in range(len(exts)):
            for j in range(i + 1, len(exts)):
                if not poset.compatible(exts[i], exts[j]):
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def enumerate_maximal_antichains(poset: ChoicePoset, level_bound: int) -> list[frozenset]:
    """All maximal antichains of the choice poset with every level below
    level_bound: one (level, element) pick per block."""
    if not isinstance(poset, ChoicePoset):
        raise InvalidInput("antichain enumeration is defined on the choice poset")
    if level_bound < 1:
        raise InvalidInput("level bound must be at least 1")
    per_block = []
    for label in poset.family.labels:
        per_block.append([(n, x)
                          for n in range(level_bound)
                          for x in poset.family.sorted_block(label)])
    out = [frozenset(pick) for pick in itertools.product(*per_block)]
    out.sort(key=lambda a: tuple(sorted(poset.condition_key(c) for c in a)))
    return out


def generic_filter(poset: Poset, seed) -> Filter:
    """The filter generated by the canonically first minimal condition
    extending seed; on a finite poset such a filter meets every dense set."""
    seed = poset.resolve(seed)
    poset.ensure_condition(seed)
    poset.ensure_truncated(seed)
    conds = poset.conditions()
    minimals = [c for c in poset.minimal_conditions() if poset.le(c, seed)]
    if not minimals:
        raise InvalidInput("no minimal condition below the seed")
    a = min(minimals, key=poset.condition_key)
    return Filter(poset, (q for q in conds if poset.le(a, q)))
