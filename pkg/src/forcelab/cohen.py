"""Finite-truncation two-step Cohen sandbox.

A grid plays the role of the bit poset: conditions are finite partial 0/1
assignments on column x row cells, and a total assignment stands in for a
generic filter.  Each column reads off a subset of the rows; the induced
injective-map poset sends columns to those subsets.  The module builds the
standard column names, translates filters both ways across the two posets,
and carries names across via the hat map, which preserves evaluation.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    ColumnCollision, InvalidInput, NonInjective, NotDense, OutOfRange,
)
from .hf import nat
from .names import (
    EMPTY_NAME, PName, check_name, name_hf, ordered_pair_name, pname,
)
from .posets import (
    CohenGridPoset, Filter, InjPoset, ONE, canon_key, is_dense,
)


class Assignment:
    """A total 0/1 assignment on a grid, bits listed row-major."""

    def __init__(self, grid: CohenGridPoset, bits: Sequence[int]):
        if len(bits) != grid.cols * grid.rows:
            raise InvalidInput(
                f"need {grid.cols * grid.rows} bits, got {len(bits)}")
        if any(b not in (0, 1) for b in bits):
            raise InvalidInput("assignment bits must be 0 or 1")
        self.grid = grid
        self.bits = tuple(bits)

    def bit(self, col: int, row: int) -> int:
        if not (0 <= col < self.grid.cols and 0 <= row < self.grid.rows):
            raise OutOfRange(f"cell ({col},{row}) is outside the grid")
        return self.bits[row * self.grid.cols + col]

    def column(self, col: int) -> frozenset[int]:
        """The subset of rows this column turns on."""
        return frozenset(r for r in range(self.grid.rows)
                         if self.bit(col, r) == 1)

    def columns(self) -> tuple[frozenset[int], ...]:
        return tuple(self.column(c) for c in range(self.grid.cols))

    def has_distinct_columns(self) -> bool:
        cols = self.columns()
        return len(set(cols)) == len(cols)

    def as_condition(self) -> frozenset:
        return frozenset((((c, r), self.bit(c, r))
                          for c in range(self.grid.cols)
                          for r in range(self.grid.rows)))

    def filter(self) -> "GridSectionFilter":
        """All grid conditions the assignment extends, as a lazy filter."""
        return GridSectionFilter(
            self.grid, {c: self.column(c) for c in range(self.grid.cols)})

    def p1_poset(self) -> InjPoset:
        """Injective finite maps from columns to the column values."""
        values = sorted(set(self.columns()), key=canon_key)
        return InjPoset(dom_items=range(self.grid.cols), cod_items=values)

    def p0_poset(self) -> InjPoset:
        """Injective finite maps from column values to column values."""
        values = sorted(set(self.columns()), key=canon_key)
        return InjPoset(dom_items=values, cod_items=values)

    def __repr__(self):
        rows = ["".join(str(self.bit(c, r)) for c in range(self.grid.cols))
                for r in range(self.grid.rows)]
        return f"assignment[{'|'.join(rows)}]"


class GridSectionFilter:
    """The grid conditions decided by (and agreeing with) a partial choice
    of column values.  Lazy: membership is checked cell by cell."""

    def __init__(self, grid: CohenGridPoset,
                 decided: Mapping[int, frozenset[int]]):
        for col, rows in decided.items():
            if not (0 <= col < grid.cols):
                raise OutOfRange(f"column {col} is outside the grid")
            if any(not (0 <= r < grid.rows) for r in rows):
                raise OutOfRange(f"column {col} value escapes the rows")
        self.grid = grid
        self.decided = {c: frozenset(rows) for c, rows in decided.items()}
        self._key = (grid.cols, grid.rows,
                     tuple(sorted((c, tuple(sorted(rows)))
                                  for c, rows in self.decided.items())))

    def decides(self) -> dict[int, frozenset[int]]:
        return dict(self.decided)

    def __contains__(self, cond) -> bool:
        if cond is ONE:
            return True
        for (c, r), bit in cond:
            if c not in self.decided or not (0 <= r < self.grid.rows):
                return False
            if bit != (1 if r in self.decided[c] else 0):
                return False
        return True

    def __hash__(self):
        return hash(self._key)

    def __eq__(self, other):
        return isinstance(other, GridSectionFilter) and self._key == other._key

    def __repr__(self):
        inner = ",".join(
            f"{c}->{{{','.join(map(str, sorted(rows)))}}}"
            for c, rows in sorted(self.decided.items()))
        return f"section{{{inner}}}"


# ---------------------------------------------------------------------------
# the column names


def xdot_name(grid: CohenGridPoset, col: int) -> PName:
    """The column's subset-of-rows name: one entry per single-cell
    condition turning a bit on."""
    if not (0 <= col < grid.cols):
        raise OutOfRange(f"column {col} is outside the grid")
    return pname(
        (frozenset({((col, row), 1)}), check_name(nat(row)))
        for row in range(grid.rows))


_CHECKCHECKS: dict[int, PName] = {}


def _checkcheck(k: int) -> PName:
    """The name evaluating to the encoded canonical name of k."""
    out = _CHECKCHECKS.get(k)
    if out is None:
        out = check_name(name_hf(check_name(nat(k))))
        _CHECKCHECKS[k] = out
    return out


def xcheckcheck_name(grid: CohenGridPoset, col: int) -> PName:
    """The name of the column's canonical name: it evaluates to the encoded
    check-name of the column value, not to the value itself."""
    if not (0 <= col < grid.cols):
        raise OutOfRange(f"column {col} is outside the grid")
    return pname(
        (frozenset({((col, row), 1)}),
         ordered_pair_name(EMPTY_NAME, _checkcheck(row)))
        for row in range(grid.rows))


def _ensure_injection(sigma: frozenset) -> None:
    for entry in sigma:
        if not (isinstance(entry, tuple) and len(entry) == 2
                and all(isinstance(t, int) and t >= 0 for t in entry)):
            raise InvalidInput(f"not a pair of naturals: {entry!r}")
    dom = {}
    cod = {}
    for i, j in sigma:
        if dom.get(i, j) != j:
            raise NonInjective(f"two images for {i}")
        if cod.get(j, i) != i:
            raise NonInjective(f"two preimages for {j}")
        dom[i] = j
        cod[j] = i


def r_sigma_name(grid: CohenGridPoset, sigma: Iterable[tuple[int, int]]) -> PName:
    """The graph name of a finite injection on columns: ordered pairs of
    column names, all attached to the greatest element."""
    sigma = frozenset(sigma)
    _ensure_injection(sigma)
    return pname(
        (ONE, ordered_pair_name(xdot_name(grid, i), xdot_name(grid, j)))
        for i, j in sigma)


def r_sigma_condition(assignment: Assignment,
                      sigma: Iterable[tuple[int, int]]) -> frozenset:
    """The value-level condition of the graph name: the finite injection
    x_i maps to x_j for (i,j) in sigma, read in the value-to-value poset."""
    sigma = frozenset(sigma)
    _ensure_injection(sigma)
    pairs = {(assignment.column(i), assignment.column(j)) for i, j in sigma}
    cond = frozenset(pairs)
    if len(cond) < len(sigma) or not assignment.p0_poset().is_condition(cond):
        raise ColumnCollision(
            "colliding column values garble the injection")
    return cond


# ---------------------------------------------------------------------------
# the two-poset correspondence


def square_below(s, q) -> bool:
    """Does the injective-map condition q decide every cell of the grid
    condition s the same way: for each (i,j) in dom(s), i is mapped by q
    and s(i,j) = 1 exactly when j lies in q(i)."""
    if s is ONE:
        return True
    values = dict(q) if q is not ONE else {}
    for (i, j), bit in s:
        if i not in values:
            return False
        if bit != (1 if j in values[i] else 0):
            return False
    return True


def g_to_g1(assignment: Assignment) -> Filter:
    """The induced filter on the injective-map poset: all conditions that
    send each of their columns to that column's value."""
    if not assignment.has_distinct_columns():
        pairs = sorted(
            (c1, c2)
            for c1 in range(assignment.grid.cols)
            for c2 in range(c1 + 1, assignment.grid.cols)
            if assignment.column(c1) == assignment.column(c2))
        raise ColumnCollision(
            f"columns collide under this assignment: {pairs}")
    p1 = assignment.p1_poset()
    section = {c: assignment.column(c) for c in range(assignment.grid.cols)}
    return Filter(p1, section_g1_conditions(section))


def section_g1_conditions(
        decided: Mapping[int, frozenset[int]]) -> frozenset:
    """All injective-map conditions that agree with a partial choice of
    column values and mention only decided columns."""
    values = dict(decided)
    if len(set(values.values())) != len(values):
        raise ColumnCollision("decided column values collide")
    cols = sorted(values)
    out = []
    for mask in range(1 << len(cols)):
        picked = [cols[i] for i in range(len(cols)) if mask >> i & 1]
        out.append(frozenset((c, values[c]) for c in picked))
    return frozenset(out)


def g1_to_g(grid: CohenGridPoset, g1: Iterable) -> GridSectionFilter:
    """The grid conditions decided by a filter of injective-map conditions:
    a cell (i,j) reads 1 exactly when some member maps column i to a set
    containing j; columns no member mentions stay undecided."""
    members = g1.conditions if isinstance(g1, Filter) else g1
    decided: dict[int, frozenset[int]] = {}
    for cond in members:
        if cond is ONE:
            continue
        for col, rows in cond:
            rows = frozenset(rows)
            if decided.setdefault(col, rows) != rows:
                raise InvalidInput(
                    f"the conditions disagree about column {col}")
    return GridSectionFilter(grid, decided)


def e_dense(assignment: Assignment, dense_set: Iterable) -> frozenset:
    """Transfer a dense set of grid conditions to the injective-map poset:
    all conditions that decide some member of the set."""
    grid = assignment.grid
    dense = [grid.resolve(s) for s in dense_set]
    if not is_dense(grid, dense):
        raise NotDense("the input set is not dense in the grid poset")
    p1 = assignment.p1_poset()
    return frozenset(
        q for q in p1.conditions()
        if any(square_below(s, q) for s in dense))


# ---------------------------------------------------------------------------
# the hat map


def hat_map(tau: PName, p1: InjPoset,
            _memo: Optional[dict[PName, PName]] = None) -> PName:
    """Carry a grid name to the injective-map poset: each entry (r, sigma)
    spawns (q, sigma-hat) for every condition q that decides r; evaluation
    along corresponding filters is unchanged."""
    if _memo is None:
        _memo = {}
    out = _memo.get(tau)
    if out is None:
        entries = []
        conds = p1.conditions()
        for r, sigma in tau.sorted_entries():
            hat_child = hat_map(sigma, p1, _memo)
            for q in conds:
                if square_below(r, q):
                    entries.append((q, hat_child))
        out = pname(entries)
        _memo[tau] = out
    return out
