"""Hereditarily finite sets.

Every ground value in the laboratory (block elements, ordinals, encoded
conditions, evaluated names) is a hereditarily finite set.  Instances are
immutable, hashable, and carry a canonical total order so that every
enumeration in the package is deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class HF:
    """An immutable hereditarily finite set."""

    __slots__ = ("members", "rank", "_hash", "_key")

    def __init__(self, members: Iterable["HF"] = ()):
        ms = frozenset(members)
        for m in ms:
            if not isinstance(m, HF):
                raise TypeError("members of an HF set must themselves be HF sets")
        self.members = ms
        self.rank = 1 + max((m.rank for m in ms), default=-1)
        self._hash = hash(ms)
        self._key: tuple | None = None

    def key(self) -> tuple:
        """Canonical sort key: (rank, size, sorted member keys)."""
        if self._key is None:
            self._key = (
                self.rank,
                len(self.members),
                tuple(sorted(m.key() for m in self.members)),
            )
        return self._key

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HF) and self.members == other.members

    def __lt__(self, other: "HF") -> bool:
        return self.key() < other.key()

    def __le__(self, other: "HF") -> bool:
        return self.key() <= other.key()

    def __iter__(self) -> Iterator["HF"]:
        return iter(sorted(self.members, key=HF.key))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: "HF") -> bool:
        return item in self.members

    def __repr__(self) -> str:
        return render(self)


EMPTY = HF()

_NATS: list[HF] = [EMPTY]


def nat(n: int) -> HF:
    """The von Neumann natural n = {0, 1, ..., n-1}."""
    if n < 0:
        raise ValueError("naturals only")
    while len(_NATS) <= n:
        _NATS.append(HF(_NATS))
    return _NATS[n]


def nat_value(h: HF) -> int | None:
    """Return n if h is the von Neumann natural n, else None."""
    k = len(h.members)
    if h.rank != k:
        return None
    if all(nat(i) in h.members for i in range(k)):
        return k
    return None


def hfs(*members: HF) -> HF:
    return HF(members)


def from_set(members: Iterable[HF]) -> HF:
    return HF(members)


def from_int_set(values: Iterable[int]) -> HF:
    return HF(nat(v) for v in values)


def kuratowski(a: HF, b: HF) -> HF:
    """The ordered pair (a, b) as {{a}, {a, b}}."""
    return HF((HF((a,)), HF((a, b))))


def render(h: HF) -> str:
    """Canonical text form; von Neumann naturals use digit shorthand."""
    n = nat_value(h)
    if n is not None:
        return str(n)
    return "{" + ",".join(render(m) for m in h) + "}"
