"""Finitely supported integer vectors indexing pyramid cells."""
from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Literal


@total_ordering
class IndexVector:
    """An element of the free abelian group on coordinates 1, 2, 3, ...

    Stored as the tuple of entries trimmed of trailing zeros, so structural and
    mathematical equality agree.  Coordinates are 1-based.
    """

    __slots__ = ("_t",)

    def __init__(self, entries: Iterable[int] = ()):
        t = [int(x) for x in entries]
        while t and t[-1] == 0:
            t.pop()
        self._t = tuple(t)

    @classmethod
    def from_dict(cls, entries: dict[int, int]) -> "IndexVector":
        if any(i < 1 for i in entries):
            raise ValueError("coordinates are 1-based")
        n = max(entries, default=0)
        return cls(entries.get(i, 0) for i in range(1, n + 1))

    @property
    def entries(self) -> tuple[int, ...]:
        return self._t

    @property
    def support_bound(self) -> int:
        """Largest coordinate with a nonzero entry (0 for the zero vector)."""
        return len(self._t)

    def __getitem__(self, i: int) -> int:
        if i < 1:
            raise IndexError("coordinates are 1-based")
        return self._t[i - 1] if i <= len(self._t) else 0

    def __add__(self, other: "IndexVector") -> "IndexVector":
        a, b = self._t, other._t
        n = max(len(a), len(b))
        return IndexVector(
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
        )

    def __neg__(self) -> "IndexVector":
        return IndexVector(-x for x in self._t)

    def __sub__(self, other: "IndexVector") -> "IndexVector":
        return self + (-other)

    def __mul__(self, k: int) -> "IndexVector":
        return IndexVector(k * x for x in self._t)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, IndexVector) and self._t == other._t

    def __hash__(self):
        return hash(self._t)

    def __lt__(self, other: "IndexVector") -> bool:
        n = max(len(self._t), len(other._t))
        a = self._t + (0,) * (n - len(self._t))
        b = other._t + (0,) * (n - len(other._t))
        return a < b

    def __repr__(self):
        return f"IndexVector({list(self._t)})"

    def __bool__(self):
        return bool(self._t)

    def to_json(self) -> list[int]:
        return list(self._t)

    @classmethod
    def from_json(cls, data) -> "IndexVector":
        return cls(data)


ZERO = IndexVector()


def epsilon(i: int) -> IndexVector:
    """The i-th standard basis vector (1-based)."""
    if i < 1:
        raise ValueError(f"basis vectors are indexed from 1, got {i}")
    return IndexVector([0] * (i - 1) + [1])


def add(a: IndexVector, b: IndexVector) -> IndexVector:
    return a + b


def height(a: IndexVector) -> int:
    return sum(a.entries)


def truncate(a: IndexVector, k: int, side: Literal["low", "high"]) -> IndexVector:
    """``low`` keeps coordinates 1..k; ``high`` drops them and shifts the rest down by k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if side == "low":
        return IndexVector(a.entries[:k])
    if side == "high":
        return IndexVector(a.entries[k:])
    raise ValueError(f"side must be 'low' or 'high', got {side!r}")


def pi(a: IndexVector, k: int) -> IndexVector:
    return truncate(a, k, "low")


def sigma(a: IndexVector, k: int) -> IndexVector:
    return truncate(a, k, "high")


def shift(a: IndexVector, k: int) -> IndexVector:
    """Reindex coordinate i to i + k."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not a:
        return a
    return IndexVector((0,) * k + a.entries)
