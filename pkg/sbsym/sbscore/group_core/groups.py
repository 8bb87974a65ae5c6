from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

from sbsym.sbscore.exceptions import ClosureOverflow, NotInvertible
from sbsym.sbscore.utils.utils import core_logger, log_msg

logger = core_logger("group_core")


class FiniteGroup:
    """An abstract finite group given by its composition table.

    Elements are the indices ``0 .. order-1``; ``table[a, b]`` is the index of
    ``a·b``. Each element may carry an opaque label (a matrix, a tuple, ...)
    together with a ``key`` function used to look labels back up.

    Parameters
    ----------
    table : np.ndarray
        Square integer array of shape ``(order, order)``.
    identity : int
        Index of the neutral element.
    labels : sequence, optional
        One payload per element.
    key : callable, optional
        Maps a label to a hashable key; enables :meth:`index_of`.
    name : str
        Free-form description used in logs and reports.
    """

    def __init__(
        self,
        table: np.ndarray,
        *,
        identity: int = 0,
        labels: Optional[Sequence[Any]] = None,
        key: Optional[Callable[[Any], Hashable]] = None,
        name: str = "group",
    ) -> None:
        table = np.asarray(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] < 1:
            raise ValueError("composition table must be a non-empty square array")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise ValueError("composition table has out-of-range entries")
        if labels is not None and len(labels) != n:
            raise ValueError("labels must have one entry per element")

        self.table: np.ndarray = table
        self.table.setflags(write=False)
        self.identity: int = int(identity)
        self.labels: Optional[tuple[Any, ...]] = (
            tuple(labels) if labels is not None else None
        )
        self.key = key
        self.name = name

        hits = table == self.identity
        if not np.all(hits.any(axis=1)):
            raise NotInvertible(f"{name}: some element has no inverse in the table")
        self.inverse: np.ndarray = hits.argmax(axis=1).astype(np.int64)
        self.inverse.setflags(write=False)

        self._index: Optional[dict[Hashable, int]] = None
        if key is not None and self.labels is not None:
            self._index = {key(lab): i for i, lab in enumerate(self.labels)}

    # ── basic queries ──────────────────────────────────────────────────────────

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup(name={self.name!r}, order={self.order})"

    def compose(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        x = self.identity
        for _ in range(k):
            x = int(self.table[x, a])
        return x

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = int(self.table[x, a])
            k += 1
        return k

    def conjugate(self, g: int, x: int) -> int:
        """Return ``g·x·g⁻¹``."""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def label(self, i: int) -> Any:
        if self.labels is None:
            return i
        return self.labels[i]

    def index_of(self, label: Any) -> Optional[int]:
        """Index of the element carrying ``label`` or None."""
        if self._index is None or self.key is None:
            raise ValueError(f"{self.name}: group has no label lookup")
        return self._index.get(self.key(label))

    def iter_identity_first(self) -> list[int]:
        """All indices, identity first then ascending."""
        return [self.identity] + [i for i in range(self.order) if i != self.identity]

    # ── validation ────────────────────────────────────────────────────────────

    def check_axioms(
        self, *, samples: Optional[int] = None, rng: Optional[np.random.Generator] = None
    ) -> bool:
        """Check associativity, identity and inverses.

        Associativity is exhaustive when ``samples`` is None, otherwise it is
        checked on ``samples`` random triples.
        """
        t = self.table
        n = self.order
        idx = np.arange(n)
        if not (np.array_equal(t[self.identity], idx) and np.array_equal(t[:, self.identity], idx)):
            return False
        if not (
            np.all(t[idx, self.inverse] == self.identity)
            and np.all(t[self.inverse, idx] == self.identity)
        ):
            return False
        if samples is None:
            for a in range(n):
                # (a·b)·c == a·(b·c) for all b, c
                if not np.array_equal(t[t[a]], t[a][t]):
                    return False
            return True
        rng = rng or np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, samples))
        return bool(np.all(t[t[a, b], c] == t[a, t[b, c]]))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``parent`` stored as a sorted tuple of member indices."""

    parent: FiniteGroup = field(compare=True, repr=False)
    members: tuple[int, ...]

    @classmethod
    def from_indices(cls, parent: FiniteGroup, indices: Iterable[int]) -> "Subgroup":
        return cls(parent, tuple(sorted({int(i) for i in indices})))

    @classmethod
    def trivial(cls, parent: FiniteGroup) -> "Subgroup":
        return cls(parent, (parent.identity,))

    @classmethod
    def whole(cls, parent: FiniteGroup) -> "Subgroup":
        return cls(parent, tuple(range(parent.order)))

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, g: object) -> bool:
        return bool(isinstance(g, (int, np.integer)) and self.mask[int(g)])

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        return np.asarray(self.members, dtype=np.int64)

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.members)] = True
        return m

    def is_trivial(self) -> bool:
        return self.order == 1

    def is_whole(self) -> bool:
        return self.order == self.parent.order

    def issubset(self, other: "Subgroup") -> bool:
        return self.parent is other.parent and bool(np.all(other.mask[self.array]))

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, tuple(int(i) for i in np.flatnonzero(self.mask & other.mask)))

    def is_closed(self) -> bool:
        """Closure under composition (finite, so inverses follow)."""
        prods = self.parent.table[np.ix_(self.array, self.array)]
        return self.parent.identity in self and bool(np.all(self.mask[prods]))

    def labels(self) -> list[Any]:
        return [self.parent.label(i) for i in self.members]


@dataclass(frozen=True)
class GroupAction:
    """Action of a FiniteGroup on an opaque point domain.

    ``key`` maps a point to a hashable value used for deduplication; ``eq``
    (when given) decides equality for stabilizers, otherwise keys do.
    ``snap`` optionally canonicalizes a point (e.g. rounds floats).
    ``canonical`` maps a point to a value fixed by its key alone; it makes
    orbit representatives reproducible when the action is inexact.
    """

    group: FiniteGroup = field(repr=False)
    apply: Callable[[int, Any], Any]
    key: Callable[[Any], Hashable] = field(default=lambda x: x)
    snap: Optional[Callable[[Any], Any]] = None
    eq: Optional[Callable[[Any, Any], bool]] = None
    canonical: Optional[Callable[[Any], Any]] = None

    def __call__(self, g: int, x: Any) -> Any:
        y = self.apply(g, x)
        return self.snap(y) if self.snap is not None else y

    def same(self, x: Any, y: Any) -> bool:
        if self.eq is not None:
            return self.eq(x, y)
        return self.key(x) == self.key(y)


# ──────────────────────────────────────────────────────────────────────────────
# Construction
# ──────────────────────────────────────────────────────────────────────────────


def close_generators(
    generators: Sequence[Any],
    compose: Callable[[Any, Any], Any],
    eq: Optional[Callable[[Any, Any], bool]] = None,
    max_order: int = 1024,
    *,
    key: Optional[Callable[[Any], Hashable]] = None,
    name: str = "group",
) -> FiniteGroup:
    """Close ``generators`` under ``compose`` into a FiniteGroup.

    Elements are found breadth-first from the identity by right
    multiplication with each generator, so the ordering is deterministic.
    Lookup goes through ``key`` when given (a key hit is confirmed with
    ``eq`` if both are given); with only ``eq`` the lookup is a linear scan.
    """
    if not generators:
        raise ValueError("close_generators needs at least one generator")
    if max_order < 1:
        raise ValueError("max_order must be >= 1")

    gens = list(generators)
    if key is None and eq is None:
        key = lambda x: x  # noqa: E731

    elements: list[Any] = []
    index: dict[Hashable, list[int]] = {}

    def lookup(x: Any) -> Optional[int]:
        if key is not None:
            for i in index.get(key(x), ()):
                if eq is None or eq(elements[i], x):
                    return i
            return None
        for i, y in enumerate(elements):
            if eq(y, x):  # type: ignore[misc]
                return i
        return None

    def add(x: Any) -> int:
        if len(elements) >= max_order:
            raise ClosureOverflow(f"{name}: closure exceeds max_order={max_order}")
        elements.append(x)
        if key is not None:
            index.setdefault(key(x), []).append(len(elements) - 1)
        return len(elements) - 1

    def same(x: Any, y: Any) -> bool:
        if eq is not None:
            return eq(x, y)
        return key(x) == key(y)  # type: ignore[misc]

    # identity: g^k with g^k·g = g
    g0 = gens[0]
    x = g0
    for _ in range(max_order + 1):
        y = compose(x, g0)
        if same(y, g0):
            break
        x = y
    else:
        raise ClosureOverflow(f"{name}: generator order exceeds max_order={max_order}")
    add(x)

    parent = [0]
    via = [-1]
    right: list[list[int]] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        row = []
        for k, g in enumerate(gens):
            prod = compose(elements[i], g)
            j = lookup(prod)
            if j is None:
                j = add(prod)
                parent.append(i)
                via.append(k)
                queue.append(j)
            row.append(j)
        right.append(row)

    n = len(elements)
    right_gen = np.asarray(right, dtype=np.int64)
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        # a·(p·g) = (a·p)·g
        table[:, j] = right_gen[table[:, parent[j]], via[j]]

    log_msg(logger, f"closed {len(gens)} generators into {name} of order {n}", "debug")
    return FiniteGroup(table, identity=0, labels=elements, key=key, name=name)


def cyclic_group(n: int, name: Optional[str] = None) -> FiniteGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, identity=0, labels=list(range(n)), key=lambda x: x, name=name or f"C{n}")


def direct_product(g1: FiniteGroup, g2: FiniteGroup, name: Optional[str] = None) -> FiniteGroup:
    """Direct product with element ``(i1, i2)`` at index ``i1·|G2| + i2``."""
    n1, n2 = g1.order, g2.order
    i1 = np.repeat(np.arange(n1), n2)
    i2 = np.tile(np.arange(n2), n1)
    table = g1.table[i1[:, None], i1[None, :]] * n2 + g2.table[i2[:, None], i2[None, :]]
    labels = [(g1.label(a), g2.label(b)) for a, b in zip(i1.tolist(), i2.tolist())]
    key = None
    if g1.key is not None and g2.key is not None:
        k1, k2 = g1.key, g2.key
        key = lambda pair: (k1(pair[0]), k2(pair[1]))  # noqa: E731
    return FiniteGroup(
        table,
        identity=g1.identity * n2 + g2.identity,
        labels=labels,
        key=key,
        name=name or f"{g1.name}x{g2.name}",
    )


def regular_action(G: FiniteGroup) -> GroupAction:
    """Left-regular action on real vectors indexed by the elements of ``G``.

    ``(g·y)[h] = y[g⁻¹h]``; it only permutes entries, so it is exact in floats.
    """
    return GroupAction(
        group=G,
        apply=lambda g, y: np.asarray(y)[G.table[G.inverse[g]]],
        key=lambda y: tuple(np.asarray(y).tolist()),
    )
