"""Exact finite permutation groups by full element enumeration.

Elements of a :class:`FiniteGroup` are kept as the rows of a lexicographically
sorted table, so every element has a stable integer index and every scan runs
in the same order on every run.  The identity is always index 0.

Products apply the left factor first: ``(p * q)(x) == q(p(x))``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

import numpy as np

from fixlocus import kernels
from fixlocus.errors import CapExceeded, MalformedPermutation, NotAMember

DEFAULT_GROUP_CAP = 100_000


def group_cap() -> int:
    """The order cap, overridable with ``FIXLOCUS_GROUP_CAP``."""
    raw = os.environ.get("FIXLOCUS_GROUP_CAP")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise ValueError(f"FIXLOCUS_GROUP_CAP is not an integer: {raw!r}") from None
        if cap < 1:
            raise ValueError("FIXLOCUS_GROUP_CAP must be positive")
        return cap
    return DEFAULT_GROUP_CAP


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``{0, ..., degree-1}`` given by its image sequence."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise MalformedPermutation(f"not a bijection of 0..{len(images) - 1}: {images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        """Build from 0-based disjoint cycles."""
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise MalformedPermutation(f"point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise MalformedPermutation(f"point {point} repeated in cycles")
                seen.add(point)
            for a, b in zip(cycle, tuple(cycle[1:]) + tuple(cycle[:1])):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise MalformedPermutation("degree mismatch in product")
        q = other.images
        return Permutation(tuple(q[i] for i in self.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def __pow__(self, exponent: int) -> Permutation:
        base = self if exponent >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        e = abs(exponent)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point, 0-based."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = self.images[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = self.images[nxt]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        return format_cycles(self)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"


def format_cycles(p: Permutation) -> str:
    """Disjoint-cycle notation with 1-based points; the identity is ``()``."""
    cycles = p.cycles()
    if not cycles:
        return "()"
    return "".join("(" + " ".join(str(i + 1) for i in c) + ")" for c in cycles)


ElementLike = Union[int, Permutation]


class FiniteGroup:
    """A permutation group together with its full, canonically ordered element list.

    Use :func:`enumerate_group` to construct one.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], table: np.ndarray):
        self.degree = degree
        self.generators = tuple(generators)
        self._table = np.ascontiguousarray(table, dtype=np.intc)
        self._table.setflags(write=False)
        self._inv_table = np.ascontiguousarray(np.argsort(self._table, axis=1), dtype=np.intc)
        self._inv_table.setflags(write=False)
        self._index = {row.tobytes(): i for i, row in enumerate(self._table)}
        # derived data keyed by the module that computes it; values never change once set
        self.memo: dict = {}

    @property
    def order(self) -> int:
        return len(self._table)

    def __len__(self) -> int:
        return len(self._table)

    @cached_property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(Permutation(tuple(row)) for row in self._table.tolist())

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def element(self, index: int) -> Permutation:
        if "elements" in self.__dict__:
            return self.elements[index]
        return Permutation(tuple(self._table[self.index(index)].tolist()))

    def row(self, g: ElementLike) -> np.ndarray:
        return self._table[self.index(g)]

    def index(self, g: ElementLike) -> int:
        """Index of ``g`` in the canonical list; raises :class:`NotAMember` otherwise."""
        if isinstance(g, (int, np.integer)):
            if not 0 <= g < len(self._table):
                raise NotAMember(f"element index {g} out of range for group of order {self.order}")
            return int(g)
        if isinstance(g, Permutation):
            if g.degree != self.degree:
                raise NotAMember(f"degree {g.degree} element used in a degree {self.degree} group")
            key = np.asarray(g.images, dtype=np.intc).tobytes()
        else:
            key = np.ascontiguousarray(g, dtype=np.intc).tobytes()
        try:
            return self._index[key]
        except KeyError:
            raise NotAMember(f"{g} is not an element of this group") from None

    def indices_of(self, rows: np.ndarray) -> np.ndarray:
        """Indices of many element rows at once (every row must be a member)."""
        index = self._index
        rows = np.ascontiguousarray(rows, dtype=np.intc)
        return np.fromiter((index[r.tobytes()] for r in rows), dtype=np.intp, count=len(rows))

    def __contains__(self, g: object) -> bool:
        try:
            self.index(g)  # type: ignore[arg-type]
        except NotAMember:
            return False
        return True

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def multiply(self, a: ElementLike, b: ElementLike) -> int:
        ra, rb = self.row(a), self.row(b)
        return self._index[rb[ra].tobytes()]

    def inverse(self, a: ElementLike) -> int:
        return self._index[self._inv_table[self.index(a)].tobytes()]

    def is_abelian(self) -> bool:
        gens = [self.element(self.index(g)) for g in self.generators]
        return all(a * b == b * a for a in gens for b in gens)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.degree == other.degree and np.array_equal(self._table, other._table)

    def __hash__(self) -> int:
        return hash((self.degree, self._table.tobytes()))

    def __repr__(self) -> str:
        return f"FiniteGroup(degree={self.degree}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(sorted(set(self.members)))
        object.__setattr__(self, "members", members)
        if not members or members[0] != 0:
            raise ValueError("subgroup must contain the identity")
        assert self.parent.order % len(members) == 0, "Lagrange violated"

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, g: object) -> bool:
        try:
            idx = self.parent.index(g)  # type: ignore[arg-type]
        except NotAMember:
            return False
        return idx in self._member_set

    @cached_property
    def _member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    @property
    def elements(self) -> tuple[Permutation, ...]:
        return tuple(self.parent.element(i) for i in self.members)

    def index_in_parent(self) -> int:
        return self.parent.order // self.order

    def issubset(self, other: Subgroup) -> bool:
        return self._member_set <= other._member_set


def _rows(perms: Sequence[Permutation], degree: int) -> np.ndarray:
    return np.array([p.images for p in perms], dtype=np.intc).reshape(-1, degree)


def _sorted_table(rows: np.ndarray) -> np.ndarray:
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def enumerate_group(degree: int, generators: Sequence[Permutation], cap: int | None = None) -> FiniteGroup:
    """Close ``generators`` under composition and list every element."""
    cap = group_cap() if cap is None else cap
    gens = []
    for g in generators:
        if not isinstance(g, Permutation):
            g = Permutation(tuple(g))
        if g.degree != degree:
            raise MalformedPermutation(f"generator {g} has degree {g.degree}, expected {degree}")
        gens.append(g)
    if not gens:
        gens = [Permutation.identity(degree)]
    table = kernels.closure(_rows(gens, degree), cap)
    if table is None:
        raise CapExceeded(f"group order exceeds the cap of {cap}")
    return FiniteGroup(degree, gens, _sorted_table(table))


def powers(G: FiniteGroup, g: ElementLike) -> list[int]:
    """Indices of ``g^0, g^1, ..., g^(n-1)`` in that order."""
    idx = G.index(g)
    row = G._table[idx]
    out = [0]
    cur = row
    while True:
        i = G._index[cur.tobytes()]
        if i == 0:
            return out
        out.append(i)
        cur = row[cur]


def element_order(G: FiniteGroup, g: ElementLike) -> int:
    return len(powers(G, g))


def cyclic_subgroup(G: FiniteGroup, g: ElementLike) -> Subgroup:
    return Subgroup(G, tuple(powers(G, g)))


def _conjugator_mask(G: FiniteGroup, g: ElementLike, targets: Sequence[int]) -> np.ndarray:
    target_rows = np.ascontiguousarray(G._table[list(targets)], dtype=np.intc)
    return kernels.conjugator_mask(G._table, G._inv_table, G._table[G.index(g)], target_rows)


def normalizer_of_cyclic(G: FiniteGroup, g: ElementLike) -> Subgroup:
    """``N_G(<g>)``: every ``w`` with ``w^-1 g w`` in ``<g>``."""
    mask = _conjugator_mask(G, g, powers(G, g))
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def centralizer(G: FiniteGroup, g: ElementLike) -> Subgroup:
    mask = _conjugator_mask(G, g, [G.index(g)])
    return Subgroup(G, tuple(np.flatnonzero(mask).tolist()))


def conjugating_element(G: FiniteGroup, g: ElementLike, targets: Sequence[int]) -> int | None:
    """Some ``w`` with ``w^-1 g w`` among ``targets`` (first in canonical order), else ``None``."""
    target_rows = np.ascontiguousarray(G._table[list(targets)], dtype=np.intc)
    w = kernels.first_conjugator(G._table, G._inv_table, G._table[G.index(g)], target_rows)
    return None if w < 0 else int(w)


def is_conjugate_to_power(G: FiniteGroup, g: ElementLike, h: ElementLike) -> bool:
    """True iff ``w^-1 g w`` lies in ``<h>`` for some ``w`` in ``G``.

    The identity is conjugate to ``h^0`` and so always qualifies.
    """
    return conjugating_element(G, g, powers(G, h)) is not None


def are_conjugate(G: FiniteGroup, g: ElementLike, h: ElementLike) -> bool:
    return conjugating_element(G, g, [G.index(h)]) is not None


def subgroup_generated(G: FiniteGroup, elems: Iterable[ElementLike]) -> Subgroup:
    idx = [G.index(e) for e in elems]
    idx = [i for i in idx if i != 0]
    if not idx:
        return Subgroup(G, (0,))
    rows = kernels.closure(np.ascontiguousarray(G._table[idx]), G.order)
    if rows is None:  # pragma: no cover - closure inside G cannot exceed |G|
        raise CapExceeded("subgroup closure exceeded its parent")
    return Subgroup(G, tuple(G._index[r.tobytes()] for r in rows))


def conjugacy_class(G: FiniteGroup, g: ElementLike) -> tuple[int, ...]:
    conj = kernels.conjugates(G._table, G._inv_table, G._table[G.index(g)])
    return tuple(sorted({G._index[r.tobytes()] for r in conj}))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All classes, each sorted, listed by least member."""
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for i in range(G.order):
        if seen[i]:
            continue
        cls = conjugacy_class(G, i)
        seen[list(cls)] = True
        classes.append(cls)
    return classes
