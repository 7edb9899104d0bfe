"""Search for smooth epimorphisms from Fuchsian signatures onto finite groups.

Images are chosen for ``x_1..x_{r-1}`` (of the prescribed orders) and for the
hyperbolic generators; ``x_r`` is then forced by the long relation.  A
candidate is kept when ``x_r`` has order ``m_r`` and the images generate ``G``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from fixlocus.groups import abelian_group, cyclic_group, dihedral_group
from fixlocus.perm import FiniteGroup, element_order, subgroup_generated
from fixlocus.words import EpimorphismInstance, FuchsianSignature, fuchsian_instance


def multiplication_table(G: FiniteGroup) -> np.ndarray:
    """``T[a, b]`` is the index of ``a*b``; cached on the group."""
    T = G.memo.get("mult")
    if T is None:
        table = G._table
        T = np.empty((G.order, G.order), dtype=np.intp)
        for b in range(G.order):
            # row a*b is b[a[x]]
            T[:, b] = G.indices_of(table[b][table])
        T.setflags(write=False)
        G.memo["mult"] = T
    return T


class _Arith:
    def __init__(self, G: FiniteGroup):
        self.G = G
        self.T = multiplication_table(G).tolist()
        self.inv = [row.index(0) for row in self.T]
        self.orders = [element_order(G, i) for i in range(G.order)]

    def mul(self, a: int, b: int) -> int:
        return self.T[a][b]

    def comm(self, a: int, b: int) -> int:
        T, inv = self.T, self.inv
        return T[T[T[a][b]][inv[a]]][inv[b]]

    def of_order(self, m: int) -> list[int]:
        return [i for i, o in enumerate(self.orders) if o == m]


def _complete(ar: _Arith, sig: FuchsianSignature, xs: Sequence[int],
              hyp: Sequence[int]) -> list[int] | None:
    """Fill in ``x_r`` from the long relation; ``None`` if its order is wrong."""
    left = 0
    for x in xs:
        left = ar.mul(left, x)
    prod_comm = 0
    for j in range(sig.orbit_genus):
        prod_comm = ar.mul(prod_comm, ar.comm(hyp[2 * j], hyp[2 * j + 1]))
    # x_1 ... x_r * P = 1  =>  x_r = (x_1...x_{r-1})^-1 P^-1
    r = len(sig.periods)
    if r == 0:
        return list(hyp) if prod_comm == 0 else None
    last = ar.mul(ar.inv[left], ar.inv[prod_comm])
    if ar.orders[last] != sig.periods[-1]:
        return None
    return list(xs) + [last] + list(hyp)


def _accept(G: FiniteGroup, sig: FuchsianSignature, images: list[int]) -> EpimorphismInstance | None:
    if subgroup_generated(G, images).order != G.order:
        return None
    return fuchsian_instance(sig, G, [G.element(i) for i in images])


def smooth_epimorphisms(sig: FuchsianSignature, G: FiniteGroup, limit: int | None = None,
                        budget: int = 200_000) -> Iterator[EpimorphismInstance]:
    """Deterministic enumeration (lexicographic in image indices) of smooth epimorphisms.

    At most ``budget`` candidate tuples are examined.
    """
    ar = _Arith(G)
    choices = [ar.of_order(m) for m in sig.periods[:-1]] + [range(G.order)] * (2 * sig.orbit_genus)
    r = len(sig.periods)
    found = 0
    for n_tried, combo in enumerate(itertools.product(*choices)):
        if n_tried >= budget:
            return
        xs, hyp = combo[:max(r - 1, 0)], combo[max(r - 1, 0):]
        images = _complete(ar, sig, xs, hyp)
        if images is None:
            continue
        epi = _accept(G, sig, images)
        if epi is None:
            continue
        yield epi
        found += 1
        if limit is not None and found >= limit:
            return


def random_smooth_epimorphism(rng: random.Random, sig: FuchsianSignature, G: FiniteGroup,
                              tries: int = 2000) -> EpimorphismInstance | None:
    ar = _Arith(G)
    pools = [ar.of_order(m) for m in sig.periods]
    if any(not p for p in pools):
        return None
    for _ in range(tries):
        xs = [rng.choice(p) for p in pools[:-1]]
        hyp = [rng.randrange(G.order) for _ in range(2 * sig.orbit_genus)]
        images = _complete(ar, sig, xs, hyp)
        if images is None:
            continue
        epi = _accept(G, sig, images)
        if epi is not None:
            return epi
    return None


# Signatures with h <= 2, r <= 6 and periods <= 12.
CORPUS_SIGNATURES: tuple[FuchsianSignature, ...] = tuple(
    FuchsianSignature(h, p) for h, p in [
        (0, (2, 2, 2, 2, 2, 2)),
        (0, (2, 2, 2, 2, 2)),
        (0, (2, 2, 2, 2)),
        (0, (2, 2, 2, 3)),
        (0, (2, 2, 3, 3)),
        (0, (3, 3, 3)),
        (0, (2, 3, 6)),
        (0, (2, 4, 4)),
        (0, (2, 3, 7)),
        (0, (2, 4, 8)),
        (0, (2, 5, 10)),
        (0, (2, 6, 6)),
        (0, (3, 3, 3, 3)),
        (0, (3, 6, 6)),
        (0, (4, 4, 4)),
        (0, (5, 5, 5)),
        (0, (2, 12, 12)),
        (0, (3, 4, 12)),
        (1, ()),
        (1, (2,)),
        (1, (3,)),
        (1, (2, 2)),
        (2, ()),
        (2, (2,)),
    ])


def corpus_groups() -> list[tuple[str, FiniteGroup]]:
    """Cyclic, dihedral and small abelian groups of order at most 500."""
    groups = [(f"Z{n}", cyclic_group(n)) for n in (2, 3, 4, 5, 6, 7, 8, 10, 12)]
    groups += [(f"D{n}", dihedral_group(n)) for n in (3, 4, 5, 6, 8, 12)]
    groups += [("Z2xZ2", abelian_group([2, 2])), ("Z2xZ4", abelian_group([2, 4])),
               ("Z3xZ3", abelian_group([3, 3])), ("Z2^3", abelian_group([2, 2, 2])),
               ("Z2xZ6", abelian_group([2, 6])), ("Z4xZ4", abelian_group([4, 4]))]
    return groups


# Reflections make up half of a dihedral group, so random images for these
# signatures succeed often even at order 500.
LARGE_GROUPS: tuple[tuple[str, int], ...] = (("D60", 60), ("D250", 250))
LARGE_SIGNATURES: tuple[FuchsianSignature, ...] = (
    FuchsianSignature(0, (2, 2, 2, 2)), FuchsianSignature(0, (2, 2, 2, 2, 2, 2)),
    FuchsianSignature(1, (2, 2)))


@dataclass(frozen=True)
class CorpusItem:
    label: str
    epi: EpimorphismInstance


def fuchsian_corpus(per_pair: int = 2, budget: int = 20_000) -> list[CorpusItem]:
    """Deterministic corpus of smooth epimorphisms.

    Up to ``per_pair`` instances for every (signature, group) pair from the
    fixed lists, plus a few instances onto dihedral groups of order 120 and 500.
    """
    items = []
    for gname, G in corpus_groups():
        for sig in CORPUS_SIGNATURES:
            for k, epi in enumerate(smooth_epimorphisms(sig, G, limit=per_pair, budget=budget)):
                items.append(CorpusItem(f"{sig} -> {gname} #{k}", epi))
    rng = random.Random(20160817)
    for gname, n in LARGE_GROUPS:
        G = dihedral_group(n)
        for sig in LARGE_SIGNATURES:
            epi = random_smooth_epimorphism(rng, sig, G)
            if epi is not None:
                items.append(CorpusItem(f"{sig} -> {gname} (random)", epi))
    return items


def random_corpus(count: int = 50, seed: int = 1) -> list[CorpusItem]:
    """``count`` accepted instances with random hyperbolic signatures, groups and images."""
    rng = random.Random(seed)
    groups = corpus_groups()
    items: list[CorpusItem] = []
    while len(items) < count:
        h = rng.choice((0, 0, 0, 1, 1, 2))
        r = rng.randint(3 if h == 0 else 0, 6 if h == 0 else 3)
        periods = tuple(sorted(rng.randint(2, 12) for _ in range(r)))
        sig = FuchsianSignature(h, periods)
        if not sig.is_hyperbolic():
            continue
        gname, G = rng.choice(groups)
        epi = random_smooth_epimorphism(rng, sig, G, tries=300)
        if epi is not None:
            items.append(CorpusItem(f"{sig} -> {gname} (seed {seed}, #{len(items)})", epi))
    return items
