"""Small named permutation groups."""

from __future__ import annotations

from typing import Sequence

from fixlocus.errors import BadParameters
from fixlocus.perm import FiniteGroup, Permutation, enumerate_group


def block_cycles(orders: Sequence[int]) -> list[Permutation]:
    """One cycle of length ``orders[i]`` on the i-th block of consecutive points."""
    degree = sum(orders)
    gens = []
    start = 0
    for m in orders:
        gens.append(Permutation.from_cycles([tuple(range(start, start + m))], degree))
        start += m
    return gens


def abelian_group(orders: Sequence[int]) -> FiniteGroup:
    """``Z_{m_1} x ... x Z_{m_k}`` acting on disjoint blocks; generators in block order."""
    if not orders or any(m < 2 for m in orders):
        raise BadParameters(f"block orders must be >= 2, got {orders}")
    return enumerate_group(sum(orders), block_cycles(orders))


def cyclic_group(n: int) -> FiniteGroup:
    return abelian_group([n])


def dihedral_group(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order ``2n``; generators: rotation, reflection."""
    if n < 3:
        raise BadParameters("dihedral groups here need n >= 3")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return enumerate_group(n, [rotation, reflection])


def symmetric_group(n: int) -> FiniteGroup:
    if n < 2:
        raise BadParameters("symmetric groups here need n >= 2")
    transposition = Permutation.from_cycles([(0, 1)], n)
    cycle = Permutation(tuple((i + 1) % n for i in range(n)))
    return enumerate_group(n, [transposition, cycle])
