"""Connected components of fixed-point sets for isometries of hyperbolic manifolds.

For ``theta: K -> G`` with torsion-free kernel and an elliptic complete system
``kappa_1, ..., kappa_r`` of orders ``m_i``, a non-trivial ``g`` of order ``n``
has

    |N_G<g>| * sum_{i in I(g)} 1/n_i

components, where ``J(g)`` holds the indices with ``g`` conjugate to a power of
``theta(kappa_i)``, ``I(g)`` picks one index per merge block of ``J(g)`` and
``n_i`` is the order of the image of the ``K``-normalizer of
``<kappa_i^(m_i/n)>``.  Replacing ``I`` by ``J`` and ``n_i`` by ``m_i`` gives an
upper bound that needs no extra data.

Two inputs cannot be derived from ``G`` alone and are taken as data:
the normalizer images (:class:`NormalizerImageSpec`) and the merge blocks
(:class:`MergeSpec`, discrete by default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from fixlocus.errors import (
    BadParameters,
    DivisibilityViolation,
    MergeMismatch,
    MissingSpec,
    NonIntegralTerm,
    TrivialElement,
)
from fixlocus.perm import (
    ElementLike,
    FiniteGroup,
    Permutation,
    are_conjugate,
    element_order,
    is_conjugate_to_power,
    normalizer_of_cyclic,
    subgroup_generated,
)
from fixlocus.words import (
    NECESSARY_ONLY,
    TRUSTED_ECS,
    EcsEntry,
    EpimorphismInstance,
    Word,
    evaluate_word,
)

__all__ = [
    "EcsEntry",
    "FixReport",
    "MergeEntry",
    "MergeSpec",
    "NormalizerImageSpec",
    "component_count",
    "component_upper_bound",
    "compute_I",
    "compute_J",
    "elliptic_specs",
    "resolve_n",
]

DISCRETE_MERGE = "merge = discrete (assumed)"


@dataclass(frozen=True)
class NormalizerImageSpec:
    """Image of the normalizer of ``<kappa_i^(m_i/d)>`` for one e.c.s. index.

    ``power_divisor`` is ``d``, the order of that power.  Give either ``n_value``
    (the order outright) or ``generator_words`` (words in ``K`` whose images
    generate the image subgroup); words allow containment checks.
    """

    ecs_index: int
    power_divisor: int
    n_value: int | None = None
    generator_words: tuple[Word, ...] | None = None

    def __post_init__(self):
        if self.generator_words is not None:
            object.__setattr__(self, "generator_words", tuple(self.generator_words))
        if (self.n_value is None) == (self.generator_words is None):
            raise BadParameters("give exactly one of n_value and generator_words")
        if self.n_value is not None and self.n_value < 1:
            raise BadParameters("n_value must be positive")
        if self.power_divisor < 1:
            raise BadParameters("power_divisor must be positive")


@dataclass(frozen=True)
class MergeEntry:
    """Merge blocks on ``J(g)`` for the conjugacy class of ``element``."""

    element: Permutation
    blocks: tuple[tuple[int, ...], ...]
    note: str = ""

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        blocks = tuple(sorted(blocks))
        object.__setattr__(self, "blocks", blocks)
        flat = [i for b in blocks for i in b]
        if any(not b for b in blocks):
            raise BadParameters("merge blocks must be non-empty")
        if len(flat) != len(set(flat)):
            raise BadParameters(f"merge blocks overlap: {blocks}")


@dataclass(frozen=True)
class MergeSpec:
    entries: tuple[MergeEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @classmethod
    def discrete(cls) -> MergeSpec:
        return cls(())

    def entry_for(self, G: FiniteGroup, g: ElementLike) -> MergeEntry | None:
        for entry in self.entries:
            if are_conjugate(G, g, entry.element):
                return entry
        return None


@dataclass(frozen=True)
class FixReport:
    element: Permutation
    order: int
    J: tuple[int, ...]
    I: tuple[int, ...]  # noqa: E741
    n_values: tuple[tuple[int, int], ...]
    normalizer_order: int
    count: int
    upper_bound: Fraction
    assumptions: tuple[str, ...] = field(default=())
    name: str | None = None


def _nontrivial(G: FiniteGroup, g: ElementLike) -> int:
    idx = G.index(g)
    if idx == 0:
        raise TrivialElement("component counts are defined for non-trivial elements only")
    return idx


def compute_J(epi: EpimorphismInstance, g: ElementLike) -> tuple[int, ...]:
    G = epi.target
    idx = _nontrivial(G, g)
    return tuple(e.index for e in epi.ecs if is_conjugate_to_power(G, idx, e.image))


def compute_I(epi: EpimorphismInstance, g: ElementLike, merge: MergeSpec | None = None,
              J: Sequence[int] | None = None) -> tuple[int, ...]:
    """Least index of every merge block; blocks must cover ``J(g)`` exactly."""
    J = tuple(compute_J(epi, g) if J is None else J)
    entry = (merge or MergeSpec()).entry_for(epi.target, g)
    if entry is None:
        return J
    covered = sorted(i for b in entry.blocks for i in b)
    if covered != sorted(J):
        raise MergeMismatch(f"merge blocks {entry.blocks} do not partition J(g) = {J}")
    return tuple(sorted(b[0] for b in entry.blocks))


def _power_image(epi: EpimorphismInstance, entry: EcsEntry, d: int) -> Permutation:
    return entry.image ** (entry.order // d)


def resolve_n(epi: EpimorphismInstance, spec: NormalizerImageSpec, n: int) -> int:
    """``n_i`` for ``spec``, checked against ``m_i | n_i | |N_G<theta(kappa_i)^(m_i/n)>|``."""
    if spec.power_divisor != n:
        raise MissingSpec(
            f"spec for e.c.s. {spec.ecs_index} is for power order {spec.power_divisor}, not {n}")
    G = epi.target
    entry = epi.ecs_entry(spec.ecs_index)
    m = entry.order
    if m % n:
        raise DivisibilityViolation(f"power order {n} does not divide m_{entry.index} = {m}")
    power = _power_image(epi, entry, n)
    normalizer = normalizer_of_cyclic(G, power)
    if spec.generator_words is not None:
        images = [evaluate_word(epi, w) for w in spec.generator_words]
        image_group = subgroup_generated(G, images)
        if entry.image not in image_group:
            raise DivisibilityViolation(
                f"normalizer image for e.c.s. {entry.index} misses theta(kappa_{entry.index})")
        if not image_group.issubset(normalizer):
            raise DivisibilityViolation(
                f"normalizer image for e.c.s. {entry.index} does not normalize "
                f"<theta(kappa_{entry.index})^{m // n}>")
        n_i = image_group.order
    else:
        n_i = spec.n_value
    if n_i % m:
        raise DivisibilityViolation(f"m_{entry.index} = {m} does not divide n_{entry.index} = {n_i}")
    if normalizer.order % n_i:
        raise DivisibilityViolation(
            f"n_{entry.index} = {n_i} does not divide |N_G<g>| = {normalizer.order}")
    return n_i


def _spec_table(specs: Iterable[NormalizerImageSpec]) -> dict[tuple[int, int], NormalizerImageSpec]:
    table: dict[tuple[int, int], NormalizerImageSpec] = {}
    for s in specs:
        key = (s.ecs_index, s.power_divisor)
        if key in table:
            raise BadParameters(f"two normalizer specs for e.c.s. {key[0]} at power order {key[1]}")
        table[key] = s
    return table


def component_upper_bound(epi: EpimorphismInstance, g: ElementLike,
                          J: Sequence[int] | None = None) -> Fraction:
    G = epi.target
    idx = _nontrivial(G, g)
    J = compute_J(epi, idx) if J is None else J
    if not J:
        return Fraction(0)
    inv_sum = sum((Fraction(1, epi.ecs_entry(j).order) for j in J), Fraction(0))
    return normalizer_of_cyclic(G, idx).order * inv_sum


def _base_assumptions(epi: EpimorphismInstance) -> list[str]:
    notes = [TRUSTED_ECS]
    if epi.kind == "general":
        notes.append(NECESSARY_ONLY)
    return notes


def component_count(epi: EpimorphismInstance, g: ElementLike, merge: MergeSpec | None = None,
                    specs: Iterable[NormalizerImageSpec] = (), name: str | None = None) -> FixReport:
    G = epi.target
    idx = _nontrivial(G, g)
    n = element_order(G, idx)
    normalizer_order = normalizer_of_cyclic(G, idx).order
    J = compute_J(epi, idx)
    merge = merge or MergeSpec()
    assumptions = _base_assumptions(epi)
    if not J:
        assumptions.append("J(g) is empty: g acts freely")
        return FixReport(G.element(idx), n, (), (), (), normalizer_order, 0, Fraction(0),
                         tuple(assumptions), name)

    entry = merge.entry_for(G, idx)
    I = compute_I(epi, idx, merge, J)  # noqa: E741
    if entry is None:
        assumptions.append(DISCRETE_MERGE)
    else:
        assumptions.append("merge blocks supplied" + (f": {entry.note}" if entry.note else ""))

    table = _spec_table(specs)

    def term(i: int) -> tuple[int, Fraction]:
        spec = table.get((i, n))
        if spec is None:
            raise MissingSpec(f"no normalizer image for e.c.s. {i} at power order {n}")
        n_i = resolve_n(epi, spec, n)
        value = Fraction(normalizer_order, n_i)
        if value.denominator != 1 or value <= 0:
            raise NonIntegralTerm(f"|N_G<g>|/n_{i} = {value} is not a positive integer")
        if spec.generator_words is None:
            assumptions.append(f"n_{i} supplied as a number")
        else:
            assumptions.append(f"normalizer image generators for e.c.s. {i} taken as complete")
        return n_i, value

    n_values = []
    count = Fraction(0)
    blocks = entry.blocks if entry is not None else tuple((i,) for i in I)
    for block in blocks:
        rep = block[0]
        n_rep, value = term(rep)
        n_values.append((rep, n_rep))
        for other in block[1:]:
            if (other, n) in table and term(other)[1] != value:
                raise MergeMismatch(
                    f"merged indices {rep} and {other} give different terms for {G.element(idx)}")
        count += value

    upper = component_upper_bound(epi, idx, J)
    assert count <= upper, "count exceeds the upper bound"
    return FixReport(G.element(idx), n, J, I, tuple(sorted(n_values)), normalizer_order,
                     int(count), upper, tuple(dict.fromkeys(assumptions)), name)


def elliptic_specs(epi: EpimorphismInstance) -> list[NormalizerImageSpec]:
    """Specs with ``n_i = m_i``: each ``kappa_i`` generates the normalizer of its powers.

    This is the situation for canonical elliptic generators of a Fuchsian group,
    whose fixed point is isolated with stabilizer ``<x_i>``.
    """
    specs = []
    for entry in epi.ecs:
        for d in range(2, entry.order + 1):
            if entry.order % d == 0:
                specs.append(NormalizerImageSpec(entry.index, d, generator_words=(entry.word,)))
    return specs
